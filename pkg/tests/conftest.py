import numpy as np
import pytest

from f2vmatch import _kernels, distribution
from f2vmatch.core import _trusted_tree


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(params=sorted(_kernels.BACKENDS))
def backend(request):
    return request.param


def random_distributions(rng, count, low=0.02, high=0.98):
    return [distribution(q) for q in rng.uniform(low, high, size=count)]


def random_complete_words(rng, m):
    """Random complete tree with 2**m leaves via random leaf splits."""
    words = [""]
    for _ in range((1 << m) - 1):
        w = words.pop(int(rng.integers(len(words))))
        words += [w + "0", w + "1"]
    return words


def random_tree(rng, m, complete=True, extra=3):
    """Random tree; when not complete, some leaves get unary extensions."""
    words = random_complete_words(rng, m)
    if not complete:
        for _ in range(int(rng.integers(1, extra + 1))):
            i = int(rng.integers(len(words)))
            words[i] += "01"[int(rng.integers(2))]
    return _trusted_tree(words)


# ---- acceptance summary: one line per criterion at the end of the run

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(id, text): exit criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for name, args in getattr(report, "acceptance", ()):
        _ACCEPTANCE.append((args[0], args[1], report.passed))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.acceptance = [(m.name, m.args) for m in item.iter_markers("acceptance")]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, text, ok in sorted(_ACCEPTANCE, key=lambda r: int(r[0])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  AC{cid:>2}  {text}")
