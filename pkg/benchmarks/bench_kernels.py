"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--m 16] [--bits 1000000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from f2vmatch import _kernels, distribution, optimize_matcher


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same_output(a, b):
    if isinstance(a, tuple):
        return len(a) == len(b) and all(same_output(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(a, b)) if isinstance(a, np.ndarray) else a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=16)
    ap.add_argument("--code-m", type=int, default=8)
    ap.add_argument("--bits", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    dist = distribution(0.615)
    words = [str(w) for w in optimize_matcher(dist, args.code_m).tree.codewords]
    rng = np.random.default_rng(0)
    n_idx = args.bits // args.code_m
    indices = rng.integers(0, len(words), size=n_idx)

    print(f"available backends: {sorted(_kernels.BACKENDS)} (default {_kernels.BACKEND})")
    print(f"{'kernel':<28}{'backend':<10}{'seconds':>10}")
    results = {}
    for name in sorted(_kernels.BACKENDS):
        tables = _kernels.CodeTables(words, backend=name)
        stream = tables.expand(indices)
        jobs = {
            f"tunstall m={args.m}": lambda: _kernels.tunstall_codewords(
                dist.log2_w0, dist.log2_w1, 1 << args.m, backend=name),
            f"expand {n_idx} symbols": lambda: tables.expand(indices),
            f"parse {stream.size} bits": lambda: tables.parse(stream),
        }
        for label, fn in jobs.items():
            sec, out = best_of(fn, args.repeat)
            results.setdefault(label, {})[name] = (sec, out)
            print(f"{label:<28}{name:<10}{sec:>10.4f}")

    if len(_kernels.BACKENDS) > 1:
        print()
        for label, per in results.items():
            (tc, oc), (tp, op) = per["cython"], per["python"]
            same = same_output(oc, op)
            print(f"{label:<28}speedup {tp / tc:6.1f}x  outputs equal: {same}")


if __name__ == "__main__":
    main()
