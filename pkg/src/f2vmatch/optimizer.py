"""Optimal f2v matchers over complete trees, plus optimality certificates.

The per-bit objective D(U_T||Q_T)/E(L) is a ratio, so it is minimized
Dinkelbach-style: for a guess ``d`` of the optimal ratio, minimizing
D(U_T||Q_T) - d*E(L) is the same as minimizing D(U_T||Q_T * 2**d), which
Tunstall coding on the scaled weights solves exactly. The guess is then
replaced by the ratio of the new tree until the residual reaches zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import BinaryWeights, CodeTree
from .errors import NonTermination, NotADistribution
from .metrics import expected_length, idiv_match, normalized_idiv
from .tunstall import check_m, scale_weights, tunstall_build


@dataclass(frozen=True)
class TraceStep:
    delta_hat: float
    tree: CodeTree
    objective: float  # D(U_T||Q_T) - delta_hat * E(L) for the new tree


@dataclass(frozen=True)
class OptimizerResult:
    delta: float
    tree: CodeTree
    trace: list[TraceStep] = field(repr=False)

    @property
    def iterations(self) -> int:
        return len(self.trace)


def _require_distribution(dist: BinaryWeights):
    if not dist.is_distribution:
        raise NotADistribution(f"weights sum to {dist.w0 + dist.w1!r}, not 1")


def optimize_matcher(dist: BinaryWeights, m: int, tol: float = 1e-12,
                     *, backend=None) -> OptimizerResult:
    """Minimize the I-divergence per output bit over complete trees.

    Stops when the residual of the freshly built tree is ``>= -tol`` or the
    tree repeats. Raises :class:`NonTermination` after ``2**(m+4)`` rounds,
    which cannot happen while the estimates decrease strictly.
    """
    _require_distribution(dist)
    m = check_m(m)
    tree = tunstall_build(dist, m, backend=backend)
    trace = []
    for _ in range(1 << (m + 4)):
        delta_hat = normalized_idiv(tree, dist)
        new = tunstall_build(scale_weights(dist, delta_hat), m, backend=backend)
        resid = idiv_match(new, dist) - delta_hat * expected_length(new)
        trace.append(TraceStep(delta_hat, new, resid))
        if resid >= -tol or new == tree:
            return OptimizerResult(delta_hat, new, trace)
        tree = new
    raise NonTermination(f"no fixed point after {len(trace)} iterations")


def completeness_sufficient(dist: BinaryWeights) -> bool:
    """True iff ``max(q0, q1) <= 4 * min(q0, q1)``.

    Under this condition the complete optimum is optimal among all trees,
    for every block length. The comparison allows 1e-12 of slack so that
    ``(0.8, 1 - 0.8)`` sits on the boundary as it should.
    """
    _require_distribution(dist)
    return dist.qmax <= 4.0 * dist.qmin + 1e-12


def global_optimality_check(dist: BinaryWeights, delta: float) -> bool:
    """Certificate that no non-complete tree beats the complete optimum.

    Holds when both scaled weights ``q * 2**delta`` are at most one.
    """
    _require_distribution(dist)
    return dist.qmax * 2.0 ** delta <= 1.0 + 1e-12


def perbit_bound(dist: BinaryWeights, m: int) -> float:
    """Upper bound ``log2(1/qmin) / m`` on the optimal per-bit divergence."""
    _require_distribution(dist)
    return -math.log2(dist.qmin) / m
