"""Size functionals: L_p quasi-norms, weak-L_p, and the dyadic maximal
function with its Hardy-space surrogate.

Weak-L_p is computed exactly for step functions.  The distribution
function lambda -> mu(|f| > lambda) only jumps at the distinct values of
|f|, and the supremum of lambda * mu(|f| > lambda)^(1/p) is approached
as lambda climbs to a value v from below, where the measure is that of
{|f| >= v}.  Scanning the sorted distinct values therefore evaluates the
supremum with no grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyadic import DyadicFunction

__all__ = [
    "NormValue",
    "lp_quasinorm",
    "weak_lp",
    "maximal_function",
    "hardy_norm_estimate",
    "atomic_norm_estimate",
]


@dataclass(frozen=True)
class NormValue:
    """A computed size functional, tagged with which one it is."""

    kind: str  # "lp" | "weak_lp" | "hardy" | "atomic"
    p: float
    value: float


def _check_p(p: float) -> float:
    p = float(p)
    if not p > 0.0:
        raise ValueError(f"exponent p must be positive, got {p}")
    return p


def lp_quasinorm(f: DyadicFunction, p: float) -> NormValue:
    """(integral of |f|^p)^(1/p); a norm for p >= 1, quasi-norm below."""
    p = _check_p(p)
    value = float(np.mean(np.abs(f.values) ** p) ** (1.0 / p))
    return NormValue("lp", p, value)


def weak_lp(f: DyadicFunction, p: float) -> NormValue:
    """sup over lambda > 0 of lambda * mu(|f| > lambda)^(1/p), exactly."""
    p = _check_p(p)
    magnitudes = np.abs(f.values)
    levels = np.unique(magnitudes)  # ascending, distinct
    levels = levels[levels > 0.0]
    if levels.size == 0:
        return NormValue("weak_lp", p, 0.0)
    # mu(|f| >= v) for each distinct positive level v.
    total = magnitudes.size
    below = np.searchsorted(np.sort(magnitudes), levels, side="left")
    tail_measure = (total - below) / total
    value = float(np.max(levels * tail_measure ** (1.0 / p)))
    return NormValue("weak_lp", p, value)


def maximal_function(f: DyadicFunction) -> DyadicFunction:
    """Pointwise max over ranks n = 0..N of |average of f over the rank-n
    cell through the point|.

    The rank-n cell averages are exactly the partial sums S_(2^n) f, so
    for functions resolved on the grid this is the full dyadic maximal
    function.
    """
    bits = f.resolution.bits
    level = f.values  # rank-N averages: f itself
    best = np.abs(level).copy()
    reps = 1
    for _ in range(bits, 0, -1):
        half = level.size // 2
        level = 0.5 * (level[:half] + level[half:])
        reps *= 2
        np.maximum(best, np.tile(np.abs(level), reps), out=best)
    return DyadicFunction(f.resolution, best)


def hardy_norm_estimate(f: DyadicFunction, p: float) -> NormValue:
    """L_p quasi-norm of the maximal function: the desk-scale H_p size."""
    p = _check_p(p)
    return NormValue("hardy", p, lp_quasinorm(maximal_function(f), p).value)


def atomic_norm_estimate(coefficients, p: float) -> NormValue:
    """(sum |mu_k|^p)^(1/p) for an atomic decomposition's coefficients."""
    p = _check_p(p)
    arr = np.asarray(coefficients, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError("atomic coefficients must be finite")
    value = float(np.sum(np.abs(arr) ** p) ** (1.0 / p))
    return NormValue("atomic", p, value)
