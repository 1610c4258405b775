"""Shared scalar numerics: bracketed root finding, 1-D maximization and the
standard normal distribution function.

Everything is a pure function of its arguments. The solvers favour
robustness over speed: every equation in this package is scalar and cheap,
but some are badly scaled (roots within 1e-7 of a bracket endpoint), which
is where plain bisection with explicit tolerances is hard to beat.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import EmptyDomain, InvalidParams, NoConvergence, NoSignChange

__all__ = ["Bracket", "solve_monotone", "maximize_scalar", "std_normal_cdf"]

_SQRT2 = math.sqrt(2.0)
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Bracket:
    """Search interval [lo, hi] with an absolute width tolerance."""

    lo: float
    hi: float
    tol_abs: float = 1e-12
    max_iter: int = 256

    def __post_init__(self) -> None:
        if not (self.lo < self.hi):
            raise InvalidParams(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if not (self.tol_abs > 0.0):
            raise InvalidParams("tol_abs must be positive")
        if self.max_iter < 1:
            raise InvalidParams("max_iter must be >= 1")


def solve_monotone(
    f: Callable[[float], float],
    target: float,
    bracket: Bracket,
    tol_residual: float = 1e-10,
) -> float:
    """Solve f(x) = target for continuous, strictly monotone f on [lo, hi].

    Bisection, so each step is unconditionally safe. Stops once the bracket
    is narrower than ``tol_abs`` and the residual |f(x) - target| is below
    ``tol_residual``, or once the bracket collapses to adjacent floats
    (the midpoint then is the root to working precision). Raises
    NoConvergence when the iteration budget runs out first. Deterministic
    for fixed inputs.
    """
    lo, hi = bracket.lo, bracket.hi
    flo = f(lo) - target
    if flo == 0.0:
        return lo
    fhi = f(hi) - target
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise NoSignChange(
            f"f - target has the same sign at both endpoints: "
            f"f(lo)-t={flo:.3g}, f(hi)-t={fhi:.3g}"
        )
    increasing = flo < 0.0
    for _ in range(bracket.max_iter):
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            # Bracket collapsed to adjacent floats: mid is the root to
            # working precision, whatever the residual looks like there
            # (badly scaled equations can have slopes near 1/eps).
            return mid
        fm = f(mid) - target
        if fm == 0.0:
            return mid
        if hi - lo <= bracket.tol_abs and abs(fm) <= tol_residual:
            return mid
        if (fm < 0.0) == increasing:
            lo = mid
        else:
            hi = mid
    raise NoConvergence(f"no convergence after {bracket.max_iter} bisection steps")


def _golden_max(f: Callable[[float], float], a: float, b: float, tol: float):
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def maximize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    grid_points: int = 512,
    refine_tol: float = 1e-10,
) -> tuple[float, float]:
    """Maximize f on [lo, hi]: log-spaced grid scan, then golden-section.

    The grid concentrates points near ``lo`` (offsets are geometric, down to
    1e-9 of the interval width) because the objectives fed to this routine
    typically live on intervals whose left end sits against a pole at 1.
    Unimodality is not assumed; the scan guards against local maxima and the
    golden-section pass only refines between the winning point's neighbours.

    Returns (argmax, value) with value >= every grid evaluation.
    """
    if hi <= lo:
        raise EmptyDomain(f"need lo < hi, got [{lo}, {hi}]")
    if grid_points < 2:
        raise InvalidParams("grid_points must be >= 2")
    width = hi - lo
    log_eps = math.log(1e-9)
    xs = [lo]
    for i in range(grid_points - 1):
        t = math.exp(log_eps * (1.0 - i / (grid_points - 2))) if grid_points > 2 else 1.0
        xs.append(lo + width * t)
    xs[-1] = hi
    vals = [f(x) for x in xs]
    i_best = max(range(len(xs)), key=lambda i: vals[i])
    a = xs[max(i_best - 1, 0)]
    b = xs[min(i_best + 1, len(xs) - 1)]
    x_best, v_best = xs[i_best], vals[i_best]
    if b > a:
        x_ref, v_ref = _golden_max(f, a, b, refine_tol)
        if v_ref > v_best:
            x_best, v_best = x_ref, v_ref
    return x_best, v_best


def std_normal_cdf(x: float) -> float:
    """Standard normal distribution function Phi(x).

    Evaluated through erfc, which keeps full relative accuracy in the lower
    tail; absolute error is far below 1e-12 everywhere. Saturates cleanly to
    0.0 / 1.0 for large |x|.
    """
    return 0.5 * math.erfc(-x / _SQRT2)
