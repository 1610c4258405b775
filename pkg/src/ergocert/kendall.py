"""Quantitative renewal-sequence rates.

Given an increment sequence b_n with b_1 >= beta and sum b_n R^n <= L, the
series sum (u_n - u_inf) z^n built from the associated renewal sequence u_n
converges on a disc whose radius these routines certify:

  * ``solve_r1``            general chains, radius R1 from a transcendental
                            equation in (1, R);
  * ``solve_r2_reversible`` reversible chains, radius R2 from the crossing
                            of 1 + 2*beta*r with r**(log L / log R);
  * ``r2_positive``         reversible chains with nonnegative spectrum,
                            where the full radius R is certified.

``k1`` and ``k2_series_bound`` give the matching uniform bounds on the
series inside those radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParams, OutOfRange
from .numerics import Bracket, solve_monotone

__all__ = [
    "KendallParams",
    "KendallRate",
    "solve_r1",
    "k1",
    "k1_single_fraction",
    "solve_r2_reversible",
    "r2_positive",
    "k2_series_bound",
    "rho_tilde_reversible_atomic",
]

_E2 = math.exp(2.0)
_EM2 = math.exp(-2.0)


@dataclass(frozen=True)
class KendallParams:
    """Constants (beta, R, L) bounding an increment distribution.

    beta  lower bound on b_1,
    big_r exponent radius with sum b_n R^n <= L,
    big_l the generating-function bound itself.
    """

    beta: float
    big_r: float
    big_l: float

    def __post_init__(self) -> None:
        if not (self.big_r > 1.0):
            raise InvalidParams(f"R must exceed 1, got {self.big_r}")
        if not (0.0 < self.beta <= 1.0):
            raise InvalidParams(f"beta must lie in (0, 1], got {self.beta}")
        if not (self.big_l >= self.big_r):
            # Equivalent to N = (L-1)/(R-1) >= 1; also forces L > 1.
            raise InvalidParams(
                f"L must be >= R (so that (L-1)/(R-1) >= 1), got L={self.big_l}, R={self.big_r}"
            )
        if self.beta * self.big_r > self.big_l:
            raise InvalidParams(
                "beta * R > L is contradictory: sum b_n R^n >= beta*R would exceed L"
            )

    @property
    def n_ratio(self) -> float:
        """N = (L - 1) / (R - 1)."""
        return (self.big_l - 1.0) / (self.big_r - 1.0)


@dataclass(frozen=True)
class KendallRate:
    """A certified radius together with the series bound valid inside it."""

    r_star: float
    regime: str  # "general" | "reversible" | "reversible-positive"
    params: KendallParams
    beta_tilde: float = 1.0

    def series_bound_at(self, r: float) -> float:
        if self.regime == "general":
            return k1(r, self.params)
        return k2_series_bound(r, self.r_star, self.beta_tilde)


def _log_ratio(big_r: float, r: float) -> float:
    # log(R / r) computed as log1p((R - r) / r) to keep accuracy when both
    # sit within 1e-6 of each other (routine in the radius search).
    return math.log1p((big_r - r) / r)


def _r1_lhs(r: float, big_r: float) -> float:
    return (r - 1.0) / (r * _log_ratio(big_r, r) ** 2)


def solve_r1(p: KendallParams, tol_abs: float = 1e-12, tol_residual: float = 1e-10) -> float:
    """Certified radius R1 for the general regime.

    R1 is the unique r in (1, R) with

        (r - 1) / (r * log(R/r)^2) = e^2 * beta / (8 N),   N = (L-1)/(R-1).

    The left side increases monotonically from 0 to infinity on (1, R), so
    bisection is safe. If the root falls below the working bracket endpoint
    1 + 1e-14 (possible for grid probes with R - 1 near 1e-9, where the root
    is not representable in double precision) the endpoint is returned; such
    values are never competitive in the radius searches that consume them.
    """
    target = _E2 * p.beta / (8.0 * p.n_ratio)
    lo = 1.0 + 1e-14
    hi = p.big_r - max(1e-14, (p.big_r - 1.0) * 1e-13)
    if _r1_lhs(lo, p.big_r) >= target:
        return lo
    return solve_monotone(
        lambda r: _r1_lhs(r, p.big_r),
        target,
        Bracket(lo, hi, tol_abs=tol_abs),
        tol_residual=tol_residual,
    )


def _k1_parts(r: float, p: KendallParams) -> tuple[float, float, float]:
    if r <= 1.0 or r >= p.big_r:
        raise OutOfRange(f"need 1 < r < R, got r={r}, R={p.big_r}")
    lg = _log_ratio(p.big_r, r)
    big_n = p.n_ratio
    a_term = 8.0 * big_n * _EM2 * (r - 1.0) / (r * lg * lg)
    denominator = p.beta - a_term
    if denominator <= 0.0:
        raise OutOfRange(
            f"r={r} is at or beyond the certified radius (series-bound denominator <= 0)"
        )
    log_n_term = 2.0 * math.log(big_n) / lg
    return a_term, denominator, log_n_term


def k1(r: float, p: KendallParams) -> float:
    """Uniform bound on |sum (u_n - u_inf) z^n| over |z| <= r, r < R1.

    Nested form: (1/(r-1)) * (1 + (beta + 2 log N / log(R/r)) / denominator).
    Diverges as r approaches R1 from below (the denominator has its zero
    exactly at R1).
    """
    a_term, denominator, log_n_term = _k1_parts(r, p)
    return (1.0 / (r - 1.0)) * (1.0 + (p.beta + log_n_term) / denominator)


def k1_single_fraction(r: float, p: KendallParams) -> float:
    """Algebraically equal single-fraction arrangement of ``k1``."""
    a_term, denominator, log_n_term = _k1_parts(r, p)
    return (2.0 * p.beta + log_n_term - a_term) / ((r - 1.0) * denominator)


def solve_r2_reversible(
    p: KendallParams, tol_abs: float = 1e-12, tol_residual: float = 1e-10
) -> float:
    """Certified radius R2 for reversible chains.

    When L > 1 + 2*beta*R the radius is the unique r in (1, R) where
    1 + 2*beta*r meets the convex curve r**(log L / log R); otherwise the
    full radius R is already certified.
    """
    if p.big_l <= 1.0 + 2.0 * p.beta * p.big_r:
        return p.big_r
    exponent = math.log(p.big_l) / math.log(p.big_r)

    def gap(r: float) -> float:
        return math.exp(exponent * math.log1p(r - 1.0)) - 1.0 - 2.0 * p.beta * r

    # gap(1+) = -2*beta < 0 and gap(R) = L - (1 + 2*beta*R) > 0; the crossing
    # is unique by convexity, so bisection lands on it.
    return solve_monotone(
        gap,
        0.0,
        Bracket(1.0 + 1e-14, p.big_r - max(1e-14, (p.big_r - 1.0) * 1e-13), tol_abs=tol_abs),
        tol_residual=tol_residual,
    )


def r2_positive(p: KendallParams) -> float:
    """For reversible chains with nonnegative spectrum the radius is R itself."""
    return p.big_r


def k2_series_bound(r: float, r2: float, beta_tilde: float) -> float:
    """Series bound 1 + sqrt(beta_tilde) * r / (1 - r/R2) for 1 < r < R2.

    The coefficient is sqrt(beta_tilde), the value the reversible-regime
    derivation actually produces (beta_tilde = 1 recovers the atomic form
    1 + 1/(gamma - rho) at r = 1/gamma, R2 = 1/rho).
    """
    if not (0.0 < beta_tilde <= 1.0):
        raise InvalidParams(f"beta_tilde must lie in (0, 1], got {beta_tilde}")
    if not (1.0 < r < r2):
        raise OutOfRange(f"need 1 < r < R2, got r={r}, R2={r2}")
    return 1.0 + math.sqrt(beta_tilde) * r / (1.0 - r / r2)


def rho_tilde_reversible_atomic(lam: float, big_k: float, beta: float) -> float:
    """Convexity shortcut for the atomic reversible rate.

    Larger than (or equal to) the exact 1/R2 but computable without any
    root-finding: 1 - 2*beta*(1-lambda)/(K-lambda) when K > lambda + 2*beta,
    else lambda.
    """
    if not (0.0 < lam < 1.0):
        raise InvalidParams(f"lambda must lie in (0, 1), got {lam}")
    if big_k <= lam:
        raise InvalidParams(f"K must exceed lambda, got K={big_k}, lambda={lam}")
    if big_k < 1.0:
        raise InvalidParams(f"K must be >= 1, got {big_k}")
    if not (0.0 < beta <= 1.0):
        raise InvalidParams(f"beta must lie in (0, 1], got {beta}")
    if big_k > lam + 2.0 * beta:
        return 1.0 - 2.0 * beta * (1.0 - lam) / (big_k - lam)
    return lam
