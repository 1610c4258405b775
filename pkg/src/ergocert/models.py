"""Benchmark chains: tuning parameters -> drift/minorization constants.

Four families are covered:

  * reflecting random walk on the nonnegative integers (holding mass p at 0),
  * the same walk with modified boundary P(0,{0}) = eps (with an exact rate),
  * the Metropolis chain targeting N(0,1) with N(x,1) proposals,
  * the contracting-normal family P(x, .) = N(theta x, 1 - theta^2).

The walks expose an exact finite-truncation oracle (transition matrix,
V vector and stationary law). The continuous-state families expose only
their constant maps plus quadrature cross-checks; their certificates are
validated against published table values rather than exact distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import ndtr

from .bounds import NU_CONCENTRATED, NU_V_INTEGRAL, DriftMinorization
from .competitors import CouplingInput
from .errors import InvalidParams, MonotoneViolation, TruncationTooSmall
from .numerics import std_normal_cdf

__all__ = [
    "ReflectingWalk",
    "MetropolisNormal",
    "ContractingNormal",
    "ModelSpec",
    "TruncatedChain",
    "reflecting_walk_params",
    "reflecting_walk_rho_exact",
    "mh_normal_lambda",
    "mh_normal_params",
    "mh_coupling_input",
    "contracting_params",
    "contracting_coupling_input",
    "binomial_modification",
    "walk_truncated_chain",
    "optimize_mh_tuning",
    "optimize_contracting_tuning",
]

MT_MEASURE = "mt_measure"
INFIMUM_MEASURE = "infimum_measure"

_SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# model specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReflectingWalk:
    """Down-drift walk on {0, 1, 2, ...}: P(i,i-1) = p, P(i,i+1) = q = 1-p.

    epsilon absent: boundary P(0,0) = p. epsilon present: P(0,{0}) = eps
    with 0 < eps < p (the near-periodic regime; eps >= p would make the
    chain stochastically monotone, which this family does not model).
    """

    p: float
    epsilon: Optional[float] = None

    def __post_init__(self) -> None:
        if not (0.5 < self.p < 1.0):
            raise InvalidParams(f"p must lie in (1/2, 1), got {self.p}")
        if self.epsilon is not None and not (0.0 < self.epsilon < self.p):
            raise InvalidParams(
                f"epsilon must lie in (0, p) when given, got eps={self.epsilon}, p={self.p}"
            )

    @property
    def boundary_hold(self) -> float:
        return self.p if self.epsilon is None else self.epsilon


@dataclass(frozen=True)
class MetropolisNormal:
    """Metropolis chain for N(0,1) with proposal N(x,1), V(x) = exp(s|x|),
    small set C = [-d, d]."""

    d: float
    s: float
    nu_variant: str = MT_MEASURE

    def __post_init__(self) -> None:
        if not (self.d > 0.0 and self.s > 0.0):
            raise InvalidParams(f"d and s must be positive, got d={self.d}, s={self.s}")
        if self.nu_variant not in (MT_MEASURE, INFIMUM_MEASURE):
            raise InvalidParams(f"unknown nu_variant {self.nu_variant!r}")


@dataclass(frozen=True)
class ContractingNormal:
    """P(x, .) = N(theta x, 1 - theta^2), V(x) = 1 + x^2, C = [-c, c]."""

    theta: float
    c: float

    def __post_init__(self) -> None:
        if not (-1.0 < self.theta < 1.0):
            raise InvalidParams(f"theta must lie in (-1, 1), got {self.theta}")
        if not (self.c > 1.0):
            raise InvalidParams(f"c must exceed 1 (else lambda >= 1), got {self.c}")


# Any benchmark chain accepted by the constant maps below.
ModelSpec = ReflectingWalk | MetropolisNormal | ContractingNormal


@dataclass(frozen=True)
class TruncatedChain:
    """Finite row-stochastic truncation with V, C and the stationary law."""

    matrix: np.ndarray
    v: np.ndarray
    c_set: frozenset
    pi: np.ndarray
    tail_mass: float

    def __post_init__(self) -> None:
        if np.abs(self.matrix.sum(axis=1) - 1.0).max() > 1e-12:
            raise InvalidParams("rows must sum to 1 within 1e-12")
        if (self.v < 1.0).any():
            raise InvalidParams("V must be >= 1 entrywise")

    @property
    def n_states(self) -> int:
        return self.matrix.shape[0]


# ---------------------------------------------------------------------------
# reflecting walk
# ---------------------------------------------------------------------------


def reflecting_walk_params(spec: ReflectingWalk) -> DriftMinorization:
    """Constants for V(i) = (p/q)^(i/2) and the atom C = {0}.

    Standard boundary: lambda = 2 sqrt(pq), K = p + sqrt(pq), beta = p.
    Modified boundary: K = eps + (1-eps) sqrt(p/q), beta = eps.
    """
    p, q = spec.p, 1.0 - spec.p
    lam = 2.0 * math.sqrt(p * q)
    if spec.epsilon is None:
        big_k = p + math.sqrt(p * q)
        beta = p
    else:
        big_k = spec.epsilon + (1.0 - spec.epsilon) * math.sqrt(p / q)
        beta = spec.epsilon
    return DriftMinorization(lam=lam, big_k=big_k, beta=beta, atomic=True)


def reflecting_walk_rho_exact(p: float, epsilon: float) -> float:
    """Exact V-norm rate of the modified-boundary walk.

    (pq + (p-eps)^2)/(p-eps) below the branch point eps = (p-q)/(1+sqrt(q/p)),
    and 2 sqrt(pq) at or above it.
    """
    spec = ReflectingWalk(p=p, epsilon=epsilon)  # validation
    q = 1.0 - p
    if epsilon < (p - q) / (1.0 + math.sqrt(q / p)):
        return (p * q + (p - epsilon) ** 2) / (p - epsilon)
    return 2.0 * math.sqrt(p * q)


def walk_truncated_chain(spec: ReflectingWalk, n_states: int) -> TruncatedChain:
    """Truncate the walk to {0, ..., n_states-1} with a reflecting top.

    The up-step at the top state folds into a self-loop, which preserves
    stochasticity and reversibility. The stationary vector is the exact
    birth-death ratio sequence, renormalised over the kept states; the
    reported tail_mass is the stationary mass the infinite chain puts
    beyond the truncation, which must be below 1e-12.
    """
    p, q = spec.p, 1.0 - spec.p
    eps = spec.boundary_hold
    if n_states < 3:
        raise InvalidParams("need at least 3 states")

    # Untruncated stationary ratios: pi(i+1)/pi(i) = q/p for i >= 1 and
    # pi(1)/pi(0) = (1-eps)/p, hence a geometric tail with ratio q/p.
    ratio = q / p
    weights = np.empty(n_states)
    weights[0] = 1.0
    if n_states > 1:
        weights[1] = (1.0 - eps) / p
        for i in range(2, n_states):
            weights[i] = weights[i - 1] * ratio
    total_inf = 1.0 + (1.0 - eps) / p / (1.0 - ratio)
    tail = (1.0 - eps) / p * ratio ** (n_states - 1) / (1.0 - ratio) / total_inf
    if tail >= 1e-12:
        raise TruncationTooSmall(
            f"{n_states} states leave stationary tail mass {tail:.3g} >= 1e-12"
        )

    matrix = np.zeros((n_states, n_states))
    matrix[0, 0] = eps
    matrix[0, 1] = 1.0 - eps
    for i in range(1, n_states - 1):
        matrix[i, i - 1] = p
        matrix[i, i + 1] = q
    matrix[n_states - 1, n_states - 2] = p
    matrix[n_states - 1, n_states - 1] = q

    idx = np.arange(n_states)
    v = np.power(p / q, idx / 2.0)
    pi = weights / weights.sum()
    return TruncatedChain(
        matrix=matrix, v=v, c_set=frozenset({0}), pi=pi, tail_mass=float(tail)
    )


# ---------------------------------------------------------------------------
# Metropolis chain for the standard normal target
# ---------------------------------------------------------------------------


def mh_normal_lambda(x: float, s: float) -> float:
    """One-step drift ratio PV(x)/V(x) for V(y) = exp(s|y|), x, s >= 0.

    Closed form in the normal distribution function; telescopes to 1 when
    s = 0 (V constant).
    """
    if not (x >= 0.0 and s >= 0.0) or not (math.isfinite(x) and math.isfinite(s)):
        raise InvalidParams(f"x and s must be finite and nonnegative, got x={x}, s={s}")
    cdf = std_normal_cdf
    t1 = math.exp(s * s / 2.0) * (cdf(-s) - cdf(-x - s))
    t2 = math.exp(s * s / 2.0 - 2.0 * s * x) * (cdf(-x + s) - cdf(-2.0 * x + s))
    t3 = math.exp((x - s) ** 2 / 4.0) * cdf((s - x) / _SQRT2) / _SQRT2
    t4 = math.exp((x * x - 6.0 * x * s + s * s) / 4.0) * cdf((s - 3.0 * x) / _SQRT2) / _SQRT2
    t5 = cdf(0.0) + cdf(-2.0 * x)
    t6 = -math.exp(x * x / 4.0) * (cdf(-x / _SQRT2) + cdf(-3.0 * x / _SQRT2)) / _SQRT2
    return t1 + t2 + t3 + t4 + t5 + t6


def _mh_beta_mt(d: float) -> float:
    return _SQRT2 * math.exp(-d * d) * (std_normal_cdf(_SQRT2 * d) - 0.5)


def _mh_beta_infimum(d: float) -> tuple[float, float]:
    beta = 2.0 * (std_normal_cdf(2.0 * d) - std_normal_cdf(d))
    beta_tilde = beta + _SQRT2 * math.exp(d * d / 4.0) * (
        1.0 - std_normal_cdf(3.0 * d / _SQRT2)
    )
    return beta, beta_tilde


def _mh_k_tilde(d: float, s: float, beta: float, beta_tilde: float) -> float:
    value = beta / beta_tilde + (_SQRT2 / beta_tilde) * math.exp((d - s) ** 2 / 4.0) * (
        1.0 - std_normal_cdf((3.0 * d - s) / _SQRT2)
    )
    # nu(C) + integral of V off C is >= 1 since V >= 1; for large d the two
    # terms land exactly on 1 and rounding may dip a few ulp below it.
    return max(value, 1.0)


def mh_normal_params(d: float, s: float, nu_variant: str = MT_MEASURE) -> DriftMinorization:
    """Drift/minorization constants for C = [-d, d] and V(x) = exp(s|x|).

    The drift ratio is minimised over |x| >= d at x = d, so lambda =
    lambda(d, s) and K = exp(sd) lambda(d, s). Two minorization measures are
    supported: a Gaussian density restricted to C (nu(C) = 1, so the tight
    alpha_2 = 1 applies) and the infimum of the transition densities over C
    (supported everywhere, with a V-integral bound k_tilde instead).
    """
    spec = MetropolisNormal(d=d, s=s, nu_variant=nu_variant)  # validation
    lam = mh_normal_lambda(d, s)
    if lam >= 1.0:
        raise MonotoneViolation(f"lambda(d={d}, s={s}) = {lam:.6g} >= 1: no drift")
    big_k = math.exp(s * d) * lam
    if nu_variant == MT_MEASURE:
        beta = _mh_beta_mt(d)
        return DriftMinorization(
            lam=lam,
            big_k=big_k,
            beta=beta,
            beta_tilde=beta,
            atomic=False,
            nu_info=NU_CONCENTRATED,
        )
    beta, beta_tilde = _mh_beta_infimum(d)
    return DriftMinorization(
        lam=lam,
        big_k=big_k,
        beta=beta,
        beta_tilde=beta_tilde,
        atomic=False,
        nu_info=NU_V_INTEGRAL,
        k_tilde=_mh_k_tilde(d, s, beta, beta_tilde),
    )


def mh_coupling_input(d: float, s: float, nu_variant: str = MT_MEASURE) -> CouplingInput:
    """Coupling constants for the Metropolis chain.

    b = PV(0) - lambda V(0) = lambda(0, s) - lambda and min V off C =
    exp(sd); beta_tilde comes from the same measure as the certificate rows
    it is compared against.
    """
    MetropolisNormal(d=d, s=s, nu_variant=nu_variant)
    lam = mh_normal_lambda(d, s)
    if lam >= 1.0:
        raise MonotoneViolation(f"lambda(d={d}, s={s}) = {lam:.6g} >= 1: no drift")
    b = mh_normal_lambda(0.0, s) - lam
    if nu_variant == MT_MEASURE:
        beta_tilde = _mh_beta_mt(d)
    else:
        beta_tilde = _mh_beta_infimum(d)[1]
    return CouplingInput(
        lam=lam,
        b=b,
        v_min_outside=math.exp(s * d),
        big_k=math.exp(s * d) * lam,
        beta_tilde=beta_tilde,
    )


# ---------------------------------------------------------------------------
# contracting normals
# ---------------------------------------------------------------------------


def _contracting_lambda(theta: float, c: float) -> float:
    return theta * theta + 2.0 * (1.0 - theta * theta) / (1.0 + c * c)


def contracting_params(theta: float, c: float) -> DriftMinorization:
    """Constants for V(x) = 1 + x^2 and C = [-c, c].

    lambda = theta^2 + 2(1-theta^2)/(1+c^2), K = 2 + theta^2 (c^2 - 1), and
    the minorization measure is the infimum of the transition densities
    restricted to C, so beta = beta_tilde and nu(C) = 1.
    """
    spec = ContractingNormal(theta=theta, c=c)  # validation
    at = abs(theta)
    sd = math.sqrt(1.0 - theta * theta)
    lam = _contracting_lambda(theta, c)
    big_k = 2.0 + theta * theta * (c * c - 1.0)
    beta_tilde = 2.0 * (std_normal_cdf((1.0 + at) * c / sd) - std_normal_cdf(at * c / sd))
    return DriftMinorization(
        lam=lam,
        big_k=big_k,
        beta=beta_tilde,
        beta_tilde=beta_tilde,
        atomic=False,
        nu_info=NU_CONCENTRATED,
    )


def contracting_coupling_input(theta: float, c: float) -> CouplingInput:
    """Coupling constants for the contracting-normal family.

    Requires c > sqrt(2) so that the bivariate rate lambda_1 = theta^2 +
    4(1-theta^2)/(2+c^2) stays below 1. The minorization measure need not
    sit on C here, so beta_tilde = 2[1 - Phi(|theta| c / sqrt(1-theta^2))].
    """
    ContractingNormal(theta=theta, c=c)
    if c <= math.sqrt(2.0):
        raise InvalidParams(f"coupling needs c > sqrt(2), got c={c}")
    at = abs(theta)
    sd = math.sqrt(1.0 - theta * theta)
    lam = _contracting_lambda(theta, c)
    b = 2.0 * (1.0 - theta * theta) * c * c / (1.0 + c * c)
    return CouplingInput(
        lam=lam,
        b=b,
        v_min_outside=1.0 + c * c,
        big_k=2.0 + theta * theta * (c * c - 1.0),
        beta_tilde=2.0 * (1.0 - std_normal_cdf(at * c / sd)),
    )


# ---------------------------------------------------------------------------
# lazy-kernel transform
# ---------------------------------------------------------------------------


def binomial_modification(p: DriftMinorization, sup_v_on_c: float) -> DriftMinorization:
    """Constants for the lazy kernel (I + P)/2 with the same V, C and nu.

    lambda -> (1 + lambda)/2, K -> (sup_C V + K)/2, beta -> beta/2. For a
    nonatomic small set the minorization constant halves as well; an atom
    stays an atom (every state of C still shares one transition law), so
    beta_tilde remains 1 there. Two steps of the lazy chain correspond on
    average to one step of the original, so rates are usually compared
    through rho_lazy^2.
    """
    if sup_v_on_c < 1.0:
        raise InvalidParams(f"sup of V over C must be >= 1, got {sup_v_on_c}")
    return DriftMinorization(
        lam=(1.0 + p.lam) / 2.0,
        big_k=(sup_v_on_c + p.big_k) / 2.0,
        beta=p.beta / 2.0,
        beta_tilde=1.0 if p.atomic else p.beta_tilde / 2.0,
        atomic=p.atomic,
        nu_info=p.nu_info,
        k_tilde=p.k_tilde,
    )


# ---------------------------------------------------------------------------
# tuning searches (vectorised; final winners are re-evaluated through the
# scalar production path by the callers)
# ---------------------------------------------------------------------------


def _mh_lambda_np(x, s):
    """Vectorised drift ratio; mirrors ``mh_normal_lambda``."""
    x = np.asarray(x, dtype=float)
    s = np.asarray(s, dtype=float)
    t1 = np.exp(s * s / 2.0) * (ndtr(-s) - ndtr(-x - s))
    t2 = np.exp(s * s / 2.0 - 2.0 * s * x) * (ndtr(-x + s) - ndtr(-2.0 * x + s))
    t3 = np.exp((x - s) ** 2 / 4.0) * ndtr((s - x) / _SQRT2) / _SQRT2
    t4 = np.exp((x * x - 6.0 * x * s + s * s) / 4.0) * ndtr((s - 3.0 * x) / _SQRT2) / _SQRT2
    t5 = ndtr(np.zeros_like(x)) + ndtr(-2.0 * x)
    t6 = -np.exp(x * x / 4.0) * (ndtr(-x / _SQRT2) + ndtr(-3.0 * x / _SQRT2)) / _SQRT2
    return t1 + t2 + t3 + t4 + t5 + t6


def _mh_constants_np(d, s, nu_variant):
    lam = _mh_lambda_np(d, s)
    big_k = np.exp(s * d) * lam
    if nu_variant == MT_MEASURE:
        beta = _SQRT2 * np.exp(-d * d) * (ndtr(_SQRT2 * d) - 0.5)
        beta_tilde = beta
        k_tilde = None
    else:
        beta = 2.0 * (ndtr(2.0 * d) - ndtr(d))
        beta_tilde = beta + _SQRT2 * np.exp(d * d / 4.0) * (1.0 - ndtr(3.0 * d / _SQRT2))
        k_tilde = beta / beta_tilde + (_SQRT2 / beta_tilde) * np.exp((d - s) ** 2 / 4.0) * (
            1.0 - ndtr((3.0 * d - s) / _SQRT2)
        )
        k_tilde = np.maximum(k_tilde, 1.0)
    return lam, big_k, beta, beta_tilde, k_tilde


def _alphas_np(lam, big_k, beta_tilde, k_tilde, nu_variant):
    log_lam_inv = -np.log(lam)
    a1 = 1.0 + np.log((big_k - beta_tilde) / (1.0 - beta_tilde)) / log_lam_inv
    if nu_variant == MT_MEASURE:
        a2 = np.ones_like(a1)
    else:
        a2 = 1.0 + np.log(k_tilde) / log_lam_inv
    r0 = np.minimum(1.0 / lam, (1.0 - beta_tilde) ** (-1.0 / a1))
    return a1, a2, r0


def _rho_positive_np(lam, big_k, beta, beta_tilde, k_tilde, nu_variant):
    _, _, r0 = _alphas_np(lam, big_k, beta_tilde, k_tilde, nu_variant)
    return 1.0 / r0


def _rho_reversible_np(lam, big_k, beta, beta_tilde, k_tilde, nu_variant, iters=70):
    a1, a2, r0 = _alphas_np(lam, big_k, beta_tilde, k_tilde, nu_variant)

    def envelope(r):
        return beta_tilde * r**a2 / (1.0 - (1.0 - beta_tilde) * r**a1)

    hi = r0 * (1.0 - 1e-12)
    lo = np.full_like(hi, 1.0 + 1e-12)
    denom_hi = 1.0 - (1.0 - beta_tilde) * hi**a1
    at_pole = denom_hi <= 0.0
    hi = np.where(at_pole, r0 * (1.0 - 1e-9), hi)
    # Where the envelope never crosses the line below R0, the radius is R0.
    crosses = at_pole | (envelope(hi) > 1.0 + 2.0 * beta * hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        above = envelope(mid) > 1.0 + 2.0 * beta * mid
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    r2 = np.where(crosses, 0.5 * (lo + hi), r0)
    return 1.0 / r2


def _rho_coupling_np(lam, big_k, beta_tilde, b, v_min):
    lam1 = lam + b / (1.0 + v_min)
    bad = (lam1 >= 1.0) | (b <= 0.0)
    lam1 = np.where(bad, 0.5, lam1)  # placeholder; masked below
    a1 = 1.0 + np.log((big_k - beta_tilde) / (1.0 - beta_tilde)) / (-np.log(lam1))
    r0 = np.minimum(1.0 / lam1, (1.0 - beta_tilde) ** (-1.0 / a1))
    rho = 1.0 / r0
    return np.where(bad, np.inf, rho)


def _solve_r1_np(beta, big_r, big_l, iters=70):
    target = math.e**2 * beta / (8.0 * (big_l - 1.0) / (big_r - 1.0))
    lo = np.full_like(big_r, 1.0 + 1e-14)
    hi = big_r * (1.0 - 1e-14)

    def lhs(r):
        return (r - 1.0) / (r * np.log(big_r / r) ** 2)

    clamp = lhs(lo) >= target
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        too_high = lhs(mid) > target
        hi = np.where(too_high, mid, hi)
        lo = np.where(too_high, lo, mid)
    r1 = 0.5 * (lo + hi)
    return np.where(clamp, 1.0 + 1e-14, r1)


def _rho_general_np(lam, big_k, beta, beta_tilde, k_tilde, nu_variant, n_radii=96):
    a1, a2, r0 = _alphas_np(lam, big_k, beta_tilde, k_tilde, nu_variant)
    shape = np.broadcast(lam, beta).shape
    t = np.exp(np.log(1e-9) * (1.0 - np.linspace(0.0, 1.0, n_radii)))
    big_r = 1.0 + 1e-9 + (r0 - 2e-9 - 1.0)[..., None] * t  # (..., n_radii)
    denom = 1.0 - (1.0 - beta_tilde)[..., None] * big_r ** a1[..., None]
    big_l = np.where(
        denom > 0.0,
        beta_tilde[..., None] * big_r ** a2[..., None] / np.where(denom > 0, denom, 1.0),
        np.inf,
    )
    big_l = np.maximum(big_l, big_r)  # guard rounding at r -> 1
    r1 = _solve_r1_np(np.broadcast_to(beta[..., None], big_l.shape), big_r, big_l)
    best = r1.max(axis=-1)
    return 1.0 / best.reshape(shape)


_MH_OBJECTIVES = {
    "thm1.1": lambda lam, K, b0, bt, kt, nu, b, vmin: _rho_general_np(lam, K, b0, bt, kt, nu),
    "thm1.2": lambda lam, K, b0, bt, kt, nu, b, vmin: _rho_reversible_np(
        lam, K, b0, bt, kt, nu
    ),
    "thm1.3": lambda lam, K, b0, bt, kt, nu, b, vmin: _rho_positive_np(
        lam, K, b0, bt, kt, nu
    ),
    "coupling": lambda lam, K, b0, bt, kt, nu, b, vmin: _rho_coupling_np(
        lam, K, bt, b, vmin
    ),
}


def _mh_rho_grid(d_grid, s_grid, method, nu_variant):
    dd, ss = np.meshgrid(np.asarray(d_grid), np.asarray(s_grid), indexing="ij")
    lam, big_k, beta, beta_tilde, k_tilde = _mh_constants_np(dd, ss, nu_variant)
    valid = (lam < 1.0) & (beta > 0.0) & (beta_tilde < 1.0) & (big_k > beta_tilde)
    lam_safe = np.where(valid, lam, 0.5)
    k_safe = np.where(valid, big_k, 2.0)
    b_safe = np.where(valid, beta, 0.1)
    bt_safe = np.where(valid, beta_tilde, 0.1)
    kt_safe = None if k_tilde is None else np.where(valid, k_tilde, 1.0)
    b_coup = _mh_lambda_np(np.zeros_like(dd), ss) - lam_safe
    v_min = np.exp(ss * dd)
    rho = _MH_OBJECTIVES[method](lam_safe, k_safe, b_safe, bt_safe, kt_safe, nu_variant, b_coup, v_min)
    return np.where(valid, rho, np.inf), dd, ss


def optimize_mh_tuning(
    method: str,
    nu_variant: str = MT_MEASURE,
    d_range: tuple[float, float] = (0.5, 3.0),
    s_range: tuple[float, float] = (0.01, 1.5),
) -> dict:
    """Grid-search (d, s) to minimise rho for the given certificate method.

    Coarse scan at step 0.05, then local refinements at 0.01 and 0.002
    around the running best (same final resolution as a flat 0.01 grid with
    refinement, at a fraction of the work for the radius-search objective).
    Returns the winning tuning with its rate.
    """
    if method not in _MH_OBJECTIVES:
        raise InvalidParams(f"method must be one of {sorted(_MH_OBJECTIVES)}")
    d_lo, d_hi = d_range
    s_lo, s_hi = s_range
    d_grid = np.arange(d_lo, d_hi + 1e-12, 0.05)
    s_grid = np.arange(s_lo, s_hi + 1e-12, 0.05)
    best_d = best_s = None
    for step in (0.05, 0.01, 0.002):
        if best_d is not None:
            d_grid = np.clip(np.arange(best_d - 6 * step, best_d + 6 * step + 1e-12, step), d_lo, d_hi)
            s_grid = np.clip(np.arange(best_s - 6 * step, best_s + 6 * step + 1e-12, step), s_lo, s_hi)
        rho, dd, ss = _mh_rho_grid(d_grid, s_grid, method, nu_variant)
        flat = int(np.argmin(rho))
        best_d = float(dd.ravel()[flat])
        best_s = float(ss.ravel()[flat])
        best_rho = float(rho.ravel()[flat])
    return {"d": best_d, "s": best_s, "rho": best_rho, "one_minus_rho": 1.0 - best_rho}


def optimize_contracting_tuning(
    method: str,
    theta: float,
    c_range: tuple[float, float] = (1.05, 4.0),
) -> dict:
    """Grid-search the small-set half-width c to minimise rho for fixed theta."""
    lo, hi = c_range
    if method == "coupling":
        lo = max(lo, math.sqrt(2.0) + 1e-6)
    best_c, best_rho = None, math.inf
    grid = np.arange(lo, hi + 1e-12, 0.01)
    for c in grid:
        try:
            rho = _contracting_rho(method, theta, float(c))
        except (InvalidParams, MonotoneViolation):
            continue
        if rho < best_rho:
            best_c, best_rho = float(c), rho
    return {"c": best_c, "rho": best_rho, "one_minus_rho": 1.0 - best_rho}


def _contracting_rho(method: str, theta: float, c: float) -> float:
    from . import bounds
    from .competitors import coupling_rho

    if method == "coupling":
        return coupling_rho(contracting_coupling_input(theta, c))
    p = contracting_params(theta, c)
    if method == "thm1.1":
        return bounds.rho_general(p).rho
    if method == "thm1.2":
        return bounds.rho_reversible(p).rho
    if method == "thm1.3":
        return bounds.rho_positive(p).rho
    if method == "binomial":
        lazy = binomial_modification(p, sup_v_on_c=1.0 + c * c)
        return bounds.rho_positive(lazy).rho ** 2
    raise InvalidParams(f"unknown method {method!r}")
