"""Geometric-convergence certificates (rho, M) from drift/minorization data.

Input is the one-step data of a chain: a minorization constant beta_tilde on
a small set C, a drift rate lambda with bound K on C, and the aperiodicity
constant beta. Output is a rate rho < 1 and a constant M such that

    sup_{|g| <= V} |P^n g(x) - pi(g)|  <=  M * V(x) * gamma^n

for any chosen gamma in (rho, 1). Three regimes are supported, in order of
increasing strength of hypothesis and sharpness of rate:

  general               no structural assumptions,
  reversible            the chain is self-adjoint in L2(pi),
  reversible-positive   additionally the spectrum is nonnegative.

Atomic small sets (beta_tilde = 1) use the renewal constants directly; the
nonatomic path routes the same machinery through the split-chain exponents
alpha_1, alpha_2 and the envelope L(r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import kendall
from .errors import GammaOutOfRange, InvalidParams, NotReversible, OutOfRange
from .kendall import KendallParams
from .numerics import maximize_scalar, solve_monotone, Bracket

__all__ = [
    "DriftMinorization",
    "DerivedExponents",
    "Certificate",
    "RatePart",
    "derived_exponents",
    "big_l",
    "rho_general",
    "m_general",
    "rho_reversible",
    "m_reversible",
    "rho_positive",
    "m_positive",
    "prop41_bounds",
    "prop44_bounds",
    "g_tilde_bound",
    "certificate",
    "l2_contraction",
]

NU_NONE = "none"
NU_CONCENTRATED = "concentrated_on_c"
NU_V_INTEGRAL = "v_integral_bound"

_SYMMETRIES = ("general", "reversible", "reversible-positive")


@dataclass(frozen=True)
class DriftMinorization:
    """One-step constants of a chain.

    lam         drift rate lambda < 1 off the small set C,
    big_k       bound K on PV over C (with V normalised so V >= 1, and
                V == 1 on C in the atomic case),
    beta        aperiodicity constant, beta <= beta_tilde * nu(C),
    beta_tilde  minorization constant on C (1 exactly when C is an atom),
    atomic      whether C is an atom,
    nu_info     side information about nu: "none", "concentrated_on_c"
                (nu(C) = 1), or "v_integral_bound" with k_tilde bounding
                nu(C) + integral of V over the complement of C.
    """

    lam: float
    big_k: float
    beta: float
    beta_tilde: float = 1.0
    atomic: bool = True
    nu_info: str = NU_NONE
    k_tilde: Optional[float] = None

    def __post_init__(self) -> None:
        if not (0.0 < self.lam < 1.0):
            raise InvalidParams(f"lambda must lie in (0, 1), got {self.lam}")
        if not (self.big_k >= 1.0):
            raise InvalidParams(f"K must be >= 1, got {self.big_k}")
        if not (self.big_k > self.lam):
            raise InvalidParams(f"K must exceed lambda, got K={self.big_k}")
        if not (0.0 < self.beta <= self.beta_tilde <= 1.0):
            raise InvalidParams(
                f"need 0 < beta <= beta_tilde <= 1, got beta={self.beta}, "
                f"beta_tilde={self.beta_tilde}"
            )
        if self.atomic and self.beta_tilde != 1.0:
            raise InvalidParams("atomic chains have beta_tilde = 1")
        if not self.atomic:
            if self.beta_tilde >= 1.0:
                raise InvalidParams("nonatomic chains need beta_tilde < 1")
            if self.big_k <= self.beta_tilde:
                raise InvalidParams("nonatomic chains need K > beta_tilde")
        if self.nu_info not in (NU_NONE, NU_CONCENTRATED, NU_V_INTEGRAL):
            raise InvalidParams(f"unknown nu_info {self.nu_info!r}")
        if self.nu_info == NU_V_INTEGRAL:
            if self.k_tilde is None or self.k_tilde < 1.0:
                raise InvalidParams("v_integral_bound requires k_tilde >= 1")
        elif self.k_tilde is not None:
            raise InvalidParams("k_tilde is only meaningful with nu_info='v_integral_bound'")

    @property
    def lam_inv(self) -> float:
        return 1.0 / self.lam


@dataclass(frozen=True)
class DerivedExponents:
    """Split-chain exponents alpha_1, alpha_2 and the radius cap R0."""

    alpha1: float
    alpha2: float
    r0: float


@dataclass(frozen=True)
class RatePart:
    """Rate plus diagnostics, before a gamma and M are attached."""

    rho: float
    symmetry: str
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Certificate:
    """Full certificate: rate rho, chosen gamma, constant M, diagnostics."""

    rho: float
    gamma: float
    big_m: float
    symmetry: str
    method: str
    params: DriftMinorization
    diagnostics: dict = field(default_factory=dict)

    def bound_at(self, v_x: float, n: int) -> float:
        """The certified envelope M * V(x) * gamma^n."""
        return self.big_m * v_x * self.gamma**n

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "lambda": self.params.lam,
            "K": self.params.big_k,
            "beta": self.params.beta,
            "beta_tilde": self.params.beta_tilde,
            "atomic": self.params.atomic,
            "symmetry": self.symmetry,
            "rho": self.rho,
            "gamma": self.gamma,
            "M": self.big_m,
            "diagnostics": dict(self.diagnostics),
        }


def derived_exponents(p: DriftMinorization) -> DerivedExponents:
    """alpha_1, alpha_2 and R0 = min(1/lambda, (1 - beta_tilde)**(-1/alpha_1)).

    Only meaningful for nonatomic chains. alpha_2 takes the sharpest value
    the available side information permits: 1 when nu is concentrated on C,
    1 + log(k_tilde)/log(1/lambda) under a V-integral bound, and the generic
    1 + log(K/beta_tilde)/log(1/lambda) otherwise.
    """
    if p.atomic:
        raise InvalidParams("derived exponents apply to nonatomic chains only")
    log_lam_inv = math.log(p.lam_inv)
    alpha1 = 1.0 + math.log((p.big_k - p.beta_tilde) / (1.0 - p.beta_tilde)) / log_lam_inv
    if p.nu_info == NU_CONCENTRATED:
        alpha2 = 1.0
    elif p.nu_info == NU_V_INTEGRAL:
        alpha2 = 1.0 + math.log(p.k_tilde) / log_lam_inv
    else:
        alpha2 = 1.0 + math.log(p.big_k / p.beta_tilde) / log_lam_inv
    pole = (1.0 - p.beta_tilde) ** (-1.0 / alpha1)
    return DerivedExponents(alpha1=alpha1, alpha2=alpha2, r0=min(p.lam_inv, pole))


def _big_l_at(r: float, beta_tilde: float, alpha1: float, alpha2: float) -> float:
    denominator = 1.0 - (1.0 - beta_tilde) * r**alpha1
    if denominator <= 0.0:
        raise OutOfRange(f"r={r} is at or beyond the envelope pole")
    return beta_tilde * r**alpha2 / denominator


def big_l(r: float, p: DriftMinorization) -> float:
    """Envelope L(r) = beta_tilde r^alpha2 / (1 - (1-beta_tilde) r^alpha1).

    Bounds the generating function of the split-chain regeneration time at
    argument r; finite for 1 < r < (1 - beta_tilde)**(-1/alpha_1) and equal
    to 1 in the limit r -> 1.
    """
    if r <= 1.0:
        raise OutOfRange(f"need r > 1, got {r}")
    de = derived_exponents(p)
    return _big_l_at(r, p.beta_tilde, de.alpha1, de.alpha2)


# ---------------------------------------------------------------------------
# rate computations
# ---------------------------------------------------------------------------


def _atomic_kendall_params(p: DriftMinorization) -> KendallParams:
    return KendallParams(beta=p.beta, big_r=p.lam_inv, big_l=p.lam_inv * p.big_k)


def _general_nonatomic_search(p: DriftMinorization, de: DerivedExponents):
    lo = 1.0 + 1e-9
    hi = de.r0 - 1e-9
    if hi <= lo:
        raise InvalidParams("R0 is too close to 1 for a usable radius search")

    def objective(big_r: float) -> float:
        big_l_val = _big_l_at(big_r, p.beta_tilde, de.alpha1, de.alpha2)
        return kendall.solve_r1(KendallParams(beta=p.beta, big_r=big_r, big_l=big_l_val))

    r_tilde, r1 = maximize_scalar(objective, lo, hi, grid_points=512, refine_tol=1e-10)
    return r_tilde, r1


def rho_general(p: DriftMinorization) -> RatePart:
    """Rate for the general regime.

    Atomic: rho = 1/R1(beta, 1/lambda, K/lambda). Nonatomic: the envelope
    radius R is tuned over (1, R0) to maximize R1(beta, R, L(R)), and
    rho = 1/R1 at the winner. Always rho > lambda because R1 < R <= 1/lambda.
    """
    if p.atomic:
        kp = _atomic_kendall_params(p)
        r1 = kendall.solve_r1(kp)
        return RatePart(
            rho=1.0 / r1,
            symmetry="general",
            diagnostics={"R": kp.big_r, "L": kp.big_l, "R1": r1},
        )
    de = derived_exponents(p)
    r_tilde, r1 = _general_nonatomic_search(p, de)
    return RatePart(
        rho=1.0 / r1,
        symmetry="general",
        diagnostics={
            "alpha1": de.alpha1,
            "alpha2": de.alpha2,
            "R0": de.r0,
            "R_tilde": r_tilde,
            "L_at_R_tilde": _big_l_at(r_tilde, p.beta_tilde, de.alpha1, de.alpha2),
            "R1": r1,
        },
    )


def rho_reversible(p: DriftMinorization) -> RatePart:
    """Rate for reversible chains.

    Atomic: rho = 1/R2 with R2 from the atomic crossing equation. Nonatomic:
    R2 solves 1 + 2*beta*r = L(r) on (1, R0) when the envelope crosses the
    line below R0, and equals R0 otherwise (possible only when R0 = 1/lambda
    sits strictly below the envelope pole).
    """
    if p.atomic:
        kp = _atomic_kendall_params(p)
        r2 = kendall.solve_r2_reversible(kp)
        return RatePart(
            rho=1.0 / r2,
            symmetry="reversible",
            diagnostics={"R": kp.big_r, "L": kp.big_l, "R2": r2},
        )
    de = derived_exponents(p)
    r2 = _reversible_nonatomic_radius(p, de)
    return RatePart(
        rho=1.0 / r2,
        symmetry="reversible",
        diagnostics={"alpha1": de.alpha1, "alpha2": de.alpha2, "R0": de.r0, "R2": r2},
    )


def _reversible_nonatomic_radius(p: DriftMinorization, de: DerivedExponents) -> float:
    bt, a1, a2 = p.beta_tilde, de.alpha1, de.alpha2
    pole_limited = (1.0 - bt) * de.r0**a1 >= 1.0 - 1e-14
    if not pole_limited:
        l_at_r0 = _big_l_at(de.r0, bt, a1, a2)
        if l_at_r0 <= 1.0 + 2.0 * p.beta * de.r0:
            return de.r0
        hi = de.r0
    else:
        hi = de.r0 * (1.0 - 1e-13)

    def gap(r: float) -> float:
        return _big_l_at(r, bt, a1, a2) - 1.0 - 2.0 * p.beta * r

    # gap(1+) ~ -2*beta < 0 and gap(hi) > 0; single crossing on (1, R0).
    return solve_monotone(gap, 0.0, Bracket(1.0 + 1e-14, hi, tol_abs=1e-12))


def rho_positive(p: DriftMinorization) -> RatePart:
    """Rate for reversible positive chains: lambda (atomic) or 1/R0."""
    if p.atomic:
        return RatePart(rho=p.lam, symmetry="reversible-positive", diagnostics={})
    de = derived_exponents(p)
    return RatePart(
        rho=1.0 / de.r0,
        symmetry="reversible-positive",
        diagnostics={"alpha1": de.alpha1, "alpha2": de.alpha2, "R0": de.r0},
    )


# ---------------------------------------------------------------------------
# M formulas
#
# Each bound exists in two printed arrangements: one in the decay factor
# gamma and one in the series variable r = 1/gamma. Both are transcribed
# independently (the r forms feed the identity tests) and agree to rounding.
# ---------------------------------------------------------------------------


def _m_atomic_gamma(lam: float, big_k: float, gamma: float, k_factor: float) -> float:
    g = gamma
    t1 = max(lam, big_k - lam / g) / (g - lam)
    t2 = big_k * (big_k - lam / g) / (g * (g - lam)) * k_factor
    t3 = (big_k - lam / g) * max(lam, big_k - lam) / ((g - lam) * (1.0 - lam))
    t4 = lam * (big_k - 1.0) / ((g - lam) * (1.0 - lam))
    return t1 + t2 + t3 + t4


def _m_atomic_r(lam: float, big_k: float, r: float, k_factor: float) -> float:
    q = 1.0 - r * lam
    t1 = r * max(lam, big_k - r * lam) / q
    t2 = r * r * big_k * (big_k - r * lam) / q * k_factor
    t3 = r * (big_k - r * lam) * max(lam, big_k - lam) / (q * (1.0 - lam))
    t4 = lam * r * (big_k - 1.0) / (q * (1.0 - lam))
    return t1 + t2 + t3 + t4


def _m_nonatomic_gamma(
    lam: float,
    big_k: float,
    bt: float,
    a1: float,
    a2: float,
    gamma: float,
    k_factor: float,
) -> float:
    g = gamma
    d = 1.0 - (1.0 - bt) * g**-a1
    t1 = max(lam, big_k - lam / g) / (g - lam)
    t2 = big_k * (big_k * g - lam - bt * (g - lam)) / (g * g * (g - lam) * d)
    t3 = bt * g ** (-a2 - 2.0) * big_k * (big_k * g - lam) / ((g - lam) * d * d) * k_factor
    t4 = (
        g ** (-a2 - 1.0)
        * (big_k * g - lam)
        / ((g - lam) * d * d)
        * (
            bt * max(lam, big_k - lam) / (1.0 - lam)
            + (1.0 - bt) * (g**-a1 - 1.0) / (1.0 / g - 1.0)
        )
    )
    t5 = g**-a2 * lam * (big_k - 1.0) / ((1.0 - lam) * (g - lam) * d)
    t6 = (
        (big_k - lam - bt * (1.0 - lam))
        / ((1.0 - lam) * (1.0 - g) * d)
        * ((g**-a2 - 1.0) + (1.0 - bt) * (g**-a1 - 1.0) / bt)
    )
    return t1 + t2 + t3 + t4 + t5 + t6


def _m_nonatomic_r(
    lam: float,
    big_k: float,
    bt: float,
    a1: float,
    a2: float,
    r: float,
    k_factor: float,
) -> float:
    q = 1.0 - r * lam
    d = 1.0 - (1.0 - bt) * r**a1
    t1 = r * max(lam, big_k - r * lam) / q
    t2 = r * r * big_k * (big_k - r * lam - bt * q) / (q * d)
    t3 = bt * r ** (a2 + 2.0) * big_k * (big_k - r * lam) / (q * d * d) * k_factor
    t4 = (
        r ** (a2 + 1.0)
        * (big_k - r * lam)
        / (q * d * d)
        * (bt * max(lam, big_k - lam) / (1.0 - lam) + (1.0 - bt) * (r**a1 - 1.0) / (r - 1.0))
    )
    t5 = r ** (a2 + 1.0) * lam * (big_k - 1.0) / ((1.0 - lam) * q * d)
    t6 = (
        r
        * (big_k - lam - bt * (1.0 - lam))
        / ((1.0 - lam) * d)
        * ((r**a2 - 1.0) / (r - 1.0) + (1.0 - bt) * (r**a1 - 1.0) / (bt * (r - 1.0)))
    )
    return t1 + t2 + t3 + t4 + t5 + t6


def _check_gamma(rho: float, gamma: float) -> None:
    if not (rho < gamma < 1.0):
        raise GammaOutOfRange(f"gamma must lie in (rho, 1) = ({rho}, 1), got {gamma}")


def _m_with_part(p: DriftMinorization, gamma: float, part: RatePart) -> float:
    _check_gamma(part.rho, gamma)
    r = 1.0 / gamma
    if part.symmetry == "general":
        if p.atomic:
            k_factor = kendall.k1(r, _atomic_kendall_params(p))
            return _m_atomic_gamma(p.lam, p.big_k, gamma, k_factor)
        kp = KendallParams(
            beta=p.beta,
            big_r=part.diagnostics["R_tilde"],
            big_l=part.diagnostics["L_at_R_tilde"],
        )
        k_factor = kendall.k1(r, kp)
        de = derived_exponents(p)
        return _m_nonatomic_gamma(
            p.lam, p.big_k, p.beta_tilde, de.alpha1, de.alpha2, gamma, k_factor
        )
    # Reversible and reversible-positive regimes share the series bound K2.
    k_factor = kendall.k2_series_bound(r, 1.0 / part.rho, p.beta_tilde)
    if p.atomic:
        return _m_atomic_gamma(p.lam, p.big_k, gamma, k_factor)
    de = derived_exponents(p)
    return _m_nonatomic_gamma(p.lam, p.big_k, p.beta_tilde, de.alpha1, de.alpha2, gamma, k_factor)


def m_general(p: DriftMinorization, gamma: float) -> float:
    """Constant M for the general certificate at decay factor gamma."""
    return _m_with_part(p, gamma, rho_general(p))


def m_reversible(p: DriftMinorization, gamma: float) -> float:
    """Constant M for the reversible certificate (K2 in place of K1)."""
    return _m_with_part(p, gamma, rho_reversible(p))


def m_positive(p: DriftMinorization, gamma: float) -> float:
    """Constant M for the reversible-positive certificate."""
    return _m_with_part(p, gamma, rho_positive(p))


# ---------------------------------------------------------------------------
# regeneration-time moment bounds (used by the Monte Carlo oracle and in M)
# ---------------------------------------------------------------------------


def prop41_bounds(r: float, p: DriftMinorization, v_x: float, x_in_c: bool) -> dict:
    """Closed-form bounds on E^x[r^tau] and the weighted sums along the way.

    g_bound       E^x[r^tau]          (valid for 1 <= r <= 1/lambda),
    h_bound       E^x[sum r^n V(X_n), n <= tau],
    h_diff_bound  (H(r,x) - r H(1,x)) / (r - 1).

    Inside C the bounds use K only; outside they scale with V(x) = v_x. The
    h_diff bound outside C follows from the same telescoping argument as the
    on-C case with the return-position terms dropped.
    """
    if not (1.0 < r < p.lam_inv):
        raise OutOfRange(f"need 1 < r < 1/lambda = {p.lam_inv}, got r={r}")
    if v_x < 1.0:
        raise InvalidParams(f"V(x) >= 1 required, got {v_x}")
    q = 1.0 - r * p.lam
    if x_in_c:
        g = r * p.big_k
        h = r * (p.big_k - r * p.lam) / q
        h_diff = p.lam * r * (p.big_k - 1.0) / ((1.0 - p.lam) * q)
    else:
        g = v_x
        h = r * p.lam * v_x / q
        h_diff = p.lam * v_x / ((1.0 - p.lam) * q)
    return {"g_bound": g, "h_bound": h, "h_diff_bound": h_diff}


def g_tilde_bound(r: float, p: DriftMinorization) -> float:
    """Bound r**alpha_1 on the failed-regeneration generating function.

    Valid on 1 <= r <= 1/lambda, in particular at the endpoint r = 1/lambda.
    """
    if p.atomic:
        raise InvalidParams("split-chain bounds apply to nonatomic chains only")
    if not (1.0 <= r <= p.lam_inv * (1.0 + 1e-12)):
        raise OutOfRange(f"need 1 <= r <= 1/lambda = {p.lam_inv}, got r={r}")
    return r ** derived_exponents(p).alpha1


def prop44_bounds(r: float, p: DriftMinorization) -> dict:
    """Split-chain analogues of the regeneration bounds, for 1 < r < R0.

    g_tilde    r**alpha_1,
    gbar_a1    the envelope L(r) (bounds the regeneration generating
               function started from a fresh renewal),
    hbar_a1    r**(alpha_2+1) (K - r lambda) / ((1 - r lambda) D(r)),
    hbar_diff  the matching difference-quotient bound,

    where D(r) = 1 - (1 - beta_tilde) r**alpha_1.
    """
    if p.atomic:
        raise InvalidParams("split-chain bounds apply to nonatomic chains only")
    de = derived_exponents(p)
    if not (1.0 < r < de.r0):
        raise OutOfRange(f"need 1 < r < R0 = {de.r0}, got r={r}")
    bt, a1, a2 = p.beta_tilde, de.alpha1, de.alpha2
    q = 1.0 - r * p.lam
    d = 1.0 - (1.0 - bt) * r**a1
    gbar = _big_l_at(r, bt, a1, a2)
    hbar = r ** (a2 + 1.0) * (p.big_k - r * p.lam) / (q * d)
    hbar_diff = r ** (a2 + 1.0) * p.lam * (p.big_k - 1.0) / ((1.0 - p.lam) * q * d) + (
        r
        * (p.big_k - p.lam - bt * (1.0 - p.lam))
        / ((1.0 - p.lam) * d)
        * ((r**a2 - 1.0) / (r - 1.0) + (1.0 - bt) * (r**a1 - 1.0) / (bt * (r - 1.0)))
    )
    return {
        "g_tilde": r**a1,
        "gbar_a1": gbar,
        "hbar_a1": hbar,
        "hbar_diff": hbar_diff,
    }


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------


def certificate(
    p: DriftMinorization,
    symmetry: str = "general",
    gamma: Optional[float] = None,
) -> Certificate:
    """Compute a full certificate for the requested symmetry regime.

    gamma defaults to (1 + rho)/2: M diverges as gamma approaches rho, so a
    midpoint keeps both the rate and the constant moderate.
    """
    if symmetry not in _SYMMETRIES:
        raise InvalidParams(f"symmetry must be one of {_SYMMETRIES}, got {symmetry!r}")
    if symmetry == "general":
        part = rho_general(p)
    elif symmetry == "reversible":
        part = rho_reversible(p)
    else:
        part = rho_positive(p)
    if gamma is None:
        gamma = 0.5 * (1.0 + part.rho)
    big_m = _m_with_part(p, gamma, part)
    diagnostics = dict(part.diagnostics)
    r = 1.0 / gamma
    if symmetry == "general":
        diagnostics["k_factor_kind"] = "K1"
        if p.atomic:
            kp = _atomic_kendall_params(p)
        else:
            kp = KendallParams(
                beta=p.beta,
                big_r=diagnostics["R_tilde"],
                big_l=diagnostics["L_at_R_tilde"],
            )
        diagnostics["k_factor"] = kendall.k1(r, kp)
    else:
        diagnostics["k_factor_kind"] = "K2"
        diagnostics["k_factor"] = kendall.k2_series_bound(r, 1.0 / part.rho, p.beta_tilde)
    return Certificate(
        rho=part.rho,
        gamma=gamma,
        big_m=big_m,
        symmetry=symmetry,
        method="kendall-" + symmetry,
        params=p,
        diagnostics=diagnostics,
    )


def l2_contraction(p: DriftMinorization, symmetry: str) -> float:
    """L2(pi) contraction factor for reversible chains.

    For reversible chains the operator norm of P - 1 (x) pi on L2(pi) is at
    most the certified rho, so ||P^n f - pi(f)|| <= rho^n ||f - pi(f)||.
    """
    if symmetry == "reversible":
        return rho_reversible(p).rho
    if symmetry == "reversible-positive":
        return rho_positive(p).rho
    raise NotReversible("L2 contraction requires a reversible chain")
