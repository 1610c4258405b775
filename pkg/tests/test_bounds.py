import math

import numpy as np
import pytest

from ergocert.bounds import (
    NU_CONCENTRATED,
    NU_V_INTEGRAL,
    DriftMinorization,
    big_l,
    certificate,
    derived_exponents,
    g_tilde_bound,
    l2_contraction,
    m_general,
    m_positive,
    m_reversible,
    prop41_bounds,
    prop44_bounds,
    rho_general,
    rho_positive,
    rho_reversible,
    _m_atomic_gamma,
    _m_atomic_r,
    _m_nonatomic_gamma,
    _m_nonatomic_r,
)
from ergocert.errors import GammaOutOfRange, InvalidParams, NotReversible, OutOfRange
from ergocert.kendall import k2_series_bound
from ergocert.models import (
    ContractingNormal,
    ReflectingWalk,
    contracting_params,
    mh_normal_params,
    reflecting_walk_params,
)
from ergocert.numerics import maximize_scalar

WALK_09 = reflecting_walk_params(ReflectingWalk(p=0.9))
WALK_23 = reflecting_walk_params(ReflectingWalk(p=2.0 / 3.0))
WALK_09_EPS = reflecting_walk_params(ReflectingWalk(p=0.9, epsilon=0.25))
CONTRACT = contracting_params(0.5, 1.5)


def test_validation_rejects_bad_constants():
    with pytest.raises(InvalidParams):
        DriftMinorization(lam=1.1, big_k=2.0, beta=0.5)
    with pytest.raises(InvalidParams):
        DriftMinorization(lam=0.5, big_k=0.9, beta=0.5)
    with pytest.raises(InvalidParams):
        DriftMinorization(lam=0.5, big_k=2.0, beta=0.5, beta_tilde=0.4, atomic=True)
    with pytest.raises(InvalidParams):
        DriftMinorization(lam=0.5, big_k=2.0, beta=0.6, beta_tilde=0.5, atomic=False)
    with pytest.raises(InvalidParams):
        DriftMinorization(
            lam=0.5, big_k=2.0, beta=0.3, beta_tilde=0.5, atomic=False,
            nu_info=NU_V_INTEGRAL, k_tilde=0.5,
        )


def test_derived_exponents_contracting_anchor():
    de = derived_exponents(CONTRACT)
    assert abs(de.alpha1 - 4.3312) <= 2e-3
    assert abs(de.r0 - 1.11548) <= 5e-4
    assert de.alpha2 == 1.0  # measure concentrated on C


def test_derived_exponents_invariants():
    for p in (CONTRACT, mh_normal_params(1.0, 0.07), mh_normal_params(1.0, 0.11, "infimum_measure")):
        de = derived_exponents(p)
        assert de.alpha1 >= 1.0
        assert de.alpha2 >= 1.0
        assert 1.0 < de.r0 <= p.lam_inv + 1e-15


def test_derived_exponents_v_integral_branch():
    p = DriftMinorization(
        lam=0.5, big_k=2.0, beta=0.2, beta_tilde=0.4, atomic=False,
        nu_info=NU_V_INTEGRAL, k_tilde=1.5,
    )
    de = derived_exponents(p)
    assert abs(de.alpha2 - (1.0 + math.log(1.5) / math.log(2.0))) <= 1e-12


def test_r0_limit_as_minorization_saturates():
    # As beta_tilde -> 1 the envelope pole tends to 1/lambda, with a gap
    # that shrinks like 1/log(1/(1 - beta_tilde)).
    lam, big_k = 0.5, 2.0
    log_li = math.log(1.0 / lam)
    gaps = []
    for j in range(3, 10):
        bt = 1.0 - 10.0**-j
        p = DriftMinorization(lam=lam, big_k=big_k, beta=0.1, beta_tilde=bt, atomic=False)
        de = derived_exponents(p)
        a1 = 1.0 + math.log((big_k - bt) / (1.0 - bt)) / log_li
        assert abs(de.alpha1 - a1) <= 1e-12
        pole = (1.0 - bt) ** (-1.0 / de.alpha1)
        gaps.append((j, abs(pole - 1.0 / lam)))
    assert all(a >= b for (_, a), (_, b) in zip(gaps, gaps[1:]))
    for j, gap in gaps[3:]:
        t = j * math.log(10.0)
        predicted = (1.0 / lam) * log_li * (log_li + math.log(big_k - 1.0)) / t
        assert abs(gap / predicted - 1.0) <= 0.15


def test_big_l_limits_and_pole():
    assert abs(big_l(1.0 + 1e-12, CONTRACT) - 1.0) <= 1e-9
    de = derived_exponents(CONTRACT)
    pole = (1.0 - CONTRACT.beta_tilde) ** (-1.0 / de.alpha1)
    assert big_l(pole - 1e-9, CONTRACT) > 1e6
    with pytest.raises(OutOfRange):
        big_l(pole * (1.0 + 1e-12), CONTRACT)
    assert big_l(de.r0 * 0.999, CONTRACT) > 0.0


def test_rho_general_benchmarks():
    assert abs(rho_general(WALK_09).rho - 0.9060) <= 1e-4
    assert abs(rho_general(WALK_23).rho - 0.9994) <= 1e-4


def test_rho_exceeds_drift_rate():
    for p in (WALK_09, WALK_23, WALK_09_EPS, CONTRACT):
        assert rho_general(p).rho > p.lam


def test_rho_reversible_benchmarks():
    assert abs(rho_reversible(WALK_09_EPS).rho - 0.8470) <= 1e-4
    eps_05 = reflecting_walk_params(ReflectingWalk(p=0.8, epsilon=0.5))
    assert abs(rho_reversible(eps_05).rho - 0.8000) <= 1e-9
    assert abs(rho_reversible(CONTRACT).rho - 0.950) <= 5e-4


def test_rho_positive_benchmarks():
    assert rho_positive(WALK_09).rho == 0.6
    assert abs(rho_positive(CONTRACT).rho - 0.897) <= 1e-3
    mh = mh_normal_params(1.1, 0.16)
    assert abs((1.0 - rho_positive(mh).rho) - 0.0253) <= 0.0253 * 0.02


def test_rate_ordering_positive_below_reversible():
    for p in (WALK_09, WALK_23, WALK_09_EPS, CONTRACT, mh_normal_params(1.0, 0.07)):
        assert rho_positive(p).rho <= rho_reversible(p).rho + 1e-12


def test_rate_ordering_reversible_below_general_on_benchmarks():
    for p in (WALK_09, WALK_23, WALK_09_EPS, CONTRACT):
        assert rho_reversible(p).rho <= rho_general(p).rho + 1e-12


def _random_atomic(rng):
    lam = rng.uniform(0.1, 0.9)
    big_k = 1.0 + rng.uniform(0.01, 3.0)
    beta = rng.uniform(0.05, 1.0)
    gamma = rng.uniform(lam + 0.02 * (1.0 - lam), 0.995)
    k_factor = rng.uniform(0.5, 100.0)
    return lam, big_k, gamma, k_factor


def test_m_atomic_two_forms_agree():
    rng = np.random.default_rng(101)
    for _ in range(100):
        lam, big_k, gamma, k_factor = _random_atomic(rng)
        a = _m_atomic_gamma(lam, big_k, gamma, k_factor)
        b = _m_atomic_r(lam, big_k, 1.0 / gamma, k_factor)
        assert abs(a - b) <= 1e-12 * max(a, b)


def test_m_nonatomic_two_forms_agree():
    rng = np.random.default_rng(202)
    for _ in range(100):
        lam = rng.uniform(0.1, 0.9)
        big_k = 1.0 + rng.uniform(0.01, 3.0)
        bt = rng.uniform(0.05, 0.95)
        a1 = 1.0 + math.log((big_k - bt) / (1.0 - bt)) / math.log(1.0 / lam) if big_k > bt else 1.0
        a2 = 1.0 + rng.uniform(0.0, 2.0)
        lower = max(lam, (1.0 - bt) ** (1.0 / a1))
        gamma = rng.uniform(lower + 0.02 * (1.0 - lower), 0.995)
        k_factor = rng.uniform(0.5, 100.0)
        a = _m_nonatomic_gamma(lam, big_k, bt, a1, a2, gamma, k_factor)
        b = _m_nonatomic_r(lam, big_k, bt, a1, a2, 1.0 / gamma, k_factor)
        assert abs(a - b) <= 1e-12 * max(a, b)


def test_m_general_finite_and_diverges_at_rho():
    rho = rho_general(WALK_09).rho
    gammas = [rho + 1e-6, rho + 1e-4, rho + 1e-2, 0.99]
    values = [m_general(WALK_09, g) for g in gammas]
    assert all(math.isfinite(v) and v > 0.0 for v in values)
    assert values[0] > values[1] > values[2]  # blows up toward rho


def test_m_decreasing_on_lower_gamma_range():
    # M has poles at both gamma = rho and gamma = 1 (the series factor
    # behaves like 1/(1/gamma - 1) there), so monotonicity holds only on
    # the rho side of the trough; test the first third of the interval.
    for p, rho_fn, m_fn in (
        (WALK_09, rho_general, m_general),
        (WALK_09_EPS, rho_reversible, m_reversible),
        (CONTRACT, rho_positive, m_positive),
    ):
        rho = rho_fn(p).rho
        grid = np.linspace(rho + 0.02 * (1.0 - rho), rho + 0.35 * (1.0 - rho), 12)
        values = [m_fn(p, g) for g in grid]
        assert all(math.isfinite(v) for v in values)
        assert all(a >= b - 1e-9 for a, b in zip(values, values[1:]))


def test_m_gamma_validation():
    with pytest.raises(GammaOutOfRange):
        m_general(WALK_09, 0.5)
    with pytest.raises(GammaOutOfRange):
        m_reversible(WALK_09, 1.0)


def test_m_reversible_uses_series_bound():
    rho = rho_reversible(WALK_09).rho
    gamma = 0.8
    expected_k2 = k2_series_bound(1.0 / gamma, 1.0 / rho, 1.0)
    direct = _m_atomic_gamma(WALK_09.lam, WALK_09.big_k, gamma, expected_k2)
    assert abs(m_reversible(WALK_09, gamma) - direct) <= 1e-12 * direct


def test_m_reversible_below_general_when_k2_smaller():
    for p in (WALK_09, WALK_09_EPS):
        rho_g = rho_general(p).rho
        gamma = 0.5 * (1.0 + rho_g)
        cert_g = certificate(p, "general", gamma)
        cert_r = certificate(p, "reversible", gamma)
        if cert_r.diagnostics["k_factor"] <= cert_g.diagnostics["k_factor"]:
            assert cert_r.big_m <= cert_g.big_m


def test_prop41_bounds_values():
    p = WALK_09
    r = p.lam_inv * (1.0 - 1e-12)
    inside = prop41_bounds(r, p, v_x=1.0, x_in_c=True)
    assert abs(inside["g_bound"] - p.lam_inv * p.big_k) <= 1e-6
    outside = prop41_bounds(r, p, v_x=27.0, x_in_c=False)
    assert outside["g_bound"] == 27.0
    r = 1.2
    q = 1.0 - r * p.lam
    inside = prop41_bounds(r, p, v_x=1.0, x_in_c=True)
    assert inside["h_bound"] == pytest.approx(r * (p.big_k - r * p.lam) / q, rel=1e-12)
    assert inside["h_diff_bound"] == pytest.approx(
        p.lam * r * (p.big_k - 1.0) / ((1.0 - p.lam) * q), rel=1e-12
    )
    outside = prop41_bounds(r, p, v_x=9.0, x_in_c=False)
    assert outside["h_bound"] == pytest.approx(r * p.lam * 9.0 / q, rel=1e-12)
    with pytest.raises(OutOfRange):
        prop41_bounds(p.lam_inv * 1.01, p, v_x=1.0, x_in_c=True)


def test_prop44_bounds_structure():
    p = CONTRACT
    de = derived_exponents(p)
    r = 1.0 + 0.5 * (de.r0 - 1.0)
    vals = prop44_bounds(r, p)
    assert vals["gbar_a1"] == pytest.approx(big_l(r, p), rel=1e-12)
    assert vals["g_tilde"] == pytest.approx(r**de.alpha1, rel=1e-12)
    # r -> 1 limits: gbar -> 1 and hbar -> (K - lambda)/((1-lambda) beta_tilde).
    near = prop44_bounds(1.0 + 1e-8, p)
    assert abs(near["gbar_a1"] - 1.0) <= 1e-6
    limit = (p.big_k - p.lam) / ((1.0 - p.lam) * p.beta_tilde)
    assert abs(near["hbar_a1"] - limit) <= 1e-5 * limit
    assert g_tilde_bound(p.lam_inv, p) == pytest.approx(p.lam_inv**de.alpha1, rel=1e-12)
    with pytest.raises(OutOfRange):
        prop44_bounds(de.r0 * 1.01, p)


def test_radius_search_matches_dense_rescan():
    # Nonatomic-flavoured variant of the modified-boundary walk constants:
    # the tuned-envelope objective has an interior maximum, which a dense
    # 10^4-point rescan must confirm.
    from ergocert.kendall import KendallParams, solve_r1

    p = DriftMinorization(lam=0.6, big_k=2.5, beta=0.25, beta_tilde=0.5, atomic=False)
    de = derived_exponents(p)

    def objective(big_r):
        denominator = 1.0 - (1.0 - p.beta_tilde) * big_r**de.alpha1
        big_l_val = p.beta_tilde * big_r**de.alpha2 / denominator
        return solve_r1(KendallParams(beta=p.beta, big_r=big_r, big_l=max(big_l_val, big_r)))

    lo, hi = 1.0 + 1e-9, de.r0 - 1e-9
    argmax, value = maximize_scalar(objective, lo, hi)
    assert lo + 1e-6 < argmax < hi - 1e-6  # interior
    dense = max(objective(x) for x in np.linspace(lo, hi, 10_000))
    assert value >= dense - 1e-9
    assert abs(value - dense) <= 1e-5


def test_certificate_dispatch_and_default_gamma():
    cert = certificate(WALK_09, "reversible-positive", gamma=0.8)
    assert cert.rho == 0.6
    assert abs(cert.big_m - 28.125) <= 1e-9  # closed form at gamma = 0.8
    defaulted = certificate(WALK_09, "reversible-positive")
    assert defaulted.gamma == 0.5 * (1.0 + defaulted.rho)
    assert certificate(WALK_09, "general").rho >= cert.rho
    with pytest.raises(InvalidParams):
        certificate(WALK_09, "sideways")


def test_certificate_dict_schema():
    data = certificate(WALK_09_EPS, "reversible").to_dict()
    for key in ("method", "lambda", "K", "beta", "beta_tilde", "atomic", "symmetry",
                "rho", "gamma", "M", "diagnostics"):
        assert key in data
    assert data["atomic"] is True
    assert data["diagnostics"]["k_factor_kind"] == "K2"


def test_l2_contraction():
    assert l2_contraction(WALK_09, "reversible-positive") == 0.6
    assert abs(l2_contraction(contracting_params(0.75, 1.2), "reversible") - 0.9958) <= 5e-4
    with pytest.raises(NotReversible):
        l2_contraction(WALK_09, "general")
