import math

import numpy as np
import pytest
from scipy.integrate import quad

from ergocert.bounds import rho_positive, rho_reversible
from ergocert.errors import InvalidParams, TruncationTooSmall
from ergocert.models import (
    INFIMUM_MEASURE,
    MT_MEASURE,
    ContractingNormal,
    MetropolisNormal,
    ReflectingWalk,
    _contracting_lambda,
    _mh_lambda_np,
    binomial_modification,
    contracting_coupling_input,
    contracting_params,
    mh_coupling_input,
    mh_normal_lambda,
    mh_normal_params,
    optimize_contracting_tuning,
    reflecting_walk_params,
    reflecting_walk_rho_exact,
    walk_truncated_chain,
)

SQRT2PI = math.sqrt(2.0 * math.pi)


# --- reflecting walk ---------------------------------------------------------


def test_walk_params_standard_boundary():
    p = reflecting_walk_params(ReflectingWalk(p=0.9))
    assert p.lam == pytest.approx(0.6, abs=1e-12)
    assert p.big_k == pytest.approx(1.2, abs=1e-12)
    assert p.beta == 0.9
    assert p.atomic and p.beta_tilde == 1.0


def test_walk_params_modified_boundary():
    p = reflecting_walk_params(ReflectingWalk(p=0.9, epsilon=0.25))
    assert p.lam == pytest.approx(0.6, abs=1e-12)
    assert p.big_k == pytest.approx(2.5, abs=1e-12)
    assert p.beta == 0.25


def test_walk_params_two_thirds():
    p = reflecting_walk_params(ReflectingWalk(p=2.0 / 3.0))
    assert p.lam == pytest.approx(2.0 * math.sqrt(2.0) / 3.0, abs=1e-14)


def test_walk_spec_validation():
    with pytest.raises(InvalidParams):
        ReflectingWalk(p=0.4)
    with pytest.raises(InvalidParams):
        ReflectingWalk(p=0.9, epsilon=0.95)


def test_exact_rate_branches():
    assert reflecting_walk_rho_exact(0.8, 0.25) == pytest.approx(0.4625 / 0.55, abs=1e-12)
    assert reflecting_walk_rho_exact(0.9, 0.25) == pytest.approx(0.5125 / 0.65, abs=1e-12)
    assert reflecting_walk_rho_exact(0.8, 0.5) == pytest.approx(0.8, abs=1e-12)


# --- Metropolis chain --------------------------------------------------------


def test_mh_lambda_is_one_without_weighting():
    for x in (0.0, 0.3, 1.0, 2.5, 4.0):
        assert mh_normal_lambda(x, 0.0) == pytest.approx(1.0, abs=1e-12)


def _mh_lambda_quadrature(x, s):
    """PV(x)/V(x) by direct integration of the accept/reject density.

    Integrands are evaluated in log space so the quadrature probes at huge
    |y| underflow to zero instead of overflowing exp(s|y|).
    """

    def log_density(y):
        value = -((y - x) ** 2) / 2.0 - math.log(SQRT2PI)
        if abs(y) > abs(x):
            value -= (y * y - x * x) / 2.0
        return value

    def weighted(y, weight_s):
        exponent = log_density(y) + weight_s * abs(y)
        return math.exp(exponent) if exponent > -700.0 else 0.0

    pieces = [(-np.inf, -abs(x)), (-abs(x), abs(x)), (abs(x), np.inf)]
    moved = total = 0.0
    for a, b in pieces:
        if a == b:
            continue
        m, _ = quad(weighted, a, b, args=(s,), limit=200)
        t, _ = quad(weighted, a, b, args=(0.0,), limit=200)
        moved += m
        total += t
    stay = 1.0 - total  # rejection mass stays at x
    return (moved + stay * math.exp(s * abs(x))) / math.exp(s * abs(x))


def test_mh_lambda_against_quadrature():
    rng = np.random.default_rng(7)
    for _ in range(20):
        x = rng.uniform(0.0, 3.0)
        s = rng.uniform(0.0, 1.5)
        closed = mh_normal_lambda(x, s)
        numeric = _mh_lambda_quadrature(x, s)
        assert abs(closed - numeric) <= 1e-6


def test_mh_lambda_vectorised_matches_scalar():
    rng = np.random.default_rng(11)
    xs = rng.uniform(0.0, 3.0, 50)
    ss = rng.uniform(0.01, 1.5, 50)
    vec = _mh_lambda_np(xs, ss)
    for x, s, v in zip(xs, ss, vec):
        assert abs(mh_normal_lambda(x, s) - v) <= 1e-12


def test_mh_params_mt_measure():
    p = mh_normal_params(1.4, 0.1, MT_MEASURE)
    # sqrt(2) exp(-1.96) [Phi(2 sqrt(0.98)...) - 1/2] evaluated at 40 digits.
    assert p.beta == pytest.approx(0.0948494497615255, abs=1e-12)
    assert p.beta == p.beta_tilde
    assert not p.atomic


def test_mh_params_infimum_measure():
    p = mh_normal_params(1.0, 0.11, INFIMUM_MEASURE)
    beta_expected = 2.0 * (0.9772498680518208 - 0.8413447460685429)  # Phi(2), Phi(1)
    assert p.beta == pytest.approx(beta_expected, abs=1e-10)
    assert p.beta_tilde > p.beta
    assert p.k_tilde is not None and p.k_tilde >= 1.0


def test_mh_table_anchor_reversible():
    p = mh_normal_params(1.0, 0.07, MT_MEASURE)
    assert abs((1.0 - rho_reversible(p).rho) - 0.0091) <= 0.0091 * 0.05


def test_mh_coupling_input_shape():
    c_in = mh_coupling_input(1.8, 1.1, MT_MEASURE)
    assert c_in.v_min_outside == pytest.approx(math.exp(1.1 * 1.8), rel=1e-12)
    assert c_in.b > 0.0


# --- contracting normals -----------------------------------------------------


def test_contracting_anchor_constants():
    p = contracting_params(0.5, 1.5)
    assert p.lam == pytest.approx(0.7115384615384616, abs=1e-12)
    assert p.big_k == pytest.approx(2.3125, abs=1e-12)
    assert p.beta_tilde == pytest.approx(0.3771014623117978, abs=1e-12)
    assert p.nu_info == "concentrated_on_c"


def test_contracting_lambda_boundary():
    # lambda < 1 exactly when c > 1; at c = 1 the raw formula gives 1.
    assert _contracting_lambda(0.5, 1.0) == pytest.approx(1.0, abs=1e-12)
    for c in (1.0 + 1e-9, 1.1, 3.0):
        assert _contracting_lambda(0.5, c) < 1.0
    with pytest.raises(InvalidParams):
        contracting_params(0.5, 1.0)


def test_contracting_lambda_large_c_limit():
    for theta in (0.3, 0.7):
        values = [_contracting_lambda(theta, c) for c in (10.0, 100.0, 1000.0)]
        gaps = [abs(v - theta * theta) for v in values]
        assert all(a > b for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] <= 1e-5


def test_contracting_coupling_requires_wide_set():
    with pytest.raises(InvalidParams):
        contracting_coupling_input(0.5, math.sqrt(2.0))
    c_in = contracting_coupling_input(0.5, 2.1)
    # 2 (1 - Phi(1.05/sqrt(0.75))) at 30 digits: 0.225345693701666827...
    assert c_in.beta_tilde == pytest.approx(0.2253456937016668, abs=1e-12)


# --- binomial modification ---------------------------------------------------


def test_binomial_modification_fields():
    base = contracting_params(0.5, 1.5)
    lazy = binomial_modification(base, sup_v_on_c=1.0 + 1.5**2)
    assert lazy.lam == pytest.approx((1.0 + base.lam) / 2.0, rel=1e-12)
    assert lazy.big_k == pytest.approx((3.25 + base.big_k) / 2.0, rel=1e-12)
    assert lazy.beta == pytest.approx(base.beta / 2.0, rel=1e-12)
    assert lazy.beta_tilde == pytest.approx(base.beta_tilde / 2.0, rel=1e-12)
    twice = binomial_modification(lazy, sup_v_on_c=3.25)
    assert twice.beta_tilde == pytest.approx(base.beta_tilde / 4.0, rel=1e-12)


def test_binomial_modification_preserves_atom():
    base = reflecting_walk_params(ReflectingWalk(p=0.6))
    lazy = binomial_modification(base, sup_v_on_c=1.0)
    assert lazy.atomic and lazy.beta_tilde == 1.0
    assert rho_positive(lazy).rho == pytest.approx((1.0 + base.lam) / 2.0, rel=1e-12)
    assert rho_positive(lazy).rho ** 2 == pytest.approx(0.9799, abs=1e-4)


def test_binomial_modification_contracting_anchor():
    lazy = binomial_modification(contracting_params(0.5, 1.5), sup_v_on_c=3.25)
    assert abs(rho_positive(lazy).rho ** 2 - 0.952) <= 0.002


# --- truncated chain ---------------------------------------------------------


def test_truncated_chain_stochastic_and_stationary():
    tc = walk_truncated_chain(ReflectingWalk(p=0.9), 128)
    rows = tc.matrix.sum(axis=1)
    assert np.abs(rows - 1.0).max() <= 1e-15
    assert np.abs(tc.pi @ tc.matrix - tc.pi).max() <= 1e-14
    assert tc.tail_mass < 1e-12
    assert tc.v[0] == 1.0 and (tc.v >= 1.0).all()


def test_truncated_chain_detailed_balance_and_boundary():
    p = 0.9
    tc = walk_truncated_chain(ReflectingWalk(p=p), 128)
    # pi(0) = 1 - q/p for the standard boundary, up to the removed tail.
    assert tc.pi[0] == pytest.approx(1.0 - (1.0 - p) / p, abs=1e-11)
    ratios = tc.pi[2:-1] / tc.pi[1:-2]
    assert np.abs(ratios - (1.0 - p) / p).max() <= 1e-12
    flows = tc.pi[:, None] * tc.matrix
    assert np.abs(flows - flows.T).max() <= 1e-15  # reversibility of the truncation


def test_truncation_too_small():
    with pytest.raises(TruncationTooSmall):
        walk_truncated_chain(ReflectingWalk(p=0.6), 16)


# --- tuning searches ---------------------------------------------------------


def test_optimize_contracting_matches_published_choice():
    res = optimize_contracting_tuning("thm1.3", theta=0.5, c_range=(1.05, 3.0))
    assert res["rho"] <= 0.897 + 0.002
    assert abs(res["c"] - 1.5) <= 0.25  # published tuning sits in this well
