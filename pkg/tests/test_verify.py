import json
import math

import numpy as np
import pytest

from ergocert.bounds import Certificate, certificate
from ergocert.errors import HypothesisViolated, InvalidParams, PeriodicSupport
from ergocert.models import ReflectingWalk, reflecting_walk_params, walk_truncated_chain
from ergocert.verify import (
    IncrementDistribution,
    certificate_domination,
    choose_truncation,
    increment_radius,
    kendall_check,
    kendall_family_radius,
    matrix_vnorm_distance,
    matrix_vnorm_distances,
    mc_regeneration,
    renewal_from_increments,
    run_kendall_suite,
    run_mc_suite,
    walk_empirical_rate,
)


# --- renewal oracle ----------------------------------------------------------


def test_point_mass_renewal():
    seq = renewal_from_increments(IncrementDistribution(probs=(1.0,)), 50)
    assert (seq.u == 1.0).all()
    assert seq.u_inf == 1.0


def test_hand_convolution():
    seq = renewal_from_increments(IncrementDistribution(probs=(0.5, 0.5)), 4)
    assert np.allclose(seq.u, [1.0, 0.5, 0.75, 0.625, 0.6875], atol=1e-15)
    assert seq.u_inf == pytest.approx(2.0 / 3.0, abs=1e-15)


def test_periodic_support_rejected():
    with pytest.raises(PeriodicSupport):
        IncrementDistribution(probs=(0.0, 0.5, 0.0, 0.5))


def test_distribution_validation():
    with pytest.raises(InvalidParams):
        IncrementDistribution(probs=(0.5, 0.4))
    with pytest.raises(InvalidParams):
        IncrementDistribution(probs=(1.2, -0.2))


def test_renewal_identity_convolution():
    # Coefficients of u(z) (1 - b(z)) must be (1, 0, 0, ...).
    rng = np.random.default_rng(3)
    probs = rng.dirichlet(np.ones(6))
    probs[0] += 0.05
    probs /= probs.sum()
    dist = IncrementDistribution(probs=tuple(probs))
    n_max = 60
    seq = renewal_from_increments(dist, n_max)
    b = np.concatenate([[0.0], dist.array])
    conv = np.convolve(seq.u, b)[: n_max + 1]
    identity = seq.u - conv
    assert abs(identity[0] - 1.0) <= 1e-12
    assert np.abs(identity[1:]).max() <= 1e-12


def test_u_tail_approaches_limit():
    dist = IncrementDistribution(probs=(0.6, 0.3, 0.1))
    seq = renewal_from_increments(dist, 200)
    assert seq.u[0] == 1.0
    assert (seq.u >= 0.0).all() and (seq.u <= 1.0).all()
    assert abs(seq.u_inf - 1.0 / dist.mean) <= 1e-15
    assert abs(seq.u[200] - seq.u_inf) < abs(seq.u[100] - seq.u_inf) + 1e-18
    assert abs(seq.u[200] - seq.u_inf) <= 1e-12


def test_family_decay_matches_root_radius():
    # Two-point increment family: the convolution's empirical decay must
    # reproduce the dominant-root radius once secondary modes die out.
    beta, k = 1.0 / 3.0, 40
    probs = np.zeros(k)
    probs[0] = beta
    probs[-1] = 1.0 - beta
    dist = IncrementDistribution(probs=tuple(probs))
    seq = renewal_from_increments(dist, 26_000)
    dev = np.abs(seq.u - seq.u_inf)
    early = dev[14_000 : 14_000 + 3 * k].max()
    late = dev[25_800 - 3 * k : 25_800].max()
    span = (25_800 - 3 * k) - 14_000
    emp_rate = (late / early) ** (1.0 / span)
    predicted = 2.0 * math.pi**2 * beta / (1.0 - beta) ** 2 / k**3
    assert abs((1.0 - emp_rate) / predicted - 1.0) <= 0.10


def test_family_radius_asymptotics():
    beta = 0.25
    for k in (20, 40, 80):
        measured = kendall_family_radius(beta, k) - 1.0
        predicted = 2.0 * math.pi**2 * beta / (1.0 - beta) ** 2 / k**3
        assert abs(measured / predicted - 1.0) <= 0.10


def test_kendall_check_passes_and_gates():
    dist = IncrementDistribution(probs=(0.9, 0.1))
    big_r = 1.5
    big_l = 0.9 * 1.5 + 0.1 * 1.5**2
    rep = kendall_check(dist, beta=0.9, big_r=big_r, big_l=big_l, r=1.05)
    assert rep["pass"]
    assert rep["measured_sup"] <= rep["bound"]
    with pytest.raises(HypothesisViolated):
        kendall_check(dist, beta=0.95, big_r=big_r, big_l=big_l, r=1.05)
    with pytest.raises(HypothesisViolated):
        kendall_check(dist, beta=0.9, big_r=big_r, big_l=1.5, r=1.05)


def test_kendall_suite_small_run():
    suite = run_kendall_suite(seed=11, cases=40)
    assert suite.passed
    good, total = suite.counts
    assert total == 42  # 40 random cases plus two asymptotics checks
    payload = json.dumps(suite.to_dict())
    assert '"margin"' in payload


# --- matrix oracle -----------------------------------------------------------


@pytest.fixture(scope="module")
def walk09_chain():
    return walk_truncated_chain(ReflectingWalk(p=0.9), 128)


def test_distance_at_time_zero(walk09_chain):
    tc = walk09_chain
    x = 4
    direct = float(np.abs(np.eye(tc.n_states)[x] - tc.pi) @ tc.v)
    assert matrix_vnorm_distance(tc, x, 0) == pytest.approx(direct, rel=1e-12)


def test_distances_nonincreasing_for_standard_walk(walk09_chain):
    dist = matrix_vnorm_distances(walk09_chain, 5, 80)
    assert (np.diff(dist) <= 1e-12).all()


def test_row_mass_preserved(walk09_chain):
    tc = walk09_chain
    row = np.eye(tc.n_states)[7]
    for n in range(1, 60):
        row = row @ tc.matrix
    assert abs(row.sum() - 1.0) <= 60 * 1e-13


def test_empirical_rate_modified_walk():
    tc = choose_truncation(ReflectingWalk(p=0.8, epsilon=0.25), x_max=30, n_max=200)
    rate = walk_empirical_rate(tc, x=0, n_lo=80, n_hi=160)
    assert abs(rate - 0.8409) <= 0.01


def test_domination_pass_and_control(walk09_chain):
    params = reflecting_walk_params(ReflectingWalk(p=0.9))
    cert = certificate(params, "reversible", gamma=0.8)
    report = certificate_domination(walk09_chain, cert, x_max=20, n_max=120)
    assert report.passed
    weak = Certificate(
        rho=cert.rho, gamma=cert.gamma, big_m=cert.big_m * 1e-3,
        symmetry=cert.symmetry, method=cert.method, params=cert.params,
        diagnostics=cert.diagnostics,
    )
    assert not certificate_domination(walk09_chain, weak, x_max=20, n_max=120).passed


def test_choose_truncation_stability():
    tc = choose_truncation(ReflectingWalk(p=2.0 / 3.0), x_max=30, n_max=200)
    assert tc.tail_mass < 1e-12
    assert tc.n_states >= 64


# --- Monte Carlo oracle ------------------------------------------------------


def test_mc_unit_radius_gives_unit_mean():
    rep = mc_regeneration(ReflectingWalk(p=0.9), x0=0, r=1.0, samples=2000, seed=5)
    assert rep.measured == 1.0


def test_mc_deterministic_for_fixed_seed():
    a = mc_regeneration(ReflectingWalk(p=0.9), x0=3, r=1.2, samples=5000, seed=9)
    b = mc_regeneration(ReflectingWalk(p=0.9), x0=3, r=1.2, samples=5000, seed=9)
    c = mc_regeneration(ReflectingWalk(p=0.9), x0=3, r=1.2, samples=5000, seed=10)
    assert a.measured == b.measured
    assert a.measured != c.measured


def test_mc_bound_selection():
    lam_inv = 1.0 / 0.6
    inside = mc_regeneration(ReflectingWalk(p=0.9), x0=0, r=lam_inv, samples=20_000, seed=1)
    assert inside.passed
    outside = mc_regeneration(ReflectingWalk(p=0.9), x0=3, r=lam_inv, samples=20_000, seed=1)
    assert outside.passed
    assert outside.bound > 26.9  # V(3) = 27 plus the standard-error allowance


def test_mc_suite_serialisable():
    suite = run_mc_suite(seed=1, samples=20_000)
    assert suite.passed
    data = json.loads(json.dumps(suite.to_dict()))
    assert data["suite"] == "mc"
    assert all(set(c) >= {"name", "measured", "bound", "margin", "pass"} for c in data["checks"])
