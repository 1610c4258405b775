"""Independent oracles for the certified bounds.

Nothing in this module reuses the closed-form machinery it checks:

  * renewal sequences come from direct convolution of the increments, and
    decay rates from the roots of the increment polynomial;
  * distances to stationarity come from exact truncated transition matrices;
  * regeneration-time moments come from Monte Carlo simulation with a
    counter-based generator (reproducible for a fixed seed).

Reports follow one shape (name, measured, bound, margin, pass) and are
JSON-serialisable, so suites can be consumed by the CLI or by tests alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import kendall as kendall_mod
from .bounds import Certificate
from .errors import (
    HypothesisViolated,
    InvalidParams,
    OutOfRange,
    PeriodicSupport,
    TruncationTooSmall,
)
from .kendall import KendallParams
from .models import (
    ReflectingWalk,
    TruncatedChain,
    reflecting_walk_params,
    reflecting_walk_rho_exact,
    walk_truncated_chain,
)

__all__ = [
    "IncrementDistribution",
    "RenewalSequence",
    "CheckReport",
    "SuiteReport",
    "renewal_from_increments",
    "increment_radius",
    "kendall_family_radius",
    "kendall_check",
    "matrix_vnorm_distance",
    "matrix_vnorm_distances",
    "certificate_domination",
    "walk_empirical_rate",
    "choose_truncation",
    "mc_regeneration",
    "run_kendall_suite",
    "run_matrix_suite",
    "run_mc_suite",
    "run_all_suites",
]


@dataclass(frozen=True)
class IncrementDistribution:
    """Finite-support law of a positive-integer increment: probs[k] = b_{k+1}."""

    probs: tuple

    def __post_init__(self) -> None:
        b = np.asarray(self.probs, dtype=float)
        if b.ndim != 1 or b.size == 0:
            raise InvalidParams("probs must be a nonempty 1-D sequence")
        if (b < 0.0).any():
            raise InvalidParams("probabilities must be nonnegative")
        if abs(b.sum() - 1.0) > 1e-12:
            raise InvalidParams(f"probabilities must sum to 1, got {b.sum()!r}")
        support = [k + 1 for k, w in enumerate(b) if w > 0.0]
        if math.gcd(*support) != 1:
            raise PeriodicSupport(f"gcd of support {support} exceeds 1")

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)

    @property
    def mean(self) -> float:
        b = self.array
        return float(np.dot(np.arange(1, b.size + 1), b))

    def generating_value(self, z: float) -> float:
        """b(z) = sum b_k z^k."""
        b = self.array
        return float(np.dot(b, np.power(z, np.arange(1, b.size + 1))))


@dataclass(frozen=True)
class RenewalSequence:
    """u_0..u_N by convolution plus the elementary-renewal limit."""

    u: np.ndarray
    u_inf: float


@dataclass(frozen=True)
class CheckReport:
    name: str
    measured: float
    bound: float
    passed: bool
    detail: str = ""

    @property
    def margin(self) -> float:
        """Relative slack: positive means the bound holds with room."""
        scale = max(abs(self.bound), 1e-300)
        return (self.bound - self.measured) / scale

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": self.measured,
            "bound": self.bound,
            "margin": self.margin,
            "pass": self.passed,
            "detail": self.detail,
        }


@dataclass
class SuiteReport:
    name: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def counts(self) -> tuple[int, int]:
        good = sum(1 for c in self.checks if c.passed)
        return good, len(self.checks)

    def to_dict(self) -> dict:
        good, total = self.counts
        return {
            "suite": self.name,
            "pass": self.passed,
            "passed_checks": good,
            "total_checks": total,
            "checks": [c.to_dict() for c in self.checks],
        }


# ---------------------------------------------------------------------------
# renewal-sequence oracle
# ---------------------------------------------------------------------------


def renewal_from_increments(b: IncrementDistribution, n_max: int) -> RenewalSequence:
    """u_n = sum_{k<=n} b_k u_{n-k} with u_0 = 1; u_inf = 1 / mean increment."""
    if n_max < 1:
        raise InvalidParams("n_max must be >= 1")
    probs = b.array
    m = probs.size
    u = np.zeros(n_max + 1)
    u[0] = 1.0
    for n in range(1, n_max + 1):
        k = min(n, m)
        u[n] = np.dot(probs[:k], u[n - 1 :: -1][:k])
    return RenewalSequence(u=u, u_inf=1.0 / b.mean)


def increment_radius(b: IncrementDistribution) -> float:
    """Exact radius of convergence of sum (u_n - u_inf) z^n.

    For a finite-support aperiodic increment law, u(z) = 1/(1 - b(z)) is
    rational; after removing the simple root at z = 1 the nearest remaining
    root of b(z) = 1 determines the radius.
    """
    probs = b.array
    coeffs = np.concatenate([probs[::-1], [-1.0]])  # b(z) - 1, highest power first
    roots = np.roots(coeffs)
    others = roots[np.abs(roots - 1.0) > 1e-7]
    if others.size == 0:
        return math.inf  # point mass at 1: u_n is constant
    return float(np.abs(others).min())


def kendall_family_radius(beta: float, k: int) -> float:
    """Radius for the two-point family b(z) = beta z + (1-beta) z^k."""
    if not (0.0 < beta < 1.0) or k < 2:
        raise InvalidParams("need 0 < beta < 1 and k >= 2")
    probs = np.zeros(k)
    probs[0] = beta
    probs[-1] = 1.0 - beta
    return increment_radius(IncrementDistribution(probs=tuple(probs)))


def _series_sup_on_circle(deviations: np.ndarray, r: float, n_angles: int = 64) -> float:
    """max over sampled |z| = r of |sum_n deviations[n] z^n| (plus z = +-r)."""
    n = np.arange(deviations.size)
    radial = deviations * np.power(r, n)
    angles = np.linspace(0.0, 2.0 * math.pi, n_angles, endpoint=False)
    phases = np.exp(1j * np.outer(n, angles))
    values = radial @ phases
    on_axis = [abs(radial.sum()), abs(np.dot(radial, np.power(-1.0, n)))]
    return float(max(np.abs(values).max(), *on_axis))


def kendall_check(
    b: IncrementDistribution,
    beta: float,
    big_r: float,
    big_l: float,
    r: float,
    n_max: int = 1200,
) -> dict:
    """Check the certified radius and series bound against this increment law.

    Requires b_1 >= beta and sum b_k R^k <= L (HypothesisViolated otherwise)
    and r below the certified radius. The reported decay rate is exact (from
    the increment-polynomial roots); the series sup is the truncated sum on
    64 sampled angles of |z| = r plus the two real axis points, topped with
    a geometric tail majorant.
    """
    probs = b.array
    if probs[0] < beta:
        raise HypothesisViolated(f"b_1 = {probs[0]} < beta = {beta}")
    powers = np.power(big_r, np.arange(1, probs.size + 1))
    if np.dot(probs, powers) > big_l * (1.0 + 1e-12):
        raise HypothesisViolated(
            f"sum b_k R^k = {np.dot(probs, powers)} exceeds L = {big_l}"
        )
    kp = KendallParams(beta=beta, big_r=big_r, big_l=big_l)
    r1 = kendall_mod.solve_r1(kp)
    if not (1.0 < r < r1):
        raise OutOfRange(f"need 1 < r < R1 = {r1}, got r={r}")

    rate = 1.0 / increment_radius(b)
    seq = renewal_from_increments(b, n_max)
    deviations = seq.u - seq.u_inf
    # The convolution resolves u_n - u_inf only down to a few ulp; beyond
    # that the values are rounding noise, and noise * r^n would grow without
    # meaning. Cut the series where the true deviations sink below float
    # visibility and majorise the remainder geometrically.
    floor = 64.0 * np.finfo(float).eps
    significant = np.flatnonzero(np.abs(deviations) > floor)
    cutoff = int(significant[-1]) if significant.size else 0
    kept = deviations[: cutoff + 1]
    truncated = _series_sup_on_circle(kept, r)
    # Envelope |u_n - u_inf| <= c * rate^n fitted on the last resolved
    # window; rate * r < 1 is automatic because r < R1 <= radius.
    window = np.abs(kept[-max(probs.size * 2, 16) :])
    n_window = np.arange(kept.size - window.size, kept.size)
    tail = 0.0
    if rate > 0.0:
        with np.errstate(divide="ignore", invalid="ignore"):
            c_env = float(np.max(window / np.power(rate, n_window)))
        if math.isfinite(c_env) and rate * r < 1.0:
            tail = c_env * (rate * r) ** (cutoff + 1) / (1.0 - rate * r)
    measured_sup = truncated + tail
    bound = kendall_mod.k1(r, kp)
    rate_bound = 1.0 / r1 + 1e-6
    passed = (measured_sup <= bound) and (rate <= rate_bound)
    return {
        "measured_sup": measured_sup,
        "bound": bound,
        "decay_rate": rate,
        "decay_bound": rate_bound,
        "pass": passed,
    }


def _sample_admissible(rng: np.random.Generator) -> tuple:
    """One random increment law together with admissible (beta, R, L, r)."""
    while True:
        m = int(rng.integers(2, 9))
        raw = rng.dirichlet(np.ones(m))
        b1 = 0.15 + 0.7 * rng.random()
        probs = np.empty(m)
        probs[0] = b1
        rest = raw[1:].sum()
        probs[1:] = raw[1:] * ((1.0 - b1) / rest) if rest > 0 else (1.0 - b1) / (m - 1)
        dist = IncrementDistribution(probs=tuple(probs))
        if 1.0 / increment_radius(dist) > 0.96:
            continue  # keep tails resolvable at the fixed truncation length
        beta = probs[0] * (0.6 + 0.4 * rng.random())
        big_r = 1.0 + 0.05 + 0.4 * rng.random()
        exact = float(np.dot(probs, np.power(big_r, np.arange(1, m + 1))))
        big_l = exact * (1.0 + 0.3 * rng.random())
        r1 = kendall_mod.solve_r1(KendallParams(beta=beta, big_r=big_r, big_l=big_l))
        r = 1.0 + 0.9 * (r1 - 1.0)
        return dist, beta, big_r, big_l, r


def run_kendall_suite(seed: int = 0, cases: int = 200, asymptotic_ks=(40, 80)) -> SuiteReport:
    """Randomised soundness checks plus the cubic-law radius asymptotics."""
    rng = np.random.Generator(np.random.Philox(seed))
    suite = SuiteReport(name="kendall")
    for i in range(cases):
        dist, beta, big_r, big_l, r = _sample_admissible(rng)
        rep = kendall_check(dist, beta, big_r, big_l, r)
        suite.checks.append(
            CheckReport(
                name=f"random-increments-{i:03d}",
                measured=rep["measured_sup"],
                bound=rep["bound"],
                passed=rep["pass"],
                detail=f"decay {rep['decay_rate']:.6f} vs {rep['decay_bound']:.6f}",
            )
        )
    family_beta = 0.25
    for k in asymptotic_ks:
        measured = kendall_family_radius(family_beta, k) - 1.0
        predicted = 2.0 * math.pi**2 * family_beta / (1.0 - family_beta) ** 2 / k**3
        rel_err = abs(measured / predicted - 1.0)
        suite.checks.append(
            CheckReport(
                name=f"radius-asymptotics-k{k}",
                measured=rel_err,
                bound=0.10,
                passed=rel_err <= 0.10,
                detail=f"radius-1 = {measured:.3e}, cubic-law prediction {predicted:.3e}",
            )
        )
    return suite


# ---------------------------------------------------------------------------
# truncated-matrix oracle
# ---------------------------------------------------------------------------


def matrix_vnorm_distances(tc: TruncatedChain, x: int, n_max: int) -> np.ndarray:
    """V-weighted distances sum_y V(y) |P^n(x,y) - pi(y)| for n = 0..n_max.

    Iterates the deviation vector e_n = (delta_x - pi) P^n directly, so
    accuracy is relative to the decaying deviation rather than to the full
    probability scale. The stationary component that rounding injects is
    projected out each step (rows of P sum to one, so exact arithmetic
    would preserve sum(e) = 0).
    """
    if not (0 <= x < tc.n_states):
        raise InvalidParams(f"state {x} outside truncation of size {tc.n_states}")
    if n_max < 0:
        raise InvalidParams("n_max must be >= 0")
    e = -tc.pi.copy()
    e[x] += 1.0
    out = np.empty(n_max + 1)
    out[0] = float(np.abs(e) @ tc.v)
    for n in range(1, n_max + 1):
        e = e @ tc.matrix
        e -= e.sum() * tc.pi
        out[n] = float(np.abs(e) @ tc.v)
    return out


def matrix_vnorm_distance(tc: TruncatedChain, x: int, n: int) -> float:
    """Single-time V-weighted distance (see ``matrix_vnorm_distances``)."""
    return float(matrix_vnorm_distances(tc, x, n)[n])


def certificate_domination(
    tc: TruncatedChain,
    cert: Certificate,
    x_max: int,
    n_max: int,
    name: str = "domination",
) -> CheckReport:
    """Check distance(x, n) <= M V(x) gamma^n for all x <= x_max, n <= n_max.

    The reported measured/bound pair belongs to the worst (x, n); a ratio
    above one anywhere fails the check.
    """
    worst_ratio = -math.inf
    worst = (0, 0, 0.0, math.inf)
    powers = np.power(cert.gamma, np.arange(n_max + 1))
    for x in range(min(x_max, tc.n_states - 1) + 1):
        dist = matrix_vnorm_distances(tc, x, n_max)
        envelope = cert.big_m * tc.v[x] * powers
        ratios = dist / envelope
        i = int(np.argmax(ratios))
        if ratios[i] > worst_ratio:
            worst_ratio = float(ratios[i])
            worst = (x, i, float(dist[i]), float(envelope[i]))
    x, n, measured, bound = worst
    return CheckReport(
        name=name,
        measured=measured,
        bound=bound,
        passed=worst_ratio <= 1.0,
        detail=f"worst at x={x}, n={n}, ratio {worst_ratio:.3e}",
    )


def walk_empirical_rate(tc: TruncatedChain, x: int, n_lo: int, n_hi: int) -> float:
    """Geometric-mean decay ratio of the distances over [n_lo, n_hi]."""
    if not (0 <= n_lo < n_hi):
        raise InvalidParams("need 0 <= n_lo < n_hi")
    dist = matrix_vnorm_distances(tc, x, n_hi)
    return float((dist[n_hi] / dist[n_lo]) ** (1.0 / (n_hi - n_lo)))


def choose_truncation(
    spec: ReflectingWalk,
    x_max: int,
    n_max: int,
    start: int = 64,
    max_states: int = 4096,
) -> TruncatedChain:
    """Smallest power-of-two truncation whose tail and top-row influence are
    negligible: stationary tail below 1e-12 and doubling the state count
    moves the probed distances by less than one part in 1e-9."""
    n = max(start, x_max + 2)
    probes = [k for k in (25, 50, 100, n_max) if k <= n_max]
    while n <= max_states:
        try:
            tc = walk_truncated_chain(spec, n)
            tc2 = walk_truncated_chain(spec, 2 * n)
        except TruncationTooSmall:
            n *= 2
            continue
        d1 = matrix_vnorm_distances(tc, x_max, n_max)
        d2 = matrix_vnorm_distances(tc2, x_max, n_max)
        stable = all(
            abs(d1[k] - d2[k]) <= 1e-9 * max(d1[k], d2[k], 1e-290) for k in probes
        )
        if stable:
            return tc2
        n *= 2
    raise TruncationTooSmall(f"no stable truncation below {max_states} states")


# ---------------------------------------------------------------------------
# Monte Carlo regeneration oracle
# ---------------------------------------------------------------------------


def mc_regeneration(
    spec: ReflectingWalk,
    x0: int,
    r: float,
    samples: int = 100_000,
    seed: int = 0,
) -> CheckReport:
    """Estimate E^x0[r^tau] for the walk and compare with the drift bound.

    tau is the first return time to C = {0}. The bound is r*K for x0 in C
    and V(x0) otherwise, valid for 1 <= r <= 1/lambda; the check passes when
    the sample mean stays within three standard errors of it. Philox keeps
    runs reproducible for a fixed seed.
    """
    params = reflecting_walk_params(spec)
    if not (1.0 <= r <= params.lam_inv * (1.0 + 1e-12)):
        raise OutOfRange(f"need 1 <= r <= 1/lambda = {params.lam_inv}, got r={r}")
    if samples < 1:
        raise InvalidParams("samples must be >= 1")
    p = spec.p
    eps = spec.boundary_hold
    rng = np.random.Generator(np.random.Philox(seed))

    pos = np.full(samples, x0, dtype=np.int64)
    tau = np.zeros(samples, dtype=np.int64)
    alive = np.ones(samples, dtype=bool)
    step = 0
    while alive.any():
        step += 1
        if step > 10_000_000:
            raise RuntimeError("walk failed to return; parameters out of range?")
        idx = np.flatnonzero(alive)
        u = rng.random(idx.size)
        cur = pos[idx]
        at_zero = cur == 0
        nxt = np.where(
            at_zero,
            np.where(u < eps, 0, 1),
            np.where(u < p, cur - 1, cur + 1),
        )
        pos[idx] = nxt
        returned = nxt == 0
        tau[idx[returned]] = step
        alive[idx[returned]] = False

    values = np.power(r, tau.astype(float))
    mean = float(values.mean())
    std_err = float(values.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    if x0 == 0:
        bound = r * params.big_k
        where = "x0 in C"
    else:
        q = 1.0 - p
        bound = (p / q) ** (x0 / 2.0)
        where = "x0 outside C"
    return CheckReport(
        name=f"regeneration-p{p}-x{x0}",
        measured=mean,
        bound=bound + 3.0 * std_err,
        passed=mean <= bound + 3.0 * std_err,
        detail=f"{where}; mean r^tau = {mean:.6f}, drift bound {bound:.6f}, SE {std_err:.2e}",
    )


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _walk_certificates(spec: ReflectingWalk, symmetries: Iterable[str]):
    from .bounds import certificate

    params = reflecting_walk_params(spec)
    return [certificate(params, symmetry) for symmetry in symmetries]


def run_matrix_suite(x_max: int = 30, n_max: int = 200) -> SuiteReport:
    """Domination and exact-rate checks on the walk benchmarks.

    The standard-boundary walks are stochastically monotone, so all three
    regimes apply. The modified-boundary walk is reversible but its exact
    rate exceeds lambda (it is nearly periodic), so only the general and
    reversible certificates are meaningful there.
    """
    suite = SuiteReport(name="matrix")
    cases = [
        (ReflectingWalk(p=2.0 / 3.0), ("general", "reversible", "reversible-positive")),
        (ReflectingWalk(p=0.9), ("general", "reversible", "reversible-positive")),
        (ReflectingWalk(p=0.8, epsilon=0.25), ("general", "reversible")),
    ]
    for spec, symmetries in cases:
        tc = choose_truncation(spec, x_max, n_max)
        label = f"p{spec.p:.4g}" + ("" if spec.epsilon is None else f"-eps{spec.epsilon}")
        for cert in _walk_certificates(spec, symmetries):
            suite.checks.append(
                certificate_domination(
                    tc, cert, x_max, n_max, name=f"domination-{label}-{cert.symmetry}"
                )
            )
    # Falsification control: shrinking M by 1e3 must break domination.
    spec = ReflectingWalk(p=0.9)
    tc = choose_truncation(spec, x_max, n_max)
    cert = _walk_certificates(spec, ("reversible",))[0]
    crippled = Certificate(
        rho=cert.rho,
        gamma=cert.gamma,
        big_m=cert.big_m * 1e-3,
        symmetry=cert.symmetry,
        method=cert.method,
        params=cert.params,
        diagnostics=cert.diagnostics,
    )
    control = certificate_domination(tc, crippled, x_max, n_max, name="control-shrunk-M")
    suite.checks.append(
        CheckReport(
            name=control.name,
            measured=control.measured,
            bound=control.bound,
            passed=not control.passed,
            detail="harness sanity: weakened certificate must fail; " + control.detail,
        )
    )
    # Exact-rate agreement for the modified-boundary walks.
    for p, eps in ((0.8, 0.25), (0.9, 0.25)):
        spec = ReflectingWalk(p=p, epsilon=eps)
        tc = choose_truncation(spec, x_max, n_max)
        expected = reflecting_walk_rho_exact(p, eps)
        measured = walk_empirical_rate(tc, x=0, n_lo=80, n_hi=160)
        suite.checks.append(
            CheckReport(
                name=f"exact-rate-p{p}-eps{eps}",
                measured=abs(measured - expected),
                bound=0.01,
                passed=abs(measured - expected) <= 0.01,
                detail=f"empirical {measured:.6f} vs exact {expected:.6f}",
            )
        )
    return suite


def run_mc_suite(seed: int = 0, samples: int = 100_000) -> SuiteReport:
    """Regeneration-time moment checks at r = 1/lambda."""
    suite = SuiteReport(name="mc")
    for p in (2.0 / 3.0, 0.9):
        spec = ReflectingWalk(p=p)
        lam_inv = 1.0 / (2.0 * math.sqrt(p * (1.0 - p)))
        for x0 in (0, 3):
            suite.checks.append(
                mc_regeneration(spec, x0=x0, r=lam_inv, samples=samples, seed=seed + x0)
            )
    return suite


def run_all_suites(seed: int = 0) -> list[SuiteReport]:
    return [run_kendall_suite(seed=seed), run_matrix_suite(), run_mc_suite(seed=seed)]
