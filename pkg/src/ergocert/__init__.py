"""Explicit geometric-convergence certificates for Markov chains.

Feed in one-step drift and minorization constants, get back a certified
rate rho and constant M with sup_{|g|<=V} |P^n g(x) - pi(g)| <= M V(x)
gamma^n, plus independent oracles that check the certificates on exactly
solvable benchmark chains.
"""

from .bounds import (
    Certificate,
    DriftMinorization,
    certificate,
    l2_contraction,
    m_general,
    m_positive,
    m_reversible,
    rho_general,
    rho_positive,
    rho_reversible,
)
from .competitors import CouplingInput, coupling_rho, mt_zeta, mtb_zeta
from .kendall import (
    KendallParams,
    k1,
    k2_series_bound,
    rho_tilde_reversible_atomic,
    solve_r1,
    solve_r2_reversible,
)
from .models import (
    ContractingNormal,
    MetropolisNormal,
    ReflectingWalk,
    TruncatedChain,
    binomial_modification,
    contracting_coupling_input,
    contracting_params,
    mh_coupling_input,
    mh_normal_lambda,
    mh_normal_params,
    reflecting_walk_params,
    reflecting_walk_rho_exact,
    walk_truncated_chain,
)
from .numerics import Bracket, maximize_scalar, solve_monotone, std_normal_cdf
from .verify import (
    IncrementDistribution,
    RenewalSequence,
    certificate_domination,
    kendall_check,
    matrix_vnorm_distance,
    mc_regeneration,
    renewal_from_increments,
    run_all_suites,
    run_kendall_suite,
    run_matrix_suite,
    run_mc_suite,
)

__version__ = "0.1.0"
