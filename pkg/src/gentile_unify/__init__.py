"""Equilibrium unification of two parastatistical systems of different fractal dimension.

Computes the unified temperature, half-dimension and entropy of two merged
systems of identical elements (particles, or banknotes in the economic
reading), the direction and size of the particle (capital) transfer between
them, and quadrature checks of the underlying energy and entropy laws.
"""

from .errors import (
    DomainError,
    GentileUnifyError,
    NoSolutionError,
    PreconditionError,
    QuadratureError,
    RegimeError,
    SingularityError,
)
from .oracle import (
    BOSE,
    FERMI,
    GentileSpec,
    bose_energy_quadrature,
    gentile_occupation,
    verify_energy_asymptotic,
    verify_g_integral,
)
from .specfun import f_alpha, f_prime, g_alpha, gamma, h_alpha, zeta
from .system_model import (
    Regime,
    RegimeTag,
    SolverSettings,
    SystemState,
    classify_regime,
    energy_of,
    entropy_of,
    gibbs_of,
    solve_kappa,
)
from .transfer import (
    TransferDirection,
    TransferReport,
    analyze_transfer,
    gibbs_duhem_dG,
    kappa_asymptotic_threehalves,
    lambda_transfer,
    no_flow_margin,
    perturbation_coefficients,
    q_factor,
    relative_transfer,
    scan_alpha_f,
    temperature_dimension_link,
    transfer_size,
)
from .unify import UnificationReport, entropy_budget, unify, unify_case1, unify_case2

__version__ = "0.1.0"
