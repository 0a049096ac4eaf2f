"""Analytic torsion, dynamical zeta functions and trace-formula checks for CR Seifert 3-manifolds."""

from .errors import (
    ConfigurationError,
    DomainError,
    IllConditionedError,
    PoleError,
    TruncationError,
    ValidationError,
)
from .seifert import (
    HolonomyBlock,
    HolonomyData,
    SeifertData,
    kappa_M_rho,
    orbifold_invariants,
    random_data,
    real_trace,
    trivial_data,
    validate,
)
from .special_functions import MeroValue, f_factor, hurwitz_zeta, riemann_zeta
from .torsion import kappa_eval, kappa_prime_zero, kappa_residue, ray_singer_torsion
from .dynamics import (
    dynamical_theta,
    enumerate_orbits,
    fried_z_zero,
    regularized_z_at_zero,
    z_rho_closed,
    z_rho_series,
)
from .spectral import chi_genus, kappa_direct_series, spectral_heat_trace
from .trace_formula import (
    IdentityReport,
    check_kappa_consistency,
    check_selberg,
    check_small_t,
    check_zeta_identity,
)

__version__ = "0.1.0"
