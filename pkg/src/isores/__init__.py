"""Numerical laboratory for scattering resonances on surfaces of revolution.

The package separates the Laplacian of a rotationally symmetric surface into
angular modes, locates resonances of the free and perturbed mode operators by
complex contour scaling or Jost-function continuation, and provides the
supporting machinery: regularized determinants, Jordan structure of clusters,
compact-cap Dirichlet spectra, and the highest-weight multiplication shift on
the sphere.
"""

__version__ = "0.1.0"

from .errors import (
    AmbiguousClusterError,
    ConfigError,
    ContinuationDomainError,
    ContourInfeasibleError,
    EigenvalueOnContourError,
    EvaluationDomainError,
    InvalidParameterError,
    IsoresError,
    ModeRangeError,
    NonConvergenceError,
    OverflowGuardError,
    SingularFreeResolventError,
    WindingError,
)
from .models import (
    CATENOID,
    EUCLIDEAN_PLANE,
    HYPERBOLIC_CYLINDER,
    HYPERBOLIC_PLANE,
    MODEL_NAMES,
    ModelSurface,
    RadialOperator,
    make_model,
    mode_operator,
    spectral_value,
)
from .scaling import ScalingContour, build_contour, scaled_operator
from .grid import (
    BlockOperator,
    CHEBYSHEV_COLLOCATION,
    Discretization,
    FINITE_DIFFERENCE_2ND,
    assemble_coupled,
    discretize,
    triangularity_check,
)
from .linalg import (
    JordanReport,
    eigen_all,
    jordan_structure,
    restrict_to_cluster,
    spectral_projector,
)
from .potentials import (
    ModePotential,
    PotentialSum,
    geometric_family,
    geometric_tail_bound,
    homogeneous_component,
    potential_sum,
    symmetrize,
    truncate,
    zero_potential,
)
from .resonances import (
    MatchReport,
    ResonanceEntry,
    ResonanceSet,
    compare_sets,
    find_resonances_jost,
    find_resonances_scaling,
    jost_function,
    jost_union,
    order_growth_fixture,
    order_pairing,
    persistence_sweep,
)
from .determinants import DetFunction, count_zeros, det_reg, ls_determinant, ls_kernel
from .compactspec import (
    CapModel,
    cap_from_model,
    dirichlet_mode_spectrum,
    mode_resolvent_decay,
    weyl_bound_check,
)
from .sphere import (
    ShiftMatrix,
    multiplication_matrix,
    nilpotency_power,
    phase_conjugation_residual,
    shift_verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
