"""Bound states of a particle in a unit well with an interior delta potential."""

from .errors import (
    ConvergenceFailure,
    DomainError,
    InconsistentState,
    PositionOutOfRange,
    SolverFailure,
)
from .model import DimensionlessConfig, RationalPosition, mu, reduce_position
from .spectrum import (
    DEFAULT_K_MAX,
    DEFAULT_OPTIONS,
    NODAL,
    ORDINARY_NEGATIVE,
    ORDINARY_POSITIVE,
    POLE,
    EigenState,
    PoleMarker,
    SolverOptions,
    Spectrum,
    dispersion_residual,
    enumerate_nodal,
    find_negative_root,
    negative_residual,
    find_ordinary_positive,
    full_spectrum,
    ground_state,
    near_wall_energy,
    rhs_negative,
    rhs_positive,
    strong_coupling_estimates,
    weak_coupling_estimate,
    zero_energy_positions,
)
from .wavefn import (
    PiecewiseWave,
    build_wave,
    evaluate,
    gram_matrix,
    inner_product,
    matching_defect,
    step_limit_wave,
)
from .oracle import (
    SineBasisMatrix,
    build_matrix,
    extrapolated_oracle_spectrum,
    jacobi_eigenvalues,
    lowest_eigenvalues,
    oracle_spectrum,
    richardson,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
