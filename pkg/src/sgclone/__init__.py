"""Optimal N-to-M symmetric Gaussian cloning of coherent states.

Closed-form optima in exact rational arithmetic, measurement-theoretic
bounds with seeded Monte Carlo checks, and an independent truncated-Fock
numerical oracle.
"""

from .cloner import (
    UNBOUNDED,
    ClonerSpec,
    Fidelity,
    cascade,
    clone_reduced_output,
    fidelity_from_variance,
    mixture_fidelity,
    optimal_cloner,
    optimal_fidelity,
    optimal_noise_variance,
    squeezed_variant,
)
from .errors import (
    CompositionError,
    ContractViolationError,
    DimensionError,
    DomainError,
    InvalidClonerError,
    SGCloneError,
    TruncationError,
)
from .estimation_bounds import (
    MeasurementWeights,
    VarianceReport,
    arthurs_kelly_margin,
    chain_bound_1to2,
    cloning_lower_bound,
    holevo_rhs,
    optimal_measurement_variance,
    simulate_heterodyne_estimate,
    simulate_joint_measurement,
    symmetric_variance_bound,
    weight_ratio_grid,
)
from .fock_oracle import (
    DensityMatrix,
    FockVector,
    QuadratureGrid,
    cascade_density_check,
    coherent_fock_vector,
    default_cutoff,
    fidelity_against,
    mixture_density_matrix,
    quadrature_moments,
    squeeze_fock_matrix,
    squeezed_fock_vector,
)
from .quadrature_core import (
    CoherentState,
    GaussianMixtureState,
    NoiseCovariance,
    SqueezedState,
    add_noise,
    displace,
    overlap_sq,
)
from .verify import VerificationReport, verify_bounds, verify_fock, verify_mc

__version__ = "0.1.0"
