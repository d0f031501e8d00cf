"""Non-intersecting lattice paths in a hexagon: exact laws, kernels, and bulk limits."""

from .bulk import (
    LimitKernelParams,
    LimitRegime,
    ProbeTable,
    Region,
    Side,
    amplitude_inversion,
    convergence_probe,
    ellipse_classify,
    ellipse_form,
    ellipse_tangency_discriminants,
    extended_sine_kernel,
    limit_params,
    limit_tridiagonal,
    particle_hole_duality_residual,
    sine_kernel_static,
)
from .combinatorics import (
    Configuration,
    ModelParams,
    PathFamily,
    count_path_families,
    enumerate_path_families,
    oracle_correlation,
    oracle_tables,
)
from .errors import (
    BoundaryRegimeError,
    DegenerateParameterError,
    EnumerationCapExceeded,
    GaugeSingularError,
    HahnPathsError,
    IncompatibleRadicalsError,
    ParameterRegimeError,
    PoleOnContourError,
    SamplerSizeError,
)
from .hahn import (
    EXACT,
    FLOAT,
    Case,
    NumericBackend,
    SliceParams,
    contiguous_relation_residuals,
    difference_relation_residual,
    dual_orthogonality_residual,
    hahn_norm2,
    hahn_q,
    orthonormal_function,
    slice_params,
    slice_weight,
)
from .kernels import (
    CorrelationQuery,
    KernelMatrix,
    complementary_kernel,
    correlation,
    extended_kernel,
    gauge_transform,
    static_kernel,
)
from .process import (
    CouplingCoefficients,
    Trajectory,
    coupling_coefficients,
    sample_trajectory,
    slice_distribution,
    transfer_matrix,
    transfer_matrix_series,
    transition_probability,
    transition_probability_determinantal,
)
from .radicals import SignedSqrt
from .render import render_svg, trajectory_lozenges

__all__ = [
    "BoundaryRegimeError",
    "Case",
    "Configuration",
    "CorrelationQuery",
    "CouplingCoefficients",
    "DegenerateParameterError",
    "EXACT",
    "EnumerationCapExceeded",
    "FLOAT",
    "GaugeSingularError",
    "HahnPathsError",
    "IncompatibleRadicalsError",
    "KernelMatrix",
    "LimitKernelParams",
    "LimitRegime",
    "ModelParams",
    "NumericBackend",
    "ParameterRegimeError",
    "PathFamily",
    "PoleOnContourError",
    "ProbeTable",
    "Region",
    "SamplerSizeError",
    "Side",
    "SignedSqrt",
    "SliceParams",
    "Trajectory",
    "amplitude_inversion",
    "complementary_kernel",
    "contiguous_relation_residuals",
    "convergence_probe",
    "correlation",
    "count_path_families",
    "coupling_coefficients",
    "difference_relation_residual",
    "dual_orthogonality_residual",
    "ellipse_classify",
    "ellipse_form",
    "ellipse_tangency_discriminants",
    "enumerate_path_families",
    "extended_kernel",
    "extended_sine_kernel",
    "gauge_transform",
    "hahn_norm2",
    "hahn_q",
    "limit_params",
    "limit_tridiagonal",
    "particle_hole_duality_residual",
    "oracle_correlation",
    "oracle_tables",
    "orthonormal_function",
    "render_svg",
    "sample_trajectory",
    "sine_kernel_static",
    "slice_distribution",
    "slice_params",
    "slice_weight",
    "static_kernel",
    "trajectory_lozenges",
    "transfer_matrix",
    "transfer_matrix_series",
    "transition_probability",
    "transition_probability_determinantal",
]
