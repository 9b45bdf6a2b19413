"""Eigenvalue checks for sums of admissible matrices in an indefinite metric.

The package builds matrices that are self-adjoint for the signature (p, q)
pairing, classifies their spectra, and stress-tests eigenvalue inequalities
(Weyl, Lidskii-Wielandt, Thompson-Freede, Courant-Fischer, Ky Fan, Wielandt
flag bounds, and a polyhedral membership test) on seeded random instances.
"""

from .core import (
    AdmissibleSpectrum,
    PseudoHermitianMatrix,
    PseudoUnitary,
    Signature,
    build_metric,
    canonical_diagonal,
    conjugate,
    matrix_dagger,
    metric_diagonal,
    pseudo_hermitian_residual,
    pseudo_unitary_residual,
    validate_pseudo_hermitian,
    validate_pseudo_unitary,
)
from .errors import (
    ComplexSpectrum,
    ConfigError,
    CyclingGuard,
    DefectiveMatrix,
    GapViolation,
    KreinvalError,
    NullDegeneracy,
    NullVector,
    OrientationMismatch,
    RankDeficiency,
    RetriesExhausted,
    SchemaError,
    ShapeMismatch,
    SizeCapExceeded,
    WrongConeCount,
)
from .geometry import (
    ClassifiedVector,
    PseudoOrthonormalFrame,
    classify,
    gram,
    pair,
    positive_cone_margin,
    projector,
    pseudo_orthonormalize,
    self_pairing,
    subspace_in_positive_cone,
)
from .spectral import (
    ClassifiedEigenSystem,
    CompressionResult,
    check_admissible,
    compress,
    eigendecompose,
    eigenvector_frame,
    negative_eigenbasis,
    positive_eigenbasis,
    rayleigh,
)
from .sampling import (
    PositiveFlag,
    SamplerConfig,
    instance_rng,
    sample_admissible,
    sample_flag_with_subordinate,
    sample_planted,
    sample_positive_subspace,
    sample_pseudo_unitary,
    sample_spectrum,
    subordinate_frame,
)
from .checks import (
    CheckCase,
    CheckReport,
    check_courant_fischer,
    check_ky_fan,
    check_lidskii_wielandt,
    check_thompson_freede,
    check_trace_identity,
    check_weyl,
    check_wielandt_flag,
)
from .polyhedral import (
    FeasibilityCertificate,
    PolyhedralRegion,
    build_region,
    check_diag_membership,
    check_sum_membership,
    lp_feasible,
)
from .fileio import ReportWriter, read_matrix, write_matrix

__version__ = "0.1.0"

__all__ = [
    "AdmissibleSpectrum",
    "CheckCase",
    "CheckReport",
    "ClassifiedEigenSystem",
    "ClassifiedVector",
    "ComplexSpectrum",
    "CompressionResult",
    "ConfigError",
    "CyclingGuard",
    "DefectiveMatrix",
    "FeasibilityCertificate",
    "GapViolation",
    "KreinvalError",
    "NullDegeneracy",
    "NullVector",
    "OrientationMismatch",
    "PolyhedralRegion",
    "PositiveFlag",
    "PseudoHermitianMatrix",
    "PseudoOrthonormalFrame",
    "PseudoUnitary",
    "RankDeficiency",
    "ReportWriter",
    "RetriesExhausted",
    "SamplerConfig",
    "SchemaError",
    "ShapeMismatch",
    "Signature",
    "SizeCapExceeded",
    "WrongConeCount",
    "build_metric",
    "build_region",
    "canonical_diagonal",
    "check_admissible",
    "check_courant_fischer",
    "check_diag_membership",
    "check_ky_fan",
    "check_lidskii_wielandt",
    "check_sum_membership",
    "check_thompson_freede",
    "check_trace_identity",
    "check_weyl",
    "check_wielandt_flag",
    "classify",
    "compress",
    "conjugate",
    "eigendecompose",
    "eigenvector_frame",
    "gram",
    "instance_rng",
    "lp_feasible",
    "matrix_dagger",
    "metric_diagonal",
    "negative_eigenbasis",
    "pair",
    "positive_cone_margin",
    "positive_eigenbasis",
    "projector",
    "pseudo_hermitian_residual",
    "pseudo_orthonormalize",
    "pseudo_unitary_residual",
    "rayleigh",
    "read_matrix",
    "sample_admissible",
    "sample_flag_with_subordinate",
    "sample_planted",
    "sample_positive_subspace",
    "sample_pseudo_unitary",
    "sample_spectrum",
    "self_pairing",
    "subordinate_frame",
    "subspace_in_positive_cone",
    "validate_pseudo_hermitian",
    "validate_pseudo_unitary",
    "write_matrix",
]
