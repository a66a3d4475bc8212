"""Truncated power and Laurent series, roots-of-unity averaging operators and
sampled verifiers for classical inequalities of complex analysis."""

from .errors import (
    CenterMismatchError,
    CriticalCenterError,
    DegenerateError,
    DivisionAtCenterError,
    DomainError,
    EmptyFamilyError,
    NonFiniteSampleError,
    NullFunctionError,
    PreconditionError,
    SeriesError,
    SingularNodeError,
)
from .series import (
    ZERO_THRESHOLD,
    LaurentSeries,
    RadiusEstimate,
    TruncatedSeries,
    ZeroFactorization,
    binomial_root_series,
    cauchy_product,
    compose,
    derivative,
    evaluate,
    laurent_evaluate,
    linear_combine,
    power,
    radius_estimate,
    recenter,
    reciprocal,
    scale,
    zero_factorization,
)
from .structure import (
    FamilySum,
    LocalRepresentation,
    SeriesFamily,
    double_series_sum,
    injectivity_radius,
    local_representation,
)
from .unity import (
    CircleExtrema,
    UnityGrid,
    alternating_coefficient_extract,
    circle_extrema,
    coefficient_power_sum,
    discrete_cauchy_derivative,
    extract_coefficients,
    gutzmer_identity_sum,
    polygonal_mean_value,
    unity_grid,
    unity_power_sum,
)
from .verifiers import (
    CheckResult,
    Report,
    Verdict,
    Witness,
    classify_critical_point,
    clunie_jack,
    detect_polynomial_degree,
    verify_anti_calculus,
    verify_boundary_max,
    verify_cauchy_bounds,
    verify_derivative_bound,
    verify_double_series,
    verify_laurent_uniqueness,
    verify_open_image,
    verify_parseval,
    verify_schwarz,
)

__version__ = "0.1.0"
