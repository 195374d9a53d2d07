"""Multi-valued logarithms, exponentials, and calculus on time scales."""

from .errors import (
    CayleyNotRegressive,
    ChronologError,
    DepthExceeded,
    DivisionByZero,
    EtaNotRegressive,
    EvalDomain,
    ExprSyntaxError,
    InvalidTimeScale,
    KappaBoundary,
    LogOfZero,
    NonFiniteIntegrand,
    NonFiniteValue,
    NonvanishingViolation,
    NotNuRegressive,
    NotRegressive,
    OneNotInScale,
    PointNotInScale,
    QuadratureFailure,
    UnboundedWindow,
    UnknownFunction,
    ValidationError,
)
from .expr import compile_expr, differentiate, evaluate, parse, to_text
from .multivalue import (
    TWO_PI,
    TWO_PI_I,
    MultiLog,
    lattice_gap,
    mod2pi_equal,
    pow_real,
    principal_log,
)
from .timescale import (
    AlternatingGrid,
    ContinuousPiece,
    DiscreteSet,
    IntervalUnion,
    QGrid,
    Reals,
    ScatteredJump,
    SegmentDecomposition,
    TimeScale,
    UniformGrid,
    parse_timescale,
)
from .cylinder import (
    cayley_psi,
    circle_dot,
    circle_minus,
    circle_plus,
    eta_psi,
    is_cayley_regressive,
    is_nu_regressive,
    is_regressive,
    xi,
    xi_hat,
    zeta,
    zeta_hat,
)
from .calculus import (
    DEFAULT_TOLERANCES,
    ScaleFunction,
    ToleranceConfig,
    adaptive_simpson,
    delta_derivative,
    delta_integral,
    nabla_derivative,
    nabla_integral,
)
from .logexp import (
    IdentityResult,
    LegacyKind,
    LogVariant,
    delta_quotient,
    exp_delta,
    exp_nabla,
    identity_suite,
    legacy_log,
    log_cayley_multi,
    log_cayley_principal,
    log_delta_derivative,
    log_delta_multi,
    log_delta_principal,
    log_eta,
    log_nabla_multi,
    log_nabla_principal,
    log_ts,
    scaled_residual,
)

__version__ = "0.1.0"

__all__ = [
    "AlternatingGrid",
    "CayleyNotRegressive",
    "ChronologError",
    "ContinuousPiece",
    "DEFAULT_TOLERANCES",
    "DepthExceeded",
    "DiscreteSet",
    "DivisionByZero",
    "EtaNotRegressive",
    "EvalDomain",
    "ExprSyntaxError",
    "IdentityResult",
    "IntervalUnion",
    "InvalidTimeScale",
    "KappaBoundary",
    "LegacyKind",
    "LogOfZero",
    "LogVariant",
    "MultiLog",
    "NonFiniteIntegrand",
    "NonFiniteValue",
    "NonvanishingViolation",
    "NotNuRegressive",
    "NotRegressive",
    "OneNotInScale",
    "PointNotInScale",
    "QGrid",
    "QuadratureFailure",
    "Reals",
    "ScaleFunction",
    "ScatteredJump",
    "SegmentDecomposition",
    "TimeScale",
    "ToleranceConfig",
    "TWO_PI",
    "TWO_PI_I",
    "UnboundedWindow",
    "UniformGrid",
    "UnknownFunction",
    "ValidationError",
    "adaptive_simpson",
    "cayley_psi",
    "circle_dot",
    "circle_minus",
    "circle_plus",
    "compile_expr",
    "delta_derivative",
    "delta_integral",
    "delta_quotient",
    "differentiate",
    "eta_psi",
    "evaluate",
    "exp_delta",
    "exp_nabla",
    "identity_suite",
    "is_cayley_regressive",
    "is_nu_regressive",
    "is_regressive",
    "lattice_gap",
    "legacy_log",
    "log_cayley_multi",
    "log_cayley_principal",
    "log_delta_derivative",
    "log_delta_multi",
    "log_delta_principal",
    "log_eta",
    "log_nabla_multi",
    "log_nabla_principal",
    "log_ts",
    "mod2pi_equal",
    "nabla_derivative",
    "nabla_integral",
    "parse",
    "parse_timescale",
    "pow_real",
    "principal_log",
    "scaled_residual",
    "to_text",
    "xi",
    "xi_hat",
    "zeta",
    "zeta_hat",
]
