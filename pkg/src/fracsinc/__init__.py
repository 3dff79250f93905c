"""Exponentially convergent sinc-quadrature solver for fractional evolution
equations with sectorial operator coefficients."""

from .charpoly import (
    KernelSpec,
    RootSignReport,
    characteristic_roots,
    classify_root_signs,
    kernel_coefficients,
    kernel_eval,
    make_kernel_spec,
)
from .contour import (
    FractionalOrder,
    Hyperbola,
    SectorSpec,
    build_integral_hyperbola,
    build_spectral_hyperbola,
    contour_point,
    integral_coefficients,
    max_admissible_angle,
    spectral_coefficients,
    strip_coefficients,
    validate_angle,
)
from .errors import (
    AngleViolation,
    ConfigError,
    ContourCollision,
    DimensionMismatch,
    FracsincError,
    NonConvergence,
    RepeatedRoot,
    SingularShift,
    TailDivergence,
    VertexTooSmall,
    ZeroBase,
)
from .fracderiv import (
    Exponential,
    LimitCheck,
    Tabulated,
    residual_homogeneous,
    rl_right,
    verify_limit_conditions,
)
from .harness import (
    ConvergenceRow,
    ExperimentConfig,
    emit_report,
    emit_solution,
    load_config,
    oracle_homogeneous,
    oracle_inhomogeneous,
    parse_config,
    run_convergence_study,
    run_residual_suite,
)
from .homogeneous import (
    QuadraturePlan,
    SolveReport,
    apriori_error_factor,
    evaluate_FA,
    fractional_power_scalar,
    plan_quadrature,
    solve_homogeneous,
)
from .inhomogeneous import (
    ExponentialForcing,
    InhomogeneousConfig,
    build_F,
    forcing_decay_rate_fit,
    mu_weight,
    omega_weight,
    order_to_q,
    solve_inhomogeneous,
)
from .operators import (
    OperatorHandle,
    apply_operator,
    corrected_resolvent_apply,
    laplacian_eigenvalues,
    make_diagonal,
    make_tridiagonal_laplacian,
    power_apply,
    resolvent_norm_margin,
)

__version__ = "0.1.0"
