"""High-precision evaluation of the Omega kernel, the Xi function and its zeros."""

__version__ = "0.1.0"

from .numerics import (  # noqa: E402
    DEFAULT_CONTEXT,
    ConvergenceError,
    DomainError,
    ErrorEstimate,
    PrecisionContext,
    incomplete_gamma_lower,
    incomplete_gamma_upper,
    integrate_panels,
    log_gamma,
)
from .omega_kernel import (  # noqa: E402
    omega,
    omega_deriv,
    omega_deriv1,
    omega_deriv1_minimum,
    omega_moment,
    phi,
    phi_deriv,
    psi,
    verify_appendix_identities,
)
from .kernel_family import (  # noqa: E402
    RIEMANN,
    BesselKernel,
    Kernel,
    KernelValidationError,
    RiemannKernel,
    StepKernel,
    TabulatedKernel,
    kernel_transform,
    kernel_xi,
    load_tabulated,
    parse_kernel_spec,
)
from .zeta_ref import xi_from_zeta, zeta  # noqa: E402
from .xi_engine import ROUTES, XiValue, amplification, applicable_routes, xi, xi_parts  # noqa: E402
from .meanvalue import (  # noqa: E402
    BoundViolation,
    cauchy_riemann_residual,
    continuation_by_operator,
    u0_on_imaginary_axis,
    u0_on_real_axis,
    u0_taylor_coefficients,
    w0_direct,
)
from .zero_finder import (  # noqa: E402
    ZeroRecord,
    count_vs_density,
    hadamard_partial_product,
    read_zeros_csv,
    scan_zeros,
    theorem2_scan,
    write_zeros_csv,
)
