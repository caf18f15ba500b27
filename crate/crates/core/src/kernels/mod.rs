//! Heat kernels, mollifiers, the cutoff split, periodic kernels and the
//! quadrature machinery behind the renormalisation constants.

pub mod constants;
pub mod heat;
pub mod identity;
pub mod mollifier;
pub mod moments;
pub mod periodic;
pub mod quad;

pub use constants::{ConstantEval, KernelError, KernelSuite, EPS_CEIL, EPS_FLOOR};
pub use heat::{g, g_t, g_x, k, k_t, k_x, r_smooth, r_smooth_x, scale_parabolic};
pub use identity::{kernel_identity_residual, IdentityResidual};
pub use mollifier::Mollifier;
pub use moments::{moment_defect, MomentDefect};
pub use periodic::{int_trace_c, p, p_image, p_spectral, trace_c, PeriodicError};
pub use quad::{QuadResult, QuadratureSpec};
