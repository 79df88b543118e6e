//! Exact polynomial engine for the barrier inequalities: barrier and slice
//! polynomials, implicit root functions, Sylvester resultants and certified
//! non-negativity over boxes.

pub mod barriers;
pub mod certify;
pub mod poly;
mod printed;
pub mod resultant;
pub mod roots;

pub use barriers::{
    barrier, p_resultant, printed_q_resultant, printed_rtilde, q_resultant, rtilde, rtilde_zeros, slice, slice_symbolic,
    Barrier, Slice,
};
pub use certify::{ball, certify_nonneg, CertStatus, Certificate, Exclusion, RatBox, DEFAULT_MAX_DEPTH};
pub use poly::{Mono, RatPoly};
pub use resultant::{have_common_root, sylvester_resultant};
pub use roots::{
    implicit_derivatives, root_fn, root_fn_f64, sigma_minus_xi_hessian, sigma_minus_xi_hessian_det, ImplicitDerivatives,
    RootFn,
};
