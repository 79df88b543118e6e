//! Cohomogeneity-one Spin(7) and Ricci-flat metrics with Aloff–Wallach
//! principal orbits, formulated as a polynomial flow on ℝ⁸.
//!
//! * [`aw_algebra`]: parameter normalization and bundle indices.
//! * [`phase_system`]: the vector field, constraints and invariant sets.
//! * [`critical_points`]: the fixed-point catalog, linearizations and unstable frames.
//! * [`shooting`]: integration from singular-orbit points, classification and
//!   metric reconstruction.
//! * [`polycert`]: exact polynomials, resultants and positivity certificates.

pub mod aw_algebra;
pub mod critical_points;
pub mod error;
pub mod exact;
pub mod phase_system;
pub mod polycert;
pub mod shooting;

pub use aw_algebra::{normalize, AWParams, BundleTag};
pub use error::{Error, Result};
pub use phase_system::{Chirality, PhaseState};
