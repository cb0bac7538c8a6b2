//! Exact-arithmetic library for a one-parameter (q, s) generalization of the
//! Hall-Littlewood symmetric functions (spin Hall-Littlewood functions).
//!
//! The two families F and G are computed by independent methods — as lattice
//! partition functions of up-right path ensembles, by symmetrization
//! formulas, and by closed-form specializations — and every identity relating
//! them is executable as an exact rational check at random generic points, a
//! truncated-series check, or a numeric contour-integration check.

pub mod contour;
pub mod error;
pub mod formulas;
pub mod identities;
pub mod lattice;
pub mod params;
pub mod qseries;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod signature;
pub mod weights;

pub use error::{Error, Result};
pub use params::{GenericPoint, Params, Relaxation};
pub use scalar::{Backend, Scalar};
pub use signature::Signature;
