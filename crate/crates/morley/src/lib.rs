//! Exact rational arithmetic for the plane-quartic pipeline: sparse
//! multivariate forms over the rationals, the apolarity calculus, the
//! skew-determinantal invariant of seven-point configurations, the
//! two-form (conic + cubic) determinantal construction with its pentalateral
//! closed form, and branch loci of cubic surfaces.

pub mod apolarity;
pub mod bateman;
pub mod batch;
pub mod binary;
pub mod config7;
pub mod error;
pub mod form;
pub mod matrix;
pub mod rational;
pub mod surface;

pub use error::Error;
pub use form::Form;
pub use matrix::QMatrix;
pub use rational::Rational;
