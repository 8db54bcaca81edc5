//! Moments of characteristic polynomials of random matrices.
//!
//! Exact Taylor-coefficient determinants for the sine (bulk) and Bessel
//! (hard-edge) kernels, the soft-edge Hankel-determinant ring, exact finite-N
//! Gaussian-ensemble moments with and without an external matrix source, and
//! a reproducible Monte Carlo oracle. Every quantity is cross-checkable by
//! at least two independent routes.

pub mod airy;
pub mod bigreal;
pub mod bulk;
pub mod error;
pub mod gue;
pub mod mc;
pub mod exact;
pub mod poly;
pub mod report;
pub mod ring;
pub mod source;
pub mod special;

pub use bigreal::{work_bits, BigReal, GUARD_DIGITS};
pub use error::{Error, Result};
pub use exact::{GaussianRational, Rational};
pub use poly::{IntPoly, RationalFunction};
pub use report::MomentResult;
pub use ring::{det_cofactor, exact_det, Ring};
