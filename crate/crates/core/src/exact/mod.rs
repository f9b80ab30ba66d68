//! Exact scalar arithmetic over the Gaussian rationals, dense linear algebra,
//! and exact directional derivatives of polynomial maps.

mod interp;
mod matrix;
pub mod modp;
mod scalar;

pub use interp::{derivative_weights, poly_directional_derivative};
pub use matrix::{ExactMatrix, RankAccumulator};
pub use scalar::{q, GaussianRational, Rational};
