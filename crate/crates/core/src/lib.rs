//! Numerical workbench for finite-n Riemann zeta sums.
//!
//! The crate evaluates the partial sums ζₙ, the alternating sums ξₙ and the
//! regularized sums ζ̂ₙ = ζₙ − n^(1−z)/(1−z), the functional-equation factor
//! Ĥ(z) and its finite-n counterparts, Euler–Maclaurin remainders, and
//! locates zeros on the critical line. The [`convergence`] module sweeps
//! these quantities over dyadic n at a zero and checks the asymptotic
//! relations between them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convergence;
pub mod error;
pub mod euler_maclaurin;
pub mod functional;
pub mod series;
pub mod special;
pub mod summation;
pub mod zeros;

pub use error::{Error, Result};

/// The universal scalar: a double-precision complex number.
pub type ComplexValue = num_complex::Complex64;

/// σ = Re z.
#[inline]
pub fn sigma(z: ComplexValue) -> f64 {
    z.re
}
