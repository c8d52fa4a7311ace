//! Complex elementary operations and the special functions the other
//! modules lean on.

mod bernoulli;
mod gamma;
mod trig;

pub use bernoulli::{bernoulli_numbers, BernoulliTable, MAX_DEPTH as MAX_BERNOULLI_DEPTH};
pub(crate) use bernoulli::{taylor_coefficient, taylor_depth_available};
pub use gamma::log_gamma;
pub use trig::{cos_pi, log_cos_pi, log_sin_pi, sin_pi};

use crate::error::{Error, Result};
use crate::ComplexValue;

/// k^(−z) = exp(−z·ln k) for real k > 0.
pub fn complex_pow_base_real(k: f64, z: ComplexValue) -> Result<ComplexValue> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!(
            "base of k^(-z) must be a finite positive real, got {k}"
        )));
    }
    Ok(neg_pow_ln(k.ln(), z))
}

/// exp(−z·ln_k), the hot-loop form of [`complex_pow_base_real`].
#[inline]
pub(crate) fn neg_pow_ln(ln_k: f64, z: ComplexValue) -> ComplexValue {
    let modulus = (-z.re * ln_k).exp();
    let (s, c) = (-z.im * ln_k).sin_cos();
    ComplexValue::new(modulus * c, modulus * s)
}
