//! Complex log-gamma: upward recurrence into the Stirling region.

use std::f64::consts::PI;

use super::bernoulli::stirling_coefficient;
use crate::error::{Error, Result};
use crate::summation::CompensatedSum;
use crate::ComplexValue;

// |w| beyond which 14 Stirling terms reach double precision for Re w >= 0
const STIRLING_MIN_MODULUS: f64 = 15.0;
const STIRLING_TERMS: usize = 14;

/// Principal branch of log Γ(z).
///
/// Real on the positive axis and continuous off the non-positive real axis.
/// Arguments with negative or small real part are shifted upward with
/// log Γ(w) = log Γ(w + 1) − log w, so the branch is the analytic
/// continuation from the positive axis.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!(
            "log_gamma of non-finite argument {z}"
        )));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(z));
    }
    let mut w = z;
    let mut shift = CompensatedSum::new();
    while w.re < 0.0 || w.norm() < STIRLING_MIN_MODULUS {
        shift.add(w.ln());
        w += 1.0;
    }
    Ok(stirling(w) - shift.value())
}

fn stirling(w: ComplexValue) -> ComplexValue {
    let mut acc = CompensatedSum::new();
    acc.add((w - 0.5) * w.ln());
    acc.add(-w);
    acc.add(ComplexValue::new(0.5 * (2.0 * PI).ln(), 0.0));
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for k in 1..=STIRLING_TERMS {
        let term = pow * stirling_coefficient(k);
        acc.add(term);
        if term.norm() < 1e-18 * acc.value().norm() {
            break;
        }
        pow *= inv2;
    }
    acc.value()
}
