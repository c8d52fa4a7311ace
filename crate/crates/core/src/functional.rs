//! The functional-equation factor Ĥ(z) = 2Γ(1−z)(2π)^(z−1) sin(πz/2), its
//! finite-n counterparts Ĥₙ and Hₙ, and the composites h₂ₙ and g₂ₙ.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{check_not_pole, xi_partial, zeta_hat_partial, zeta_partial};
use crate::special::{complex_pow_base_real, log_gamma, log_sin_pi};
use crate::ComplexValue;

/// Denominators below this modulus are reported as degenerate.
pub const DENOMINATOR_GUARD: f64 = 1e-300;

/// Distance in t within which a ratio is flagged as sitting on a zero of
/// its denominator.
pub const NEAR_ZERO_DISTANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RatioKind {
    HHatExact,
    HHatN,
    HN,
    SmallH2n,
    SmallG2n,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioEvaluation {
    pub kind: RatioKind,
    pub z: ComplexValue,
    /// 0 for [`RatioKind::HHatExact`].
    pub n: u64,
    pub value: ComplexValue,
    pub near_denominator_zero: bool,
}

/// Evaluate one ratio quantity, flagging it when `z` lies within
/// [`NEAR_ZERO_DISTANCE`] of a point where the denominator ζ̂(1−z) vanishes.
///
/// `zero_ordinates` are the ordinates γ of known zeros 1/2 + iγ; the
/// denominator vanishes at z = 1/2 ± iγ.
pub fn evaluate(
    kind: RatioKind,
    z: ComplexValue,
    n: u64,
    zero_ordinates: &[f64],
) -> Result<RatioEvaluation> {
    let (n, value) = match kind {
        RatioKind::HHatExact => (0, h_hat_exact(z)?),
        RatioKind::HHatN => (n, h_hat_n(z, n)?),
        RatioKind::HN => (n, h_n(z, n)?),
        RatioKind::SmallH2n => (n, small_h_2n(z, n)?),
        RatioKind::SmallG2n => (n, small_g_2n(z, n)?),
    };
    let is_ratio = matches!(
        kind,
        RatioKind::HHatExact | RatioKind::HHatN | RatioKind::HN
    );
    Ok(RatioEvaluation {
        kind,
        z,
        n,
        value,
        near_denominator_zero: is_ratio && near_denominator_zero(z, zero_ordinates),
    })
}

fn near_denominator_zero(z: ComplexValue, zero_ordinates: &[f64]) -> bool {
    (z.re - 0.5).abs() <= NEAR_ZERO_DISTANCE
        && zero_ordinates
            .iter()
            .any(|g| (z.im.abs() - g.abs()).abs() <= NEAR_ZERO_DISTANCE)
}

fn one_minus(z: ComplexValue) -> ComplexValue {
    ComplexValue::new(1.0 - z.re, -z.im)
}

/// Ĥ(z) = 2Γ(1−z)(2π)^(z−1) sin(πz/2), assembled in log space.
///
/// At z = 2, 4, 6, … the Γ pole cancels the sine zero and the finite limit
/// (2π)^z / (2Γ(z)cos(πz/2)) is returned; z = 1, 3, 5, … are poles.
pub fn h_hat_exact(z: ComplexValue) -> Result<ComplexValue> {
    check_not_pole(z)?;
    if z.im == 0.0 && z.re >= 1.0 && z.re == z.re.round() {
        let k = z.re as i64;
        if k % 2 == 1 {
            return Err(Error::Pole(z));
        }
        // (2π)^k / (2 (k−1)! (−1)^(k/2))
        let log_mag = z.re * (2.0 * PI).ln() - 2f64.ln() - log_gamma(z)?.re;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(ComplexValue::new(sign * log_mag.exp(), 0.0));
    }
    let Some(log_sin) = log_sin_pi(z * 0.5) else {
        return Ok(ComplexValue::new(0.0, 0.0));
    };
    let log_h = ComplexValue::new(2f64.ln(), 0.0)
        + log_gamma(one_minus(z))?
        + (z - 1.0) * (2.0 * PI).ln()
        + log_sin;
    Ok(log_h.exp())
}

fn ratio(num: ComplexValue, den: ComplexValue) -> Result<ComplexValue> {
    let d = den.norm();
    if !(d >= DENOMINATOR_GUARD) {
        return Err(Error::DegenerateRatio(d));
    }
    Ok(num / den)
}

/// Ĥₙ(z) = ζ̂ₙ(z)/ζ̂ₙ(1−z).
pub fn h_hat_n(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    ratio(zeta_hat_partial(z, n)?, zeta_hat_partial(one_minus(z), n)?)
}

/// Hₙ(z) = ζₙ(z)/ζₙ(1−z).
pub fn h_n(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    ratio(zeta_partial(z, n)?, zeta_partial(one_minus(z), n)?)
}

/// h₂ₙ(z) = ξ₂ₙ(z) + ζ̂₂ₙ(z).
pub fn small_h_2n(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    let two_n = doubled(n)?;
    Ok(xi_partial(z, two_n)? + zeta_hat_partial(z, two_n)?)
}

/// 2ζ̂₂ₙ(z) − 2^(1−z)ζ̂ₙ(z); algebraically equal to [`small_h_2n`].
pub fn small_h_2n_from_hats(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    let two_n = doubled(n)?;
    let two_pow = complex_pow_base_real(2.0, z - 1.0)?;
    Ok(zeta_hat_partial(z, two_n)? * 2.0 - two_pow * zeta_hat_partial(z, n)?)
}

/// g₂ₙ(z) = ξ₂ₙ(z) + (2n)^(−z)/2.
pub fn small_g_2n(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    let two_n = doubled(n)?;
    Ok(xi_partial(z, two_n)? + complex_pow_base_real(two_n as f64, z)? * 0.5)
}

/// g₂ₙ(z) as the mean (ξ₂ₙ₋₁ + ξ₂ₙ)/2.
pub fn small_g_2n_averaged(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    let two_n = doubled(n)?;
    Ok((xi_partial(z, two_n - 1)? + xi_partial(z, two_n)?) * 0.5)
}

fn doubled(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    n.checked_mul(2)
        .ok_or_else(|| Error::Config(format!("2n overflows for n = {n}")))
}
