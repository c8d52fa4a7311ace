//! Sine and cosine of π·z with exact zeros at the lattice points.

use std::f64::consts::PI;

use crate::ComplexValue;

/// Reduce `x` to `r` in [-1, 1] with x ≡ r (mod 2).
#[inline]
fn reduce_mod2(x: f64) -> f64 {
    x - 2.0 * (x / 2.0).round()
}

/// sin(πx); exactly zero at integers.
pub fn sin_pi_real(x: f64) -> f64 {
    let r = reduce_mod2(x);
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() == 0.5 {
        return r.signum();
    }
    (PI * r).sin()
}

/// cos(πx); exactly zero at half-integers.
pub fn cos_pi_real(x: f64) -> f64 {
    let r = reduce_mod2(x);
    if r.abs() == 0.5 {
        return 0.0;
    }
    if r == 0.0 {
        return 1.0;
    }
    if r.abs() == 1.0 {
        return -1.0;
    }
    (PI * r).cos()
}

/// sin(πz) for complex z.
pub fn sin_pi(z: ComplexValue) -> ComplexValue {
    let b = PI * z.im;
    ComplexValue::new(sin_pi_real(z.re) * b.cosh(), cos_pi_real(z.re) * b.sinh())
}

/// cos(πz) for complex z.
pub fn cos_pi(z: ComplexValue) -> ComplexValue {
    let b = PI * z.im;
    ComplexValue::new(cos_pi_real(z.re) * b.cosh(), -sin_pi_real(z.re) * b.sinh())
}

// beyond this |Im z| the exponential form is used so cosh/sinh never overflow
const LOG_SPACE_IM: f64 = 20.0;

/// A logarithm of sin(πz) (not necessarily the principal one).
///
/// Returns `None` when sin(πz) is exactly zero.
pub fn log_sin_pi(z: ComplexValue) -> Option<ComplexValue> {
    if z.im.abs() < LOG_SPACE_IM {
        let s = sin_pi(z);
        return (s != ComplexValue::new(0.0, 0.0)).then(|| s.ln());
    }
    let i = ComplexValue::i();
    // sin(πz) = (i/2)e^{-iπz}(1 - e^{2iπz})  for Im z > 0
    //         = (-i/2)e^{iπz}(1 - e^{-2iπz}) for Im z < 0
    let piz = z * PI;
    let (half_i, exponent, tail) = if z.im > 0.0 {
        (i * 0.5, -i * piz, (i * piz * 2.0).exp())
    } else {
        (-i * 0.5, i * piz, (-i * piz * 2.0).exp())
    };
    Some(half_i.ln() + exponent + (-tail).ln_1p())
}

trait Ln1p {
    fn ln_1p(self) -> Self;
}

impl Ln1p for ComplexValue {
    fn ln_1p(self) -> Self {
        if self.norm() < 1e-8 {
            self - self * self * 0.5
        } else {
            (self + 1.0).ln()
        }
    }
}

/// A logarithm of cos(πz); `None` when cos(πz) is exactly zero.
pub fn log_cos_pi(z: ComplexValue) -> Option<ComplexValue> {
    if z.im.abs() < LOG_SPACE_IM {
        let c = cos_pi(z);
        return (c != ComplexValue::new(0.0, 0.0)).then(|| c.ln());
    }
    log_sin_pi(z + 0.5)
}
