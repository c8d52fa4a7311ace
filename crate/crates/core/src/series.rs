//! Finite-n sums: ζₙ, ξₙ, ζ̂ₙ and the term-wise z-derivatives.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::neg_pow_ln;
use crate::summation::CompensatedSum;
use crate::ComplexValue;

/// Upper bound on the number of terms in any single sum.
pub const MAX_TERMS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeriesKind {
    ZetaN,
    XiN,
    ZetaHatN,
    ZetaNPrime,
    ZetaHatNPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesEvaluation {
    pub kind: SeriesKind,
    pub z: ComplexValue,
    pub n: u64,
    pub value: ComplexValue,
}

/// Evaluate one of the named sums at `(z, n)`.
pub fn evaluate(kind: SeriesKind, z: ComplexValue, n: u64) -> Result<SeriesEvaluation> {
    let value = match kind {
        SeriesKind::ZetaN => zeta_partial(z, n),
        SeriesKind::XiN => xi_partial(z, n),
        SeriesKind::ZetaHatN => zeta_hat_partial(z, n),
        SeriesKind::ZetaNPrime => zeta_partial_derivative(z, n),
        SeriesKind::ZetaHatNPrime => zeta_hat_partial_derivative(z, n),
    }?;
    Ok(SeriesEvaluation { kind, z, n, value })
}

pub(crate) fn check_terms(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if n > MAX_TERMS {
        return Err(Error::Config(format!(
            "n = {n} exceeds the configured cap of {MAX_TERMS} terms"
        )));
    }
    Ok(())
}

pub(crate) fn check_not_pole(z: ComplexValue) -> Result<()> {
    if z == ComplexValue::new(1.0, 0.0) {
        return Err(Error::Pole(z));
    }
    Ok(())
}

fn finite(v: ComplexValue, what: &str, z: ComplexValue, n: u64) -> Result<ComplexValue> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!(
            "{what} at z = {z}, n = {n} is not finite"
        )))
    }
}

/// ζₙ(z) = Σ_{k=1..n} k^(−z).
pub fn zeta_partial(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    check_terms(n)?;
    let s: CompensatedSum = (1..=n).map(|k| neg_pow_ln((k as f64).ln(), z)).collect();
    finite(s.value(), "zeta_n", z, n)
}

/// ξₙ(z) = Σ_{k=1..n} (−1)^(k−1) k^(−z).
pub fn xi_partial(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    check_terms(n)?;
    let s: CompensatedSum = (1..=n)
        .map(|k| {
            let t = neg_pow_ln((k as f64).ln(), z);
            if k % 2 == 1 {
                t
            } else {
                -t
            }
        })
        .collect();
    finite(s.value(), "xi_n", z, n)
}

/// n^(1−z)/(1−z), the divergent tail model removed by the regularization.
pub(crate) fn tail_term(z: ComplexValue, n: u64) -> ComplexValue {
    let nf = n as f64;
    // n · n^(−z) keeps the z = 0 case exact
    neg_pow_ln(nf.ln(), z) * nf / (ComplexValue::new(1.0, 0.0) - z)
}

/// ζ̂ₙ(z) = ζₙ(z) − n^(1−z)/(1−z).
pub fn zeta_hat_partial(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    check_not_pole(z)?;
    let s = zeta_partial(z, n)?;
    finite(s - tail_term(z, n), "zeta_hat_n", z, n)
}

/// ζ′ₙ(z) = −Σ_{k=1..n} ln k · k^(−z).
pub fn zeta_partial_derivative(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    check_terms(n)?;
    let s: CompensatedSum = (2..=n)
        .map(|k| {
            let lk = (k as f64).ln();
            -neg_pow_ln(lk, z) * lk
        })
        .collect();
    finite(s.value(), "zeta_n'", z, n)
}

/// ζ̂′ₙ(z) = ζ′ₙ(z) + ln n · n^(1−z)/(1−z) − n^(1−z)/(1−z)².
pub fn zeta_hat_partial_derivative(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    check_not_pole(z)?;
    let d = zeta_partial_derivative(z, n)?;
    let tail = tail_term(z, n);
    let one_minus_z = ComplexValue::new(1.0, 0.0) - z;
    let v = d + tail * (n as f64).ln() - tail / one_minus_z;
    finite(v, "zeta_hat_n'", z, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn zeta_partial_small_cases() {
        let v = zeta_partial(c(2.0, 0.0), 3).unwrap();
        assert!((v.re - 49.0 / 36.0).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
        assert_eq!(zeta_partial(c(0.0, 0.0), 7).unwrap(), c(7.0, 0.0));
    }

    #[test]
    fn zeta_partial_tail_bound() {
        // 0 < ζ(2) − ζₙ(2) < ∫ₙ^∞ x⁻² dx = 1/n
        let n = 1_000_000;
        let gap = PI * PI / 6.0 - zeta_partial(c(2.0, 0.0), n).unwrap().re;
        assert!(gap > 0.0 && gap < 1.0 / n as f64);
        assert!(gap < 1e-6);
    }

    #[test]
    fn xi_partial_small_cases() {
        let v = xi_partial(c(1.0, 0.0), 3).unwrap();
        assert!((v.re - 5.0 / 6.0).abs() < 1e-15);
        for m in 1..20 {
            assert_eq!(xi_partial(c(0.0, 0.0), 2 * m).unwrap(), c(0.0, 0.0));
        }
    }

    #[test]
    fn xi_partial_converges_to_eta_two() {
        // ξ(2) = (1 − 2^(−1)) ζ(2) = π²/12; alternating tail ≤ first omitted term
        let v = xi_partial(c(2.0, 0.0), 100_000).unwrap();
        assert!((v.re - PI * PI / 12.0).abs() < 1e-9);
    }

    #[test]
    fn zeta_hat_exact_cancellation_at_zero() {
        for n in [1, 2, 3, 10, 12, 1000, 65_537] {
            assert_eq!(
                zeta_hat_partial(c(0.0, 0.0), n).unwrap(),
                c(0.0, 0.0),
                "n = {n}"
            );
        }
    }

    #[test]
    fn zeta_hat_definitional_identity() {
        let a = zeta_hat_partial(c(2.0, 0.0), 100).unwrap();
        let b = zeta_partial(c(2.0, 0.0), 100).unwrap() + 0.01;
        assert!((a - b).norm() < 1e-15);
    }

    #[test]
    fn zeta_hat_leading_term_at_first_zero() {
        let rho = c(0.5, 14.134725141734694);
        let n = 1 << 10;
        let m = zeta_hat_partial(rho, n).unwrap().norm();
        let lead = 0.5 / (n as f64).sqrt();
        assert!(m >= lead / 2.0 && m <= lead * 2.0, "{m} vs {lead}");
    }

    #[test]
    fn pole_and_bad_n() {
        assert!(matches!(
            zeta_hat_partial(c(1.0, 0.0), 5),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            zeta_hat_partial_derivative(c(1.0, 0.0), 5),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            zeta_partial(c(2.0, 0.0), 0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            xi_partial(c(2.0, 0.0), MAX_TERMS + 1),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn overflow_reported() {
        let r = zeta_partial(c(-400.0, 0.0), 10);
        assert!(matches!(r, Err(Error::Overflow(_))));
    }

    #[test]
    fn derivative_small_cases() {
        assert_eq!(
            zeta_partial_derivative(c(0.7, 3.0), 1).unwrap(),
            c(0.0, 0.0)
        );
        let v = zeta_partial_derivative(c(2.0, 0.0), 2).unwrap();
        assert!((v.re + 2f64.ln() / 4.0).abs() < 1e-16);
        assert_eq!(
            zeta_hat_partial_derivative(c(0.0, 0.0), 1).unwrap(),
            c(-1.0, 0.0)
        );
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-5;
        let z = c(2.0, 0.0);
        let n = 10_000;
        let fd = (zeta_partial(z + h, n).unwrap() - zeta_partial(z - h, n).unwrap()) / (2.0 * h);
        let d = zeta_partial_derivative(z, n).unwrap();
        assert!((d - fd).norm() < 1e-6, "{d} vs {fd}");
    }

    #[test]
    fn hat_derivative_closed_form() {
        let z = c(2.0, 0.0);
        let n = 1000u64;
        let nf = n as f64;
        // n^(1−z) = 1/n, 1−z = −1 and (1−z)² = 1 at z = 2
        let expect = zeta_partial_derivative(z, n).unwrap().re + nf.ln() * (-1.0 / nf) - 1.0 / nf;
        let v = zeta_hat_partial_derivative(z, n).unwrap();
        assert!(
            (v.re - expect).abs() <= 8.0 * f64::EPSILON * expect.abs(),
            "{} vs {expect}",
            v.re
        );
    }

    #[test]
    fn evaluate_dispatch() {
        let z = c(0.5, 3.0);
        let e = evaluate(SeriesKind::XiN, z, 9).unwrap();
        assert_eq!(e.value, xi_partial(z, 9).unwrap());
        assert_eq!(e.kind, SeriesKind::XiN);
        assert_eq!(e.n, 9);
    }
}
