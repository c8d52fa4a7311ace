//! Reference evaluation of ζ̂(z) through the Euler–Maclaurin expansion
//!
//! ζ̂(z) = ζₙ(z) − n^(1−z)/(1−z) − 1/(2n^z) + Rₙ(z),
//! Rₙ(z) = Σₖ B₂ₖ/(2k)! · z(z+1)…(z+2k−2) · n^(−z−2k+1).
//!
//! The remainder series is asymptotic, not convergent: it is cut at the
//! smallest term, and the validity window |Im z| ≤ 2πn/C keeps n large
//! enough for that smallest term to be tiny.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{check_not_pole, tail_term, zeta_partial};
use crate::special::{neg_pow_ln, taylor_coefficient, taylor_depth_available, MAX_BERNOULLI_DEPTH};
use crate::summation::CompensatedSum;
use crate::ComplexValue;

/// |Im z| ≤ 2πn/C with C > 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidityWindow {
    c: f64,
}

impl ValidityWindow {
    pub const DEFAULT_C: f64 = 2.0;

    pub fn new(c: f64) -> Result<Self> {
        if !(c > 1.0) || !c.is_finite() {
            return Err(Error::Config(format!(
                "window constant C must be > 1, got {c}"
            )));
        }
        Ok(Self { c })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn max_im(&self, n: u64) -> f64 {
        2.0 * PI * n as f64 / self.c
    }

    /// Smallest n whose window admits `im`.
    pub fn min_n(&self, im: f64) -> u64 {
        (im.abs() * self.c / (2.0 * PI)).ceil().max(1.0) as u64
    }
}

impl Default for ValidityWindow {
    fn default() -> Self {
        Self { c: Self::DEFAULT_C }
    }
}

/// True iff |Im z| ≤ 2πn/C.
pub fn check_window(z: ComplexValue, n: u64, w: &ValidityWindow) -> bool {
    z.im.abs() <= w.max_im(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerMaclaurinConfig {
    pub bernoulli_depth: usize,
    pub n_base: u64,
    pub target_rel_error: f64,
    pub window: ValidityWindow,
}

impl Default for EulerMaclaurinConfig {
    fn default() -> Self {
        Self {
            bernoulli_depth: 10,
            n_base: 50,
            target_rel_error: 1e-12,
            window: ValidityWindow::default(),
        }
    }
}

impl EulerMaclaurinConfig {
    pub fn new(
        bernoulli_depth: usize,
        n_base: u64,
        target_rel_error: f64,
        window_c: f64,
    ) -> Result<Self> {
        let cfg = Self {
            bernoulli_depth,
            n_base,
            target_rel_error,
            window: ValidityWindow::new(window_c)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_BERNOULLI_DEPTH).contains(&self.bernoulli_depth) {
            return Err(Error::Config(format!(
                "em.depth must satisfy 1 <= m <= {MAX_BERNOULLI_DEPTH}, got {}",
                self.bernoulli_depth
            )));
        }
        if self.n_base < 10 {
            return Err(Error::Config(format!(
                "em.n_base must be >= 10, got {}",
                self.n_base
            )));
        }
        if !(self.target_rel_error > 0.0 && self.target_rel_error < 1.0) {
            return Err(Error::Config(format!(
                "em.target_rel_error must lie in (0, 1), got {}",
                self.target_rel_error
            )));
        }
        ValidityWindow::new(self.window.c)?;
        Ok(())
    }

    /// Cut-off n used by [`zeta_hat_reference`]: max(n_base, 4·C·|Im z|/(2π)).
    pub fn reference_n(&self, z: ComplexValue) -> u64 {
        let scaled = (4.0 * self.window.c * z.im.abs() / (2.0 * PI)).ceil() as u64;
        self.n_base.max(scaled)
    }
}

/// Rₙ(z) together with the size of the first neglected contribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Remainder {
    pub value: ComplexValue,
    /// Modulus bound on the truncation error of `value`.
    pub bound: f64,
    pub terms: usize,
}

/// Rₙ(z) truncated at `cfg.bernoulli_depth` terms, or earlier once a term
/// drops below `target_rel_error·|partial|`.
pub fn remainder(z: ComplexValue, n: u64, cfg: &EulerMaclaurinConfig) -> Result<Remainder> {
    cfg.validate()?;
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!(
            "remainder requires Re z > 0, got z = {z}"
        )));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if !check_window(z, n, &cfg.window) {
        return Err(Error::Validity {
            im: z.im.abs(),
            n,
            bound: cfg.window.max_im(n),
        });
    }

    let nf = n as f64;
    let inv_n2 = 1.0 / (nf * nf);
    let mut terms = RemainderTerms {
        z,
        pochhammer: z,
        power: neg_pow_ln(nf.ln(), z + 1.0),
        inv_n2,
        k: 0,
    };
    let mut sum = CompensatedSum::new();
    let mut prev = f64::INFINITY;
    for k in 1..=cfg.bernoulli_depth {
        let term = terms.next_term();
        let m = term.norm();
        if m > prev {
            // asymptotic series turned around before reaching the target
            return Err(Error::PrecisionNotReached { best_bound: prev });
        }
        sum.add(term);
        prev = m;
        if m <= cfg.target_rel_error * sum.value().norm() {
            return Ok(Remainder {
                value: sum.value(),
                bound: m,
                terms: k,
            });
        }
    }
    let bound = if cfg.bernoulli_depth < taylor_depth_available() {
        terms.next_term().norm()
    } else {
        prev
    };
    Ok(Remainder {
        value: sum.value(),
        bound,
        terms: cfg.bernoulli_depth,
    })
}

struct RemainderTerms {
    z: ComplexValue,
    pochhammer: ComplexValue,
    power: ComplexValue,
    inv_n2: f64,
    k: usize,
}

impl RemainderTerms {
    fn next_term(&mut self) -> ComplexValue {
        self.k += 1;
        let k = self.k;
        if k > 1 {
            let a = (2 * k - 3) as f64;
            self.pochhammer *= (self.z + a) * (self.z + a + 1.0);
            self.power *= self.inv_n2;
        }
        self.pochhammer * self.power * taylor_coefficient(k)
    }
}

/// ζ̂(z) evaluated at an explicit cut-off n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceValue {
    pub value: ComplexValue,
    pub n: u64,
    pub truncation_bound: f64,
}

pub fn zeta_hat_reference_at(
    z: ComplexValue,
    n: u64,
    cfg: &EulerMaclaurinConfig,
) -> Result<ReferenceValue> {
    check_not_pole(z)?;
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!(
            "reference evaluation requires Re z > 0, got z = {z}"
        )));
    }
    let r = remainder(z, n, cfg)?;
    let mut acc = CompensatedSum::new();
    acc.add(zeta_partial(z, n)?);
    acc.add(-tail_term(z, n));
    acc.add(-neg_pow_ln((n as f64).ln(), z) * 0.5);
    acc.add(r.value);
    Ok(ReferenceValue {
        value: acc.value(),
        n,
        truncation_bound: r.bound,
    })
}

/// High-accuracy ζ̂(z) for Re z > 0, z ≠ 1 (the analytic zeta value).
pub fn zeta_hat_reference(z: ComplexValue, cfg: &EulerMaclaurinConfig) -> Result<ComplexValue> {
    Ok(zeta_hat_reference_at(z, cfg.reference_n(z), cfg)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    fn cfg_depth(m: usize) -> EulerMaclaurinConfig {
        EulerMaclaurinConfig {
            bernoulli_depth: m,
            ..Default::default()
        }
    }

    #[test]
    fn window_arithmetic() {
        let w = ValidityWindow::new(2.0).unwrap();
        assert!(check_window(c(0.5, 0.0), 10, &w));
        assert!(!check_window(c(0.5, 100.0), 10, &w));
        assert!(check_window(c(0.5, 14.13), 5, &w));
        assert!((w.max_im(10) - 31.41592653589793).abs() < 1e-12);
        assert!(ValidityWindow::new(1.0).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(EulerMaclaurinConfig::new(0, 50, 1e-12, 2.0).is_err());
        assert!(EulerMaclaurinConfig::new(31, 50, 1e-12, 2.0).is_err());
        assert!(EulerMaclaurinConfig::new(10, 9, 1e-12, 2.0).is_err());
        assert!(EulerMaclaurinConfig::new(10, 50, 0.0, 2.0).is_err());
        assert!(EulerMaclaurinConfig::new(10, 50, 1e-12, 0.5).is_err());
        assert!(EulerMaclaurinConfig::new(10, 50, 1e-12, 2.0).is_ok());
    }

    #[test]
    fn single_leading_term() {
        let r = remainder(c(2.0, 0.0), 10, &cfg_depth(1)).unwrap();
        assert!((r.value.re - 2.0 / 12.0 * 1e-3).abs() < 1e-15 * 1.7e-4);
        assert_eq!(r.terms, 1);
        // next term: B₄/4! · 2·3·4 · 10⁻⁵
        assert!((r.bound - 1.0 / 30.0 * 1e-5).abs() < 1e-15 * 3.4e-7);
    }

    #[test]
    fn closes_expansion_at_two() {
        let n = 100;
        let r = remainder(c(2.0, 0.0), n, &cfg_depth(3)).unwrap();
        let zeta2 = zeta_partial(c(2.0, 0.0), n).unwrap().re + 0.01 - 0.5e-4 + r.value.re;
        assert!((zeta2 - PI * PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn leading_term_bound_at_first_zero() {
        let z = c(0.5, 14.134725);
        let n = 64u64;
        let lead = (z / 12.0).norm() * (n as f64).powf(-1.5);
        for m in [5, 6] {
            let r = remainder(z, n, &cfg_depth(m)).unwrap();
            assert!(r.value.norm() <= 2.0 * lead);
        }
        let a = remainder(z, n, &cfg_depth(5)).unwrap();
        let b = remainder(z, n, &cfg_depth(6)).unwrap();
        assert!((a.value - b.value).norm() <= a.bound * 1.0001);
    }

    #[test]
    fn remainder_errors() {
        let cfg = EulerMaclaurinConfig::default();
        assert!(matches!(
            remainder(c(0.5, 100.0), 10, &cfg),
            Err(Error::Validity { .. })
        ));
        assert!(matches!(
            remainder(c(0.0, 1.0), 10, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            remainder(c(-1.0, 1.0), 10, &cfg),
            Err(Error::Domain(_))
        ));
        // window satisfied but n far too small for |Im z|: terms grow at once
        let loose = EulerMaclaurinConfig {
            window: ValidityWindow::new(1.01).unwrap(),
            bernoulli_depth: 30,
            ..Default::default()
        };
        let r = remainder(c(0.5, 30.0), 5, &loose);
        assert!(matches!(r, Err(Error::PrecisionNotReached { .. })), "{r:?}");
    }

    #[test]
    fn reference_values() {
        let cfg = EulerMaclaurinConfig::default();
        let z2 = zeta_hat_reference(c(2.0, 0.0), &cfg).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-12);
        let half = zeta_hat_reference(c(0.5, 0.0), &cfg).unwrap();
        assert!((half.re + 1.4603545088095868).abs() < 1e-12);
        let rho = zeta_hat_reference(c(0.5, 14.134725141734694), &cfg).unwrap();
        assert!(rho.norm() < 1e-9);
        assert!(matches!(
            zeta_hat_reference(c(1.0, 0.0), &cfg),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn reference_n_scales_with_height() {
        let cfg = EulerMaclaurinConfig::default();
        assert_eq!(cfg.reference_n(c(0.5, 0.0)), 50);
        assert_eq!(cfg.reference_n(c(0.5, 50.0)), 64);
        assert!(check_window(
            c(0.5, 99.0),
            cfg.reference_n(c(0.5, 99.0)),
            &cfg.window
        ));
    }
}
