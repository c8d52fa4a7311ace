//! Zeros on the critical line from sign changes of Hardy's Z function.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler_maclaurin::{zeta_hat_reference, EulerMaclaurinConfig};
use crate::special::log_gamma;
use crate::ComplexValue;

pub const DEFAULT_STEP: f64 = 0.05;
pub const MAX_STEP: f64 = 0.25;
pub const MAX_T: f64 = 100.0;
/// Bisection stops once the bracket is this narrow.
pub const BRACKET_TOLERANCE: f64 = 1e-10;
/// Largest tolerated |Im(e^{iθ}ζ)|.
pub const LEAKAGE_TOLERANCE: f64 = 1e-9;

/// A zero ρ = 1/2 + it located by bisection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub index: usize,
    pub t: f64,
    pub rho: ComplexValue,
    pub bracket: (f64, f64),
    /// |ζ̂(ρ)| from the reference evaluator.
    pub residual: f64,
}

impl ZeroRecord {
    pub fn sigma(&self) -> f64 {
        self.rho.re
    }

    /// 1 − ρ, the reflected zero.
    pub fn reflected(&self) -> ComplexValue {
        ComplexValue::new(1.0, 0.0) - self.rho
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardyZSample {
    pub t: f64,
    pub value: f64,
    pub leakage: f64,
}

/// θ(t) = Im log Γ(1/4 + it/2) − (t/2)·ln π.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "theta requires finite t >= 0, got {t}"
        )));
    }
    let lg = log_gamma(ComplexValue::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * PI.ln())
}

/// Z(t) = e^{iθ(t)} ζ(1/2 + it) with its imaginary leakage.
pub fn hardy_z_sample(t: f64, cfg: &EulerMaclaurinConfig) -> Result<HardyZSample> {
    if !(t > 0.0 && t <= MAX_T) {
        return Err(Error::Domain(format!(
            "Hardy Z requires 0 < t <= {MAX_T}, got {t}"
        )));
    }
    let theta = riemann_siegel_theta(t)?;
    let zeta = zeta_hat_reference(ComplexValue::new(0.5, t), cfg)?;
    let rotated = ComplexValue::from_polar(1.0, theta) * zeta;
    Ok(HardyZSample {
        t,
        value: rotated.re,
        leakage: rotated.im.abs(),
    })
}

/// Real Z(t); errors if the rotated value is not real to [`LEAKAGE_TOLERANCE`].
pub fn hardy_z(t: f64, cfg: &EulerMaclaurinConfig) -> Result<f64> {
    let s = hardy_z_sample(t, cfg)?;
    if s.leakage > LEAKAGE_TOLERANCE {
        return Err(Error::Precision(format!(
            "Hardy Z at t = {t} has imaginary leakage {:e} > {LEAKAGE_TOLERANCE:e}",
            s.leakage
        )));
    }
    Ok(s.value)
}

/// Outcome of refining one sign change.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub t: f64,
    pub bracket: (f64, f64),
    /// (bracket width, midpoint) after every halving.
    pub history: Vec<(f64, f64)>,
}

/// Bisect a sign change of Z on `[lo, hi]` down to [`BRACKET_TOLERANCE`].
pub fn bisect_zero(lo: f64, hi: f64, cfg: &EulerMaclaurinConfig) -> Result<Refinement> {
    if !(lo < hi) {
        return Err(Error::Precondition(format!(
            "bracket must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let (mut lo, mut hi) = (lo, hi);
    let z_lo = hardy_z(lo, cfg)?;
    let z_hi = hardy_z(hi, cfg)?;
    if z_lo.signum() == z_hi.signum() {
        return Err(Error::Precondition(format!(
            "Z has no sign change on [{lo}, {hi}]"
        )));
    }
    let lo_positive = z_lo > 0.0;
    let mut history = Vec::new();
    while hi - lo > BRACKET_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let zm = hardy_z(mid, cfg)?;
        if zm == 0.0 {
            history.push((hi - lo, mid));
            return Ok(Refinement {
                t: mid,
                bracket: (lo, hi),
                history,
            });
        }
        if (zm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        history.push((hi - lo, 0.5 * (lo + hi)));
    }
    Ok(Refinement {
        t: 0.5 * (lo + hi),
        bracket: (lo, hi),
        history,
    })
}

/// Region where |Z| dips without changing sign, so a close pair of zeros
/// may have been stepped over.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanWarning {
    pub t_lo: f64,
    pub t_hi: f64,
    pub possibly_missed_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ZeroScan {
    pub zeros: Vec<ZeroRecord>,
    pub warnings: Vec<ScanWarning>,
}

fn scan_grid(t_min: f64, t_max: f64, step: f64) -> Vec<f64> {
    let count = ((t_max - t_min) / step).ceil() as usize;
    let mut grid: Vec<f64> = (0..count).map(|k| t_min + k as f64 * step).collect();
    grid.push(t_max);
    grid
}

/// Scan Z(t) on `[t_min, t_max]`, bracket sign changes and refine each.
pub fn find_zeros(
    t_min: f64,
    t_max: f64,
    step: f64,
    cfg: &EulerMaclaurinConfig,
) -> Result<ZeroScan> {
    if !(t_min > 0.0 && t_min < t_max && t_max <= MAX_T) {
        return Err(Error::Precondition(format!(
            "scan range must satisfy 0 < t_min < t_max <= {MAX_T}, got [{t_min}, {t_max}]"
        )));
    }
    if !(step > 0.0 && step <= MAX_STEP) {
        return Err(Error::Precondition(format!(
            "scan step must satisfy 0 < step <= {MAX_STEP}, got {step}"
        )));
    }
    cfg.validate()?;

    let grid = scan_grid(t_min, t_max, step);
    let values = grid
        .par_iter()
        .map(|&t| hardy_z(t, cfg))
        .collect::<Result<Vec<f64>>>()?;

    let brackets: Vec<(f64, f64)> = (1..grid.len())
        .filter(|&k| (values[k - 1] > 0.0) != (values[k] > 0.0))
        .map(|k| (grid[k - 1], grid[k]))
        .collect();

    let warnings = (1..grid.len().saturating_sub(1))
        .filter(|&k| {
            let same_sign = (values[k - 1] > 0.0) == (values[k] > 0.0)
                && (values[k] > 0.0) == (values[k + 1] > 0.0);
            let dip =
                values[k].abs() < values[k - 1].abs() && values[k].abs() < values[k + 1].abs();
            same_sign && dip
        })
        .map(|k| ScanWarning {
            t_lo: grid[k - 1],
            t_hi: grid[k + 1],
            possibly_missed_zero: true,
        })
        .collect();

    let refined = brackets
        .par_iter()
        .map(|&(lo, hi)| {
            let r = bisect_zero(lo, hi, cfg)?;
            let rho = ComplexValue::new(0.5, r.t);
            let residual = zeta_hat_reference(rho, cfg)?.norm();
            Ok((r, rho, residual))
        })
        .collect::<Result<Vec<_>>>()?;

    let zeros = refined
        .into_iter()
        .enumerate()
        .map(|(i, (r, rho, residual))| ZeroRecord {
            index: i + 1,
            t: r.t,
            rho,
            bracket: r.bracket,
            residual,
        })
        .collect();
    Ok(ZeroScan { zeros, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_at_origin_and_sign() {
        assert_eq!(riemann_siegel_theta(0.0).unwrap(), 0.0);
        assert!(riemann_siegel_theta(-1.0).is_err());
        // θ dips negative before turning upward near t ≈ 17.8
        assert!(riemann_siegel_theta(10.0).unwrap() < 0.0);
    }

    #[test]
    fn theta_reference_values() {
        // θ(10) and θ(101)
        assert!((riemann_siegel_theta(10.0).unwrap() + 3.0670743962898954).abs() < 1e-12);
        assert!((riemann_siegel_theta(101.0).unwrap() - 89.35830143691956).abs() < 1e-11);
    }

    #[test]
    fn hardy_z_domain() {
        let cfg = EulerMaclaurinConfig::default();
        assert!(hardy_z(0.0, &cfg).is_err());
        assert!(hardy_z(100.5, &cfg).is_err());
    }

    #[test]
    fn scan_preconditions() {
        let cfg = EulerMaclaurinConfig::default();
        assert!(find_zeros(10.0, 5.0, 0.1, &cfg).is_err());
        assert!(find_zeros(0.0, 5.0, 0.1, &cfg).is_err());
        assert!(find_zeros(10.0, 120.0, 0.1, &cfg).is_err());
        assert!(find_zeros(10.0, 20.0, 0.3, &cfg).is_err());
    }

    #[test]
    fn grid_covers_endpoints() {
        let g = scan_grid(10.0, 10.35, 0.1);
        assert_eq!(g.first(), Some(&10.0));
        assert_eq!(g.last(), Some(&10.35));
        assert_eq!(g.len(), 5);
    }

    #[test]
    fn bisect_requires_sign_change() {
        let cfg = EulerMaclaurinConfig::default();
        assert!(bisect_zero(2.0, 3.0, &cfg).is_err());
        assert!(bisect_zero(3.0, 2.0, &cfg).is_err());
        let r = bisect_zero(14.0, 14.3, &cfg).unwrap();
        assert!(r.bracket.1 - r.bracket.0 <= BRACKET_TOLERANCE);
        assert!(r.bracket.0 < r.t && r.t < r.bracket.1);
    }

    #[test]
    fn reflected_zero() {
        let rec = ZeroRecord {
            index: 1,
            t: 3.0,
            rho: ComplexValue::new(0.5, 3.0),
            bracket: (2.9, 3.1),
            residual: 0.0,
        };
        assert_eq!(rec.reflected(), ComplexValue::new(0.5, -3.0));
        assert_eq!(rec.sigma(), 0.5);
    }
}
