//! Dyadic sweeps at a zero, power-law fits and limit extraction.
//!
//! A sweep evaluates one quantity at n = n₀, 2n₀, …, n₀·2^d. Orders of
//! decay come from a least-squares fit of ln|value| against ln n; limits are
//! the last normalized value together with the change over the final
//! doubling.

mod claims;

pub use claims::{
    verify_claims, ClaimId, ClaimResult, ClaimValue, IdentityCheck, RemainderIdentities,
    ReportMeta, SweepPlan, VerificationReport, EXPONENT_TOLERANCE, IDENTITY_BUDGET_FACTOR,
    LIMIT_TOLERANCE, REPORT_SCHEMA,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler_maclaurin::{check_window, EulerMaclaurinConfig};
use crate::functional::{h_hat_n, h_n, small_g_2n, small_h_2n, DENOMINATOR_GUARD};
use crate::series::{zeta_hat_partial, zeta_hat_partial_derivative, MAX_TERMS};
use crate::special::complex_pow_base_real;
use crate::ComplexValue;

/// Fewest doublings (and fewest fit points) accepted.
pub const MIN_DOUBLINGS: u32 = 4;
pub const MIN_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Quantity {
    ZetaHatAtRho,
    ZetaHatAtOneMinusRho,
    HHatN,
    HN,
    SmallH2n,
    SmallG2n,
    DerivRatio,
    HHatDoublingRatio,
    HDoublingRatio,
}

impl Quantity {
    /// Largest partial-sum length touched when evaluating at `n`.
    fn terms_needed(self, n: u64) -> u64 {
        match self {
            Quantity::SmallH2n
            | Quantity::SmallG2n
            | Quantity::HHatDoublingRatio
            | Quantity::HDoublingRatio => n.saturating_mul(2),
            _ => n,
        }
    }

    pub fn evaluate(self, rho: ComplexValue, n: u64) -> Result<ComplexValue> {
        let reflected = ComplexValue::new(1.0 - rho.re, -rho.im);
        match self {
            Quantity::ZetaHatAtRho => zeta_hat_partial(rho, n),
            Quantity::ZetaHatAtOneMinusRho => zeta_hat_partial(reflected, n),
            Quantity::HHatN => h_hat_n(rho, n),
            Quantity::HN => h_n(rho, n),
            Quantity::SmallH2n => small_h_2n(rho, n),
            Quantity::SmallG2n => small_g_2n(rho, n),
            Quantity::DerivRatio => {
                let num = zeta_hat_partial_derivative(rho, n)?;
                let den = zeta_hat_partial_derivative(reflected, n)?;
                divide(num, den)
            }
            Quantity::HHatDoublingRatio => divide(h_hat_n(rho, 2 * n)?, h_hat_n(rho, n)?),
            Quantity::HDoublingRatio => divide(h_n(rho, 2 * n)?, h_n(rho, n)?),
        }
    }
}

fn divide(num: ComplexValue, den: ComplexValue) -> Result<ComplexValue> {
    let d = den.norm();
    if !(d >= DENOMINATOR_GUARD) {
        return Err(Error::DegenerateRatio(d));
    }
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSeries {
    pub quantity: Quantity,
    pub rho: ComplexValue,
    /// (n, value) with n strictly increasing.
    pub points: Vec<(u64, ComplexValue)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ConvergenceSeries {
    pub fn new(
        quantity: Quantity,
        rho: ComplexValue,
        points: Vec<(u64, ComplexValue)>,
    ) -> Result<Self> {
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Shape(
                "series points must have strictly increasing n".into(),
            ));
        }
        Ok(Self {
            quantity,
            rho,
            points,
            warnings: Vec::new(),
        })
    }

    pub fn last(&self) -> Option<(u64, ComplexValue)> {
        self.points.last().copied()
    }
}

/// Evaluate `quantity` at n = n₀·2^k for k = 0..=doublings.
///
/// If the validity window fails at n₀, n₀ is doubled until it holds and a
/// warning is attached.
pub fn sweep(
    quantity: Quantity,
    rho: ComplexValue,
    n0: u64,
    doublings: u32,
    cfg: &EulerMaclaurinConfig,
) -> Result<ConvergenceSeries> {
    if doublings < MIN_DOUBLINGS {
        return Err(Error::Precondition(format!(
            "sweep requires doublings >= {MIN_DOUBLINGS}, got {doublings}"
        )));
    }
    if n0 == 0 {
        return Err(Error::Precondition("sweep requires n0 >= 1".into()));
    }
    let mut warnings = Vec::new();
    let mut start = n0;
    while !check_window(rho, start, &cfg.window) {
        start *= 2;
    }
    if start != n0 {
        warnings.push(format!(
            "n0 = {n0} violates the validity window for |Im rho| = {}; shifted to {start}",
            rho.im.abs()
        ));
    }
    let ns: Vec<u64> = (0..=doublings)
        .map(|k| start.checked_shl(k).filter(|&n| n >> k == start))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Config("sweep range overflows".into()))?;
    let top = quantity.terms_needed(*ns.last().unwrap());
    if top > MAX_TERMS {
        return Err(Error::Config(format!(
            "sweep needs {top} terms, above the cap of {MAX_TERMS}"
        )));
    }
    let points = ns
        .par_iter()
        .map(|&n| quantity.evaluate(rho, n).map(|v| (n, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceSeries {
        quantity,
        rho,
        points,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub exponent: f64,
    pub intercept: f64,
    pub max_abs_residual: f64,
    pub points_used: usize,
}

/// Least-squares fit of ln|value| = intercept + exponent·ln n.
pub fn fit_power_law(series: &ConvergenceSeries) -> Result<SlopeFit> {
    if series.points.len() < MIN_POINTS {
        return Err(Error::Shape(format!(
            "power-law fit needs at least {MIN_POINTS} points, got {}",
            series.points.len()
        )));
    }
    if let Some((n, _)) = series.points.iter().find(|(_, v)| !(v.norm() > 0.0)) {
        return Err(Error::Degenerate(format!("zero modulus at n = {n}")));
    }
    let xy: Vec<(f64, f64)> = series
        .points
        .iter()
        .map(|&(n, v)| ((n as f64).ln(), v.norm().ln()))
        .collect();
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate("all n identical".into()));
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let max_abs_residual = xy
        .iter()
        .map(|&(x, y)| (y - intercept - exponent * x).abs())
        .fold(0.0, f64::max);
    Ok(SlopeFit {
        exponent,
        intercept,
        max_abs_residual,
        points_used: xy.len(),
    })
}

/// The series (n, value(2n)/value(n)) over every n whose double is present.
pub fn doubling_ratio(series: &ConvergenceSeries) -> Result<ConvergenceSeries> {
    let points = series
        .points
        .iter()
        .filter_map(|&(n, v)| {
            let doubled = series
                .points
                .iter()
                .find(|(m, _)| Some(*m) == n.checked_mul(2))?;
            Some(divide(doubled.1, v).map(|r| (n, r)))
        })
        .collect::<Result<Vec<_>>>()?;
    if points.len() < MIN_POINTS {
        return Err(Error::Shape(format!(
            "doubling ratio needs (n, 2n) pairs for at least {MIN_POINTS} values of n, found {}",
            points.len()
        )));
    }
    let quantity = match series.quantity {
        Quantity::HHatN => Quantity::HHatDoublingRatio,
        Quantity::HN => Quantity::HDoublingRatio,
        q => q,
    };
    Ok(ConvergenceSeries {
        quantity,
        rho: series.rho,
        points,
        warnings: series.warnings.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Normalizer {
    None,
    /// Divide by n^(1−2ρ).
    NPow1Minus2Rho,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioLimit {
    pub limit: ComplexValue,
    /// |v_last − v_prev| / |v_last| over the final doubling.
    pub last_delta: f64,
    pub points_used: usize,
    /// The normalized trajectory the limit was read from.
    pub normalized: Vec<(u64, ComplexValue)>,
}

/// Last normalized value of the series, with its change over the final step.
pub fn ratio_limit(series: &ConvergenceSeries, normalizer: Normalizer) -> Result<RatioLimit> {
    if series.points.len() < MIN_POINTS {
        return Err(Error::Shape(format!(
            "ratio limit needs at least {MIN_POINTS} points, got {}",
            series.points.len()
        )));
    }
    let exponent = series.rho * 2.0 - 1.0;
    let normalized = series
        .points
        .iter()
        .map(|&(n, v)| match normalizer {
            Normalizer::None => Ok((n, v)),
            Normalizer::NPow1Minus2Rho => {
                let scale = complex_pow_base_real(n as f64, exponent)?;
                if !(scale.norm() >= DENOMINATOR_GUARD) {
                    return Err(Error::Degenerate(format!(
                        "normalizer n^(1-2rho) underflows at n = {n}"
                    )));
                }
                Ok((n, v / scale))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let k = normalized.len();
    let (last, prev) = (normalized[k - 1].1, normalized[k - 2].1);
    let last_delta = if last.norm() > 0.0 {
        (last - prev).norm() / last.norm()
    } else if last == prev {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(RatioLimit {
        limit: last,
        last_delta,
        points_used: k,
        normalized,
    })
}

/// Sweep ζ̂′ₙ(ρ)/ζ̂′ₙ(1−ρ) and read off its limit.
pub fn derivative_ratio_limit(
    rho: ComplexValue,
    n0: u64,
    doublings: u32,
    cfg: &EulerMaclaurinConfig,
) -> Result<RatioLimit> {
    let s = sweep(Quantity::DerivRatio, rho, n0, doublings, cfg)?;
    ratio_limit(&s, Normalizer::None)
}
