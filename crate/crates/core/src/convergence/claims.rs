//! Per-zero verification of the asymptotic relations, C1 … C9.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    derivative_ratio_limit, doubling_ratio, fit_power_law, ratio_limit, sweep, ConvergenceSeries,
    Normalizer, Quantity, MIN_DOUBLINGS,
};
use crate::error::{Error, Result};
use crate::euler_maclaurin::{remainder, zeta_hat_reference, EulerMaclaurinConfig};
use crate::functional::{h_hat_exact, small_g_2n, small_h_2n};
use crate::special::complex_pow_base_real;
use crate::zeros::ZeroRecord;
use crate::ComplexValue;

pub const REPORT_SCHEMA: u32 = 1;

/// Tolerance on fitted exponents.
pub const EXPONENT_TOLERANCE: f64 = 0.15;
/// Tolerance on limits read at the end of the sweep.
pub const LIMIT_TOLERANCE: f64 = 1e-3;
/// Remainder identities must close within this multiple of their error budget.
pub const IDENTITY_BUDGET_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClaimId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
}

impl ClaimId {
    pub const ALL: [ClaimId; 9] = [
        ClaimId::C1,
        ClaimId::C2,
        ClaimId::C3,
        ClaimId::C4,
        ClaimId::C5,
        ClaimId::C6,
        ClaimId::C7,
        ClaimId::C8,
        ClaimId::C9,
    ];

    pub fn describe(self) -> &'static str {
        match self {
            ClaimId::C1 => "exponent of |h_2n(rho)| equals -(1+sigma)",
            ClaimId::C2 => "|H^_2n(rho) / H^_n(rho)| tends to 1",
            ClaimId::C3 => "H^_n(rho) / n^(1-2rho) tends to 1",
            ClaimId::C4 => "H_n(rho) / n^(1-2rho) tends to rho/(1-rho)",
            ClaimId::C5 => "H_2n(rho) - rho/(1-rho) (2n)^(1-2rho) decays like n^(-2sigma)",
            ClaimId::C6 => "zeta^'_n(rho) / zeta^'_n(1-rho) tends to -H^(rho)",
            ClaimId::C7 => "g_2n(rho) = -R_2n(rho) + 2^(1-rho) R_n(rho)",
            ClaimId::C8 => "h_2n(rho) = -2R_2n(rho) + 2^(1-rho) R_n(rho) = g_2n(rho) - R_2n(rho)",
            ClaimId::C9 => "|H_2n(rho) / H_n(rho)| tends to |2^(1-2rho)|",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A real or complex claim value; serializes as a number or `{re, im}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClaimValue {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl From<f64> for ClaimValue {
    fn from(v: f64) -> Self {
        ClaimValue::Real(v)
    }
}

impl From<ComplexValue> for ClaimValue {
    fn from(v: ComplexValue) -> Self {
        ClaimValue::Complex { re: v.re, im: v.im }
    }
}

impl fmt::Display for ClaimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ClaimValue::Real(v) => write!(f, "{v:.6e}"),
            ClaimValue::Complex { re, im } => write!(f, "{re:.6e}{im:+.6e}i"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub zero_index: usize,
    pub claim: ClaimId,
    pub expected: ClaimValue,
    pub measured: Option<ClaimValue>,
    pub tolerance: f64,
    /// Distance between measured and expected that is compared to `tolerance`.
    pub deviation: Option<f64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Sweep parameters for [`verify_claims`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub n0: u64,
    pub doublings: u32,
    /// n at which the remainder identities C7 and C8 are checked.
    pub identity_ns: Vec<u64>,
}

impl Default for SweepPlan {
    fn default() -> Self {
        Self {
            n0: 1 << 6,
            doublings: 10,
            identity_ns: vec![1 << 8, 1 << 10, 1 << 12],
        }
    }
}

impl SweepPlan {
    pub fn validate(&self) -> Result<()> {
        if self.doublings < MIN_DOUBLINGS {
            return Err(Error::Precondition(format!(
                "sweep requires doublings >= {MIN_DOUBLINGS}, got {}",
                self.doublings
            )));
        }
        if self.n0 == 0 {
            return Err(Error::Precondition("sweep requires n0 >= 1".into()));
        }
        if self.identity_ns.is_empty() || self.identity_ns.contains(&0) {
            return Err(Error::Precondition(
                "identity checks need at least one n >= 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub n0: u64,
    pub doublings: u32,
    pub identity_ns: Vec<u64>,
    pub em: EulerMaclaurinConfig,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub claims: Vec<ClaimResult>,
    pub meta: ReportMeta,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.claims.iter().filter(|c| !c.pass)
    }
}

/// Evaluate claims C1 … C9 at every zero.
///
/// Failures inside a claim become a failing row; only an empty zero list or
/// an invalid plan abort the run.
pub fn verify_claims(
    zeros: &[ZeroRecord],
    plan: &SweepPlan,
    cfg: &EulerMaclaurinConfig,
) -> Result<VerificationReport> {
    if zeros.is_empty() {
        return Err(Error::Precondition(
            "verification needs at least one zero".into(),
        ));
    }
    plan.validate()?;
    cfg.validate()?;
    let claims = zeros
        .par_iter()
        .map(|z| verify_zero(z, plan, cfg))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport {
        schema: REPORT_SCHEMA,
        claims,
        meta: ReportMeta {
            n0: plan.n0,
            doublings: plan.doublings,
            identity_ns: plan.identity_ns.clone(),
            em: *cfg,
            generator: concat!("zetascope ", env!("CARGO_PKG_VERSION")).to_string(),
        },
    })
}

struct Outcome {
    expected: ClaimValue,
    measured: ClaimValue,
    deviation: f64,
    tolerance: f64,
}

fn verify_zero(
    zero: &ZeroRecord,
    plan: &SweepPlan,
    cfg: &EulerMaclaurinConfig,
) -> Vec<ClaimResult> {
    let rho = zero.rho;
    let ctx = ZeroContext::new(rho, plan, cfg);
    ClaimId::ALL
        .iter()
        .map(|&claim| {
            let outcome = match claim {
                ClaimId::C1 => ctx.c1(),
                ClaimId::C2 => ctx.c2(),
                ClaimId::C3 => ctx.c3(),
                ClaimId::C4 => ctx.c4(),
                ClaimId::C5 => ctx.c5(),
                ClaimId::C6 => ctx.c6(),
                ClaimId::C7 => ctx.c7(),
                ClaimId::C8 => ctx.c8(),
                ClaimId::C9 => ctx.c9(),
            };
            match outcome {
                Ok(o) => ClaimResult {
                    zero_index: zero.index,
                    claim,
                    expected: o.expected,
                    measured: Some(o.measured),
                    tolerance: o.tolerance,
                    deviation: Some(o.deviation),
                    pass: o.deviation <= o.tolerance,
                    error: None,
                },
                Err((expected, tolerance, e)) => ClaimResult {
                    zero_index: zero.index,
                    claim,
                    expected,
                    measured: None,
                    tolerance,
                    deviation: None,
                    pass: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

type ClaimOutcome = std::result::Result<Outcome, (ClaimValue, f64, Error)>;

/// Sweeps shared between claims at one zero, computed lazily.
struct ZeroContext<'a> {
    rho: ComplexValue,
    plan: &'a SweepPlan,
    cfg: &'a EulerMaclaurinConfig,
    h_hat: std::sync::OnceLock<Result<ConvergenceSeries>>,
    h: std::sync::OnceLock<Result<ConvergenceSeries>>,
}

impl<'a> ZeroContext<'a> {
    fn new(rho: ComplexValue, plan: &'a SweepPlan, cfg: &'a EulerMaclaurinConfig) -> Self {
        Self {
            rho,
            plan,
            cfg,
            h_hat: Default::default(),
            h: Default::default(),
        }
    }

    fn sigma(&self) -> f64 {
        self.rho.re
    }

    fn sweep(&self, q: Quantity) -> Result<ConvergenceSeries> {
        sweep(q, self.rho, self.plan.n0, self.plan.doublings, self.cfg)
    }

    fn h_hat_sweep(&self) -> Result<&ConvergenceSeries> {
        self.h_hat
            .get_or_init(|| self.sweep(Quantity::HHatN))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn h_sweep(&self) -> Result<&ConvergenceSeries> {
        self.h
            .get_or_init(|| self.sweep(Quantity::HN))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn one_minus_rho(&self) -> ComplexValue {
        ComplexValue::new(1.0, 0.0) - self.rho
    }

    fn exponent_claim(&self, expected: f64, series: Result<ConvergenceSeries>) -> ClaimOutcome {
        let fail = |e| (ClaimValue::Real(expected), EXPONENT_TOLERANCE, e);
        let fit = series.and_then(|s| fit_power_law(&s)).map_err(fail)?;
        Ok(Outcome {
            expected: expected.into(),
            measured: fit.exponent.into(),
            deviation: (fit.exponent - expected).abs(),
            tolerance: EXPONENT_TOLERANCE,
        })
    }

    fn limit_claim(&self, expected: ComplexValue, measured: Result<ComplexValue>) -> ClaimOutcome {
        let measured = measured.map_err(|e| (expected.into(), LIMIT_TOLERANCE, e))?;
        Ok(Outcome {
            expected: expected.into(),
            measured: measured.into(),
            deviation: (measured - expected).norm(),
            tolerance: LIMIT_TOLERANCE,
        })
    }

    fn modulus_claim(&self, expected: f64, ratios: Result<ConvergenceSeries>) -> ClaimOutcome {
        let measured = ratios
            .and_then(|s| s.last().ok_or_else(|| Error::Shape("empty series".into())))
            .map(|(_, v)| v.norm())
            .map_err(|e| (expected.into(), LIMIT_TOLERANCE, e))?;
        Ok(Outcome {
            expected: expected.into(),
            measured: measured.into(),
            deviation: (measured - expected).abs(),
            tolerance: LIMIT_TOLERANCE,
        })
    }

    fn c1(&self) -> ClaimOutcome {
        self.exponent_claim(-(1.0 + self.sigma()), self.sweep(Quantity::SmallH2n))
    }

    fn c2(&self) -> ClaimOutcome {
        self.modulus_claim(1.0, self.h_hat_sweep().and_then(doubling_ratio))
    }

    fn c3(&self) -> ClaimOutcome {
        let limit = self
            .h_hat_sweep()
            .and_then(|s| ratio_limit(s, Normalizer::NPow1Minus2Rho))
            .map(|r| r.limit);
        self.limit_claim(ComplexValue::new(1.0, 0.0), limit)
    }

    fn c4(&self) -> ClaimOutcome {
        let target = self.rho / self.one_minus_rho();
        let limit = self
            .h_sweep()
            .and_then(|s| ratio_limit(s, Normalizer::NPow1Minus2Rho))
            .map(|r| r.limit);
        self.limit_claim(target, limit)
    }

    fn c5(&self) -> ClaimOutcome {
        let factor = self.rho / self.one_minus_rho();
        let exponent = ComplexValue::new(1.0, 0.0) - self.rho * 2.0;
        let residuals = self.h_sweep().and_then(|s| {
            let points = s
                .points
                .iter()
                .map(|&(n, v)| {
                    // n^(1−2ρ) = n^(−(2ρ−1))
                    let model = factor * complex_pow_base_real(n as f64, -exponent)?;
                    Ok((n, v - model))
                })
                .collect::<Result<Vec<_>>>()?;
            ConvergenceSeries::new(Quantity::HN, self.rho, points)
        });
        self.exponent_claim(-2.0 * self.sigma(), residuals)
    }

    fn c6(&self) -> ClaimOutcome {
        let expected = match h_hat_exact(self.rho) {
            Ok(h) => -h,
            Err(e) => return Err((ClaimValue::Real(f64::NAN), LIMIT_TOLERANCE, e)),
        };
        let limit = derivative_ratio_limit(self.rho, self.plan.n0, self.plan.doublings, self.cfg)
            .map(|r| r.limit);
        self.limit_claim(expected, limit)
    }

    fn c7(&self) -> ClaimOutcome {
        self.identity_claim(|ids| vec![ids.g_split()])
    }

    fn c8(&self) -> ClaimOutcome {
        self.identity_claim(|ids| vec![ids.h_split(), ids.h_from_g()])
    }

    fn c9(&self) -> ClaimOutcome {
        let expected = complex_pow_base_real(2.0, self.rho * 2.0 - 1.0)
            .map(|v| v.norm())
            .unwrap_or(f64::NAN);
        self.modulus_claim(expected, self.h_sweep().and_then(doubling_ratio))
    }

    /// Worst identity gap across `plan.identity_ns`, measured in units of
    /// its error budget.
    fn identity_claim(
        &self,
        select: impl Fn(&RemainderIdentities) -> Vec<IdentityCheck>,
    ) -> ClaimOutcome {
        let fail = |e| (ClaimValue::Real(0.0), f64::NAN, e);
        let residual = zeta_hat_reference(self.rho, self.cfg).map_err(fail)?.norm();
        let mut worst: Option<IdentityCheck> = None;
        for &n in &self.plan.identity_ns {
            let ids =
                RemainderIdentities::evaluate(self.rho, n, residual, self.cfg).map_err(fail)?;
            for check in select(&ids) {
                if worst.is_none_or(|w| check.gap / check.budget > w.gap / w.budget) {
                    worst = Some(check);
                }
            }
        }
        let w = worst.expect("identity_ns is non-empty");
        Ok(Outcome {
            expected: 0.0.into(),
            measured: w.gap.into(),
            deviation: w.gap,
            tolerance: IDENTITY_BUDGET_FACTOR * w.budget,
        })
    }
}

/// One side-by-side comparison of an exact identity at a zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub n: u64,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    /// |lhs − rhs|
    pub gap: f64,
    /// Euler–Maclaurin truncation bounds of the remainders involved.
    pub truncation: f64,
    /// Truncation bounds of the remainders involved, the zero residual
    /// carried by the identity, and a rounding floor.
    pub budget: f64,
}

/// h₂ₙ, g₂ₙ and the remainders Rₙ, R₂ₙ at one (ρ, n), for the identities
///
/// g₂ₙ(ρ) = −R₂ₙ(ρ) + 2^(1−ρ)Rₙ(ρ)
/// h₂ₙ(ρ) = −2R₂ₙ(ρ) + 2^(1−ρ)Rₙ(ρ)
/// h₂ₙ(ρ) = g₂ₙ(ρ) − R₂ₙ(ρ)
///
/// which hold exactly when ζ̂(ρ) = 0. In general the three gaps are
/// (1 − 2^(1−ρ))ζ̂(ρ), (2 − 2^(1−ρ))ζ̂(ρ) and ζ̂(ρ), so the residual of the
/// located zero enters each budget with that coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderIdentities {
    pub n: u64,
    pub h2n: ComplexValue,
    pub g2n: ComplexValue,
    pub r_n: ComplexValue,
    pub r_2n: ComplexValue,
    pub r_n_bound: f64,
    pub r_2n_bound: f64,
    pub two_pow: ComplexValue,
    pub zero_residual: f64,
    pub rounding_floor: f64,
}

impl RemainderIdentities {
    pub fn evaluate(
        rho: ComplexValue,
        n: u64,
        zero_residual: f64,
        cfg: &EulerMaclaurinConfig,
    ) -> Result<Self> {
        let r_n = remainder(rho, n, cfg)?;
        let r_2n = remainder(rho, 2 * n, cfg)?;
        let two_n = (2 * n) as f64;
        // the sums behind h₂ₙ cancel a tail of size (2n)^(1−σ)/|1−ρ| and
        // carry phase error |ρ|·ln(2n)·eps per term
        let tail = two_n.powf(1.0 - rho.re) / (ComplexValue::new(1.0, 0.0) - rho).norm();
        let rounding_floor = 64.0 * f64::EPSILON * (1.0 + rho.norm() * two_n.ln()) * (1.0 + tail);
        Ok(Self {
            n,
            h2n: small_h_2n(rho, n)?,
            g2n: small_g_2n(rho, n)?,
            r_n: r_n.value,
            r_2n: r_2n.value,
            r_n_bound: r_n.bound,
            r_2n_bound: r_2n.bound,
            two_pow: complex_pow_base_real(2.0, rho - 1.0)?,
            zero_residual,
            rounding_floor,
        })
    }

    fn check(
        &self,
        lhs: ComplexValue,
        rhs: ComplexValue,
        trunc: f64,
        zeta_coef: f64,
    ) -> IdentityCheck {
        IdentityCheck {
            n: self.n,
            lhs,
            rhs,
            gap: (lhs - rhs).norm(),
            truncation: trunc,
            budget: trunc + zeta_coef * self.zero_residual + self.rounding_floor,
        }
    }

    /// g₂ₙ = −R₂ₙ + 2^(1−ρ)Rₙ
    pub fn g_split(&self) -> IdentityCheck {
        let trunc = self.r_2n_bound + self.two_pow.norm() * self.r_n_bound;
        let coef = (ComplexValue::new(1.0, 0.0) - self.two_pow).norm();
        self.check(self.g2n, -self.r_2n + self.two_pow * self.r_n, trunc, coef)
    }

    /// h₂ₙ = −2R₂ₙ + 2^(1−ρ)Rₙ
    pub fn h_split(&self) -> IdentityCheck {
        let trunc = 2.0 * self.r_2n_bound + self.two_pow.norm() * self.r_n_bound;
        let coef = (ComplexValue::new(2.0, 0.0) - self.two_pow).norm();
        self.check(
            self.h2n,
            -self.r_2n * 2.0 + self.two_pow * self.r_n,
            trunc,
            coef,
        )
    }

    /// h₂ₙ = g₂ₙ − R₂ₙ
    pub fn h_from_g(&self) -> IdentityCheck {
        self.check(self.h2n, self.g2n - self.r_2n, self.r_2n_bound, 1.0)
    }
}
