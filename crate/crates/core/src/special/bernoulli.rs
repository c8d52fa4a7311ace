//! Even-index Bernoulli numbers from the exact integer recurrence.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest depth accepted by [`bernoulli_numbers`].
pub const MAX_DEPTH: usize = 30;

// one extra pair so truncation bounds can look at the first omitted term
const CACHE_DEPTH: usize = MAX_DEPTH + 1;

/// B₂, B₄, …, B₂ₘ rounded once from exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<f64>,
}

impl BernoulliTable {
    pub fn depth(&self) -> usize {
        self.values.len()
    }

    /// B₂ₖ for 1 ≤ k ≤ depth.
    pub fn b2k(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

struct Cache {
    b2k: Vec<f64>,
    /// B₂ₖ / (2k)!
    taylor: Vec<f64>,
    /// B₂ₖ / (2k(2k-1))
    stirling: Vec<f64>,
}

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| {
        let exact = exact_bernoulli(2 * CACHE_DEPTH);
        let mut factorial = BigInt::one();
        let mut b2k = Vec::with_capacity(CACHE_DEPTH);
        let mut taylor = Vec::with_capacity(CACHE_DEPTH);
        let mut stirling = Vec::with_capacity(CACHE_DEPTH);
        for k in 1..=CACHE_DEPTH {
            let two_k = 2 * k;
            factorial *= BigInt::from(two_k - 1) * BigInt::from(two_k);
            let b = &exact[two_k];
            b2k.push(to_f64(b));
            taylor.push(to_f64(&(b / BigRational::from_integer(factorial.clone()))));
            let denom = BigInt::from(two_k * (two_k - 1));
            stirling.push(to_f64(&(b / BigRational::from_integer(denom))));
        }
        Cache {
            b2k,
            taylor,
            stirling,
        }
    })
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("Bernoulli ratio fits in f64")
}

/// B₀ … B_max via Σ_{k=0}^{n} C(n+1, k) Bₖ = 0.
fn exact_bernoulli(max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(max + 1);
    b.push(BigRational::one());
    for n in 1..=max {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(n+1, 0)
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Table of the first `m` even-index Bernoulli numbers, `1 ≤ m ≤ 30`.
pub fn bernoulli_numbers(m: usize) -> Result<BernoulliTable> {
    if !(1..=MAX_DEPTH).contains(&m) {
        return Err(Error::Config(format!(
            "Bernoulli depth must satisfy 1 <= m <= {MAX_DEPTH}, got {m}"
        )));
    }
    Ok(BernoulliTable {
        values: cache().b2k[..m].to_vec(),
    })
}

/// B₂ₖ/(2k)! for 1 ≤ k ≤ 31.
pub(crate) fn taylor_coefficient(k: usize) -> f64 {
    cache().taylor[k - 1]
}

pub(crate) fn taylor_depth_available() -> usize {
    CACHE_DEPTH
}

/// B₂ₖ/(2k(2k−1)) for 1 ≤ k ≤ 31, the Stirling-series coefficients.
pub(crate) fn stirling_coefficient(k: usize) -> f64 {
    cache().stirling[k - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_entries() {
        assert_eq!(bernoulli_numbers(1).unwrap().values(), &[1.0 / 6.0]);
        assert_eq!(
            bernoulli_numbers(2).unwrap().values(),
            &[1.0 / 6.0, -1.0 / 30.0]
        );
        let t = bernoulli_numbers(6).unwrap();
        assert_eq!(t.b2k(3), 1.0 / 42.0);
        assert_eq!(t.b2k(4), -1.0 / 30.0);
        assert_eq!(t.b2k(5), 5.0 / 66.0);
        assert_eq!(t.b2k(6), -691.0 / 2730.0);
    }

    #[test]
    fn depth_out_of_range_is_config_error() {
        assert!(matches!(bernoulli_numbers(0), Err(Error::Config(_))));
        assert!(matches!(bernoulli_numbers(31), Err(Error::Config(_))));
    }

    #[test]
    fn odd_indices_vanish_in_exact_recurrence() {
        let b = exact_bernoulli(20);
        assert_eq!(b[1], BigRational::new((-1).into(), 2.into()));
        for n in (3..=20).step_by(2) {
            assert!(b[n].is_zero(), "B_{n} should be zero");
        }
    }

    #[test]
    fn signs_alternate_and_magnitudes_grow() {
        let t = bernoulli_numbers(30).unwrap();
        for k in 1..30 {
            assert!(t.b2k(k) * t.b2k(k + 1) < 0.0);
        }
        for k in 4..30 {
            assert!(t.b2k(k + 1).abs() > t.b2k(k).abs());
        }
        // B_60 = -1215233140483755572040304994079820246041491 / 56786730
        let b60 = -1215233140483755572040304994079820246041491.0 / 56786730.0;
        assert!((t.b2k(30) - b60).abs() <= 1e-15 * b60.abs());
    }
}
