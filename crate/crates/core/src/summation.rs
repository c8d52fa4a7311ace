//! Neumaier-compensated accumulation for complex series.

use std::iter::FromIterator;

use crate::ComplexValue;

#[inline]
fn neumaier_add(sum: &mut f64, comp: &mut f64, v: f64) {
    let t = *sum + v;
    if sum.abs() >= v.abs() {
        *comp += (*sum - t) + v;
    } else {
        *comp += (v - t) + *sum;
    }
    *sum = t;
}

/// Running complex sum with a per-component error term.
///
/// Rounding drift stays O(eps) in the largest partial sum instead of
/// growing with the number of terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: f64,
    im: f64,
    comp_re: f64,
    comp_im: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: ComplexValue) {
        neumaier_add(&mut self.re, &mut self.comp_re, v.re);
        neumaier_add(&mut self.im, &mut self.comp_im, v.im);
    }

    #[inline]
    pub fn value(&self) -> ComplexValue {
        ComplexValue::new(self.re + self.comp_re, self.im + self.comp_im)
    }
}

impl Extend<ComplexValue> for CompensatedSum {
    fn extend<I: IntoIterator<Item = ComplexValue>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<ComplexValue> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = ComplexValue>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}
