//! Compensated (Neumaier) summation.
//!
//! Quantifier values and normalization checks are sums of up to millions of
//! terms compared against identities at `1e-12` tolerances, so naive
//! left-to-right summation is not good enough. Neumaier's variant of Kahan
//! summation keeps a running compensation term and, unlike plain Kahan,
//! stays accurate when an addend is larger than the running sum.

use crate::math::abs;

/// Accumulator for compensated summation.
///
/// ```
/// use effnum_core::sum::NeumaierSum;
///
/// let mut acc = NeumaierSum::default();
/// for _ in 0..10 {
///     acc += 0.1;
/// }
/// assert_eq!(acc.value(), 1.0);
/// ```
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    /// Running sum.
    s: f64,
    /// Running compensation (the low-order bits lost by `s`).
    c: f64,
}

impl NeumaierSum {
    /// Creates an empty accumulator.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one term.
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if abs(self.s) >= abs(x) {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    /// Returns the compensated total.
    pub fn value(&self) -> f64 {
        self.s + self.c
    }
}

impl core::ops::AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}

/// Sums an iterator of terms with compensation.
pub fn sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = NeumaierSum::new();
    for x in terms {
        acc.add(x);
    }
    acc.value()
}
