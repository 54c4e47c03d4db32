//! Probability and counting vectors and their algebra.
//!
//! A *counting vector* describes `n` objects with occupation weights
//! `w = (w_1, ..., w_n)`, `w_i >= 0`, `sum w_i = n`: weight 1 means "fully
//! present", weight 0 "absent", anything in between "partially present".
//! Counting vectors are in one-to-one correspondence with probability
//! vectors via `w = n * p`, and they form a small algebra:
//!
//! * **concatenation** joins two collections into one;
//! * **composition** mixes two probability vectors with weights `s, 1-s`
//!   (concatenating counting vectors realizes exactly the composition with
//!   the natural weight `s = n/(n+m)`);
//! * **elementary transfers** move weight from a lighter entry to a heavier
//!   one, the elementary step of concentration;
//! * the **cumulation order** compares how concentrated two vectors are by
//!   dominance of sorted partial sums. It is a genuine partial order:
//!   incomparable pairs exist.

use alloc::vec;
use alloc::vec::Vec;

use crate::sum::{self, NeumaierSum};
use crate::tol;
use crate::{Error, Result};

/// A normalized probability vector: entries non-negative, summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    entries: Vec<f64>,
}

/// A counting vector over `n` objects: entries non-negative, summing to `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingVector {
    entries: Vec<f64>,
}

/// Outcome of comparing two vectors in the cumulation (sorted partial sum)
/// order. `Dominates` means the receiver is at least as concentrated as the
/// argument at every depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CumulationOrder {
    /// All sorted partial sums agree within tolerance.
    Equal,
    /// The receiver's sorted partial sums are everywhere `>=` the argument's.
    Dominates,
    /// The receiver's sorted partial sums are everywhere `<=` the argument's.
    DominatedBy,
    /// The partial sums cross: the vectors are not ordered.
    Incomparable,
}

fn entries_are_admissible(entries: &[f64]) -> bool {
    entries.iter().all(|&x| x.is_finite() && x >= 0.0)
}

impl ProbabilityVector {
    /// Validates and wraps `entries` as a probability vector.
    ///
    /// Entries must be finite and non-negative and their compensated sum
    /// must satisfy `|sum - 1| <= TAU_NORM`. Out-of-band inputs are
    /// *rejected*, not rescaled; use [`ProbabilityVector::renormalized`]
    /// when rescaling is intended.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        let s = sum::sum(entries.iter().copied());
        if !entries_are_admissible(&entries) || !s.is_finite() || (s - 1.0).abs() > tol::TAU_NORM {
            return Err(Error::InvalidProbability { sum: s });
        }
        Ok(Self { entries })
    }

    /// Rescales `entries` to sum to exactly 1 and wraps the result.
    ///
    /// Entries must still be finite and non-negative, and at least one must
    /// be positive.
    pub fn renormalized(entries: Vec<f64>) -> Result<Self> {
        let entries = rescale(entries, 1.0)?;
        Ok(Self { entries })
    }

    /// The entries as a slice.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Whether the vector has no entries (never true for a valid vector).
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The counting vector `w = n * p` over the same objects.
    pub fn to_counting(&self) -> CountingVector {
        let n = self.entries.len() as f64;
        CountingVector {
            entries: self.entries.iter().map(|&p| n * p).collect(),
        }
    }

    /// Mixes two probability vectors into one over the disjoint union of
    /// their outcome sets: the result lists `s * p_i` followed by
    /// `(1 - s) * q_j`. Requires `0 <= s <= 1`.
    ///
    /// Concatenating the counting vectors of `p` and `q` corresponds to the
    /// natural weight `s = n / (n + m)`.
    pub fn compose(&self, other: &Self, s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidConfig {
                reason: "composition weight must lie in [0, 1]",
            });
        }
        let t = 1.0 - s;
        let entries = self
            .entries
            .iter()
            .map(|&p| s * p)
            .chain(other.entries.iter().map(|&q| t * q))
            .collect();
        Ok(Self { entries })
    }
}

impl CountingVector {
    /// Validates and wraps `entries` as a counting vector over
    /// `n = entries.len()` objects.
    ///
    /// Entries must be finite and non-negative and their compensated sum
    /// must satisfy `|sum - n| <= TAU_NORM * n`. Out-of-band inputs are
    /// *rejected*, not rescaled; use [`CountingVector::renormalized`] when
    /// rescaling is intended.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        let n = entries.len();
        let s = sum::sum(entries.iter().copied());
        if !entries_are_admissible(&entries)
            || !s.is_finite()
            || (s - n as f64).abs() > tol::TAU_NORM * n as f64
        {
            return Err(Error::InvalidCounting { n, sum: s });
        }
        Ok(Self { entries })
    }

    /// Rescales `entries` to sum to exactly `entries.len()` and wraps the
    /// result. Entries must be finite and non-negative, at least one
    /// positive.
    pub fn renormalized(entries: Vec<f64>) -> Result<Self> {
        let target = entries.len() as f64;
        let entries = rescale(entries, target)?;
        Ok(Self { entries })
    }

    /// Wraps entries that are already known to satisfy the invariant
    /// structurally (e.g. produced by rescaling, by a weight transfer, or
    /// from a normalized quantum state). Debug builds still assert it.
    pub(crate) fn from_raw_unchecked(entries: Vec<f64>) -> Self {
        debug_assert!(entries_are_admissible(&entries));
        Self { entries }
    }

    /// The uniform counting vector `(1, 1, ..., 1)` over `n >= 1` objects:
    /// everything fully present.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "uniform counting vector needs at least one object");
        Self {
            entries: vec![1.0; n],
        }
    }

    /// The delta counting vector `(n, 0, ..., 0)` over `n >= 1` objects:
    /// all weight piled on the first object.
    pub fn delta(n: usize) -> Self {
        assert!(n >= 1, "delta counting vector needs at least one object");
        let mut entries = vec![0.0; n];
        entries[0] = n as f64;
        Self { entries }
    }

    /// The entries as a slice.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Consumes the vector and returns its entries.
    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    /// Number of objects `n` (also the required total weight).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Whether the vector has no entries (never true for a valid vector).
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The probability vector `p = w / n` over the same objects.
    pub fn to_probability(&self) -> ProbabilityVector {
        let inv = 1.0 / self.entries.len() as f64;
        ProbabilityVector {
            entries: self.entries.iter().map(|&w| w * inv).collect(),
        }
    }

    /// Joins two collections: `(w_1..w_n) ++ (b_1..b_m)` is a counting
    /// vector over `n + m` objects.
    pub fn concat(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .chain(other.entries.iter())
            .copied()
            .collect();
        Self { entries }
    }

    /// Moves `eps` of weight from entry `i` to entry `j`.
    ///
    /// This is the elementary concentration step: it requires `i != j`,
    /// `w_i <= w_j` (weight flows from the lighter to the heavier entry)
    /// and `0 <= eps <= w_i`, and it preserves the total.
    pub fn elementary_transfer(&self, i: usize, j: usize, eps: f64) -> Result<Self> {
        let len = self.entries.len();
        if i >= len {
            return Err(Error::IndexOutOfBounds { index: i, len });
        }
        if j >= len {
            return Err(Error::IndexOutOfBounds { index: j, len });
        }
        if i == j {
            return Err(Error::InvalidConfig {
                reason: "transfer endpoints must be distinct",
            });
        }
        let donor = self.entries[i];
        let receiver = self.entries[j];
        if !(donor <= receiver && eps >= 0.0 && eps <= donor) {
            return Err(Error::TransferViolation {
                donor,
                receiver,
                eps,
            });
        }
        let mut entries = self.entries.clone();
        entries[i] = donor - eps;
        entries[j] = receiver + eps;
        Ok(Self::from_raw_unchecked(entries))
    }

    /// A copy with entries sorted in non-increasing order.
    pub fn sorted_descending(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.sort_unstable_by(|a, b| b.total_cmp(a));
        Self { entries }
    }

    /// Compares `self` and `other` in the cumulation order: sort both in
    /// non-increasing order and compare partial sums at every depth.
    /// Differences within `TAU_CMP` count as ties. Requires equal lengths.
    ///
    /// Concentrating a vector (by elementary transfers) moves it *up* this
    /// order; the uniform vector is the minimum and the delta vector the
    /// maximum among counting vectors of a given length.
    pub fn compare_cumulation(&self, other: &Self) -> Result<CumulationOrder> {
        if self.entries.len() != other.entries.len() {
            return Err(Error::LengthMismatch {
                left: self.entries.len(),
                right: other.entries.len(),
            });
        }
        let a = self.sorted_descending();
        let b = other.sorted_descending();
        let mut acc_a = NeumaierSum::new();
        let mut acc_b = NeumaierSum::new();
        let mut self_ahead = false;
        let mut other_ahead = false;
        for (&x, &y) in a.entries.iter().zip(b.entries.iter()) {
            acc_a += x;
            acc_b += y;
            let diff = acc_a.value() - acc_b.value();
            if diff > tol::TAU_CMP {
                self_ahead = true;
            } else if diff < -tol::TAU_CMP {
                other_ahead = true;
            }
        }
        Ok(match (self_ahead, other_ahead) {
            (false, false) => CumulationOrder::Equal,
            (true, false) => CumulationOrder::Dominates,
            (false, true) => CumulationOrder::DominatedBy,
            (true, true) => CumulationOrder::Incomparable,
        })
    }
}

/// Scales non-negative entries so their compensated sum equals `target`.
pub(crate) fn rescale(mut entries: Vec<f64>, target: f64) -> Result<Vec<f64>> {
    if entries.is_empty() {
        return Err(Error::EmptyVector);
    }
    if !entries_are_admissible(&entries) {
        // Report with the sum the caller supplied, as far as it exists.
        let s = sum::sum(entries.iter().copied());
        return Err(Error::InvalidCounting {
            n: entries.len(),
            sum: s,
        });
    }
    let s = sum::sum(entries.iter().copied());
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::DegenerateInput);
    }
    // A single nonzero entry IS the total; assigning it directly avoids
    // the round-trip x * (target / x), which lands one ulp off target for
    // roughly a third of all inputs.
    if entries.iter().filter(|x| **x > 0.0).count() == 1 {
        for x in entries.iter_mut() {
            if *x > 0.0 {
                *x = target;
            }
        }
        return Ok(entries);
    }
    let scale = target / s;
    for x in entries.iter_mut() {
        *x *= scale;
    }
    Ok(entries)
}
