//! Effective-number quantifiers.
//!
//! Given a counting vector `w` over `n` objects, a quantifier assigns a
//! single number "how many objects are effectively present". This module
//! implements the minimal effective number
//!
//! ```text
//! n_star(w) = sum_i min(w_i, 1)
//! ```
//!
//! together with the quantifiers it is usually compared against:
//!
//! * the **support count** — how many weights are nonzero at all;
//! * the **participation number** `1 / sum_i p_i^2`;
//! * the **exponentiated Shannon entropy** `exp(-sum_i p_i ln p_i)`;
//! * the **exponentiated Renyi entropy** `(sum_i p_i^alpha)^(1/(1-alpha))`
//!   for order `alpha > 0`, `alpha != 1`,
//!
//! all expressed through `p = w / n`. Of these, only `n_star` passes the
//! full counting-axiom battery in [`crate::axioms`]: the entropic family
//! fails additivity, and the support count fails continuity. For every
//! quantifier that does satisfy the axioms, the value is squeezed between
//! `n_star` and the support count.

use crate::counting::CountingVector;
use crate::math::{exp, ln, powf};
use crate::sum::NeumaierSum;
use crate::tol;
use crate::{Error, Result};

/// The quantifiers this crate can evaluate and audit, by role.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantifier {
    /// `sum_i min(w_i, 1)` — the minimal quantifier consistent with the
    /// counting axioms.
    MinimalEffectiveNumber,
    /// Number of entries above the zero threshold. An upper bound for all
    /// axiom-consistent quantifiers, but discontinuous.
    SupportCount,
    /// `1 / sum_i p_i^2` (inverse second moment), common in localization
    /// physics. Fails additivity.
    ParticipationNumber,
    /// `exp` of the Shannon entropy of `p`. Fails additivity.
    ExpShannon,
    /// `(sum_i p_i^alpha)^(1/(1-alpha))`, the exponentiated Renyi entropy.
    /// Fails additivity for every valid order.
    ExpRenyi {
        /// Renyi order; must be finite, positive, and different from 1.
        alpha: f64,
    },
}

impl Quantifier {
    /// Stable lowercase identifier used in reports and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Quantifier::MinimalEffectiveNumber => "n_star",
            Quantifier::SupportCount => "support_count",
            Quantifier::ParticipationNumber => "participation_number",
            Quantifier::ExpShannon => "exp_shannon",
            Quantifier::ExpRenyi { .. } => "exp_renyi",
        }
    }

    /// Checks parameter validity (the Renyi order, for the one quantifier
    /// that has a parameter).
    pub fn validate(&self) -> Result<()> {
        match *self {
            Quantifier::ExpRenyi { alpha } => {
                if !alpha.is_finite() || alpha <= 0.0 || alpha == 1.0 {
                    Err(Error::BadRenyiOrder { alpha })
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Evaluates the quantifier on a counting vector.
    pub fn evaluate(&self, w: &CountingVector) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            Quantifier::MinimalEffectiveNumber => n_star(w),
            Quantifier::SupportCount => support_count(w),
            Quantifier::ParticipationNumber => participation_number(w),
            Quantifier::ExpShannon => exp_shannon(w),
            Quantifier::ExpRenyi { alpha } => exp_renyi_unchecked(w, alpha),
        })
    }
}

/// The minimal effective number `sum_i min(w_i, 1)`.
///
/// Fully occupied objects (`w_i >= 1`) count as one each; partially
/// occupied objects count their weight. This is the smallest value any
/// quantifier satisfying the counting axioms can assign to `w`.
pub fn n_star(w: &CountingVector) -> f64 {
    let mut acc = NeumaierSum::new();
    for &x in w.entries() {
        acc += if x < 1.0 { x } else { 1.0 };
    }
    acc.value()
}

/// Number of entries above the zero threshold [`tol::TAU_ZERO`], as a float.
///
/// This is the largest value any quantifier satisfying the counting axioms
/// can assign, but it is *not* itself admissible: it jumps by a whole unit
/// when a weight crosses zero, violating continuity.
pub fn support_count(w: &CountingVector) -> f64 {
    w.entries().iter().filter(|&&x| x > tol::TAU_ZERO).count() as f64
}

/// The participation number `1 / sum_i p_i^2` with `p = w / n`.
pub fn participation_number(w: &CountingVector) -> f64 {
    let n = w.len() as f64;
    let mut acc = NeumaierSum::new();
    for &x in w.entries() {
        let p = x / n;
        acc += p * p;
    }
    1.0 / acc.value()
}

/// The exponentiated Shannon entropy `exp(-sum_i p_i ln p_i)` with
/// `p = w / n` and the convention `0 ln 0 = 0`.
pub fn exp_shannon(w: &CountingVector) -> f64 {
    let n = w.len() as f64;
    let mut acc = NeumaierSum::new();
    for &x in w.entries() {
        let p = x / n;
        if p > 0.0 {
            acc += -p * ln(p);
        }
    }
    exp(acc.value())
}

/// The exponentiated Renyi entropy `(sum_i p_i^alpha)^(1/(1-alpha))` with
/// `p = w / n`.
///
/// Requires `alpha` finite, positive, and different from 1 (at `alpha = 1`
/// the family degenerates to [`exp_shannon`] in the limit; values extremely
/// close to 1 lose precision and are better served by the Shannon form).
pub fn exp_renyi(w: &CountingVector, alpha: f64) -> Result<f64> {
    Quantifier::ExpRenyi { alpha }.validate()?;
    Ok(exp_renyi_unchecked(w, alpha))
}

fn exp_renyi_unchecked(w: &CountingVector, alpha: f64) -> f64 {
    let n = w.len() as f64;
    let mut acc = NeumaierSum::new();
    for &x in w.entries() {
        let p = x / n;
        if p > 0.0 {
            acc += powf(p, alpha);
        }
    }
    powf(acc.value(), 1.0 / (1.0 - alpha))
}

/// Whether any weight lies strictly inside `(0, 1)` — i.e. some object is
/// genuinely partially present (thresholded by [`tol::TAU_ZERO`] at both
/// ends).
///
/// Exactly in this case the minimal effective number sits strictly below
/// the support count; without partial weights the two coincide.
pub fn has_partial_weight(w: &CountingVector) -> bool {
    w.entries()
        .iter()
        .any(|&x| x > tol::TAU_ZERO && x < 1.0 - tol::TAU_ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn cv(entries: &[f64]) -> CountingVector {
        CountingVector::new(entries.to_vec()).unwrap()
    }

    fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
        assert!(
            (got - want).abs() <= tol,
            "{what}: got {got}, want {want} (tol {tol})"
        );
    }

    #[test]
    fn minimal_effective_number_frozen_values() {
        assert_eq!(n_star(&CountingVector::uniform(7)), 7.0);
        assert_eq!(n_star(&CountingVector::delta(7)), 1.0);
        assert_close(n_star(&cv(&[1.5, 0.9, 0.6])), 2.5, 1e-15, "n_star");
        assert_close(n_star(&cv(&[2.0, 0.0])), 1.0, 0.0, "n_star of (2,0)");
        let w8 = cv(&[2.4, 1.6, 1.2, 0.96, 0.8, 0.48, 0.32, 0.24]);
        assert_close(n_star(&w8), 5.8, 1e-12, "n_star of 8-entry fixture");
    }

    #[test]
    fn support_count_respects_zero_threshold() {
        assert_eq!(support_count(&cv(&[1.5, 0.9, 0.6])), 3.0);
        assert_eq!(support_count(&CountingVector::delta(5)), 1.0);
        // An entry at the zero threshold does not count as occupied.
        let w = CountingVector::new(vec![1e-13, 3.0 - 1e-13, 0.0]).unwrap();
        assert_eq!(support_count(&w), 1.0);
    }

    #[test]
    fn entropic_quantifiers_frozen_values() {
        let w = cv(&[1.5, 0.9, 0.6]);
        assert_close(
            participation_number(&w),
            2.6315789473684212,
            1e-14,
            "participation",
        );
        assert_close(exp_shannon(&w), 2.8000940728538315, 1e-13, "exp_shannon");
        assert_close(
            exp_renyi(&w, 0.5).unwrap(),
            2.896950149831795,
            1e-13,
            "exp_renyi(1/2)",
        );
        assert_close(
            exp_renyi(&w, 2.0).unwrap(),
            2.6315789473684212,
            1e-13,
            "exp_renyi(2)",
        );
        assert_close(exp_renyi(&w, 3.0).unwrap(), 2.5, 1e-13, "exp_renyi(3)");
    }

    #[test]
    fn renyi_rejects_bad_orders() {
        let w = cv(&[1.5, 0.9, 0.6]);
        for alpha in [0.0, -1.0, 1.0, f64::NAN, f64::INFINITY] {
            assert!(
                matches!(exp_renyi(&w, alpha), Err(Error::BadRenyiOrder { .. })),
                "alpha = {alpha} should be rejected"
            );
        }
    }

    #[test]
    fn boundary_cases_uniform_and_delta() {
        for n in 1..=12usize {
            let u = CountingVector::uniform(n);
            let d = CountingVector::delta(n);
            let quantifiers = [
                Quantifier::MinimalEffectiveNumber,
                Quantifier::SupportCount,
                Quantifier::ParticipationNumber,
                Quantifier::ExpShannon,
                Quantifier::ExpRenyi { alpha: 0.5 },
                Quantifier::ExpRenyi { alpha: 2.0 },
                Quantifier::ExpRenyi { alpha: 3.0 },
            ];
            for q in quantifiers {
                let at_uniform = q.evaluate(&u).unwrap();
                assert_close(
                    at_uniform,
                    n as f64,
                    1e-12 * n as f64,
                    &alloc::format!("{} at uniform({n})", q.name()),
                );
                let at_delta = q.evaluate(&d).unwrap();
                assert_close(
                    at_delta,
                    1.0,
                    1e-12,
                    &alloc::format!("{} at delta({n})", q.name()),
                );
            }
        }
    }

    #[test]
    fn only_the_minimal_quantifier_adds_over_concatenation() {
        // Recorded counterexamples: joining (2, 0) and (1, 1) should count
        // 1 + 2 = 3 effectively present objects. The minimal quantifier
        // does; the entropic quantifiers all undercount the union.
        let w = cv(&[2.0, 0.0]);
        let b = cv(&[1.0, 1.0]);
        let joined = w.concat(&b);

        assert_close(
            n_star(&joined),
            n_star(&w) + n_star(&b),
            1e-14,
            "n_star adds",
        );

        let cases: [(Quantifier, f64); 4] = [
            (Quantifier::ParticipationNumber, 2.6666666666666665),
            (Quantifier::ExpShannon, 2.82842712474619),
            (Quantifier::ExpRenyi { alpha: 3.0 }, 2.5298221281347035),
            (Quantifier::ExpRenyi { alpha: 0.5 }, 2.914213562373095),
        ];
        for (q, joined_value) in cases {
            let got = q.evaluate(&joined).unwrap();
            assert_close(got, joined_value, 1e-13, q.name());
            let parts = q.evaluate(&w).unwrap() + q.evaluate(&b).unwrap();
            let gap = (got - parts).abs();
            assert!(
                gap > 0.01,
                "{} should miss additivity by a visible margin, gap = {gap}",
                q.name()
            );
        }
    }

    #[test]
    fn partial_weight_predicate_matches_quantifier_gap() {
        let no_partial = cv(&[2.0, 1.0, 0.0]);
        assert!(!has_partial_weight(&no_partial));
        assert_close(
            n_star(&no_partial),
            support_count(&no_partial),
            1e-12,
            "coincide without partial weights",
        );

        let partial = cv(&[1.5, 0.9, 0.6]);
        assert!(has_partial_weight(&partial));
        assert!(support_count(&partial) - n_star(&partial) > 0.01);
    }

    prop_compose! {
        fn arb_counting()(v in proptest::collection::vec(0.0f64..10.0, 1..40)
            .prop_filter("needs mass", |v| v.iter().sum::<f64>() > 1e-3)) -> CountingVector {
            CountingVector::renormalized(v).unwrap()
        }
    }

    fn all_quantifiers() -> Vec<Quantifier> {
        vec![
            Quantifier::MinimalEffectiveNumber,
            Quantifier::SupportCount,
            Quantifier::ParticipationNumber,
            Quantifier::ExpShannon,
            Quantifier::ExpRenyi { alpha: 0.5 },
            Quantifier::ExpRenyi { alpha: 2.0 },
            Quantifier::ExpRenyi { alpha: 3.0 },
        ]
    }

    proptest! {
        #[test]
        fn every_quantifier_lands_between_one_and_n(w in arb_counting()) {
            let n = w.len() as f64;
            let slack = 1e-9 * n;
            for q in all_quantifiers() {
                let v = q.evaluate(&w).unwrap();
                prop_assert!(v >= 1.0 - slack, "{} = {v} below 1 on {:?}", q.name(), w.entries());
                prop_assert!(v <= n + slack, "{} = {v} above n = {n}", q.name());
            }
        }

        #[test]
        fn minimal_never_exceeds_support(w in arb_counting()) {
            prop_assert!(n_star(&w) <= support_count(&w) + 1e-12);
        }

        #[test]
        fn renyi_family_decreases_with_order(w in arb_counting()) {
            let slack = 1e-9 * w.len() as f64;
            let half = exp_renyi(&w, 0.5).unwrap();
            let shannon = exp_shannon(&w);
            let two = exp_renyi(&w, 2.0).unwrap();
            let three = exp_renyi(&w, 3.0).unwrap();
            prop_assert!(half + slack >= shannon);
            prop_assert!(shannon + slack >= two);
            prop_assert!(two + slack >= three);
        }

        #[test]
        fn minimal_gap_to_support_detects_partial_weights(w in arb_counting()) {
            let gap = support_count(&w) - n_star(&w);
            if has_partial_weight(&w) {
                prop_assert!(gap > 0.0);
            } else {
                prop_assert!(gap.abs() <= 1e-12);
            }
        }
    }
}
