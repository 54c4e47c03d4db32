//! Randomized verification of the counting axioms.
//!
//! A quantifier deserves to be called an *effective number* only if it
//! behaves like counting. This module turns that demand into seven
//! machine-checkable statements about a quantifier `q` on counting vectors:
//!
//! * **additivity** — joining two collections adds their counts:
//!   `q(w ++ b) = q(w) + q(b)`;
//! * **monotonicity** — moving weight from a lighter to a heavier entry
//!   (concentration) never increases the count;
//! * **symmetry** — relabeling objects changes nothing;
//! * **continuity** — nearby weight assignments get nearby counts;
//! * **uniform boundary** — `n` fully present objects count as `n`;
//! * **delta boundary** — all weight on one object counts as 1;
//! * **band boundary** — every count lies in `[1, n]`.
//!
//! The last three follow from the first four, but they are cheap and make
//! failures easy to localize, so the battery checks all seven. Checks are
//! *sampling-based*: they hunt for counterexamples on seeded pseudo-random
//! inputs and record every find as a replayable [`Violation`]. A clean
//! report is strong evidence, not proof — and for continuity not even
//! that, since no finite sample can establish a limit statement; the
//! continuity report says so explicitly.
//!
//! Determinism: every check derives its randomness from
//! [`GeneratorConfig::seed`] on a check-specific RNG stream, so reports are
//! reproducible run-to-run and independent of check order.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::counting;
use crate::counting::CountingVector;
use crate::enf::Quantifier;
use crate::sum;
use crate::tol;
use crate::{Error, Result};

/// The seven checkable counting axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Axiom {
    /// `q(w ++ b) = q(w) + q(b)` for concatenation of collections.
    Additivity,
    /// Elementary transfers (lighter entry to heavier entry) never
    /// increase `q`.
    Monotonicity,
    /// `q` is invariant under permutations of the entries.
    Symmetry,
    /// `q` has no jumps: vectors at vanishing L1 distance get vanishing
    /// count differences.
    Continuity,
    /// `q(1, 1, ..., 1) = n`.
    BoundaryUniform,
    /// `q(n, 0, ..., 0) = 1`.
    BoundaryDelta,
    /// `1 <= q(w) <= n` for every counting vector over `n` objects.
    BoundaryBand,
}

impl Axiom {
    /// All seven axioms in battery order.
    pub const ALL: [Axiom; 7] = [
        Axiom::Additivity,
        Axiom::Monotonicity,
        Axiom::Symmetry,
        Axiom::Continuity,
        Axiom::BoundaryUniform,
        Axiom::BoundaryDelta,
        Axiom::BoundaryBand,
    ];

    /// Stable lowercase identifier used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Additivity => "additivity",
            Axiom::Monotonicity => "monotonicity",
            Axiom::Symmetry => "symmetry",
            Axiom::Continuity => "continuity",
            Axiom::BoundaryUniform => "boundary_uniform",
            Axiom::BoundaryDelta => "boundary_delta",
            Axiom::BoundaryBand => "boundary_band",
        }
    }

    /// How many input vectors a [`Violation`] of this axiom stores.
    fn arity(&self) -> usize {
        match self {
            Axiom::Additivity
            | Axiom::Monotonicity
            | Axiom::Symmetry
            | Axiom::Continuity => 2,
            Axiom::BoundaryUniform | Axiom::BoundaryDelta | Axiom::BoundaryBand => 1,
        }
    }
}

/// A concrete counterexample found by a check, with everything needed to
/// recompute it: the raw input vectors and the two compared values.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Violation {
    /// The input counting vectors, in the role order documented on the
    /// check that produced them (e.g. `[w, b]` for additivity,
    /// `[before, after]` for monotonicity).
    pub inputs: Vec<Vec<f64>>,
    /// Left-hand value of the violated comparison.
    pub lhs: f64,
    /// Right-hand value of the violated comparison.
    pub rhs: f64,
    /// The amount by which the axiom was missed (always positive; the same
    /// number [`replay`] recomputes).
    pub discrepancy: f64,
}

/// Outcome of checking one axiom for one quantifier.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AxiomReport {
    /// Which axiom was checked.
    pub axiom: Axiom,
    /// How many sampled trials the check ran.
    pub trials: usize,
    /// Whether no violation was found (`total_violations == 0`).
    pub passed: bool,
    /// Total number of violations encountered, including ones beyond the
    /// recording cap.
    pub total_violations: usize,
    /// Recorded counterexamples, at most [`MAX_RECORDED_VIOLATIONS`].
    pub violations: Vec<Violation>,
    /// Caveat attached to checks whose clean result is weaker than usual
    /// (set for continuity, which finite sampling cannot establish).
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub note: Option<&'static str>,
}

/// Cap on stored counterexamples per report; the total count keeps
/// incrementing past it.
pub const MAX_RECORDED_VIOLATIONS: usize = 32;

/// L1 distances probed by the continuity check, largest to smallest.
pub const CONTINUITY_LADDER: [f64; 7] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];

const CONTINUITY_NOTE: &str =
    "sampled evidence only: finite sampling cannot establish continuity";

/// Configuration for the seeded input generator and the battery sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GeneratorConfig {
    /// Master seed; every derived RNG stream starts from it.
    pub seed: u64,
    /// Largest vector length the generator draws (lengths are uniform on
    /// `1..=max_len` or `2..=max_len` depending on the check). At least 2.
    pub max_len: usize,
    /// Trials per axiom check. At least 1.
    pub trials: usize,
    /// Probability of forcing any given entry to exactly zero, so sampled
    /// vectors routinely contain empty objects. In `[0, 1]`.
    pub sparsity: f64,
}

impl GeneratorConfig {
    /// Default battery size: 64-entry vectors, 1000 trials per axiom, a
    /// quarter of the entries forced to zero.
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            max_len: 64,
            trials: 1000,
            sparsity: 0.25,
        }
    }

    /// Validates the field ranges.
    pub fn validate(&self) -> Result<()> {
        if self.max_len < 2 {
            return Err(Error::InvalidConfig {
                reason: "max_len must be at least 2",
            });
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig {
                reason: "trials must be at least 1",
            });
        }
        if !(0.0..=1.0).contains(&self.sparsity) {
            return Err(Error::InvalidConfig {
                reason: "sparsity must lie in [0, 1]",
            });
        }
        Ok(())
    }
}

// One RNG stream per check, so reports do not depend on the order in which
// checks run, plus a dedicated stream for standalone generator calls.
const STREAM_ADDITIVITY: u64 = 1;
const STREAM_MONOTONICITY: u64 = 2;
const STREAM_SYMMETRY: u64 = 3;
const STREAM_CONTINUITY: u64 = 4;
const STREAM_BOUNDARY_BAND: u64 = 5;
const STREAM_STANDALONE: u64 = 8;

fn stream_rng(cfg: &GeneratorConfig, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    rng
}

/// Draws one counting vector of length `n`: every entry gets a uniform
/// weight (then possibly zeroed with probability `sparsity`), and the
/// result is rescaled to total `n`. If all entries were zeroed, the vector
/// collapses to all weight on one random entry.
///
/// Exactly two RNG draws are consumed per entry (weight, zero-coin), plus
/// one more in the all-zeroed fallback — so the stream position after a
/// call depends only on `n`.
fn fill_counting(rng: &mut ChaCha12Rng, n: usize, sparsity: f64) -> CountingVector {
    let mut entries: Vec<f64> = Vec::with_capacity(n);
    for _ in 0..n {
        let weight = rng.gen::<f64>();
        let zeroed = rng.gen::<f64>() < sparsity;
        entries.push(if zeroed { 0.0 } else { weight });
    }
    let total = sum::sum(entries.iter().copied());
    if total <= 0.0 {
        let keep = rng.gen_range(0..n);
        entries = vec![0.0; n];
        entries[keep] = n as f64;
        return CountingVector::from_raw_unchecked(entries);
    }
    // Shared with every other scaling path so a lone surviving entry
    // carries exactly `n`, not `n` give or take an ulp.
    let entries = counting::rescale(entries, n as f64)
        .expect("finite non-negative draws with a positive total rescale cleanly");
    CountingVector::from_raw_unchecked(entries)
}

/// Draws one pseudo-random counting vector from the standalone generator
/// stream. `call_index` decorrelates successive calls made with the same
/// config: use 0, 1, 2, ... for a reproducible sequence of vectors.
pub fn random_counting_vector(cfg: &GeneratorConfig, call_index: u64) -> Result<CountingVector> {
    cfg.validate()?;
    let mut rng = stream_rng(cfg, STREAM_STANDALONE + call_index);
    let n = rng.gen_range(1..=cfg.max_len);
    Ok(fill_counting(&mut rng, n, cfg.sparsity))
}

/// Collects violations with the recording cap applied.
struct ViolationLog {
    total: usize,
    recorded: Vec<Violation>,
}

impl ViolationLog {
    fn new() -> Self {
        Self {
            total: 0,
            recorded: Vec::new(),
        }
    }

    fn push(&mut self, violation: Violation) {
        self.total += 1;
        if self.recorded.len() < MAX_RECORDED_VIOLATIONS {
            self.recorded.push(violation);
        }
    }

    fn into_report(self, axiom: Axiom, trials: usize, note: Option<&'static str>) -> AxiomReport {
        AxiomReport {
            axiom,
            trials,
            passed: self.total == 0,
            total_violations: self.total,
            violations: self.recorded,
            note,
        }
    }
}

/// Checks additivity: for sampled pairs `(w, b)`,
/// `|q(w ++ b) - q(w) - q(b)|` must stay within `TAU_AXIOM * (n + m)`.
///
/// Violation inputs: `[w, b]`; `lhs = q(w ++ b)`, `rhs = q(w) + q(b)`.
pub fn check_additivity(q: &Quantifier, cfg: &GeneratorConfig) -> Result<AxiomReport> {
    cfg.validate()?;
    q.validate()?;
    let mut rng = stream_rng(cfg, STREAM_ADDITIVITY);
    let mut log = ViolationLog::new();
    for _ in 0..cfg.trials {
        let n = rng.gen_range(1..=cfg.max_len);
        let m = rng.gen_range(1..=cfg.max_len);
        let w = fill_counting(&mut rng, n, cfg.sparsity);
        let b = fill_counting(&mut rng, m, cfg.sparsity);
        let joined = q.evaluate(&w.concat(&b))?;
        let parts = q.evaluate(&w)? + q.evaluate(&b)?;
        let discrepancy = (joined - parts).abs();
        if discrepancy > tol::TAU_AXIOM * (n + m) as f64 {
            log.push(Violation {
                inputs: vec![w.entries().to_vec(), b.entries().to_vec()],
                lhs: joined,
                rhs: parts,
                discrepancy,
            });
        }
    }
    Ok(log.into_report(Axiom::Additivity, cfg.trials, None))
}

/// Checks monotonicity under elementary transfers: concentrating weight
/// (moving `eps` from a lighter to a heavier entry) must not increase `q`
/// beyond `TAU_AXIOM * n` of slack.
///
/// The transfer amount cycles through the edge cases `eps = 0` and
/// `eps = w_i` (emptying the source) as well as random interior amounts.
/// Violation inputs: `[before, after]`; `lhs = q(after)`, `rhs = q(before)`.
pub fn check_monotonicity(q: &Quantifier, cfg: &GeneratorConfig) -> Result<AxiomReport> {
    cfg.validate()?;
    q.validate()?;
    let mut rng = stream_rng(cfg, STREAM_MONOTONICITY);
    let mut log = ViolationLog::new();
    for trial in 0..cfg.trials {
        let n = rng.gen_range(2..=cfg.max_len);
        let w = fill_counting(&mut rng, n, cfg.sparsity);
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let (i, j) = if w.entries()[a] <= w.entries()[b] {
            (a, b)
        } else {
            (b, a)
        };
        let eps = match trial % 8 {
            0 => 0.0,
            1 => w.entries()[i],
            _ => rng.gen::<f64>() * w.entries()[i],
        };
        let moved = w.elementary_transfer(i, j, eps)?;
        let before = q.evaluate(&w)?;
        let after = q.evaluate(&moved)?;
        let discrepancy = after - before;
        if discrepancy > tol::TAU_AXIOM * n as f64 {
            log.push(Violation {
                inputs: vec![w.entries().to_vec(), moved.entries().to_vec()],
                lhs: after,
                rhs: before,
                discrepancy,
            });
        }
    }
    Ok(log.into_report(Axiom::Monotonicity, cfg.trials, None))
}

/// Checks symmetry: a random relabeling (Fisher–Yates shuffle) of the
/// entries must leave `q` unchanged within `TAU_AXIOM * n`.
///
/// Violation inputs: `[original, permuted]`.
pub fn check_symmetry(q: &Quantifier, cfg: &GeneratorConfig) -> Result<AxiomReport> {
    cfg.validate()?;
    q.validate()?;
    let mut rng = stream_rng(cfg, STREAM_SYMMETRY);
    let mut log = ViolationLog::new();
    for _ in 0..cfg.trials {
        let n = rng.gen_range(2..=cfg.max_len);
        let w = fill_counting(&mut rng, n, cfg.sparsity);
        let mut permuted = w.entries().to_vec();
        for k in (1..n).rev() {
            let r = rng.gen_range(0..=k);
            permuted.swap(k, r);
        }
        let permuted = CountingVector::from_raw_unchecked(permuted);
        let lhs = q.evaluate(&permuted)?;
        let rhs = q.evaluate(&w)?;
        let discrepancy = (lhs - rhs).abs();
        if discrepancy > tol::TAU_AXIOM * n as f64 {
            log.push(Violation {
                inputs: vec![w.entries().to_vec(), permuted.entries().to_vec()],
                lhs,
                rhs,
                discrepancy,
            });
        }
    }
    Ok(log.into_report(Axiom::Symmetry, cfg.trials, None))
}

/// Probes continuity: builds pairs of vectors at L1 distance `delta` for
/// every rung of [`CONTINUITY_LADDER`] and flags quantifier jumps larger
/// than [`tol::TAU_JUMP`].
///
/// The pairs squeeze one entry toward zero — `w` holds `delta/2` on a
/// chosen entry where `w_limit` holds exactly 0, with the difference parked
/// on the heaviest entry — because weights crossing zero is where counting
/// quantifiers are tempted to jump (the support count drops by a full
/// unit). Continuous quantifiers move by at most O(delta) there.
///
/// A clean result is *sampled evidence only*; the report carries a note
/// saying so. Violation inputs: `[w, w_limit]`.
pub fn check_continuity(q: &Quantifier, cfg: &GeneratorConfig) -> Result<AxiomReport> {
    cfg.validate()?;
    q.validate()?;
    let mut rng = stream_rng(cfg, STREAM_CONTINUITY);
    let mut log = ViolationLog::new();
    for _ in 0..cfg.trials {
        let n = rng.gen_range(2..=cfg.max_len);
        let base = fill_counting(&mut rng, n, cfg.sparsity);
        let i = rng.gen_range(0..n);
        // Park the displaced weight on the heaviest other entry; it is >= 1
        // up to O(delta), so it absorbs the move without sign trouble.
        let j = (0..n)
            .filter(|&k| k != i)
            .max_by(|&a, &b| base.entries()[a].total_cmp(&base.entries()[b]))
            .expect("n >= 2 guarantees another index");
        for delta in CONTINUITY_LADDER {
            let half = delta / 2.0;
            let mut near = base.entries().to_vec();
            let moved = near[i];
            near[i] = half;
            near[j] += moved - half;
            if near[j] < 0.0 {
                // Pathological corner (tiny heaviest entry); skip the rung
                // rather than fabricate an invalid vector.
                continue;
            }
            let mut limit = near.clone();
            limit[i] = 0.0;
            limit[j] += half;
            let w = CountingVector::from_raw_unchecked(near);
            let w_limit = CountingVector::from_raw_unchecked(limit);
            let lhs = q.evaluate(&w)?;
            let rhs = q.evaluate(&w_limit)?;
            let discrepancy = (lhs - rhs).abs();
            if discrepancy > tol::TAU_JUMP {
                log.push(Violation {
                    inputs: vec![w.entries().to_vec(), w_limit.entries().to_vec()],
                    lhs,
                    rhs,
                    discrepancy,
                });
            }
        }
    }
    Ok(log.into_report(Axiom::Continuity, cfg.trials, Some(CONTINUITY_NOTE)))
}

/// Checks the three boundary axioms and returns their reports in the order
/// uniform, delta, band.
///
/// The uniform and delta checks sweep every length `1..=max_len`
/// deterministically (their `trials` field records that sweep length); the
/// band check draws `trials` random vectors. Violation inputs: the single
/// offending vector; for the band check `rhs` is the nearer violated bound.
pub fn check_boundaries(q: &Quantifier, cfg: &GeneratorConfig) -> Result<[AxiomReport; 3]> {
    cfg.validate()?;
    q.validate()?;

    let mut uniform_log = ViolationLog::new();
    for n in 1..=cfg.max_len {
        let u = CountingVector::uniform(n);
        let lhs = q.evaluate(&u)?;
        let rhs = n as f64;
        let discrepancy = (lhs - rhs).abs();
        if discrepancy > tol::TAU_AXIOM * n as f64 {
            uniform_log.push(Violation {
                inputs: vec![u.entries().to_vec()],
                lhs,
                rhs,
                discrepancy,
            });
        }
    }

    let mut delta_log = ViolationLog::new();
    for n in 1..=cfg.max_len {
        let d = CountingVector::delta(n);
        let lhs = q.evaluate(&d)?;
        let discrepancy = (lhs - 1.0).abs();
        if discrepancy > tol::TAU_AXIOM * n as f64 {
            delta_log.push(Violation {
                inputs: vec![d.entries().to_vec()],
                lhs,
                rhs: 1.0,
                discrepancy,
            });
        }
    }

    let mut band_log = ViolationLog::new();
    let mut rng = stream_rng(cfg, STREAM_BOUNDARY_BAND);
    for _ in 0..cfg.trials {
        let n = rng.gen_range(1..=cfg.max_len);
        let w = fill_counting(&mut rng, n, cfg.sparsity);
        let v = q.evaluate(&w)?;
        let slack = tol::TAU_AXIOM * n as f64;
        let below = (1.0 - v).max(0.0);
        let above = (v - n as f64).max(0.0);
        let discrepancy = below.max(above);
        if discrepancy > slack {
            band_log.push(Violation {
                inputs: vec![w.entries().to_vec()],
                lhs: v,
                rhs: if below > above { 1.0 } else { n as f64 },
                discrepancy,
            });
        }
    }

    Ok([
        uniform_log.into_report(Axiom::BoundaryUniform, cfg.max_len, None),
        delta_log.into_report(Axiom::BoundaryDelta, cfg.max_len, None),
        band_log.into_report(Axiom::BoundaryBand, cfg.trials, None),
    ])
}

/// Runs all seven checks and returns their reports in [`Axiom::ALL`] order.
pub fn run_full_battery(q: &Quantifier, cfg: &GeneratorConfig) -> Result<Vec<AxiomReport>> {
    let mut reports = Vec::with_capacity(7);
    reports.push(check_additivity(q, cfg)?);
    reports.push(check_monotonicity(q, cfg)?);
    reports.push(check_symmetry(q, cfg)?);
    reports.push(check_continuity(q, cfg)?);
    reports.extend(check_boundaries(q, cfg)?);
    Ok(reports)
}

/// The established mathematical status of each quantifier against each
/// axiom — what a correct battery run is expected to reproduce.
///
/// The minimal effective number satisfies all seven. The support count
/// satisfies everything except continuity (it jumps when a weight reaches
/// zero). The entropic quantifiers (participation number, exponentiated
/// Shannon and Renyi entropies) satisfy everything except additivity.
pub fn expected_outcome(q: &Quantifier, axiom: Axiom) -> bool {
    match axiom {
        Axiom::Monotonicity
        | Axiom::Symmetry
        | Axiom::BoundaryUniform
        | Axiom::BoundaryDelta
        | Axiom::BoundaryBand => true,
        Axiom::Additivity => matches!(
            q,
            Quantifier::MinimalEffectiveNumber | Quantifier::SupportCount
        ),
        Axiom::Continuity => !matches!(q, Quantifier::SupportCount),
    }
}

/// Recomputes the discrepancy of a recorded violation from its stored
/// inputs, using the same formula as the check that produced it. A replay
/// matching `violation.discrepancy` (within comparison tolerance)
/// demonstrates the record is a genuine, self-contained counterexample.
pub fn replay(q: &Quantifier, axiom: Axiom, violation: &Violation) -> Result<f64> {
    q.validate()?;
    if violation.inputs.len() != axiom.arity() {
        return Err(Error::MalformedViolation {
            reason: "wrong number of stored inputs for this axiom",
        });
    }
    let vectors: Vec<CountingVector> = violation
        .inputs
        .iter()
        .map(|entries| CountingVector::new(entries.clone()))
        .collect::<Result<_>>()?;
    Ok(match axiom {
        Axiom::Additivity => {
            let joined = q.evaluate(&vectors[0].concat(&vectors[1]))?;
            let parts = q.evaluate(&vectors[0])? + q.evaluate(&vectors[1])?;
            (joined - parts).abs()
        }
        Axiom::Monotonicity => q.evaluate(&vectors[1])? - q.evaluate(&vectors[0])?,
        Axiom::Symmetry | Axiom::Continuity => {
            (q.evaluate(&vectors[1])? - q.evaluate(&vectors[0])?).abs()
        }
        Axiom::BoundaryUniform => {
            (q.evaluate(&vectors[0])? - vectors[0].len() as f64).abs()
        }
        Axiom::BoundaryDelta => (q.evaluate(&vectors[0])? - 1.0).abs(),
        Axiom::BoundaryBand => {
            let v = q.evaluate(&vectors[0])?;
            let n = vectors[0].len() as f64;
            (1.0 - v).max(v - n).max(0.0)
        }
    })
}
