//! Effective counting of quantum measurement outcomes.
//!
//! A normalized state `psi` probed in an orthonormal basis `{b_i}` spreads
//! over the `n` outcomes with probabilities `p_i = |<b_i|psi>|^2`. Scaling
//! by `n` turns that into a counting vector `w_i = n p_i`, and the minimal
//! effective number of `w` answers: *how many outcomes does the measurement
//! effectively have?* That count — between 1 (an eigenstate) and `n`
//! (uniform spreading) — is this module's measurement uncertainty: larger
//! means more uncertain, with no reference to entropy.
//!
//! Observables enter through their eigenbasis ([`eigenbasis`]); degenerate
//! spectra make the eigenbasis non-unique, so decompositions carry a
//! degeneracy flag. Finite measurement statistics enter through
//! [`sample_measurements`], which draws seeded outcome records whose
//! empirical frequencies converge to the exact weights.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::counting::CountingVector;
use crate::enf;
use crate::linalg::{self, hermiticity_defect};
use crate::math::sqrt;
use crate::sum::NeumaierSum;
use crate::tol;
use crate::{Error, Result};

/// A normalized pure state: `sum |amp_i|^2 = 1` within [`tol::TAU_NORM`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amps: Vec<Complex64>,
}

/// An orthonormal probing basis, stored as `n` rows of `n` amplitudes;
/// row `i` is the basis vector for outcome `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbingBasis {
    n: usize,
    rows: Vec<Complex64>,
}

/// A Hermitian observable on an `n`-dimensional space, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    n: usize,
    elements: Vec<Complex64>,
}

/// An observable's eigensystem: eigenvalues ascending, eigenvectors as the
/// rows of a probing basis, and a flag telling whether the spectrum has
/// (near-)degenerate levels, in which case the basis is not unique.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Row `i` holds the unit eigenvector for `eigenvalues[i]`.
    pub basis: ProbingBasis,
    /// True when two eigenvalues are closer than [`tol::TAU_DEGEN`] times
    /// the spectral range.
    pub degenerate: bool,
}

/// Measurement uncertainty of a state with respect to an observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableUncertainty {
    /// Effective number of outcomes (minimal effective number of the
    /// outcome counting vector), in `[1, n]`.
    pub value: f64,
    /// True when the observable's spectrum is (near-)degenerate, making
    /// the eigenbasis — and therefore this value — non-unique.
    pub degenerate: bool,
}

/// A seeded record of repeated measurements: which outcome fired, per shot.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    dim: usize,
    outcomes: Vec<usize>,
    seed: u64,
}

impl QuantumState {
    /// Validates and wraps amplitudes; the squared norm must be within
    /// [`tol::TAU_NORM`] of 1. Out-of-band inputs are rejected, not
    /// rescaled; use [`QuantumState::normalized`] to rescale explicitly.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::EmptyVector);
        }
        let norm_sqr = norm_sqr_compensated(&amps);
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > tol::TAU_NORM {
            return Err(Error::StateNotNormalized { norm_sqr });
        }
        Ok(Self { amps })
    }

    /// Rescales amplitudes to unit norm and wraps them. Errors when the
    /// vector vanishes or has non-finite entries.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::EmptyVector);
        }
        let norm_sqr = norm_sqr_compensated(&amps);
        if !norm_sqr.is_finite() {
            return Err(Error::StateNotNormalized { norm_sqr });
        }
        if norm_sqr <= 0.0 {
            return Err(Error::DegenerateInput);
        }
        let inv = 1.0 / sqrt(norm_sqr);
        let amps = amps.into_iter().map(|a| a * inv).collect();
        Ok(Self { amps })
    }

    /// The computational basis state `|i>` in dimension `n`.
    pub fn basis_state(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfBounds { index: i, len: n });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        amps[i] = Complex64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    /// The equal-amplitude superposition over `n >= 1` outcomes.
    pub fn uniform_superposition(n: usize) -> Self {
        assert!(n >= 1, "superposition needs at least one amplitude");
        let a = 1.0 / sqrt(n as f64);
        Self {
            amps: vec![Complex64::new(a, 0.0); n],
        }
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// The amplitudes.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }
}

fn norm_sqr_compensated(amps: &[Complex64]) -> f64 {
    let mut acc = NeumaierSum::new();
    for a in amps {
        acc += a.norm_sqr();
    }
    acc.value()
}

impl ProbingBasis {
    /// The computational basis: outcome `i` is the unit vector `e_i`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "basis needs at least one vector");
        let mut rows = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            rows[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self { n, rows }
    }

    /// Validates and wraps `n` rows of `n` amplitudes as an orthonormal
    /// basis: every Gram defect `|<b_i|b_j> - delta_ij|` must be within
    /// [`tol::TAU_ORTHO`].
    pub fn from_rows(n: usize, rows: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        if rows.len() != n * n {
            return Err(Error::BadMatrixShape {
                expected: n * n,
                found: rows.len(),
            });
        }
        let basis = Self { n, rows };
        for i in 0..n {
            for j in i..n {
                let target = if i == j { 1.0 } else { 0.0 };
                let defect = (basis.inner(i, j) - target).norm();
                if defect > tol::TAU_ORTHO {
                    return Err(Error::NotOrthonormal {
                        row_a: i,
                        row_b: j,
                        defect,
                    });
                }
            }
        }
        Ok(basis)
    }

    /// Wraps rows produced by the eigensolver, whose backward stability
    /// already guarantees orthonormality to working precision (re-checking
    /// would double the solver's cubic cost). Use
    /// [`ProbingBasis::orthonormality_defect`] to audit.
    fn from_rows_unchecked(n: usize, rows: Vec<Complex64>) -> Self {
        debug_assert_eq!(rows.len(), n * n);
        Self { n, rows }
    }

    /// Dimension `n` (number of outcomes).
    pub fn dim(&self) -> usize {
        self.n
    }

    /// The basis vector for outcome `i`.
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    /// `<b_i|b_j>`.
    fn inner(&self, i: usize, j: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.row(i).iter().zip(self.row(j).iter()) {
            acc += a.conj() * b;
        }
        acc
    }

    /// Largest Gram defect `|<b_i|b_j> - delta_ij|` over all row pairs.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.inner(i, j) - target).norm());
            }
        }
        worst
    }
}

impl Observable {
    /// Validates and wraps a row-major `n x n` matrix; it must be Hermitian
    /// within [`tol::TAU_HERM`] relative to its largest element.
    pub fn new(n: usize, elements: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        if elements.len() != n * n {
            return Err(Error::BadMatrixShape {
                expected: n * n,
                found: elements.len(),
            });
        }
        let (defect, scale) = hermiticity_defect(n, &elements);
        if defect > tol::TAU_HERM * scale.max(1.0) {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Self { n, elements })
    }

    /// An observable that is already diagonal in the computational basis.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyVector);
        }
        let n = values.len();
        let mut elements = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &v) in values.iter().enumerate() {
            elements[i * n + i] = Complex64::new(v, 0.0);
        }
        Ok(Self { n, elements })
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major matrix elements.
    pub fn elements(&self) -> &[Complex64] {
        &self.elements
    }
}

/// The counting vector of a measurement: `w_i = n |<b_i|psi>|^2`.
///
/// The weights are non-negative by construction and total `n` because the
/// state is normalized and the basis complete; the constructor therefore
/// skips re-validation (an independently validated basis can carry an
/// orthonormality defect slightly above the much tighter normalization
/// band, and rejecting such vectors here would punish valid inputs).
pub fn weights_from_state(state: &QuantumState, basis: &ProbingBasis) -> Result<CountingVector> {
    let n = basis.dim();
    if state.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: state.dim(),
        });
    }
    let scale = n as f64;
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut overlap = Complex64::new(0.0, 0.0);
        for (b, a) in basis.row(i).iter().zip(state.amplitudes()) {
            overlap += b.conj() * a;
        }
        weights.push(scale * overlap.norm_sqr());
    }
    Ok(CountingVector::from_raw_unchecked(weights))
}

/// Measurement uncertainty of `psi` probed in `basis`: the minimal
/// effective number of outcomes, in `[1, n]`.
///
/// 1 means the state sits on a single outcome (no uncertainty); `n` means
/// it spreads evenly over all of them (maximal uncertainty).
pub fn measurement_uncertainty(state: &QuantumState, basis: &ProbingBasis) -> Result<f64> {
    Ok(enf::n_star(&weights_from_state(state, basis)?))
}

/// Eigendecomposition of an observable, with eigenvalues ascending and a
/// degeneracy flag (smallest eigenvalue gap below [`tol::TAU_DEGEN`] times
/// the spectral range; a zero-range spectrum in dimension >= 2 counts as
/// degenerate).
pub fn eigenbasis(observable: &Observable) -> Result<EigenDecomposition> {
    let n = observable.dim();
    let eig = linalg::hermitian_eigen(n, observable.elements())?;
    let range = eig.values[n - 1] - eig.values[0];
    let degenerate = if n < 2 {
        false
    } else if range <= 0.0 {
        true
    } else {
        eig.values
            .windows(2)
            .any(|pair| pair[1] - pair[0] <= tol::TAU_DEGEN * range)
    };
    Ok(EigenDecomposition {
        eigenvalues: eig.values,
        basis: ProbingBasis::from_rows_unchecked(n, eig.vectors),
        degenerate,
    })
}

/// Measurement uncertainty of `psi` with respect to an observable: probe
/// in the observable's eigenbasis and count effective outcomes. The
/// degeneracy flag warns when the eigenbasis (hence the value) is not
/// unique.
pub fn observable_uncertainty(
    state: &QuantumState,
    observable: &Observable,
) -> Result<ObservableUncertainty> {
    let decomposition = eigenbasis(observable)?;
    let value = measurement_uncertainty(state, &decomposition.basis)?;
    Ok(ObservableUncertainty {
        value,
        degenerate: decomposition.degenerate,
    })
}

impl MeasurementRecord {
    /// Validates and wraps a record of outcome indices in dimension `dim`.
    pub fn new(dim: usize, outcomes: Vec<usize>, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        if let Some(&bad) = outcomes.iter().find(|&&o| o >= dim) {
            return Err(Error::OutcomeOutOfRange { index: bad, dim });
        }
        Ok(Self {
            dim,
            outcomes,
            seed,
        })
    }

    /// Dimension of the measured space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The recorded outcome indices, in draw order.
    pub fn outcomes(&self) -> &[usize] {
        &self.outcomes
    }

    /// The seed the record was drawn with.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Outcome frequencies as a counting vector: `w_i = n * count_i / total`.
    pub fn empirical_weights(&self) -> Result<CountingVector> {
        if self.outcomes.is_empty() {
            return Err(Error::EmptyRecord);
        }
        let mut counts = vec![0usize; self.dim];
        for &o in &self.outcomes {
            counts[o] += 1;
        }
        let scale = self.dim as f64 / self.outcomes.len() as f64;
        let weights = counts.iter().map(|&c| c as f64 * scale).collect();
        Ok(CountingVector::from_raw_unchecked(weights))
    }

    /// Measurement uncertainty estimated from the recorded frequencies.
    pub fn empirical_uncertainty(&self) -> Result<f64> {
        Ok(enf::n_star(&self.empirical_weights()?))
    }
}

/// Draws `count >= 1` measurement outcomes of `psi` probed in `basis`,
/// deterministically from `seed`.
///
/// Outcome probabilities are `p_i = |<b_i|psi>|^2`; each shot consumes one
/// uniform draw, inverted through the cumulative distribution. The RNG
/// stream is the ChaCha default (stream 0), which the axiom verifier's
/// streams deliberately avoid.
pub fn sample_measurements(
    state: &QuantumState,
    basis: &ProbingBasis,
    count: usize,
    seed: u64,
) -> Result<MeasurementRecord> {
    if count == 0 {
        return Err(Error::InvalidConfig {
            reason: "sample count must be at least 1",
        });
    }
    let weights = weights_from_state(state, basis)?;
    let n = weights.len();
    let inv_n = 1.0 / n as f64;
    let mut cumulative = Vec::with_capacity(n);
    let mut acc = NeumaierSum::new();
    for &w in weights.entries() {
        acc += w * inv_n;
        cumulative.push(acc.value());
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut outcomes = Vec::with_capacity(count);
    for _ in 0..count {
        let u = rng.gen::<f64>();
        let idx = cumulative.partition_point(|&c| c <= u).min(n - 1);
        outcomes.push(idx);
    }
    Ok(MeasurementRecord {
        dim: n,
        outcomes,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
        assert!(
            (got - want).abs() <= tol,
            "{what}: got {got}, want {want} (tol {tol})"
        );
    }

    #[test]
    fn state_validation_and_normalization() {
        assert!(QuantumState::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).is_ok());
        assert!(matches!(
            QuantumState::new(vec![c(1.0, 0.0), c(0.5, 0.0)]),
            Err(Error::StateNotNormalized { .. })
        ));
        let s = QuantumState::normalized(vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert_close(s.amplitudes()[0].re, 0.6, 1e-15, "rescaled amplitude");
        assert_close(s.amplitudes()[1].im, 0.8, 1e-15, "rescaled amplitude");
        assert!(matches!(
            QuantumState::normalized(vec![c(0.0, 0.0)]),
            Err(Error::DegenerateInput)
        ));
    }

    #[test]
    fn identity_basis_weights_are_scaled_moduli() {
        let s = QuantumState::normalized(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let w = weights_from_state(&s, &ProbingBasis::identity(2)).unwrap();
        assert_close(w.entries()[0], 2.0 * 0.36, 1e-14, "w_0");
        assert_close(w.entries()[1], 2.0 * 0.64, 1e-14, "w_1");
    }

    #[test]
    fn uncertainty_extremes() {
        // An outcome eigenstate has no measurement uncertainty.
        let n = 9;
        let basis = ProbingBasis::identity(n);
        let pinned = QuantumState::basis_state(n, 4).unwrap();
        assert_close(
            measurement_uncertainty(&pinned, &basis).unwrap(),
            1.0,
            1e-12,
            "pinned state",
        );
        // The uniform superposition is maximally uncertain.
        let spread = QuantumState::uniform_superposition(n);
        assert_close(
            measurement_uncertainty(&spread, &basis).unwrap(),
            n as f64,
            1e-12,
            "uniform superposition",
        );
    }

    #[test]
    fn uncertainty_ignores_amplitude_phases() {
        let p: [f64; 8] = [0.3, 0.2, 0.15, 0.12, 0.1, 0.06, 0.04, 0.03];
        let plain: Vec<Complex64> = p.iter().map(|&x| c(x.sqrt(), 0.0)).collect();
        let phases: Vec<Complex64> = p
            .iter()
            .enumerate()
            .map(|(k, &x)| {
                let theta = 0.7 * k as f64;
                c(x.sqrt() * theta.cos(), x.sqrt() * theta.sin())
            })
            .collect();
        let basis = ProbingBasis::identity(8);
        let a = measurement_uncertainty(&QuantumState::new(plain).unwrap(), &basis).unwrap();
        let b = measurement_uncertainty(&QuantumState::new(phases).unwrap(), &basis).unwrap();
        assert_close(a, 5.8, 1e-12, "known fixture value");
        assert_close(a, b, 1e-12, "phases must not matter");
    }

    #[test]
    fn basis_validation_rejects_non_orthonormal_rows() {
        let n = 2;
        let rows = vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            ProbingBasis::from_rows(n, rows),
            Err(Error::NotOrthonormal { .. })
        ));
        let scaled = vec![c(0.9, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(ProbingBasis::from_rows(n, scaled).is_err());
        // The Hadamard-like rotation is fine.
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let good = vec![c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)];
        assert!(ProbingBasis::from_rows(n, good).is_ok());
    }

    #[test]
    fn observable_must_be_hermitian() {
        let bad = vec![c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            Observable::new(2, bad),
            Err(Error::NotHermitian { .. })
        ));
        let good = vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)];
        assert!(Observable::new(2, good).is_ok());
    }

    #[test]
    fn spin_flip_observable_splits_a_pinned_state_evenly() {
        // For the antidiagonal imaginary observable (eigenvalues -1 and 1),
        // a computational basis state overlaps both eigenvectors equally:
        // effective outcome count 2.
        let obs =
            Observable::new(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let decomposition = eigenbasis(&obs).unwrap();
        assert_close(decomposition.eigenvalues[0], -1.0, 1e-14, "lower level");
        assert_close(decomposition.eigenvalues[1], 1.0, 1e-14, "upper level");
        assert!(!decomposition.degenerate);
        assert!(decomposition.basis.orthonormality_defect() < 1e-14);

        let pinned = QuantumState::basis_state(2, 0).unwrap();
        let u = observable_uncertainty(&pinned, &obs).unwrap();
        assert_close(u.value, 2.0, 1e-12, "even split");
        assert!(!u.degenerate);
    }

    #[test]
    fn diagonal_observable_matches_identity_basis() {
        let p: [f64; 8] = [0.3, 0.2, 0.15, 0.12, 0.1, 0.06, 0.04, 0.03];
        let amps: Vec<Complex64> = p.iter().map(|&x| c(x.sqrt(), 0.0)).collect();
        let state = QuantumState::new(amps).unwrap();
        let levels: Vec<f64> = (0..8).map(|k| k as f64).collect();
        let obs = Observable::diagonal(&levels).unwrap();
        let u = observable_uncertainty(&state, &obs).unwrap();
        assert_close(u.value, 5.8, 1e-10, "diagonal observable fixture");
        assert!(!u.degenerate);
    }

    #[test]
    fn degenerate_spectra_are_flagged() {
        let obs = Observable::diagonal(&[1.0, 1.0, 2.0]).unwrap();
        assert!(eigenbasis(&obs).unwrap().degenerate);
        let identity = Observable::diagonal(&[1.0, 1.0]).unwrap();
        assert!(eigenbasis(&identity).unwrap().degenerate);
        let spread = Observable::diagonal(&[0.0, 1.0, 2.0]).unwrap();
        assert!(!eigenbasis(&spread).unwrap().degenerate);
    }

    #[test]
    fn dimension_mismatches_are_rejected() {
        let s = QuantumState::uniform_superposition(3);
        let basis = ProbingBasis::identity(4);
        assert!(matches!(
            weights_from_state(&s, &basis),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_converges() {
        let p: [f64; 8] = [0.3, 0.2, 0.15, 0.12, 0.1, 0.06, 0.04, 0.03];
        let amps: Vec<Complex64> = p.iter().map(|&x| c(x.sqrt(), 0.0)).collect();
        let state = QuantumState::new(amps).unwrap();
        let basis = ProbingBasis::identity(8);

        let a = sample_measurements(&state, &basis, 1000, 42).unwrap();
        let b = sample_measurements(&state, &basis, 1000, 42).unwrap();
        assert_eq!(a, b, "same seed must reproduce the record");
        let c2 = sample_measurements(&state, &basis, 1000, 43).unwrap();
        assert_ne!(a, c2, "different seeds should differ");

        let big = sample_measurements(&state, &basis, 200_000, 7).unwrap();
        let exact = measurement_uncertainty(&state, &basis).unwrap();
        let empirical = big.empirical_uncertainty().unwrap();
        assert_close(empirical, exact, 0.02, "sampled estimate");
    }

    #[test]
    fn record_validation() {
        assert!(matches!(
            MeasurementRecord::new(3, vec![0, 3], 0),
            Err(Error::OutcomeOutOfRange { index: 3, dim: 3 })
        ));
        let empty = MeasurementRecord::new(3, vec![], 0).unwrap();
        assert!(matches!(
            empty.empirical_weights(),
            Err(Error::EmptyRecord)
        ));
        let record = MeasurementRecord::new(2, vec![0, 1, 1, 1], 5).unwrap();
        let w = record.empirical_weights().unwrap();
        assert_eq!(w.entries(), &[0.5, 1.5]);
        assert_close(record.empirical_uncertainty().unwrap(), 1.5, 1e-15, "n*");
    }

    #[test]
    fn zero_count_sampling_is_rejected() {
        let s = QuantumState::uniform_superposition(2);
        let basis = ProbingBasis::identity(2);
        assert!(matches!(
            sample_measurements(&s, &basis, 0, 1),
            Err(Error::InvalidConfig { .. })
        ));
    }
}
