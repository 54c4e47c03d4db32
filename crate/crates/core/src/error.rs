//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong when validating inputs or running the
/// numerical routines.
///
/// Variants carry the offending numbers so callers (and error messages) can
/// show *how far* an input was from valid, not merely that it was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// A probability vector failed validation: an entry was negative or
    /// non-finite, or the total missed 1 by more than the normalization
    /// tolerance.
    #[error("invalid probability vector: entries must be finite and non-negative and sum to 1 (sum = {sum})")]
    InvalidProbability {
        /// The actual (compensated) sum of the entries.
        sum: f64,
    },

    /// A counting vector failed validation: an entry was negative or
    /// non-finite, or the total missed the length `n` by more than the
    /// normalization tolerance.
    #[error("invalid counting vector: entries must be finite and non-negative and sum to the length {n} (sum = {sum})")]
    InvalidCounting {
        /// Number of entries (the required total).
        n: usize,
        /// The actual (compensated) sum of the entries.
        sum: f64,
    },

    /// A vector-valued input had no entries.
    #[error("vector must have at least one entry")]
    EmptyVector,

    /// All entries of an input vanished where at least one positive entry
    /// was required (e.g. rescaling a zero vector).
    #[error("all entries vanish; nothing to normalize")]
    DegenerateInput,

    /// Two vectors that must have equal length did not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch {
        /// Length of the first operand.
        left: usize,
        /// Length of the second operand.
        right: usize,
    },

    /// An index was out of range for the vector it addresses.
    #[error("index {index} out of bounds for length {len}")]
    IndexOutOfBounds {
        /// The offending index.
        index: usize,
        /// The addressed vector's length.
        len: usize,
    },

    /// An elementary weight transfer was requested with arguments outside
    /// its domain: the donor must not exceed the receiver and the moved
    /// amount must satisfy `0 <= eps <= donor`.
    #[error("invalid transfer: requires donor <= receiver and 0 <= eps <= donor (donor = {donor}, receiver = {receiver}, eps = {eps})")]
    TransferViolation {
        /// Weight at the donating index before the transfer.
        donor: f64,
        /// Weight at the receiving index before the transfer.
        receiver: f64,
        /// Amount requested to move.
        eps: f64,
    },

    /// A Renyi order was not a positive number different from 1.
    #[error("Renyi order must be finite, positive, and different from 1 (alpha = {alpha})")]
    BadRenyiOrder {
        /// The rejected order.
        alpha: f64,
    },

    /// A generator or battery configuration was rejected.
    #[error("invalid configuration: {reason}")]
    InvalidConfig {
        /// What was wrong.
        reason: &'static str,
    },

    /// A recorded axiom violation could not be replayed against the given
    /// quantifier because its stored inputs do not fit the axiom's shape.
    #[error("violation record does not fit the axiom: {reason}")]
    MalformedViolation {
        /// What was wrong.
        reason: &'static str,
    },

    /// Two quantum objects had incompatible dimensions.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Dimension required by the first operand.
        expected: usize,
        /// Dimension of the offending operand.
        found: usize,
    },

    /// A state vector's squared norm was too far from 1.
    #[error("state vector is not normalized (|psi|^2 = {norm_sqr})")]
    StateNotNormalized {
        /// The actual squared norm.
        norm_sqr: f64,
    },

    /// A probing basis failed the orthonormality test.
    #[error("basis rows {row_a} and {row_b} are not orthonormal (defect = {defect:e})")]
    NotOrthonormal {
        /// First row of the offending pair.
        row_a: usize,
        /// Second row of the offending pair (equal to `row_a` for a norm
        /// defect).
        row_b: usize,
        /// Magnitude of the defect `|<a|b> - delta_ab|`.
        defect: f64,
    },

    /// A matrix supposed to be Hermitian was not, beyond tolerance.
    #[error("matrix is not Hermitian (largest defect = {defect:e})")]
    NotHermitian {
        /// Largest `|A_ij - conj(A_ji)|` found.
        defect: f64,
    },

    /// A matrix was not square or did not match its declared dimension.
    #[error("matrix shape invalid: expected {expected} elements, found {found}")]
    BadMatrixShape {
        /// Element count required by the declared dimension.
        expected: usize,
        /// Element count actually supplied.
        found: usize,
    },

    /// The iterative eigensolver failed to converge.
    #[error("eigensolver did not converge within {max_iterations} iterations")]
    NoConvergence {
        /// The iteration budget that was exhausted.
        max_iterations: usize,
    },

    /// A measurement record was empty, so no frequencies can be formed.
    #[error("measurement record holds no outcomes")]
    EmptyRecord,

    /// A recorded measurement outcome referred to an index outside the
    /// state space it is being compared against.
    #[error("outcome index {index} out of range for dimension {dim}")]
    OutcomeOutOfRange {
        /// The offending outcome index.
        index: usize,
        /// Dimension of the state space.
        dim: usize,
    },

    /// A grid wavefunction failed the Riemann-sum normalization test.
    #[error("wavefunction is not normalized on its grid (Riemann norm = {norm})")]
    GridNotNormalized {
        /// The actual Riemann-sum value of `integral |psi|^2`.
        norm: f64,
    },

    /// A grid description was structurally invalid (zero extent, spacing
    /// mismatch, sample count mismatch, ...).
    #[error("invalid grid: {reason}")]
    InvalidGrid {
        /// What was wrong.
        reason: &'static str,
    },
}
