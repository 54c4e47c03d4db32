//! Numerical tolerances used across the crate.
//!
//! Every comparison against an analytic identity needs an explicit slack;
//! collecting the slacks here keeps them documented, auditable, and
//! consistent between the library, the verifier, and downstream tools.
//! Tolerances marked *relative* are multiplied by a problem scale (vector
//! length, matrix norm, spectral range) at the point of use.

/// Relative tolerance for accepting a vector as normalized.
///
/// Probability vectors must satisfy `|sum p_i - 1| <= TAU_NORM` and counting
/// vectors `|sum w_i - n| <= TAU_NORM * n`. Inputs outside this band are
/// rejected rather than silently rescaled; rescaling is offered separately
/// and must be requested explicitly.
pub const TAU_NORM: f64 = 1e-9;

/// Absolute tolerance when comparing two quantifier values for equality.
pub const TAU_CMP: f64 = 1e-12;

/// Absolute threshold below which a weight is treated as exactly zero,
/// e.g. when counting the support of a vector.
pub const TAU_ZERO: f64 = 1e-12;

/// Base slack for axiom checks.
///
/// An axiom identity over vectors of total length `n` is allowed to deviate
/// by `TAU_AXIOM * n` (the deviation of a sum grows with the number of
/// terms); scale-free checks use `TAU_AXIOM` directly.
pub const TAU_AXIOM: f64 = 1e-12;

/// Jump size that the continuity probe counts as a discontinuity.
///
/// The probe compares quantifier values at pairs of vectors whose L1
/// distance shrinks geometrically toward zero; a genuine discontinuity
/// (such as the support count dropping by a whole unit when a weight
/// reaches zero) produces a jump of order 1, while continuous quantifiers
/// stay well below this threshold for every probed distance.
pub const TAU_JUMP: f64 = 0.5;

/// Relative tolerance on the orthonormality defect `|<b_i|b_j> - delta_ij|`
/// of a probing basis.
pub const TAU_ORTHO: f64 = 1e-10;

/// Relative tolerance on the Hermiticity defect `|A_ij - conj(A_ji)|`,
/// measured against the largest matrix element.
pub const TAU_HERM: f64 = 1e-10;

/// Relative tolerance on the eigensolver residual `||A v - lambda v||`,
/// measured against the spectral scale of `A`.
pub const TAU_EIG: f64 = 1e-10;

/// Eigenvalue gap, relative to the spectral range, below which two
/// eigenvalues are reported as degenerate.
///
/// Degenerate spectra make the eigenbasis non-unique, so quantities derived
/// from it are flagged rather than trusted blindly.
pub const TAU_DEGEN: f64 = 1e-8;

/// Riemann-norm tolerance for wavefunctions sampled in memory.
///
/// A wavefunction sampled on a finite grid only satisfies the normalization
/// integral up to the quadrature error of the grid itself, so the
/// acceptance band is much wider than [`TAU_NORM`].
pub const TAU_CONT_SAMPLED: f64 = 1e-6;

/// Riemann-norm tolerance for wavefunctions loaded from files, which are
/// expected to have been normalized on their own grid before being written.
pub const TAU_CONT_FILE: f64 = 1e-9;
