//! Effective counting of partially occupied states.
//!
//! Given `n` objects that participate in a collective with weights
//! `w = (w_1, ..., w_n)`, `w_i >= 0`, `sum w_i = n`, this crate answers the
//! question *how many of them are effectively present*. The centerpiece is
//! the minimal effective number
//!
//! ```text
//! n_star(w) = sum_i min(w_i, 1)
//! ```
//!
//! which is the smallest quantifier consistent with a short list of counting
//! axioms (additivity, monotonicity under weight transfers, symmetry,
//! continuity, and boundary normalization). The crate provides:
//!
//! * [`counting`] — probability and counting vectors, concatenation,
//!   composition, weight transfers, and the cumulation partial order;
//! * [`enf`] — the quantifier zoo: `n_star`, the support count, the
//!   participation number, and exponentiated Shannon/Renyi entropies;
//! * [`axioms`] — a randomized verifier that hunts for counterexamples to
//!   each axiom and reports replayable witnesses;
//! * [`linalg`] — a dependency-free Hermitian eigensolver (Householder
//!   tridiagonalization + implicit QL);
//! * [`quantum`] — effective counts of measurement outcomes: state/basis
//!   weights, observable uncertainty, and sampled measurement records;
//! * [`continuum`] — the continuum limit: effective volume occupied by a
//!   wavefunction on a grid, and its discrete counterpart.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the `libm`
//! feature in `no_std` builds to supply transcendental functions.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]
#![warn(missing_docs)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("effnum-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod axioms;
pub mod continuum;
pub mod counting;
pub mod enf;
mod error;
pub mod linalg;
mod math;
pub mod quantum;
pub mod sum;
pub mod tol;

pub use error::Error;

/// Convenient result alias for fallible operations in this crate.
pub type Result<T> = core::result::Result<T, Error>;
