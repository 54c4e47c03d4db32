//! Disordered tight-binding chain scans.
//!
//! The Hamiltonian is the standard one-dimensional localization model: a
//! chain of `n_sites` sites with constant nearest-neighbor hopping and
//! site energies drawn uniformly from `[-W/2, W/2]`, `W` the disorder
//! strength. Each realization draws fresh site energies from its own RNG
//! stream of the given seed, so scans are reproducible and realizations
//! are independent. For every eigenstate the scan reports the minimal
//! effective number and the participation number of the position-basis
//! weights — the two standard measures of how many sites a state occupies.
//! Strong disorder localizes states, which shows up as both measures
//! collapsing toward one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use effnum_core::counting::CountingVector;
use effnum_core::linalg::tridiagonal_eigen;
use effnum_core::sum::NeumaierSum;
use effnum_core::{enf, Error as CoreError};

use crate::error::CliError;

/// Parameters of a disordered-chain scan.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanParams {
    /// Number of chain sites (at least 2).
    pub n_sites: usize,
    /// Disorder strength `W`; site energies are uniform on `[-W/2, W/2]`.
    pub disorder: f64,
    /// Nearest-neighbor hopping amplitude.
    pub hopping: f64,
    /// Master seed; realization `r` draws from stream `r`.
    pub seed: u64,
    /// Number of independent disorder realizations.
    pub realizations: usize,
}

/// Occupation measures of one eigenstate of one realization.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StateRow {
    /// Which disorder realization.
    pub realization: usize,
    /// Eigenstate index within the realization, by ascending energy.
    pub state_index: usize,
    /// The eigenvalue.
    pub energy: f64,
    /// Minimal effective number of occupied sites.
    pub n_star: f64,
    /// Participation number of occupied sites.
    pub participation_number: f64,
}

/// Occupation measures averaged over all eigenstates and realizations.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanMeans {
    /// Mean minimal effective number.
    pub n_star: f64,
    /// Mean participation number.
    pub participation_number: f64,
}

impl ScanParams {
    fn validate(&self) -> Result<(), CliError> {
        if self.n_sites < 2 {
            return Err(CliError::input("a chain needs at least 2 sites"));
        }
        if !(self.disorder.is_finite() && self.disorder >= 0.0) {
            return Err(CliError::input("disorder strength must be finite and non-negative"));
        }
        if !self.hopping.is_finite() {
            return Err(CliError::input("hopping must be finite"));
        }
        if self.realizations == 0 {
            return Err(CliError::input("at least one realization is required"));
        }
        Ok(())
    }
}

/// Diagonalizes every realization and measures every eigenstate.
pub fn run_scan(params: &ScanParams) -> Result<(Vec<StateRow>, ScanMeans), CliError> {
    params.validate()?;
    let n = params.n_sites;
    let sub = vec![params.hopping; n - 1];
    let mut rows = Vec::with_capacity(n * params.realizations);
    let mut sum_n_star = NeumaierSum::new();
    let mut sum_participation = NeumaierSum::new();

    for realization in 0..params.realizations {
        let mut rng = ChaCha12Rng::seed_from_u64(params.seed);
        rng.set_stream(realization as u64);
        let diag: Vec<f64> = (0..n)
            .map(|_| (rng.gen::<f64>() - 0.5) * params.disorder)
            .collect();

        let eigen = tridiagonal_eigen(&diag, &sub).map_err(|e| match e {
            CoreError::NoConvergence { .. } => CliError::numeric(e),
            other => CliError::input(other),
        })?;

        for (state_index, &energy) in eigen.values.iter().enumerate() {
            let amplitudes = &eigen.vectors[state_index * n..(state_index + 1) * n];
            let w = site_weights(amplitudes)?;
            let n_star = enf::n_star(&w);
            let participation_number = enf::participation_number(&w);
            sum_n_star += n_star;
            sum_participation += participation_number;
            rows.push(StateRow {
                realization,
                state_index,
                energy,
                n_star,
                participation_number,
            });
        }
    }

    let count = rows.len() as f64;
    let means = ScanMeans {
        n_star: sum_n_star.value() / count,
        participation_number: sum_participation.value() / count,
    };
    Ok((rows, means))
}

/// Converts a unit eigenvector into the counting vector of site weights,
/// `w_i = n |v_i|^2`.
pub fn site_weights(amplitudes: &[f64]) -> Result<CountingVector, CliError> {
    let n = amplitudes.len() as f64;
    let weights = amplitudes.iter().map(|&v| n * (v * v)).collect();
    CountingVector::new(weights).map_err(CliError::numeric)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(disorder: f64, realizations: usize) -> ScanParams {
        ScanParams {
            n_sites: 24,
            disorder,
            hopping: 1.0,
            seed: 7,
            realizations,
        }
    }

    #[test]
    fn scan_is_reproducible_and_well_formed() {
        let (rows, means) = run_scan(&params(2.0, 3)).unwrap();
        let (again, _) = run_scan(&params(2.0, 3)).unwrap();
        assert_eq!(rows.len(), 24 * 3);
        for (a, b) in rows.iter().zip(&again) {
            assert_eq!(a.energy, b.energy, "same seed, same spectrum");
            assert_eq!(a.n_star, b.n_star, "same seed, same measures");
        }
        for row in &rows {
            assert!(row.n_star >= 1.0 - 1e-12 && row.n_star <= 24.0 + 1e-12);
            assert!(row.participation_number >= 1.0 - 1e-12);
            assert!(row.participation_number <= 24.0 + 1e-12);
        }
        assert!(means.n_star >= 1.0 && means.n_star <= 24.0);
    }

    #[test]
    fn realizations_differ_from_each_other() {
        let (rows, _) = run_scan(&params(2.0, 2)).unwrap();
        let first: Vec<f64> = rows[..24].iter().map(|r| r.energy).collect();
        let second: Vec<f64> = rows[24..].iter().map(|r| r.energy).collect();
        assert_ne!(first, second, "independent streams per realization");
    }

    #[test]
    fn strong_disorder_localizes() {
        let (_, spread) = run_scan(&params(0.0, 1)).unwrap();
        let (_, pinned) = run_scan(&params(100.0, 5)).unwrap();
        assert!(
            pinned.n_star < 0.3 * spread.n_star,
            "disorder must shrink occupation: {} vs {}",
            pinned.n_star,
            spread.n_star
        );
    }

    #[test]
    fn parameter_validation() {
        assert!(run_scan(&ScanParams { n_sites: 1, ..params(1.0, 1) }).is_err());
        assert!(run_scan(&ScanParams { disorder: -1.0, ..params(1.0, 1) }).is_err());
        assert!(run_scan(&ScanParams { realizations: 0, ..params(1.0, 1) }).is_err());
        assert!(run_scan(&ScanParams { hopping: f64::NAN, ..params(1.0, 1) }).is_err());
    }
}
