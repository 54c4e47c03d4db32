//! Effective volume of grid-sampled wavefunctions.
//!
//! For a normalized wavefunction `psi` on a region of volume `V`, the
//! effective volume
//!
//! ```text
//! v_star[psi] = integral over the region of min{ V |psi(x)|^2, 1 } dx
//! ```
//!
//! is the continuum sibling of the minimal effective number: it measures
//! how much of the region the state effectively occupies, between one grid
//! cell (a point-like packet) and `V` (uniform spreading). This module
//! evaluates it by midpoint Riemann sums on rectangular grids — the `min`
//! kink defeats higher-order quadrature, while the midpoint rule is robust
//! and makes the discrete correspondence exact:
//!
//! > the Riemann sum *is* `n_star` of the counting vector induced by the
//! > cell probabilities, scaled by the cell volume.
//!
//! That bridge identity ([`GridWavefunction::induced_counting_vector`])
//! holds to near machine precision by construction and ties the continuum
//! quantity back to the discrete counting theory. Non-rectangular regions
//! are emulated by zero samples inside a bounding box.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::counting::CountingVector;
use crate::math::sqrt;
use crate::sum::NeumaierSum;
use crate::{Error, Result};

/// A wavefunction sampled at the cell centers of a rectangular grid.
///
/// `dims[a]` counts cells along axis `a` and `spacing[a]` is the cell edge,
/// so the region is a box of volume `region_volume = n_cells * cell_volume`
/// and the samples satisfy the Riemann normalization
/// `sum |psi_i|^2 * cell_volume = 1` within the tolerance supplied at
/// construction. Samples are stored row-major with the last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWavefunction {
    dims: Vec<usize>,
    spacing: Vec<f64>,
    samples: Vec<Complex64>,
}

/// The effective volume of a grid wavefunction, together with the region
/// volume it refers to. `cell_volume <= value <= region_volume` up to the
/// normalization tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveVolume {
    /// Midpoint Riemann sum of `min{ V |psi|^2, 1 }`.
    pub value: f64,
    /// The box volume `V` the wavefunction lives on.
    pub region_volume: f64,
}

fn checked_cell_count(dims: &[usize]) -> Result<usize> {
    let mut n: usize = 1;
    for &d in dims {
        n = n.checked_mul(d).ok_or(Error::InvalidGrid {
            reason: "cell count overflows",
        })?;
    }
    Ok(n)
}

impl GridWavefunction {
    /// Validates and wraps grid samples.
    ///
    /// `norm_tol` is the acceptance band for the Riemann normalization:
    /// freshly sampled analytic functions carry quadrature error and use
    /// [`crate::tol::TAU_CONT_SAMPLED`], while files written by this crate
    /// were normalized on their own grid and use the tighter
    /// [`crate::tol::TAU_CONT_FILE`].
    pub fn new(
        dims: Vec<usize>,
        spacing: Vec<f64>,
        samples: Vec<Complex64>,
        norm_tol: f64,
    ) -> Result<Self> {
        let grid = Self::structurally_valid(dims, spacing, samples)?;
        let norm = grid.riemann_norm();
        if (norm - 1.0).abs() > norm_tol {
            return Err(Error::GridNotNormalized { norm });
        }
        Ok(grid)
    }

    /// Rescales the samples to exact Riemann normalization and wraps them.
    pub fn renormalized(
        dims: Vec<usize>,
        spacing: Vec<f64>,
        samples: Vec<Complex64>,
    ) -> Result<Self> {
        let mut grid = Self::structurally_valid(dims, spacing, samples)?;
        let norm = grid.riemann_norm();
        if norm <= 0.0 {
            return Err(Error::DegenerateInput);
        }
        let inv = 1.0 / sqrt(norm);
        for z in grid.samples.iter_mut() {
            *z *= inv;
        }
        Ok(grid)
    }

    /// Samples a function at the cell centers of the described grid and
    /// normalizes it by its own Riemann sum.
    ///
    /// Axis `a` spans `[-L_a/2, L_a/2]` with `L_a = dims[a] * spacing[a]`;
    /// the callback receives the center coordinates of each cell.
    pub fn from_fn(
        dims: Vec<usize>,
        spacing: Vec<f64>,
        mut f: impl FnMut(&[f64]) -> Complex64,
    ) -> Result<Self> {
        let n = checked_cell_count(&dims)?;
        if n == 0 || dims.is_empty() {
            return Err(Error::InvalidGrid {
                reason: "grid needs at least one cell per axis",
            });
        }
        let mut samples = Vec::with_capacity(n);
        visit_cell_centers(&dims, &spacing, |_, coords| {
            samples.push(f(coords));
        });
        Self::renormalized(dims, spacing, samples)
    }

    /// Doubles the point count of every axis (halving the spacing, keeping
    /// the region fixed) and resamples from the callback.
    pub fn refine(&self, f: impl FnMut(&[f64]) -> Complex64) -> Result<Self> {
        let mut dims = Vec::with_capacity(self.dims.len());
        for &d in &self.dims {
            dims.push(d.checked_mul(2).ok_or(Error::InvalidGrid {
                reason: "refined cell count overflows",
            })?);
        }
        let spacing = self.spacing.iter().map(|&h| h * 0.5).collect();
        Self::from_fn(dims, spacing, f)
    }

    fn structurally_valid(
        dims: Vec<usize>,
        spacing: Vec<f64>,
        samples: Vec<Complex64>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidGrid {
                reason: "grid needs at least one axis",
            });
        }
        if dims.contains(&0) {
            return Err(Error::InvalidGrid {
                reason: "grid needs at least one cell per axis",
            });
        }
        if spacing.len() != dims.len() {
            return Err(Error::InvalidGrid {
                reason: "spacing list must match the axis count",
            });
        }
        if spacing.iter().any(|&h| !(h.is_finite() && h > 0.0)) {
            return Err(Error::InvalidGrid {
                reason: "spacings must be finite and positive",
            });
        }
        let n = checked_cell_count(&dims)?;
        if samples.len() != n {
            return Err(Error::InvalidGrid {
                reason: "sample count must equal the product of dims",
            });
        }
        if samples.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidGrid {
                reason: "samples must be finite",
            });
        }
        Ok(Self {
            dims,
            spacing,
            samples,
        })
    }

    /// Cells per axis.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Cell edge lengths per axis.
    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    /// The samples, row-major with the last axis fastest.
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Total number of cells.
    pub fn n_cells(&self) -> usize {
        self.samples.len()
    }

    /// Volume of a single cell, the product of the spacings.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// Volume `V` of the whole box (`n_cells * cell_volume`).
    pub fn region_volume(&self) -> f64 {
        self.n_cells() as f64 * self.cell_volume()
    }

    /// The Riemann sum of `|psi|^2` over the grid (1 for a normalized
    /// wavefunction, up to quadrature error).
    pub fn riemann_norm(&self) -> f64 {
        let cell = self.cell_volume();
        let mut acc = NeumaierSum::new();
        for z in &self.samples {
            acc += z.norm_sqr() * cell;
        }
        acc.value()
    }

    /// Per-cell occupation weight `w_i = n_cells * |psi_i|^2 * cell_volume`
    /// — the integrand of the effective volume, `V |psi_i|^2`, with the
    /// products associated identically in both quantities so the bridge
    /// identity is sharp.
    #[inline]
    fn cell_weight(&self, i: usize, n: f64, cell: f64) -> f64 {
        n * (self.samples[i].norm_sqr() * cell)
    }

    /// Midpoint Riemann sum of `min{ V |psi|^2, 1 }` over the region.
    pub fn effective_volume(&self) -> EffectiveVolume {
        let cell = self.cell_volume();
        let n = self.n_cells() as f64;
        let mut acc = NeumaierSum::new();
        for i in 0..self.samples.len() {
            let w = self.cell_weight(i, n, cell);
            acc += if w < 1.0 { w } else { 1.0 } * cell;
        }
        EffectiveVolume {
            value: acc.value(),
            region_volume: self.region_volume(),
        }
    }

    /// The counting vector induced by the cell probabilities:
    /// `w_i = n_cells * p_i` with `p_i = |psi_i|^2 * cell_volume`.
    ///
    /// Its minimal effective number reproduces the effective volume,
    /// `n_star(w) * cell_volume = effective_volume()`, to near machine
    /// precision — the discrete limit of the continuum definition. The
    /// entries are non-negative by construction and total `n_cells` up to
    /// the (coarse) grid normalization tolerance, which can exceed the
    /// strict counting-vector band; the wrapper is therefore built without
    /// re-validation rather than rejecting legitimate grids.
    pub fn induced_counting_vector(&self) -> CountingVector {
        let cell = self.cell_volume();
        let n = self.n_cells() as f64;
        let weights = (0..self.samples.len())
            .map(|i| self.cell_weight(i, n, cell))
            .collect();
        CountingVector::from_raw_unchecked(weights)
    }
}

/// Walks all cells in row-major order (last axis fastest), passing the
/// linear index and center coordinates; axis `a` spans
/// `[-dims[a] * spacing[a] / 2, +dims[a] * spacing[a] / 2]`.
fn visit_cell_centers(dims: &[usize], spacing: &[f64], mut f: impl FnMut(usize, &[f64])) {
    let d = dims.len();
    let mut index = alloc::vec![0usize; d];
    let mut coords = alloc::vec![0.0f64; d];
    let total: usize = dims.iter().product();
    for linear in 0..total {
        for a in 0..d {
            let half_extent = dims[a] as f64 * spacing[a] * 0.5;
            coords[a] = (index[a] as f64 + 0.5) * spacing[a] - half_extent;
        }
        f(linear, &coords);
        // Increment the mixed-radix counter, last axis fastest.
        for a in (0..d).rev() {
            index[a] += 1;
            if index[a] < dims[a] {
                break;
            }
            index[a] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{enf, tol};
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

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
    fn uniform_wavefunction_occupies_the_whole_region() {
        // |psi|^2 = 1/V everywhere -> integrand is exactly 1.
        let dims = vec![4usize, 6];
        let spacing = vec![0.5, 0.25];
        let v: f64 = 4.0 * 0.5 * 6.0 * 0.25;
        let amp = 1.0 / v.sqrt();
        let samples = vec![c(amp, 0.0); 24];
        let g = GridWavefunction::new(dims, spacing, samples, tol::TAU_CONT_SAMPLED).unwrap();
        let ev = g.effective_volume();
        assert_close(ev.value, v, 1e-14, "uniform effective volume");
        assert_close(ev.region_volume, v, 1e-14, "region volume");
        let w = g.induced_counting_vector();
        for &x in w.entries() {
            assert_close(x, 1.0, 1e-14, "uniform induced weight");
        }
    }

    #[test]
    fn half_support_uniform_occupies_half_the_region() {
        // Uniform on exactly half the cells: V |psi|^2 = 2 there, so the
        // clipped integrand is 1 on the support and 0 elsewhere.
        let n = 16usize;
        let spacing = vec![0.25];
        let v = n as f64 * 0.25;
        let amp = (2.0 / v).sqrt();
        let mut samples = vec![c(0.0, 0.0); n];
        for z in samples.iter_mut().take(n / 2) {
            *z = c(amp, 0.0);
        }
        let g = GridWavefunction::new(vec![n], spacing, samples, tol::TAU_CONT_SAMPLED).unwrap();
        assert_close(g.effective_volume().value, v / 2.0, 1e-14, "half support");
    }

    #[test]
    fn point_packet_occupies_one_cell() {
        let n = 32usize;
        let h: f64 = 0.5;
        let mut samples = vec![c(0.0, 0.0); n];
        samples[7] = c(1.0 / h.sqrt(), 0.0);
        let g = GridWavefunction::new(vec![n], vec![h], samples, tol::TAU_CONT_SAMPLED).unwrap();
        let ev = g.effective_volume();
        assert_close(ev.value, h, 1e-14, "single-cell packet");
        // Discrete side: all weight on one object counts as 1.
        let w = g.induced_counting_vector();
        assert_close(enf::n_star(&w), 1.0, 1e-12, "induced n_star");
    }

    #[test]
    fn gaussian_matches_adaptive_quadrature_oracle() {
        // Standard normal density on [-8, 8]: the clipped integral
        // 2 x0 + 16 erfc(x0 / sqrt 2), x0 = sqrt(2 ln(16 / sqrt(2 pi))),
        // truncated to the box, evaluates to 4.717669367287042.
        let oracle = 4.717669367287042;
        let g = gaussian_grid(4096);
        let v = g.effective_volume().value;
        assert_close(v, oracle, 5e-6, "midpoint rule at h = 16/4096");
    }

    #[test]
    fn refinement_tightens_the_gaussian_estimate() {
        let coarse = gaussian_grid(1024);
        let finer = coarse.refine(gaussian).unwrap();
        assert_eq!(finer.dims(), &[2048]);
        let finest = finer.refine(gaussian).unwrap();

        let v0 = coarse.effective_volume().value;
        let v1 = finer.effective_volume().value;
        let v2 = finest.effective_volume().value;
        let d01 = (v1 - v0).abs();
        let d12 = (v2 - v1).abs();
        assert!(
            d12 < d01,
            "successive refinement differences must shrink: {d01:e} then {d12:e}"
        );
    }

    #[test]
    fn refining_a_uniform_stays_uniform() {
        let g = GridWavefunction::from_fn(vec![4], vec![2.0], |_| c(1.0, 0.0)).unwrap();
        let fine = g.refine(|_| c(1.0, 0.0)).unwrap();
        assert_eq!(fine.dims(), &[8]);
        assert_close(
            fine.effective_volume().value,
            g.effective_volume().value,
            1e-14,
            "uniform stays uniform",
        );
    }

    #[test]
    fn bridge_identity_on_random_grids() {
        let mut rng = ChaCha12Rng::seed_from_u64(2718);
        for trial in 0..25 {
            let d = 1 + trial % 3;
            let dims: Vec<usize> = (0..d).map(|_| 2 + rng.gen_range(0..6)).collect();
            let spacing: Vec<f64> = (0..d).map(|_| 0.1 + rng.gen::<f64>()).collect();
            let n: usize = dims.iter().product();
            let samples: Vec<Complex64> = (0..n)
                .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let g = GridWavefunction::renormalized(dims, spacing, samples).unwrap();
            let ev = g.effective_volume();
            let discrete = enf::n_star(&g.induced_counting_vector()) * g.cell_volume();
            assert!(
                (ev.value - discrete).abs() <= 1e-12 * ev.value,
                "trial {trial}: continuum {} vs discrete {discrete}",
                ev.value
            );
            // Band: between one cell and the whole region.
            assert!(ev.value >= g.cell_volume() * (1.0 - 1e-9));
            assert!(ev.value <= ev.region_volume * (1.0 + 1e-9));
        }
    }

    #[test]
    fn scaling_covariance_is_exact_for_power_of_two_factors() {
        // Stretching lengths by 4 and shrinking amplitudes by 4^(-D/2)
        // multiplies the effective volume by exactly 4^D; with powers of
        // two every intermediate rounds identically.
        let g = gaussian_grid(256);
        let scaled_samples: Vec<Complex64> = g.samples().iter().map(|&z| z * 0.5).collect();
        let scaled_spacing: Vec<f64> = g.spacing().iter().map(|&h| h * 4.0).collect();
        let scaled = GridWavefunction::new(
            g.dims().to_vec(),
            scaled_spacing,
            scaled_samples,
            tol::TAU_CONT_SAMPLED,
        )
        .unwrap();
        assert_eq!(
            scaled.effective_volume().value,
            4.0 * g.effective_volume().value,
            "length rescaling must be exact"
        );
    }

    #[test]
    fn structural_validation() {
        let ok = || (vec![2usize, 2], vec![1.0, 1.0], vec![c(0.5, 0.0); 4]);
        let (dims, spacing, samples) = ok();
        assert!(GridWavefunction::new(dims, spacing, samples, 1e-6).is_ok());

        let (_, spacing, samples) = ok();
        assert!(matches!(
            GridWavefunction::new(vec![2, 0], spacing, samples, 1e-6),
            Err(Error::InvalidGrid { .. })
        ));
        let (dims, _, samples) = ok();
        assert!(GridWavefunction::new(dims, vec![1.0], samples, 1e-6).is_err());
        let (dims, spacing, _) = ok();
        assert!(GridWavefunction::new(dims, spacing, vec![c(0.5, 0.0); 3], 1e-6).is_err());
        let (dims, spacing, mut samples) = ok();
        samples[0] = c(f64::NAN, 0.0);
        assert!(GridWavefunction::new(dims, spacing, samples, 1e-6).is_err());
        let (dims, _, samples) = ok();
        assert!(GridWavefunction::new(dims, vec![-1.0, 1.0], samples, 1e-6).is_err());
    }

    #[test]
    fn normalization_band_is_enforced() {
        let samples = vec![c(0.7, 0.0); 4]; // Riemann norm 1.96
        assert!(matches!(
            GridWavefunction::new(vec![4], vec![1.0], samples.clone(), 1e-6),
            Err(Error::GridNotNormalized { .. })
        ));
        let g = GridWavefunction::renormalized(vec![4], vec![1.0], samples).unwrap();
        assert_close(g.riemann_norm(), 1.0, 1e-15, "renormalized");
        assert!(matches!(
            GridWavefunction::renormalized(vec![2], vec![1.0], vec![c(0.0, 0.0); 2]),
            Err(Error::DegenerateInput)
        ));
    }

    fn gaussian(x: &[f64]) -> Complex64 {
        // |psi|^2 is the standard normal density.
        let pdf = (-x[0] * x[0] / 2.0).exp() / (2.0 * core::f64::consts::PI).sqrt();
        c(pdf.sqrt(), 0.0)
    }

    fn gaussian_grid(n: usize) -> GridWavefunction {
        GridWavefunction::from_fn(vec![n], vec![16.0 / n as f64], gaussian).unwrap()
    }
}
