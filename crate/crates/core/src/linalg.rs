//! Dense Hermitian and symmetric-tridiagonal eigensolvers.
//!
//! Measurement bases come from observables, so the crate needs full
//! eigendecompositions of Hermitian matrices. The classic dense route is
//! used:
//!
//! 1. **Householder reduction** — unitary similarity transforms (Hermitian
//!    reflectors `P = I - c v v*`) bring the matrix to tridiagonal form;
//! 2. a **diagonal phase similarity** makes the tridiagonal's subdiagonal
//!    real and non-negative;
//! 3. **implicit-shift QL iteration** diagonalizes the real symmetric
//!    tridiagonal, applying every plane rotation to the accumulated
//!    transform as it happens.
//!
//! The QL core follows the classic EISPACK/JAMA `tql2` routine, which is
//! backward stable and keeps the accumulated transform unitary to working
//! precision. Real symmetric tridiagonal matrices (nearest-neighbor chain
//! Hamiltonians and the like) can enter at step 3 directly via
//! [`tridiagonal_eigen`].

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math::{abs, hypot, sqrt};
use crate::tol;
use crate::{Error, Result};

/// Iteration budget per eigenvalue in the QL loop. EISPACK used 30; a
/// doubled budget keeps pathological inputs from looping forever without
/// ever triggering on sane ones.
const MAX_QL_ITERATIONS: usize = 60;

/// Eigendecomposition of a real symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Row-major `n x n` matrix whose row `i` is the unit eigenvector for
    /// `values[i]`.
    pub vectors: Vec<f64>,
}

/// Eigendecomposition of a complex Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexEigen {
    /// Eigenvalues in ascending order (real for Hermitian input).
    pub values: Vec<f64>,
    /// Row-major `n x n` matrix whose row `i` is the unit eigenvector for
    /// `values[i]`.
    pub vectors: Vec<Complex64>,
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix, after
/// EISPACK `tql2`.
///
/// `d` holds the diagonal, `e` the subdiagonal in `e[i] = T[i+1][i]` with
/// `e[n-1]` unused scratch. On success `d` holds eigenvalues (unsorted).
/// Every plane rotation `(c, s)` on the column pair `(i, i+1)` is reported
/// through `rotate` so the caller can accumulate eigenvectors in whatever
/// scalar field it uses.
fn ql_implicit(
    d: &mut [f64],
    e: &mut [f64],
    mut rotate: impl FnMut(usize, f64, f64),
) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    debug_assert_eq!(e.len(), n);
    e[n - 1] = 0.0;

    let eps = f64::EPSILON; // 2^-52
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(abs(d[l]) + abs(e[l]));
        let mut m = l;
        while m < n {
            if abs(e[m]) <= eps * tst1 {
                break;
            }
            m += 1;
        }
        // e[n-1] is zero, so m < n always holds here.
        if m > l {
            let mut iterations = 0;
            loop {
                iterations += 1;
                if iterations > MAX_QL_ITERATIONS {
                    return Err(Error::NoConvergence {
                        max_iterations: MAX_QL_ITERATIONS,
                    });
                }

                // Form the implicit shift.
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                // One QL sweep, rotating rows m-1 .. l back into place.
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    rotate(i, c, s);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if abs(e[l]) <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Sorts eigenvalues ascending and returns the permutation applied.
fn ascending_permutation(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    order
}

/// Full eigendecomposition of the real symmetric tridiagonal matrix with
/// diagonal `diag` (length `n >= 1`) and subdiagonal `sub` (length `n - 1`).
pub fn tridiagonal_eigen(diag: &[f64], sub: &[f64]) -> Result<RealEigen> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    if sub.len() + 1 != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: sub.len() + 1,
        });
    }
    let mut d = diag.to_vec();
    let mut e = Vec::with_capacity(n);
    e.extend_from_slice(sub);
    e.push(0.0);

    // Eigenvector accumulator, column-major so a rotation touches two
    // contiguous columns.
    let mut q = vec![0.0f64; n * n];
    for i in 0..n {
        q[i * n + i] = 1.0;
    }
    ql_implicit(&mut d, &mut e, |i, c, s| {
        for r in 0..n {
            let vi = q[i * n + r];
            let vi1 = q[(i + 1) * n + r];
            q[(i + 1) * n + r] = s * vi + c * vi1;
            q[i * n + r] = c * vi - s * vi1;
        }
    })?;

    let order = ascending_permutation(&d);
    let mut values = Vec::with_capacity(n);
    let mut vectors = vec![0.0f64; n * n];
    for (row, &col) in order.iter().enumerate() {
        values.push(d[col]);
        vectors[row * n..(row + 1) * n].copy_from_slice(&q[col * n..(col + 1) * n]);
    }
    Ok(RealEigen { values, vectors })
}

/// Largest Hermiticity defect `|A_ij - conj(A_ji)|` and largest element
/// modulus of a square matrix, both by the cheap `|re| + |im|` gauge.
pub(crate) fn hermiticity_defect(n: usize, a: &[Complex64]) -> (f64, f64) {
    let mut defect = 0.0f64;
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let upper = a[i * n + j];
            let lower = a[j * n + i];
            scale = scale.max(abs(upper.re) + abs(upper.im));
            scale = scale.max(abs(lower.re) + abs(lower.im));
            let gap = upper - lower.conj();
            defect = defect.max(abs(gap.re) + abs(gap.im));
        }
    }
    (defect, scale)
}

/// Full eigendecomposition of an `n x n` complex Hermitian matrix given in
/// row-major order.
///
/// The input must be Hermitian within [`tol::TAU_HERM`] relative to its
/// largest element; sub-tolerance asymmetry is averaged away before the
/// reduction so the computed spectrum is exactly that of a Hermitian
/// matrix.
pub fn hermitian_eigen(n: usize, a: &[Complex64]) -> Result<ComplexEigen> {
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    if a.len() != n * n {
        return Err(Error::BadMatrixShape {
            expected: n * n,
            found: a.len(),
        });
    }
    let (defect, scale) = hermiticity_defect(n, a);
    if defect > tol::TAU_HERM * scale.max(1.0) {
        return Err(Error::NotHermitian { defect });
    }

    // Hermitize exactly: w_ij = (a_ij + conj(a_ji)) / 2, real diagonal.
    let mut w = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            w[i * n + j] = (a[i * n + j] + a[j * n + i].conj()) * 0.5;
        }
        w[i * n + i] = Complex64::new(w[i * n + i].re, 0.0);
    }

    if n == 1 {
        return Ok(ComplexEigen {
            values: vec![w[0].re],
            vectors: vec![Complex64::new(1.0, 0.0)],
        });
    }

    // Accumulated unitary, column-major (q[col * n + row]).
    let mut q = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        q[i * n + i] = Complex64::new(1.0, 0.0);
    }

    // Householder reduction to Hermitian tridiagonal form.
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    let mut t = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let mut normsq = 0.0;
        for r in k + 1..n {
            normsq += w[r * n + k].norm_sqr();
        }
        if normsq == 0.0 {
            continue; // Column already reduced.
        }
        let alpha = w[(k + 1) * n + k];
        let norm = sqrt(normsq);
        let alpha_mod = alpha.norm();
        let phase = if alpha_mod > 0.0 {
            alpha / Complex64::new(alpha_mod, 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        };
        let beta = -phase * norm;

        // Reflector direction v = x - beta e1: the first component grows to
        // |alpha| + norm, so there is no cancellation.
        v[0] = alpha - beta;
        for r in k + 2..n {
            v[r - k - 1] = w[r * n + k];
        }
        let vv: f64 = v[..len].iter().map(|z| z.norm_sqr()).sum();
        let c = 2.0 / vv;

        // u = c * A_sub * v over the trailing block.
        for r in 0..len {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..len {
                acc += w[(k + 1 + r) * n + (k + 1 + m)] * v[m];
            }
            u[r] = acc * c;
        }
        // kappa = v* A_sub v (real for Hermitian blocks); the correction
        // splits symmetrically between the two rank-1 updates.
        let kappa: f64 = v[..len]
            .iter()
            .zip(u[..len].iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        let half = 0.5 * c * kappa;
        for r in 0..len {
            u[r] -= v[r] * half;
        }
        // A_sub <- A_sub - v u* - u v*.
        for r in 0..len {
            for m in 0..len {
                let delta = v[r] * u[m].conj() + u[r] * v[m].conj();
                w[(k + 1 + r) * n + (k + 1 + m)] -= delta;
            }
        }
        // Column k collapses onto the subdiagonal.
        w[(k + 1) * n + k] = beta;
        w[k * n + k + 1] = beta.conj();
        for r in k + 2..n {
            w[r * n + k] = Complex64::new(0.0, 0.0);
            w[k * n + r] = Complex64::new(0.0, 0.0);
        }

        // Q <- Q P with P = I - c v v* acting on columns k+1 .. n.
        for item in t.iter_mut().take(n) {
            *item = Complex64::new(0.0, 0.0);
        }
        for (m, &vm) in v.iter().enumerate().take(len) {
            let col = (k + 1 + m) * n;
            for r in 0..n {
                t[r] += q[col + r] * vm;
            }
        }
        for (m, vm) in v.iter().enumerate().take(len) {
            let col = (k + 1 + m) * n;
            let cvm = vm.conj() * c;
            for r in 0..n {
                q[col + r] -= t[r] * cvm;
            }
        }
    }

    // Extract the Hermitian tridiagonal and rotate its subdiagonal real
    // with a diagonal phase similarity, absorbing the phases into Q.
    let mut d = Vec::with_capacity(n);
    for i in 0..n {
        d.push(w[i * n + i].re);
    }
    let mut e = vec![0.0f64; n];
    let mut ph = Complex64::new(1.0, 0.0);
    for j in 0..n - 1 {
        let fj = w[(j + 1) * n + j];
        let m = fj.norm();
        e[j] = m;
        let step = if m > 0.0 {
            fj / Complex64::new(m, 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        };
        ph *= step;
        let col = (j + 1) * n;
        for r in 0..n {
            q[col + r] *= ph;
        }
    }

    ql_implicit(&mut d, &mut e, |i, c, s| {
        for r in 0..n {
            let vi = q[i * n + r];
            let vi1 = q[(i + 1) * n + r];
            q[(i + 1) * n + r] = vi * s + vi1 * c;
            q[i * n + r] = vi * c - vi1 * s;
        }
    })?;

    let order = ascending_permutation(&d);
    let mut values = Vec::with_capacity(n);
    let mut vectors = vec![Complex64::new(0.0, 0.0); n * n];
    for (row, &col) in order.iter().enumerate() {
        values.push(d[col]);
        vectors[row * n..(row + 1) * n].copy_from_slice(&q[col * n..(col + 1) * n]);
    }
    Ok(ComplexEigen { values, vectors })
}

#[cfg(test)]
// Explicit `row * n + col` arithmetic keeps matrix literals legible even
// when a factor is zero or one.
#[allow(clippy::identity_op, clippy::erasing_op)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Max |A v - lambda v| over all eigenpairs, rows-of-`vectors` layout.
    fn complex_residual(n: usize, a: &[Complex64], eig: &ComplexEigen) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..n {
            let row = &eig.vectors[k * n..(k + 1) * n];
            for i in 0..n {
                let mut acc = c(0.0, 0.0);
                for j in 0..n {
                    acc += a[i * n + j] * row[j];
                }
                acc -= row[i] * eig.values[k];
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    fn orthonormality_defect(n: usize, vectors: &[Complex64]) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = c(0.0, 0.0);
                for m in 0..n {
                    acc += vectors[i * n + m].conj() * vectors[j * n + m];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }

    fn random_hermitian(n: usize, seed: u64) -> Vec<Complex64> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut a = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            a[i * n + i] = c(rng.gen::<f64>() * 4.0 - 2.0, 0.0);
            for j in i + 1..n {
                let z = c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0);
                a[i * n + j] = z;
                a[j * n + i] = z.conj();
            }
        }
        a
    }

    #[test]
    fn rejects_non_hermitian_and_bad_shapes() {
        let bad = vec![c(0.0, 0.0); 3];
        assert!(matches!(
            hermitian_eigen(2, &bad),
            Err(Error::BadMatrixShape { .. })
        ));
        let skew = vec![c(1.0, 0.0), c(2.0, 0.0), c(5.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(
            hermitian_eigen(2, &skew),
            Err(Error::NotHermitian { .. })
        ));
        // Imaginary diagonal entries break Hermiticity too.
        let imdiag = vec![c(1.0, 0.5), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(hermitian_eigen(2, &imdiag).is_err());
    }

    #[test]
    fn two_by_two_matches_closed_form() {
        // Eigenvalues of [[a, b], [conj(b), d]] are
        // (a+d)/2 +- sqrt(((a-d)/2)^2 + |b|^2).
        let (a, d) = (1.25, -0.5);
        let b = c(0.75, -1.5);
        let m = vec![c(a, 0.0), b, b.conj(), c(d, 0.0)];
        let eig = hermitian_eigen(2, &m).unwrap();
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        assert!((eig.values[0] - (mid - rad)).abs() < 1e-14);
        assert!((eig.values[1] - (mid + rad)).abs() < 1e-14);
        assert!(complex_residual(2, &m, &eig) < 1e-14);
    }

    #[test]
    fn diagonal_matrix_is_already_solved() {
        let m = vec![
            c(3.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(-1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(2.0, 0.0),
        ];
        let eig = hermitian_eigen(3, &m).unwrap();
        assert_eq!(eig.values, vec![-1.0, 2.0, 3.0]);
        // Row k must be the basis vector of the matching diagonal slot.
        assert!((eig.vectors[0 * 3 + 1].norm() - 1.0).abs() < 1e-15);
        assert!((eig.vectors[1 * 3 + 2].norm() - 1.0).abs() < 1e-15);
        assert!((eig.vectors[2 * 3 + 0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_hermitian_eigensystems_are_accurate() {
        for &(n, seed) in &[(2usize, 11u64), (5, 12), (16, 13), (40, 14)] {
            let a = random_hermitian(n, seed);
            let eig = hermitian_eigen(n, &a).unwrap();
            for pair in eig.values.windows(2) {
                assert!(pair[0] <= pair[1], "eigenvalues must ascend");
            }
            let scale: f64 = eig
                .values
                .iter()
                .fold(0.0f64, |m, &x| m.max(x.abs()))
                .max(1.0);
            let res = complex_residual(n, &a, &eig);
            assert!(
                res <= tol::TAU_EIG * scale,
                "n = {n}: residual {res:e} vs scale {scale}"
            );
            let ortho = orthonormality_defect(n, &eig.vectors);
            assert!(ortho <= tol::TAU_ORTHO, "n = {n}: ortho defect {ortho:e}");
        }
    }

    #[test]
    fn tridiagonal_matches_free_chain_closed_form() {
        // Nearest-neighbor chain with hopping t: eigenvalues are
        // 2 t cos(k pi / (n+1)), k = 1..n.
        let n = 24;
        let t = -1.0;
        let diag = vec![0.0; n];
        let sub = vec![t; n - 1];
        let eig = tridiagonal_eigen(&diag, &sub).unwrap();
        let mut expected: Vec<f64> = (1..=n)
            .map(|k| 2.0 * t * (core::f64::consts::PI * k as f64 / (n as f64 + 1.0)).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        for (got, want) in eig.values.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
        // Eigenvectors are sine waves; check the residual instead of signs.
        for k in 0..n {
            let row = &eig.vectors[k * n..(k + 1) * n];
            for i in 0..n {
                let left = if i > 0 { row[i - 1] } else { 0.0 };
                let right = if i + 1 < n { row[i + 1] } else { 0.0 };
                let acc = t * (left + right) - eig.values[k] * row[i];
                assert!(acc.abs() < 1e-12, "residual {acc:e} at ({k}, {i})");
            }
        }
    }

    #[test]
    fn dense_path_agrees_with_tridiagonal_path() {
        let n = 12;
        let mut rng = ChaCha12Rng::seed_from_u64(77);
        let diag: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let sub: Vec<f64> = (0..n - 1).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let tri = tridiagonal_eigen(&diag, &sub).unwrap();

        let mut dense = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            dense[i * n + i] = c(diag[i], 0.0);
            if i + 1 < n {
                dense[i * n + i + 1] = c(sub[i], 0.0);
                dense[(i + 1) * n + i] = c(sub[i], 0.0);
            }
        }
        let full = hermitian_eigen(n, &dense).unwrap();
        for (a, b) in tri.values.iter().zip(full.values.iter()) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn handles_degenerate_spectra() {
        // 4x4 with a double eigenvalue: two decoupled 2x2 blocks with the
        // same spectrum.
        let mut a = vec![c(0.0, 0.0); 16];
        a[0 * 4 + 0] = c(1.0, 0.0);
        a[0 * 4 + 1] = c(0.5, 0.0);
        a[1 * 4 + 0] = c(0.5, 0.0);
        a[1 * 4 + 1] = c(1.0, 0.0);
        a[2 * 4 + 2] = c(1.0, 0.0);
        a[2 * 4 + 3] = c(0.0, 0.5);
        a[3 * 4 + 2] = c(0.0, -0.5);
        a[3 * 4 + 3] = c(1.0, 0.0);
        let eig = hermitian_eigen(4, &a).unwrap();
        let expected = [0.5, 0.5, 1.5, 1.5];
        for (got, want) in eig.values.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-13, "got {got}, want {want}");
        }
        assert!(complex_residual(4, &a, &eig) < 1e-13);
        assert!(orthonormality_defect(4, &eig.vectors) < 1e-13);
    }

    #[test]
    fn single_element_matrices() {
        let eig = hermitian_eigen(1, &[c(4.25, 0.0)]).unwrap();
        assert_eq!(eig.values, vec![4.25]);
        assert_eq!(eig.vectors, vec![c(1.0, 0.0)]);
        let tri = tridiagonal_eigen(&[2.5], &[]).unwrap();
        assert_eq!(tri.values, vec![2.5]);
        assert_eq!(tri.vectors, vec![1.0]);
    }
}
