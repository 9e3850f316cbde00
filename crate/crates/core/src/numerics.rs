// Copyright 2026 The schmidt-prep Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Dense complex linear algebra for matrices of dimension up to 256.
//!
//! Matrices are plain [`nalgebra::DMatrix`] values over [`Complex64`]. The factorizations here
//! (SVD, eigendecomposition of unitaries, cosine-sine decomposition) are judged only by how well
//! their factors multiply back to the input; degenerate subspaces may come back in any orthonormal
//! basis.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;

/// Residual accepted when a caller hands us a matrix that is supposed to be unitary.
pub const UNITARY_INPUT_TOL: f64 = 1e-8;
/// Residual that matrices we construct as unitary are expected to meet.
pub const UNITARY_BUILD_TOL: f64 = 1e-10;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// `e^{i phi}`
#[inline]
pub fn cis(phi: f64) -> C64 {
    C64::from_polar(1.0, phi)
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max |A - B|` entrywise.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// `‖U†U − I‖_max`
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let g = u.adjoint() * u;
    let n = u.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    unitarity_residual(u) <= tol
}

pub(crate) fn check_finite(m: &ComplexMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub(crate) fn check_unitary(u: &ComplexMatrix) -> Result<()> {
    check_finite(u)?;
    let residual = unitarity_residual(u);
    if residual > UNITARY_INPUT_TOL {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn diag(entries: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries))
}

/// Builds a matrix from row-major entries.
pub fn from_rows(rows: usize, cols: usize, entries: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_row_slice(rows, cols, entries)
}

/// Distance between two operators after removing the best global phase:
/// `min_φ ‖A − e^{iφ}B‖_max` evaluated at the phase of `tr(B†A)`.
pub fn phase_aligned_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let overlap = (b.adjoint() * a).trace();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
    max_abs_diff(a, &(b * phase))
}

/// Extends `cols` (an `m × r` matrix with orthonormal columns) to an `m × m` unitary whose first
/// `r` columns are exactly `cols`.
pub(crate) fn complete_unitary(cols: &ComplexMatrix) -> ComplexMatrix {
    let (m, r) = cols.shape();
    if r == m {
        return cols.clone();
    }
    let mut stacked = ComplexMatrix::zeros(m, r + m);
    stacked.columns_mut(0, r).copy_from(cols);
    stacked.columns_mut(r, m).fill_with_identity();
    let q = stacked.qr().q();
    let mut out = q;
    out.columns_mut(0, r).copy_from(cols);
    out
}

/// Singular value decomposition `A = U · diag(σ) · V†` with full square unitary factors.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: ComplexMatrix,
    /// Non-negative, descending; `min(rows, cols)` entries.
    pub singular_values: Vec<f64>,
    pub v_dagger: ComplexMatrix,
}

impl SvdResult {
    /// `U · Σ · V†` with `Σ` padded to the input shape.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.u.nrows(), self.v_dagger.ncols());
        let mut sigma = ComplexMatrix::zeros(m, n);
        for (i, s) in self.singular_values.iter().enumerate() {
            sigma[(i, i)] = C64::new(*s, 0.0);
        }
        &self.u * sigma * &self.v_dagger
    }
}

pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    check_finite(a)?;
    let (m, n) = a.shape();
    let k = m.min(n);
    let dec = a.clone().svd(true, true);
    let u_thin = dec.u.expect("left singular vectors requested");
    let vt_thin = dec.v_t.expect("right singular vectors requested");

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| dec.singular_values[j].total_cmp(&dec.singular_values[i]));

    let singular_values: Vec<f64> = order.iter().map(|&i| dec.singular_values[i].max(0.0)).collect();
    let mut u_cols = ComplexMatrix::zeros(m, k);
    let mut v_cols = ComplexMatrix::zeros(n, k);
    for (dst, &src) in order.iter().enumerate() {
        u_cols.set_column(dst, &u_thin.column(src));
        v_cols.set_column(dst, &vt_thin.row(src).adjoint());
    }
    Ok(SvdResult { u: complete_unitary(&u_cols), singular_values, v_dagger: complete_unitary(&v_cols).adjoint() })
}

/// Eigendecomposition of a unitary matrix: `U = V · diag(λ) · V†` with `V` unitary and
/// `|λ_j| = 1`.
///
/// A unitary is normal, so its complex Schur form is diagonal and the Schur vectors are
/// eigenvectors.
pub fn unitary_eig(u: &ComplexMatrix) -> Result<(Vec<C64>, ComplexMatrix)> {
    check_unitary(u)?;
    let (q, t) = u.clone().schur().unpack();
    let eigenvalues = (0..u.nrows())
        .map(|j| {
            let z = t[(j, j)];
            if z.norm() > 0.0 {
                z / z.norm()
            } else {
                ONE
            }
        })
        .collect();
    Ok((eigenvalues, q))
}

/// Cosine-sine decomposition of a `2m × 2m` unitary:
///
/// ```text
/// U = [L0  0 ] [C  -S] [R0  0 ]
///     [0   L1] [S   C] [0   R1]
/// ```
/// with `C = diag(cos θ)`, `S = diag(sin θ)`, `θ_j ∈ [0, π/2]`.
#[derive(Debug, Clone)]
pub struct CsdResult {
    pub l0: ComplexMatrix,
    pub l1: ComplexMatrix,
    pub theta: Vec<f64>,
    pub r0: ComplexMatrix,
    pub r1: ComplexMatrix,
}

impl CsdResult {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let m = self.theta.len();
        let mut left = ComplexMatrix::zeros(2 * m, 2 * m);
        let mut right = ComplexMatrix::zeros(2 * m, 2 * m);
        let mut middle = ComplexMatrix::zeros(2 * m, 2 * m);
        left.view_mut((0, 0), (m, m)).copy_from(&self.l0);
        left.view_mut((m, m), (m, m)).copy_from(&self.l1);
        right.view_mut((0, 0), (m, m)).copy_from(&self.r0);
        right.view_mut((m, m), (m, m)).copy_from(&self.r1);
        for (j, t) in self.theta.iter().enumerate() {
            let (s, c) = t.sin_cos();
            middle[(j, j)] = C64::new(c, 0.0);
            middle[(j + m, j + m)] = C64::new(c, 0.0);
            middle[(j, j + m)] = C64::new(-s, 0.0);
            middle[(j + m, j)] = C64::new(s, 0.0);
        }
        left * middle * right
    }
}

pub fn cosine_sine(u: &ComplexMatrix) -> Result<CsdResult> {
    check_unitary(u)?;
    let dim = u.nrows();
    if !dim.is_multiple_of(2) {
        return Err(Error::OddDimension(dim));
    }
    let m = dim / 2;
    let u00 = u.view((0, 0), (m, m)).into_owned();
    let u01 = u.view((0, m), (m, m)).into_owned();
    let u10 = u.view((m, 0), (m, m)).into_owned();
    let u11 = u.view((m, m), (m, m)).into_owned();

    let top = svd(&u00)?;
    let l0 = top.u;
    let r0 = top.v_dagger;
    let cos: Vec<f64> = top.singular_values.iter().map(|c| c.min(1.0)).collect();

    // Columns of U10·R0† are orthogonal with norms sin θ_j, smallest last. Orthonormalize them
    // largest-first so the ill-determined directions come from the completion.
    let b = &u10 * r0.adjoint();
    let mut reversed = ComplexMatrix::zeros(m, m);
    for j in 0..m {
        reversed.set_column(j, &b.column(m - 1 - j));
    }
    let qr = reversed.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut l1 = ComplexMatrix::zeros(m, m);
    let mut sin = vec![0.0; m];
    for (j, s) in sin.iter_mut().enumerate() {
        let jr = m - 1 - j;
        let rjj = r[(jr, jr)];
        *s = rjj.norm();
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { ONE };
        l1.set_column(j, &(q.column(jr) * phase));
    }

    let theta: Vec<f64> = (0..m).map(|j| sin[j].atan2(cos[j])).collect();

    // [L0† 0; 0 L1†] U [R0† 0; 0 I] = [C  X; S  Y] with X = -S R1, Y = C R1.
    let x = l0.adjoint() * &u01;
    let y = l1.adjoint() * &u11;
    let mut r1 = ComplexMatrix::zeros(m, m);
    for (j, t) in theta.iter().enumerate() {
        let (s, c) = t.sin_cos();
        let row = if c >= s { y.row(j) / C64::new(c, 0.0) } else { x.row(j) / C64::new(-s, 0.0) };
        r1.set_row(j, &row);
    }

    Ok(CsdResult { l0, l1, theta, r0, r1 })
}


#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;

    fn pauli_x() -> ComplexMatrix {
        from_rows(2, 2, &[ZERO, ONE, ONE, ZERO])
    }

    #[test]
    fn svd_of_identity_has_unit_singular_values() {
        let id = ComplexMatrix::identity(4, 4);
        let res = svd(&id).unwrap();
        assert!(res.singular_values.iter().all(|s| (s - 1.0).abs() < 1e-14));
        assert!(max_abs_diff(&(&res.u * &res.v_dagger), &id) < 1e-12);
    }

    #[test]
    fn svd_of_diagonal_sorts_descending() {
        let a = diag(&[C64::new(1.0, 0.0), C64::new(3.0, 0.0)]);
        let res = svd(&a).unwrap();
        assert!((res.singular_values[0] - 3.0).abs() < 1e-14);
        assert!((res.singular_values[1] - 1.0).abs() < 1e-14);
        assert!(max_abs_diff(&res.reconstruct(), &a) < 1e-13);
    }

    #[test]
    fn svd_rejects_nan() {
        let mut a = ComplexMatrix::identity(2, 2);
        a[(0, 1)] = C64::new(f64::NAN, 0.0);
        assert_eq!(svd(&a).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn svd_of_random_rectangular_reconstructs() {
        let mut r = rng(7);
        for (m, n) in [(4, 4), (2, 8), (8, 4), (1, 16)] {
            let a = ComplexMatrix::from_fn(m, n, |_, _| {
                C64::new(rand_distr::Distribution::sample(&rand_distr::StandardNormal, &mut r), 0.3)
            });
            let res = svd(&a).unwrap();
            assert!(max_abs_diff(&res.reconstruct(), &a) <= 1e-10 * max_abs(&a).max(1.0));
            assert!(unitarity_residual(&res.u) < 1e-10);
            assert!(unitarity_residual(&res.v_dagger) < 1e-10);
            assert!(res.singular_values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn eig_of_identity_and_pauli_x() {
        let (vals, _) = unitary_eig(&ComplexMatrix::identity(2, 2)).unwrap();
        assert!(vals.iter().all(|v| (v - ONE).norm() < 1e-14));

        let x = pauli_x();
        let (vals, vecs) = unitary_eig(&x).unwrap();
        let mut re: Vec<f64> = vals.iter().map(|v| v.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);
        for j in 0..2 {
            let v = vecs.column(j);
            // (|0> ± |1>)/√2 up to phase
            assert!((v[0].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
            assert!((v[1].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn eig_rejects_non_unitary() {
        let mut a = ComplexMatrix::identity(2, 2);
        a[(0, 0)] = C64::new(2.0, 0.0);
        assert!(matches!(unitary_eig(&a), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn eig_residuals_on_random_unitaries() {
        let mut r = rng(11);
        for _ in 0..20 {
            let u = random_unitary(8, &mut r);
            let (vals, vecs) = unitary_eig(&u).unwrap();
            assert!(unitarity_residual(&vecs) < 1e-9);
            for (j, lambda) in vals.iter().enumerate() {
                let v = vecs.column(j).into_owned();
                let res = &u * &v - &v * *lambda;
                assert!(res.norm() <= 1e-9);
                assert!((lambda.norm() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn csd_of_identity_is_trivial() {
        let id = ComplexMatrix::identity(4, 4);
        let csd = cosine_sine(&id).unwrap();
        assert!(csd.theta.iter().all(|t| t.abs() < 1e-14));
        assert!(max_abs_diff(&csd.reconstruct(), &id) < 1e-14);
    }

    #[test]
    fn csd_of_block_diagonal_has_zero_angles() {
        let mut r = rng(3);
        let (a, b) = (random_unitary(2, &mut r), random_unitary(2, &mut r));
        let mut u = ComplexMatrix::zeros(4, 4);
        u.view_mut((0, 0), (2, 2)).copy_from(&a);
        u.view_mut((2, 2), (2, 2)).copy_from(&b);
        let csd = cosine_sine(&u).unwrap();
        assert!(csd.theta.iter().all(|t| t.abs() < 1e-7));
        assert!(max_abs_diff(&csd.reconstruct(), &u) < 1e-10);
    }

    #[test]
    fn csd_of_swap_like_block_has_right_angles() {
        // [[0, -I], [I, 0]] has θ = π/2 everywhere.
        let mut u = ComplexMatrix::zeros(4, 4);
        for j in 0..2 {
            u[(j, j + 2)] = -ONE;
            u[(j + 2, j)] = ONE;
        }
        let csd = cosine_sine(&u).unwrap();
        assert!(csd.theta.iter().all(|t| (t - std::f64::consts::FRAC_PI_2).abs() < 1e-12));
        assert!(max_abs_diff(&csd.reconstruct(), &u) < 1e-12);
    }

    #[test]
    fn csd_errors() {
        assert_eq!(cosine_sine(&ComplexMatrix::identity(3, 3)).unwrap_err(), Error::OddDimension(3));
        let mut a = ComplexMatrix::identity(4, 4);
        a[(1, 2)] = ONE;
        assert!(matches!(cosine_sine(&a), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn csd_of_random_unitaries_reconstructs() {
        let mut r = rng(5);
        for dim in [2, 4, 8, 16, 32] {
            for _ in 0..10 {
                let u = random_unitary(dim, &mut r);
                let csd = cosine_sine(&u).unwrap();
                assert!(max_abs_diff(&csd.reconstruct(), &u) <= 1e-10, "dim {dim}");
                for f in [&csd.l0, &csd.l1, &csd.r0, &csd.r1] {
                    assert!(unitarity_residual(f) <= 1e-9);
                }
                assert!(csd.theta.iter().all(|t| (0.0..=std::f64::consts::FRAC_PI_2).contains(t)));
            }
        }
    }

    #[test]
    fn phase_aligned_distance_ignores_global_phase() {
        let mut r = rng(1);
        let u = random_unitary(4, &mut r);
        let v = &u * cis(1.234);
        assert!(phase_aligned_distance(&u, &v) < 1e-14);
    }
}
