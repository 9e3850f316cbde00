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

//! Two-qubit synthesis.
//!
//! A two-qubit unitary is factored in the magic basis as
//! `U = e^{iγ} (A1⊗A0) · exp(i(a·XX + b·YY + c·ZZ)) · (B1⊗B0)`, and the nonlocal core is realized
//! with as few CNOTs as its coordinates allow (0, 1, 2 or 3).

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use nalgebra::{Matrix4, SymmetricEigen};

use crate::circuit::{Circuit, Unitary2};
use crate::error::{Error, Result};
use crate::numerics::{check_unitary, cis, ComplexMatrix, C64, ONE, ZERO};
use crate::synth::gates;
use crate::synth::one_qubit::to_unitary2;

type Matrix4c = Matrix4<C64>;

/// Coordinates closer than this to a multiple of π/2 (or π/4 for the one-CNOT class) are snapped.
const COORD_TOL: f64 = 1e-10;

/// Columns are the magic basis.
fn magic() -> Matrix4c {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let hi = C64::new(0.0, FRAC_1_SQRT_2);
    Matrix4c::new(
        h, ZERO, ZERO, hi, //
        ZERO, hi, h, ZERO, //
        ZERO, hi, -h, ZERO, //
        h, ZERO, ZERO, -hi,
    )
}

// Diagonals of XX, YY, ZZ in the magic basis.
const XX_DIAG: [f64; 4] = [1.0, 1.0, -1.0, -1.0];
const YY_DIAG: [f64; 4] = [-1.0, 1.0, -1.0, 1.0];
const ZZ_DIAG: [f64; 4] = [1.0, -1.0, -1.0, 1.0];

pub(crate) fn to_matrix4(u: &ComplexMatrix) -> Result<Matrix4c> {
    if u.shape() != (4, 4) {
        return Err(Error::BadDimension(u.nrows()));
    }
    check_unitary(u)?;
    Ok(Matrix4c::from_fn(|i, j| u[(i, j)]))
}

fn to_dmatrix(u: &Matrix4c) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |i, j| u[(i, j)])
}

/// Local factors and canonical coordinates of a two-qubit unitary. The global phase is not kept;
/// circuits built from this are phase-corrected against the input afterwards.
#[derive(Debug, Clone)]
struct Kak {
    before: (Unitary2, Unitary2),
    after: (Unitary2, Unitary2),
    coords: [f64; 3],
}

/// Splits `m ≈ λ·(a ⊗ b)` into unit-determinant factors.
fn split_tensor(m: &Matrix4c) -> (Unitary2, Unitary2) {
    let (mut p, mut q, mut best) = (0, 0, -1.0);
    for i in 0..4 {
        for j in 0..4 {
            if m[(i, j)].norm() > best {
                best = m[(i, j)].norm();
                p = i;
                q = j;
            }
        }
    }
    let (i0, j0, k0, l0) = (p / 2, p % 2, q / 2, q % 2);
    let a = Unitary2::from_fn(|i, k| m[(2 * i + j0, 2 * k + l0)]);
    let b = Unitary2::from_fn(|j, l| m[(2 * i0 + j, 2 * k0 + l)]);
    let norm = |x: Unitary2| x / x.determinant().sqrt();
    (norm(a), norm(b))
}

/// Real orthogonal `P` (det +1) with `Pᵀ·M·P` diagonal, for a complex symmetric unitary `M`.
fn real_diagonalizer(m: &Matrix4c) -> Matrix4<f64> {
    let re = m.map(|z| z.re);
    let im = m.map(|z| z.im);
    let mut best: Option<(f64, Matrix4<f64>)> = None;
    for mix in [1.0, 0.377, 2.73, -0.618, 5.19, -3.7] {
        let a = re + im * mix;
        let a = (a + a.transpose()) * 0.5;
        let mut p = SymmetricEigen::new(a).eigenvectors;
        if p.determinant() < 0.0 {
            let flipped = -p.column(0);
            p.set_column(0, &flipped);
        }
        let pc = p.map(|x| C64::new(x, 0.0));
        let d = pc.transpose() * m * pc;
        let mut off = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    off = off.max(d[(i, j)].norm());
                }
            }
        }
        if best.as_ref().is_none_or(|(b, _)| off < *b) {
            best = Some((off, p));
        }
        if off < 1e-13 {
            break;
        }
    }
    best.expect("at least one attempt").1
}

fn kak(u: &Matrix4c) -> Kak {
    let det_phase = u.determinant().arg() / 4.0;
    let us = u * cis(-det_phase);
    let b = magic();
    let um = b.adjoint() * us * b;
    let m2 = um.transpose() * um;
    let p = real_diagonalizer(&m2);
    let pc = p.map(|x| C64::new(x, 0.0));
    let d = pc.transpose() * m2 * pc;

    let mut theta: [f64; 4] = std::array::from_fn(|j| d[(j, j)].arg() / 2.0);
    let mut k1 = um * pc * Matrix4c::from_diagonal(&theta.map(|t| cis(-t)).into());
    if k1.determinant().re < 0.0 {
        theta[0] += std::f64::consts::PI;
        let flipped = -k1.column(0);
        k1.set_column(0, &flipped);
    }
    let dot = |v: &[f64; 4]| theta.iter().zip(v).map(|(t, x)| t * x).sum::<f64>() / 4.0;
    let coords = [dot(&XX_DIAG), dot(&YY_DIAG), dot(&ZZ_DIAG)];

    let after = split_tensor(&(b * k1 * b.adjoint()));
    let before = split_tensor(&(b * pc.transpose() * b.adjoint()));
    Kak { before, after, coords }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Budget {
    Minimal,
    AtMostTwo,
}

/// Gates of a two-qubit circuit, built on local qubits 1 (high) and 2 (low).
struct Builder(Circuit);

impl Builder {
    fn new() -> Self {
        Builder(Circuit::new(2))
    }
    fn local(&mut self, a: Unitary2, b: Unitary2) {
        self.0.single(1, a);
        self.0.single(2, b);
    }
    fn cx(&mut self, c: usize, t: usize) {
        self.0.cnot(c, t);
    }
}

/// Appends `exp(i(a·XX + c·ZZ))` up to phase (two CNOTs).
fn xx_zz(b: &mut Builder, a: f64, c: f64) {
    b.cx(1, 2);
    b.local(gates::rx(-2.0 * a), gates::rz(-2.0 * c));
    b.cx(1, 2);
}

/// Appends `exp(iθ·PP)` for `|θ| = π/4` up to phase (one CNOT), with `basis_change` mapping Z to P.
fn quarter_turn(b: &mut Builder, sign: f64, basis_change: Unitary2) {
    let t = basis_change;
    let td = t.adjoint();
    b.local(td, td);
    // exp(±iπ/4·ZZ) ∝ CZ · (S∓ ⊗ S∓)
    let s = if sign > 0.0 { gates::sdg() } else { gates::s() };
    b.local(s, s);
    b.0.single(2, gates::hadamard());
    b.cx(1, 2);
    b.0.single(2, gates::hadamard());
    b.local(t, t);
}

/// Appends the canonical gate `exp(i(a·XX + b·YY + c·ZZ))` up to phase.
fn canonical(b: &mut Builder, coords: [f64; 3], budget: Budget) {
    let paulis = [gates::pauli_x(), gates::pauli_y(), gates::pauli_z()];
    let mut reduced = [0.0; 3];
    let mut corrections = Vec::new();
    for k in 0..3 {
        let m = (coords[k] / FRAC_PI_2).round();
        reduced[k] = coords[k] - m * FRAC_PI_2;
        // exp(i·mπ/2·PP) = i^m (P⊗P)^m
        if (m as i64).rem_euclid(2) == 1 {
            corrections.push(paulis[k]);
        }
    }

    let mut zero: Vec<bool> = reduced.iter().map(|c| c.abs() < COORD_TOL).collect();
    if budget == Budget::AtMostTwo && !zero.iter().any(|z| *z) {
        let k = (0..3).min_by(|&i, &j| reduced[i].abs().total_cmp(&reduced[j].abs())).unwrap();
        zero[k] = true;
    }
    for k in 0..3 {
        if zero[k] {
            reduced[k] = 0.0;
        }
    }
    let n_zero = zero.iter().filter(|z| **z).count();
    let quarter: Vec<usize> =
        (0..3).filter(|&k| !zero[k] && (reduced[k].abs() - FRAC_PI_4).abs() < COORD_TOL).collect();

    let [x, y, z] = reduced;
    if n_zero == 3 {
        // identity
    } else if n_zero == 2 && quarter.len() == 1 {
        let k = quarter[0];
        let change = match k {
            0 => gates::hadamard(),
            1 => gates::s() * gates::hadamard(),
            _ => gates::identity(),
        };
        quarter_turn(b, reduced[k].signum(), change);
    } else if n_zero >= 1 {
        if zero[1] {
            xx_zz(b, x, z);
        } else if zero[0] {
            // S maps X to Y and fixes Z.
            b.local(gates::sdg(), gates::sdg());
            xx_zz(b, y, z);
            b.local(gates::s(), gates::s());
        } else {
            // Rx(-π/2) maps Z to Y and fixes X.
            let w = gates::rx(-FRAC_PI_2);
            b.local(w.adjoint(), w.adjoint());
            xx_zz(b, x, y);
            b.local(w, w);
        }
    } else {
        b.0.single(2, gates::rz(FRAC_PI_2));
        b.cx(2, 1);
        b.local(gates::rz(-2.0 * z - FRAC_PI_2), gates::ry(-FRAC_PI_2 - 2.0 * x));
        b.cx(1, 2);
        b.0.single(2, gates::ry(2.0 * y + FRAC_PI_2));
        b.cx(2, 1);
        b.0.single(1, gates::rz(-FRAC_PI_2));
    }
    for p in corrections {
        b.local(p, p);
    }
}

fn synthesize(u: &Matrix4c, budget: Budget) -> Circuit {
    let k = kak(u);
    let mut b = Builder::new();
    b.local(k.before.0, k.before.1);
    canonical(&mut b, k.coords, budget);
    b.local(k.after.0, k.after.1);
    let mut c = b.0.merge_single_qubit_gates();
    let target = to_dmatrix(u);
    let overlap = (c.unitary().adjoint() * &target).trace();
    c.add_global_phase(overlap.arg());
    c
}

/// Circuit for a 4×4 unitary with at most three CNOTs, exact including global phase.
/// Qubit 1 is the high bit of the matrix index.
pub fn synth_2q_unitary(u: &ComplexMatrix) -> Result<Circuit> {
    let m = to_matrix4(u)?;
    Ok(synthesize(&m, Budget::Minimal))
}

/// Factors `u = Δ · C` where `Δ` is diagonal and `C` needs at most two CNOTs. Returns `C` and the
/// diagonal of `Δ`.
pub(crate) fn synth_2q_up_to_diagonal(u: &Matrix4c) -> (Circuit, [C64; 4]) {
    // tr γ(D·U) ∝ e^{iψ}·M12 − e^{-iψ}·M03 with M = U·YY·Uᵀ; pick ψ to make it real.
    let yy = {
        let y = gates::pauli_y();
        Matrix4c::from_fn(|i, j| y[(i / 2, j / 2)] * y[(i % 2, j % 2)])
    };
    let m = u * yy * u.transpose();
    let scale = cis(-u.determinant().arg() / 2.0);
    let (a, b) = (scale * m[(1, 2)], scale * m[(0, 3)]);
    let p = a.norm() * a.arg().cos() + b.norm() * b.arg().cos();
    let q = a.norm() * a.arg().sin() - b.norm() * b.arg().sin();
    let psi = if p.abs() + q.abs() > 0.0 { (-q).atan2(p) } else { 0.0 };

    let e = cis(psi);
    let shifted = Matrix4c::from_diagonal(&[ONE, e, e, ONE].into()) * u;
    let c = synthesize(&shifted, Budget::AtMostTwo);
    (c, [ONE, e.conj(), e.conj(), ONE])
}

/// Circuit preparing the normalized two-qubit state `amps` from `|00⟩` with at most one CNOT;
/// product states (second Schmidt coefficient below 1e-12) use none.
pub fn synth_2q_state(amps: &[C64; 4]) -> Result<Circuit> {
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > crate::simulator::NORM_INPUT_TOL || !norm.is_finite() {
        return Err(Error::NotNormalized { norm });
    }
    let m = ComplexMatrix::from_row_slice(2, 2, amps);
    let dec = crate::numerics::svd(&m)?;
    let (s0, s1) = (dec.singular_values[0], dec.singular_values[1]);
    let left = to_unitary2(&dec.u)?;
    let right = to_unitary2(&dec.v_dagger.transpose())?;

    let mut c = Circuit::new(2);
    if s1 >= 1e-12 {
        c.single(1, gates::ry(2.0 * s1.atan2(s0)));
        c.cnot(1, 2);
    }
    c.single(1, left);
    c.single(2, right);
    Ok(c.merge_single_qubit_gates())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{max_abs_diff, testing::*};
    use crate::random::haar_state;
    use crate::simulator::{fidelity, run, StateVector};

    fn cnot_matrix() -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        for (i, j) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            m[(i, j)] = ONE;
        }
        m
    }

    fn canonical_matrix(a: f64, b: f64, c: f64) -> ComplexMatrix {
        let mut t = Builder::new();
        canonical(&mut t, [a, b, c], Budget::Minimal);
        t.0.unitary()
    }

    #[test]
    fn identity_needs_no_cnot() {
        let c = synth_2q_unitary(&ComplexMatrix::identity(4, 4)).unwrap();
        assert_eq!(c.cnot_count(), 0);
        assert!(max_abs_diff(&c.unitary(), &ComplexMatrix::identity(4, 4)) < 1e-12);
    }

    #[test]
    fn cnot_needs_one_cnot() {
        let cx = cnot_matrix();
        let c = synth_2q_unitary(&cx).unwrap();
        assert!(c.cnot_count() <= 1);
        assert!(max_abs_diff(&c.unitary(), &cx) < 1e-12);
    }

    #[test]
    fn local_gates_need_no_cnot() {
        let mut r = rng(8);
        let (a, b) = (random_unitary(2, &mut r), random_unitary(2, &mut r));
        let u = a.kronecker(&b);
        let c = synth_2q_unitary(&u).unwrap();
        assert_eq!(c.cnot_count(), 0);
        assert!(max_abs_diff(&c.unitary(), &u) < 1e-12);
    }

    #[test]
    fn swap_needs_three() {
        let mut sw = ComplexMatrix::zeros(4, 4);
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            sw[(i, j)] = ONE;
        }
        let c = synth_2q_unitary(&sw).unwrap();
        assert_eq!(c.cnot_count(), 3);
        assert!(max_abs_diff(&c.unitary(), &sw) < 1e-12);
    }

    #[test]
    fn canonical_templates_match_exponential() {
        use crate::numerics::phase_aligned_distance;
        let mut r = rng(31);
        use rand::Rng;
        for _ in 0..50 {
            let (a, b, c): (f64, f64, f64) =
                (r.random_range(-2.0..2.0), r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
            for coords in [
                (a, b, c),
                (a, 0.0, c),
                (0.0, b, c),
                (a, b, 0.0),
                (FRAC_PI_4, 0.0, 0.0),
                (0.0, -FRAC_PI_4, 0.0),
                (0.0, 0.0, 3.0 * FRAC_PI_4),
            ] {
                let got = canonical_matrix(coords.0, coords.1, coords.2);
                // exp(i(aXX+bYY+cZZ)) is diagonal in the magic basis.
                let bm = magic();
                let diag: [C64; 4] =
                    std::array::from_fn(|j| cis(coords.0 * XX_DIAG[j] + coords.1 * YY_DIAG[j] + coords.2 * ZZ_DIAG[j]));
                let expected = to_dmatrix(&(bm * Matrix4c::from_diagonal(&diag.into()) * bm.adjoint()));
                assert!(phase_aligned_distance(&got, &expected) < 1e-12, "{coords:?}");
            }
        }
    }

    #[test]
    fn random_unitaries_need_three_and_match_exactly() {
        let mut r = rng(17);
        for _ in 0..300 {
            let u = random_unitary(4, &mut r);
            let c = synth_2q_unitary(&u).unwrap();
            assert!(c.cnot_count() <= 3);
            assert!(max_abs_diff(&c.unitary(), &u) < 1e-9);
        }
    }

    #[test]
    fn up_to_diagonal_uses_two_cnots() {
        let mut r = rng(19);
        for _ in 0..300 {
            let u = random_unitary(4, &mut r);
            let m = to_matrix4(&u).unwrap();
            let (c, d) = synth_2q_up_to_diagonal(&m);
            assert!(c.cnot_count() <= 2);
            let rebuilt = crate::numerics::diag(&d) * c.unitary();
            assert!(max_abs_diff(&rebuilt, &u) < 1e-9);
        }
    }

    #[test]
    fn state_prep_examples() {
        let c = synth_2q_state(&[ONE, ZERO, ZERO, ZERO]).unwrap();
        assert_eq!(c.cnot_count(), 0);

        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let bell = [h, ZERO, ZERO, h];
        let c = synth_2q_state(&bell).unwrap();
        assert_eq!(c.cnot_count(), 1);
        let out = run(&c, &StateVector::zero(2)).unwrap();
        assert!((fidelity(&out, &StateVector::new(2, bell.to_vec()).unwrap()).unwrap() - 1.0).abs() < 1e-12);

        assert!(matches!(synth_2q_state(&[ONE, ONE, ZERO, ZERO]), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn product_state_prep_needs_no_cnot() {
        let mut r = rng(23);
        for _ in 0..50 {
            let (a, b) = (haar_state(1, &mut r), haar_state(1, &mut r));
            let amps: [C64; 4] = std::array::from_fn(|i| a.amplitudes()[i / 2] * b.amplitudes()[i % 2]);
            let c = synth_2q_state(&amps).unwrap();
            assert_eq!(c.cnot_count(), 0);
            let out = run(&c, &StateVector::zero(2)).unwrap();
            assert!(fidelity(&out, &StateVector::new(2, amps.to_vec()).unwrap()).unwrap() > 1.0 - 1e-12);
        }
    }
}
