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

//! Multiplexed (uniformly controlled) gates.
//!
//! Control values are read with `controls[0]` as the most significant bit, so `angles[j]` or
//! `gates[j]` applies when the control register holds `j`.

use std::f64::consts::FRAC_PI_4;

use crate::circuit::{Circuit, Unitary2};
use crate::error::{Error, Result};
use crate::numerics::{cis, unitary_eig, ComplexMatrix, C64, ONE, ZERO};
use crate::synth::gates;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Y,
    Z,
}

impl Axis {
    fn rotation(self, theta: f64) -> Unitary2 {
        match self {
            Axis::Y => gates::ry(theta),
            Axis::Z => gates::rz(theta),
        }
    }
}

fn check_register(controls: &[usize], target: usize, n_qubits: usize) -> Result<()> {
    for &q in controls.iter().chain(std::iter::once(&target)) {
        if q == 0 || q > n_qubits {
            return Err(Error::QubitOutOfRange { index: q, n_qubits });
        }
    }
    if controls.contains(&target) {
        return Err(Error::SameControlTarget(target));
    }
    Ok(())
}

/// Walsh-Hadamard transform in Gray-code order: the rotation angle applied at step `i`.
fn gray_angles(angles: &[f64]) -> Vec<f64> {
    let n = angles.len();
    (0..n)
        .map(|i| {
            let g = i ^ (i >> 1);
            let sum: f64 =
                angles.iter().enumerate().map(|(j, a)| if (j & g).count_ones() % 2 == 0 { *a } else { -*a }).sum();
            sum / n as f64
        })
        .collect()
}

/// Control qubit flipped after Gray-code step `i`.
fn gray_control(i: usize, controls: &[usize]) -> usize {
    let c = controls.len();
    let bit = if i + 1 == 1 << c { c - 1 } else { (i + 1).trailing_zeros() as usize };
    controls[c - 1 - bit]
}

/// Applies `R_axis(angles[j])` to `target` when the controls hold `j`, using `2^c` CNOTs
/// (none when there are no controls).
pub fn synth_multiplexed_rotation(
    axis: Axis,
    angles: &[f64],
    controls: &[usize],
    target: usize,
    n_qubits: usize,
) -> Result<Circuit> {
    let expected = 1usize << controls.len();
    if angles.len() != expected {
        return Err(Error::BadLength { expected, found: angles.len() });
    }
    check_register(controls, target, n_qubits)?;
    let mut c = Circuit::new(n_qubits);
    if controls.is_empty() {
        c.single(target, axis.rotation(angles[0]));
        return Ok(c);
    }
    for (i, theta) in gray_angles(angles).into_iter().enumerate() {
        c.single(target, axis.rotation(theta));
        c.cnot(gray_control(i, controls), target);
    }
    Ok(c)
}

/// Multiplexed `R_y` built from CZs with the final CZ (between `controls[0]` and `target`) left
/// out, so the circuit equals `CZ(controls[0], target) · MuxRy`. Uses `2^c - 1` CNOTs.
pub(crate) fn multiplexed_ry_open(angles: &[f64], controls: &[usize], target: usize, n_qubits: usize) -> Circuit {
    debug_assert!(!controls.is_empty() && angles.len() == 1 << controls.len());
    let mut c = Circuit::new(n_qubits);
    let steps = gray_angles(angles);
    let last = steps.len() - 1;
    for (i, theta) in steps.into_iter().enumerate() {
        c.single(target, gates::ry(theta));
        if i < last {
            c.single(target, gates::hadamard());
            c.cnot(gray_control(i, controls), target);
            c.single(target, gates::hadamard());
        }
    }
    c
}

/// Splits `u0 ⊕ u1 = (V ⊕ V)(D ⊕ D†)(W ⊕ W)` with `D` diagonal. Returns `(V, diag(D), W)`.
pub fn demultiplex(u0: &ComplexMatrix, u1: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<C64>, ComplexMatrix)> {
    if u0.shape() != u1.shape() {
        return Err(Error::DimensionMismatch { expected: u0.nrows(), found: u1.nrows() });
    }
    let (lambda, v) = unitary_eig(&(u0 * u1.adjoint()))?;
    let d: Vec<C64> = lambda.iter().map(|l| cis(l.arg() / 2.0)).collect();
    let dm = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(d.clone()));
    let w = &dm * v.adjoint() * u1;
    Ok((v, d, w))
}

/// Result of synthesizing a uniformly controlled gate up to a diagonal: the gate equals
/// `diag(diagonal) · circuit` on the register `(controls..., target)`, indexed with
/// `controls[0]` most significant and the target least significant.
#[derive(Debug, Clone)]
pub(crate) struct UcgUpToDiagonal {
    pub circuit: Circuit,
    pub diagonal: Vec<C64>,
}

/// Factors `a ⊕ b = (r† ⊕ r)(u ⊕ u)(d ⊕ d†)(v ⊕ v)` with `d = diag(e^{iπ/4}, e^{-iπ/4})` and
/// `r` diagonal. Returns `(r, u, v)`.
fn split_pair(a: &Unitary2, b: &Unitary2) -> (Unitary2, Unitary2, Unitary2) {
    let x = a * b.adjoint();
    let delta = if x[(0, 0)].norm() > 1e-14 { (-x[(1, 1)] / x[(0, 0)]).arg() } else { 0.0 };
    let phi = x.determinant().arg();
    let (alpha, beta) = ((-phi + delta) / 2.0, (-phi - delta) / 2.0);
    let r = Unitary2::new(cis(alpha / 2.0), ZERO, ZERO, cis(beta / 2.0));
    let y = r * x * r;
    // Eigenvectors of y for +i and -i.
    let h = y * C64::new(0.0, -1.0);
    let proj = (Unitary2::identity() + h) * C64::new(0.5, 0.0);
    let col = if proj.column(0).norm() >= proj.column(1).norm() { 0 } else { 1 };
    let e = proj.column(col).normalize();
    let u = Unitary2::new(e[0], -e[1].conj(), e[1], e[0].conj());
    let d = Unitary2::new(cis(FRAC_PI_4), ZERO, ZERO, cis(-FRAC_PI_4));
    let v = d * u.adjoint() * r.adjoint() * b;
    (r, u, v)
}

/// Uniformly controlled one-qubit gate up to a diagonal with `2^c - 1` CNOTs.
pub(crate) fn ucg_up_to_diagonal(
    gates_in: &[Unitary2],
    controls: &[usize],
    target: usize,
    n_qubits: usize,
) -> Result<UcgUpToDiagonal> {
    let expected = 1usize << controls.len();
    if gates_in.len() != expected {
        return Err(Error::BadLength { expected, found: gates_in.len() });
    }
    check_register(controls, target, n_qubits)?;
    Ok(ucg_rec(gates_in, controls, target, n_qubits))
}

fn ucg_rec(gs: &[Unitary2], controls: &[usize], target: usize, n_qubits: usize) -> UcgUpToDiagonal {
    if controls.is_empty() {
        let mut circuit = Circuit::new(n_qubits);
        circuit.single(target, gs[0]);
        return UcgUpToDiagonal { circuit, diagonal: vec![ONE, ONE] };
    }
    let half = gs.len() / 2;
    let (c1, rest) = (controls[0], &controls[1..]);
    let mut rs = Vec::with_capacity(half);
    let mut us = Vec::with_capacity(half);
    let mut vs = Vec::with_capacity(half);
    for j in 0..half {
        let (r, u, v) = split_pair(&gs[j], &gs[half + j]);
        rs.push(r);
        us.push(u);
        vs.push(v);
    }

    let lower = ucg_rec(&vs, rest, target, n_qubits);
    for (j, u) in us.iter_mut().enumerate() {
        let dv = Unitary2::new(lower.diagonal[2 * j], ZERO, ZERO, lower.diagonal[2 * j + 1]);
        *u *= dv;
    }
    let upper = ucg_rec(&us, rest, target, n_qubits);

    let mut circuit = lower.circuit;
    // exp(iπ/4 Z_c Z_t) = e^{iπ/4} CZ (S† ⊗ S†); the control-side S† and phase go to the diagonal.
    circuit.single(target, gates::sdg());
    circuit.single(target, gates::hadamard());
    circuit.cnot(c1, target);
    circuit.single(target, gates::hadamard());
    circuit.append(&upper.circuit);

    let omega = cis(FRAC_PI_4);
    let mut diagonal = vec![ZERO; 4 * half];
    for c in 0..2 {
        let side = if c == 0 { omega } else { omega * C64::new(0.0, -1.0) };
        for j in 0..half {
            let r = if c == 0 { rs[j].adjoint() } else { rs[j] };
            for t in 0..2 {
                diagonal[(c * half + j) * 2 + t] = side * r[(t, t)] * upper.diagonal[2 * j + t];
            }
        }
    }
    UcgUpToDiagonal { circuit, diagonal }
}
