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

//! Synthesis of `k`-qubit unitaries.
//!
//! For `k ≥ 3` the unitary is split by quantum Shannon decomposition: a cosine-sine step leaves a
//! multiplexed `R_y` between two block-diagonal halves, and each half is demultiplexed into two
//! `(k-1)`-qubit unitaries around a multiplexed `R_z`. The recursion stops at two-qubit blocks on
//! the last two qubits. Two refinements bring the count to `(23·4^k - 72·2^k + 64)/48`:
//! the multiplexed `R_y` is built from CZs with its last CZ absorbed into the neighbouring
//! block, and every two-qubit block except the last is synthesized up to a diagonal that is
//! pushed into the next block.

use nalgebra::Matrix4;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::numerics::{check_unitary, cosine_sine, ComplexMatrix, C64};
use crate::synth::multiplex::{demultiplex, multiplexed_ry_open, synth_multiplexed_rotation, Axis};
use crate::synth::one_qubit::synth_1q;
use crate::synth::two_qubit::{synth_2q_unitary, synth_2q_up_to_diagonal};

enum Piece {
    /// Two-qubit block on qubits `k-1, k`.
    Leaf(Matrix4<C64>),
    Gates(Circuit),
}

/// Circuit for a `2^k × 2^k` unitary on qubits `1..=k`, exact including global phase.
pub fn synth_unitary(u: &ComplexMatrix) -> Result<Circuit> {
    let dim = u.nrows();
    if u.ncols() != dim || dim < 2 || !dim.is_power_of_two() {
        return Err(Error::BadDimension(dim));
    }
    check_unitary(u)?;
    let k = dim.trailing_zeros() as usize;
    match k {
        1 => synth_1q(u),
        2 => synth_2q_unitary(u),
        _ => {
            let mut pieces = Vec::new();
            shannon(u, 1, k, &mut pieces)?;
            Ok(assemble(pieces, k))
        }
    }
}

fn shannon(u: &ComplexMatrix, top: usize, k: usize, out: &mut Vec<Piece>) -> Result<()> {
    if top == k - 1 {
        out.push(Piece::Leaf(Matrix4::from_fn(|i, j| u[(i, j)])));
        return Ok(());
    }
    let csd = cosine_sine(u)?;
    let controls: Vec<usize> = (top + 1..=k).collect();
    let half = u.nrows() / 2;

    // The open multiplexed R_y equals CZ(top+1, top)·MuxRy; undo that CZ inside L1.
    let mut l1 = csd.l1.clone();
    for col in half / 2..half {
        l1.set_column(col, &(-l1.column(col)));
    }

    demultiplexed(&csd.r0, &csd.r1, top, k, &controls, out)?;
    let angles: Vec<f64> = csd.theta.iter().map(|t| 2.0 * t).collect();
    out.push(Piece::Gates(multiplexed_ry_open(&angles, &controls, top, k)));
    demultiplexed(&csd.l0, &l1, top, k, &controls, out)
}

fn demultiplexed(
    u0: &ComplexMatrix,
    u1: &ComplexMatrix,
    top: usize,
    k: usize,
    controls: &[usize],
    out: &mut Vec<Piece>,
) -> Result<()> {
    let (v, d, w) = demultiplex(u0, u1)?;
    shannon(&w, top + 1, k, out)?;
    let angles: Vec<f64> = d.iter().map(|x| -2.0 * x.arg()).collect();
    out.push(Piece::Gates(synth_multiplexed_rotation(Axis::Z, &angles, controls, top, k)?));
    shannon(&v, top + 1, k, out)
}

/// Emits the pieces in order. Each leaf but the last is realized up to a diagonal; the diagonal
/// commutes with the multiplexers in between (they only use the last two qubits as controls)
/// and is merged into the next leaf.
fn assemble(pieces: Vec<Piece>, k: usize) -> Circuit {
    let last_leaf = pieces.iter().rposition(|p| matches!(p, Piece::Leaf(_)));
    let mut carry: Option<[C64; 4]> = None;
    let mut out = Circuit::new(k);
    for (i, piece) in pieces.into_iter().enumerate() {
        match piece {
            Piece::Gates(c) => out.append(&c),
            Piece::Leaf(m) => {
                let m = match carry.take() {
                    Some(d) => m * Matrix4::from_diagonal(&d.into()),
                    None => m,
                };
                let block = if Some(i) == last_leaf {
                    synth_2q_unitary(&ComplexMatrix::from_fn(4, 4, |r, c| m[(r, c)])).expect("leaf blocks are unitary")
                } else {
                    let (c, d) = synth_2q_up_to_diagonal(&m);
                    carry = Some(d);
                    c
                };
                out.append(&block.embedded(k, k - 2));
            }
        }
    }
    out.merge_single_qubit_gates()
}
