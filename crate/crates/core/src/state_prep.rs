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

//! Four-phase state preparation.
//!
//! An `n`-qubit state is split into `k1 = ⌊n/2⌋` and `k2 = ⌈n/2⌉` qubits and written as
//! `Σ αᵢ |ψᵢ⟩|φᵢ⟩`. The circuit
//! 1. prepares `Σ αᵢ |i⟩` on qubits `1..=k1`,
//! 2. copies it with CNOTs `j → j + k1`,
//! 3. rotates qubits `1..=k1` by the unitary with columns `|ψᵢ⟩`,
//! 4. rotates qubits `k1+1..=n` by a unitary sending `|i⟩|0…⟩` to `|φᵢ⟩`.
//!
//! Phases 3 and 4 act on disjoint qubits and run in parallel.

use serde::{Deserialize, Serialize};

use crate::bounds::{self, Phase1Method};
use crate::circuit::{Circuit, CostReport, Phase, Unitary2};
use crate::error::{Error, Result};
use crate::numerics::{complete_unitary, svd, ComplexMatrix, C64, ONE, ZERO};
use crate::simulator::{StateVector, NORM_INPUT_TOL};
use crate::synth::gates;
use crate::synth::multiplex::ucg_up_to_diagonal;
use crate::synth::unitary::synth_unitary;

/// Schmidt coefficients below this count as zero in rank-aware mode.
pub const RANK_TOL: f64 = 1e-12;

/// `e^{i·phase} Σᵢ alphas[i] · basis_left[:, i] ⊗ basis_right[:, i]`.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub k1: usize,
    pub k2: usize,
    /// `2^k1` coefficients; the first is real and non-negative.
    pub alphas: Vec<C64>,
    pub basis_left: ComplexMatrix,
    /// Its first `2^k1` columns pair with `alphas`; the rest complete it to a unitary.
    pub basis_right: ComplexMatrix,
    pub phase: f64,
}

impl SchmidtForm {
    pub fn n_qubits(&self) -> usize {
        self.k1 + self.k2
    }

    /// Number of coefficients with magnitude above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.alphas.iter().filter(|a| a.norm() > tol).count()
    }

    /// Amplitudes of the represented state.
    pub fn reassemble(&self) -> Vec<C64> {
        let (d1, d2) = (1usize << self.k1, 1usize << self.k2);
        let global = C64::from_polar(1.0, self.phase);
        let mut amps = vec![ZERO; d1 * d2];
        for (i, alpha) in self.alphas.iter().enumerate() {
            let a = global * alpha;
            for r in 0..d1 {
                let left = a * self.basis_left[(r, i)];
                for c in 0..d2 {
                    amps[r * d2 + c] += left * self.basis_right[(c, i)];
                }
            }
        }
        amps
    }
}

fn check_normalized(s: &StateVector) -> Result<()> {
    let norm = s.norm();
    if (norm - 1.0).abs() > NORM_INPUT_TOL || !norm.is_finite() {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

fn check_size(s: &StateVector) -> Result<()> {
    check_normalized(s)?;
    if s.n_qubits() < 2 {
        return Err(Error::TooFewQubits(s.n_qubits()));
    }
    Ok(())
}

pub fn schmidt_decompose(s: &StateVector) -> Result<SchmidtForm> {
    check_size(s)?;
    let (k1, k2) = bounds::split(s.n_qubits());
    let (d1, d2) = (1usize << k1, 1usize << k2);
    let m = ComplexMatrix::from_row_slice(d1, d2, s.amplitudes());
    let dec = svd(&m)?;
    let mut alphas: Vec<C64> = dec.singular_values.iter().map(|x| C64::new(*x, 0.0)).collect();
    let mut left = dec.u;
    let right = dec.v_dagger.transpose();

    // Make the largest entry of each |ψᵢ⟩ real positive; the phase moves into αᵢ.
    for (i, alpha) in alphas.iter_mut().enumerate() {
        let col = left.column(i);
        let pivot = col.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or(ONE);
        if pivot.norm() > 0.0 {
            let p = pivot / pivot.norm();
            left.set_column(i, &(col * p.conj()));
            *alpha *= p;
        }
    }
    let phase = alphas[0].arg();
    let unphase = C64::from_polar(1.0, -phase);
    alphas.iter_mut().for_each(|a| *a *= unphase);
    alphas[0] = C64::new(alphas[0].norm(), 0.0);

    Ok(SchmidtForm { k1, k2, alphas, basis_left: left, basis_right: right, phase })
}

/// Circuit taking `|0…0⟩` to `s`, exact including global phase, with at most `2^n - n - 1`
/// CNOTs. Works for any `n ≥ 1`.
pub fn baseline_prepare(s: &StateVector) -> Result<Circuit> {
    check_normalized(s)?;
    let n = s.n_qubits();
    let mut amps: Vec<C64> = s.amplitudes().to_vec();
    let mut disentangle = Circuit::new(n);

    // Rotate qubit t into |0⟩ conditioned on qubits 1..t, from the last qubit up.
    for t in (1..=n).rev() {
        let pairs = 1usize << (t - 1);
        let mut rotations = Vec::with_capacity(pairs);
        let mut norms = Vec::with_capacity(pairs);
        for j in 0..pairs {
            let (a, b) = (amps[2 * j], amps[2 * j + 1]);
            let rho = (a.norm_sqr() + b.norm_sqr()).sqrt();
            norms.push(rho);
            rotations.push(if rho > 1e-300 {
                Unitary2::new(a.conj(), b.conj(), -b, a) / C64::new(rho, 0.0)
            } else {
                gates::identity()
            });
        }
        let controls: Vec<usize> = (1..t).collect();
        let ucg = ucg_up_to_diagonal(&rotations, &controls, t, n)?;
        disentangle.append(&ucg.circuit);
        // The circuit applies diag(D)†·G; G leaves ρⱼ on the |0⟩ branch.
        amps = (0..pairs).map(|j| C64::new(norms[j], 0.0) * ucg.diagonal[2 * j].conj()).collect();
    }
    // amps[0] is the phase the disentangler leaves on |0…0⟩.
    let mut c = disentangle.inverse();
    c.add_global_phase(amps[0].arg());
    Ok(c.merge_single_qubit_gates())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase1Choice {
    /// Whichever of the two methods has the lower CNOT bound; ties go to the baseline.
    #[default]
    Auto,
    Baseline,
    /// Reuse the four-phase scheme on the coefficient register when it has at least two qubits.
    Recursive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PrepOptions {
    pub phase1: Phase1Choice,
    /// Prepare and copy only the `⌈log2 rank⌉` low qubits of the coefficient register.
    pub rank_aware: bool,
}

#[derive(Debug, Clone)]
pub struct PrepPlan {
    pub phase1: Circuit,
    pub phase2: Circuit,
    pub phase3: Circuit,
    pub phase4: Circuit,
    pub total: Circuit,
    pub report: CostReport,
}

pub fn schmidt_prepare(s: &StateVector) -> Result<PrepPlan> {
    schmidt_prepare_with(s, &PrepOptions::default())
}

pub fn schmidt_prepare_with(s: &StateVector, opts: &PrepOptions) -> Result<PrepPlan> {
    let form = schmidt_decompose(s)?;
    let (n, k1, k2) = (s.n_qubits(), form.k1, form.k2);

    // Width of the populated part of the coefficient register.
    let m = if opts.rank_aware {
        let rank = form.rank(RANK_TOL).max(1);
        rank.next_power_of_two().trailing_zeros() as usize
    } else {
        k1
    };
    let offset = k1 - m;

    let phase1 = if m == 0 {
        Circuit::new(n)
    } else {
        let coeffs = StateVector::normalized(m, form.alphas[..1 << m].to_vec())?;
        prepare_coefficients(&coeffs, opts.phase1)?.embedded(n, offset)
    };
    let phase1 = phase1.with_label(Phase::P1);

    let mut phase2 = Circuit::new(n);
    for j in offset + 1..=k1 {
        phase2.cnot(j, j + k1);
    }
    let phase2 = phase2.with_label(Phase::P2);

    let phase3 = synth_unitary(&form.basis_left)?.embedded(n, 0).with_label(Phase::P3);

    // After the copy the right register holds |i⟩ in its top k1 qubits and |0⟩ below.
    let d1 = 1usize << k1;
    let shift = k2 - k1;
    let mut right_cols = ComplexMatrix::zeros(1 << k2, d1);
    let mut order = Vec::with_capacity(1 << k2);
    for i in 0..d1 {
        right_cols.set_column(i, &form.basis_right.column(i));
        order.push(i << shift);
    }
    let completed = complete_unitary(&right_cols);
    let mut u4 = ComplexMatrix::zeros(1 << k2, 1 << k2);
    let free: Vec<usize> = (0..1usize << k2).filter(|c| c % (1 << shift) != 0).collect();
    for (i, &col) in order.iter().chain(free.iter()).enumerate() {
        u4.set_column(col, &completed.column(i));
    }
    let phase4 = synth_unitary(&u4)?.embedded(n, k1).with_label(Phase::P4);

    let mut total = Circuit::new(n);
    for part in [&phase1, &phase2, &phase3, &phase4] {
        total.append(part);
    }
    total.add_global_phase(form.phase);
    let report = total.cost_report();
    Ok(PrepPlan { phase1, phase2, phase3, phase4, total, report })
}

fn prepare_coefficients(coeffs: &StateVector, choice: Phase1Choice) -> Result<Circuit> {
    let k = coeffs.n_qubits();
    let method = match choice {
        Phase1Choice::Auto => bounds::phase1_method(k),
        Phase1Choice::Baseline => Phase1Method::Baseline,
        Phase1Choice::Recursive if k >= 2 => Phase1Method::Recursive,
        Phase1Choice::Recursive => Phase1Method::Baseline,
    };
    match method {
        Phase1Method::Baseline => baseline_prepare(coeffs),
        Phase1Method::Recursive => {
            let inner = PrepOptions { phase1: choice, rank_aware: false };
            Ok(schmidt_prepare_with(coeffs, &inner)?.total)
        }
    }
}

/// Circuit taking `psi` to `phi`: the preparation of `psi` run backwards, then that of `phi`.
pub fn transform(psi: &StateVector, phi: &StateVector) -> Result<Circuit> {
    transform_with(psi, phi, &PrepOptions::default())
}

pub fn transform_with(psi: &StateVector, phi: &StateVector, opts: &PrepOptions) -> Result<Circuit> {
    if psi.n_qubits() != phi.n_qubits() {
        return Err(Error::DimensionMismatch { expected: psi.n_qubits(), found: phi.n_qubits() });
    }
    let undo = schmidt_prepare_with(psi, opts)?.total.inverse();
    let mut c = undo;
    c.append(&schmidt_prepare_with(phi, opts)?.total);
    Ok(c)
}
