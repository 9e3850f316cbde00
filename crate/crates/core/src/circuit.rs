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

//! Circuit IR over one-qubit unitaries and CNOTs, plus the CNOT-count and CNOT-depth metrics.
//!
//! Qubits are numbered from 1. Qubit 1 is the most significant bit of a basis-state index.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64, ONE, ZERO};

pub type Unitary2 = Matrix2<C64>;

/// Label of the preparation phase a gate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Phase {
    P1,
    P2,
    P3,
    P4,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Phase::P1 => "P1",
            Phase::P2 => "P2",
            Phase::P3 => "P3",
            Phase::P4 => "P4",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Single { target: usize, matrix: Unitary2 },
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    fn max_qubit(&self) -> usize {
        match *self {
            Gate::Single { target, .. } => target,
            Gate::Cnot { control, target } => control.max(target),
        }
    }

    fn min_qubit(&self) -> usize {
        match *self {
            Gate::Single { target, .. } => target,
            Gate::Cnot { control, target } => control.min(target),
        }
    }

    fn relabel(&self, map: &[usize]) -> Gate {
        match *self {
            Gate::Single { target, matrix } => Gate::Single { target: map[target - 1], matrix },
            Gate::Cnot { control, target } => Gate::Cnot { control: map[control - 1], target: map[target - 1] },
        }
    }

    fn inverse(&self) -> Gate {
        match *self {
            Gate::Single { target, matrix } => Gate::Single { target, matrix: matrix.adjoint() },
            cx @ Gate::Cnot { .. } => cx,
        }
    }
}

/// CNOT count, CNOT-layer depth and the CNOTs attributed to each preparation phase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub cnot_count: usize,
    pub depth: usize,
    pub per_phase: BTreeMap<Phase, usize>,
}

/// An ordered gate list. The operator it implements is `e^{i·global_phase}` times the product of
/// its gates.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    labels: Vec<Option<Phase>>,
    global_phase: f64,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits > 0, "a circuit needs at least one qubit");
        Circuit { n_qubits, gates: Vec::new(), labels: Vec::new(), global_phase: 0.0 }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn labels(&self) -> &[Option<Phase>] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn add_global_phase(&mut self, phi: f64) {
        self.global_phase = wrap_angle(self.global_phase + phi);
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q == 0 || q > self.n_qubits {
            return Err(Error::QubitOutOfRange { index: q, n_qubits: self.n_qubits });
        }
        Ok(())
    }

    /// Appends a gate after validating its qubit indices.
    pub fn try_push(&mut self, gate: Gate, label: Option<Phase>) -> Result<()> {
        match gate {
            Gate::Single { target, .. } => self.check_qubit(target)?,
            Gate::Cnot { control, target } => {
                self.check_qubit(control)?;
                self.check_qubit(target)?;
                if control == target {
                    return Err(Error::SameControlTarget(control));
                }
            }
        }
        self.gates.push(gate);
        self.labels.push(label);
        Ok(())
    }

    /// Appends a gate. Panics on invalid qubit indices; synthesis code only builds valid ones.
    pub fn push(&mut self, gate: Gate) {
        self.try_push(gate, None).expect("invalid gate");
    }

    pub fn single(&mut self, target: usize, matrix: Unitary2) {
        self.push(Gate::Single { target, matrix });
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        self.push(Gate::Cnot { control, target });
    }

    /// Sets the phase label of every gate.
    pub fn with_label(mut self, phase: Phase) -> Self {
        self.labels.iter_mut().for_each(|l| *l = Some(phase));
        self
    }

    /// Appends `other` (same width) after `self`.
    pub fn append(&mut self, other: &Circuit) {
        assert_eq!(self.n_qubits, other.n_qubits, "appending circuits of different width");
        self.gates.extend_from_slice(&other.gates);
        self.labels.extend_from_slice(&other.labels);
        self.add_global_phase(other.global_phase);
    }

    /// Appends `other`, sending its qubit `j` to `map[j - 1]` of `self`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) {
        assert_eq!(map.len(), other.n_qubits, "qubit map has the wrong length");
        for q in map {
            self.check_qubit(*q).expect("qubit map out of range");
        }
        for (g, l) in other.gates.iter().zip(&other.labels) {
            self.gates.push(g.relabel(map));
            self.labels.push(*l);
        }
        self.add_global_phase(other.global_phase);
    }

    /// Copy of `self` placed on qubits `offset + 1 ..= offset + self.n_qubits` of a wider register.
    pub fn embedded(&self, n_qubits: usize, offset: usize) -> Circuit {
        let map: Vec<usize> = (1..=self.n_qubits).map(|q| q + offset).collect();
        let mut out = Circuit::new(n_qubits);
        out.append_mapped(self, &map);
        out
    }

    /// The inverse circuit: reversed gate order with each one-qubit unitary replaced by its adjoint.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            labels: self.labels.iter().rev().copied().collect(),
            global_phase: wrap_angle(-self.global_phase),
        }
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_cnot()).count()
    }

    /// Number of CNOT layers under as-soon-as-possible scheduling of the gate list. One-qubit
    /// gates are free; CNOTs on disjoint qubit pairs share a layer.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.n_qubits + 1];
        let mut depth = 0;
        for g in &self.gates {
            if let Gate::Cnot { control, target } = *g {
                let l = level[control].max(level[target]) + 1;
                level[control] = l;
                level[target] = l;
                depth = depth.max(l);
            }
        }
        depth
    }

    pub fn cost_report(&self) -> CostReport {
        let mut per_phase = BTreeMap::new();
        for (g, l) in self.gates.iter().zip(&self.labels) {
            if let (true, Some(p)) = (g.is_cnot(), l) {
                *per_phase.entry(*p).or_insert(0) += 1;
            }
        }
        CostReport { cnot_count: self.cnot_count(), depth: self.depth(), per_phase }
    }

    /// Lowest and highest qubit touched by any gate.
    pub fn support(&self) -> Option<(usize, usize)> {
        let lo = self.gates.iter().map(Gate::min_qubit).min()?;
        let hi = self.gates.iter().map(Gate::max_qubit).max()?;
        Some((lo, hi))
    }

    /// Fuses runs of one-qubit gates on the same qubit and drops those that reduce to a phase.
    pub fn merge_single_qubit_gates(&self) -> Circuit {
        let mut out = Circuit::new(self.n_qubits);
        out.global_phase = self.global_phase;
        let mut pending: Vec<Option<(Unitary2, Option<Phase>)>> = vec![None; self.n_qubits + 1];

        fn flush(out: &mut Circuit, q: usize, slot: &mut Option<(Unitary2, Option<Phase>)>) {
            if let Some((m, label)) = slot.take() {
                match phase_of_identity(&m) {
                    Some(phi) => out.add_global_phase(phi),
                    None => {
                        out.gates.push(Gate::Single { target: q, matrix: m });
                        out.labels.push(label);
                    }
                }
            }
        }

        for (g, l) in self.gates.iter().zip(&self.labels) {
            match *g {
                Gate::Single { target, matrix } => {
                    let slot = &mut pending[target];
                    *slot = Some(match slot.take() {
                        Some((m, _)) => (matrix * m, *l),
                        None => (matrix, *l),
                    });
                }
                Gate::Cnot { control, target } => {
                    for q in [control, target] {
                        let mut slot = pending[q].take();
                        flush(&mut out, q, &mut slot);
                    }
                    out.gates.push(*g);
                    out.labels.push(*l);
                }
            }
        }
        for (q, slot) in pending.iter_mut().enumerate().skip(1) {
            flush(&mut out, q, slot);
        }
        out
    }

    /// The full `2^n × 2^n` operator, including the global phase.
    pub fn unitary(&self) -> ComplexMatrix {
        let dim = 1usize << self.n_qubits;
        let mut u = ComplexMatrix::zeros(dim, dim);
        let mut amps = vec![ZERO; dim];
        for col in 0..dim {
            amps.iter_mut().for_each(|a| *a = ZERO);
            amps[col] = ONE;
            crate::simulator::apply_circuit(self, &mut amps);
            for (row, a) in amps.iter().enumerate() {
                u[(row, col)] = *a;
            }
        }
        u
    }
}

/// Returns `φ` when `m = e^{iφ}·I` to within rounding.
fn phase_of_identity(m: &Unitary2) -> Option<f64> {
    const TOL: f64 = 1e-14;
    if m[(0, 1)].norm() < TOL && m[(1, 0)].norm() < TOL && (m[(0, 0)] - m[(1, 1)]).norm() < TOL {
        Some(m[(0, 0)].arg())
    } else {
        None
    }
}

/// Maps an angle into `(-π, π]`.
pub(crate) fn wrap_angle(phi: f64) -> f64 {
    use std::f64::consts::PI;
    let mut a = phi.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    a
}
