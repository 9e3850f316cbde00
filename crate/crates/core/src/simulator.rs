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

//! Statevector simulation and fidelity.
//!
//! Amplitude `i` belongs to the basis state whose binary expansion is `i`, with qubit 1 as the
//! most significant bit.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, Unitary2};
use crate::error::{Error, Result};
use crate::numerics::{C64, ONE, ZERO};

/// Norm deviation tolerated when a state is read from user input.
pub const NORM_INPUT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Validates length `2^n` and unit norm (within [`NORM_INPUT_TOL`]).
    pub fn new(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        let s = Self::with_length_check(n_qubits, amplitudes)?;
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_INPUT_TOL || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(s)
    }

    /// Validates the length and rescales to unit norm.
    pub fn normalized(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        let mut s = Self::with_length_check(n_qubits, amplitudes)?;
        let norm = s.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        s.amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(s)
    }

    fn with_length_check(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits >= usize::BITS as usize {
            return Err(Error::BadDimension(amplitudes.len()));
        }
        let expected = 1usize << n_qubits;
        if amplitudes.len() != expected {
            return Err(Error::BadLength { expected, found: amplitudes.len() });
        }
        Ok(StateVector { n_qubits, amplitudes })
    }

    pub(crate) fn from_amplitudes_unchecked(n_qubits: usize, amplitudes: Vec<C64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n_qubits);
        StateVector { n_qubits, amplitudes }
    }

    /// `|0…0⟩`
    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << n_qubits];
        amplitudes[index] = ONE;
        StateVector { n_qubits, amplitudes }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.n_qubits, found: other.n_qubits });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// Parses the JSON interchange format `{"n": int, "amplitudes": [[re, im], ...]}`.
    pub fn from_json(text: &str, normalize: bool) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let amps = file.amplitudes.into_iter().map(|[re, im]| C64::new(re, im)).collect();
        if normalize {
            Self::normalized(file.n, amps)
        } else {
            Self::new(file.n, amps)
        }
    }

    pub fn to_json(&self) -> String {
        let file = StateFile { n: self.n_qubits, amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect() };
        serde_json::to_string_pretty(&file).expect("state serialization cannot fail")
    }

    pub fn read_json(path: &Path, normalize: bool) -> std::result::Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(LoadError::Io)?;
        Self::from_json(&text, normalize).map_err(LoadError::State)
    }
}

/// Failure while loading a state file: either the file could not be read or its contents were
/// rejected.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Io(std::io::Error),
    #[error(transparent)]
    State(Error),
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    n: usize,
    amplitudes: Vec<[f64; 2]>,
}

#[inline]
fn stride(n_qubits: usize, qubit: usize) -> usize {
    1usize << (n_qubits - qubit)
}

pub(crate) fn apply_single(amps: &mut [C64], n_qubits: usize, target: usize, m: &Unitary2) {
    let s = stride(n_qubits, target);
    let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    for block in (0..amps.len()).step_by(2 * s) {
        for i in block..block + s {
            let (a0, a1) = (amps[i], amps[i + s]);
            amps[i] = m00 * a0 + m01 * a1;
            amps[i + s] = m10 * a0 + m11 * a1;
        }
    }
}

pub(crate) fn apply_cnot(amps: &mut [C64], n_qubits: usize, control: usize, target: usize) {
    let cs = stride(n_qubits, control);
    let ts = stride(n_qubits, target);
    for i in 0..amps.len() {
        if i & cs != 0 && i & ts == 0 {
            amps.swap(i, i | ts);
        }
    }
}

pub(crate) fn apply_circuit(c: &Circuit, amps: &mut [C64]) {
    let n = c.n_qubits();
    for g in c.gates() {
        match g {
            Gate::Single { target, matrix } => apply_single(amps, n, *target, matrix),
            Gate::Cnot { control, target } => apply_cnot(amps, n, *control, *target),
        }
    }
    let phase = C64::from_polar(1.0, c.global_phase());
    if phase != ONE {
        amps.iter_mut().for_each(|a| *a *= phase);
    }
}

/// Applies `c` to `input`.
pub fn run(c: &Circuit, input: &StateVector) -> Result<StateVector> {
    if c.n_qubits() != input.n_qubits {
        return Err(Error::DimensionMismatch { expected: c.n_qubits(), found: input.n_qubits });
    }
    let mut amps = input.amplitudes.clone();
    apply_circuit(c, &mut amps);
    Ok(StateVector { n_qubits: input.n_qubits, amplitudes: amps })
}

/// `|⟨a|b⟩|²`, clamped to `[0, 1]`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{cis, testing::rng};
    use crate::random::haar_state;
    use crate::synth::gates;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn empty_circuit_is_identity() {
        let s = StateVector::zero(4);
        let out = run(&Circuit::new(4), &s).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn bell_construction() {
        let mut c = Circuit::new(2);
        c.single(1, gates::ry(std::f64::consts::FRAC_PI_2));
        c.cnot(1, 2);
        let out = run(&c, &StateVector::zero(2)).unwrap();
        let a = out.amplitudes();
        assert!((a[0].re - FRAC_1_SQRT_2).abs() < 1e-15 && (a[3].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(a[1].norm() < 1e-15 && a[2].norm() < 1e-15);
    }

    #[test]
    fn fan_copies_basis_states() {
        let mut r = rng(2);
        let alpha = haar_state(2, &mut r);
        let mut amps = vec![ZERO; 16];
        for i in 0..4 {
            amps[i << 2] = alpha.amplitudes()[i];
        }
        let input = StateVector::new(4, amps).unwrap();
        let mut fan = Circuit::new(4);
        fan.cnot(1, 3);
        fan.cnot(2, 4);
        let out = run(&fan, &input).unwrap();
        for i in 0..4 {
            assert!((out.amplitudes()[(i << 2) | i] - alpha.amplitudes()[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn cnot_matches_matrix_on_basis_states() {
        // control 1 (MSB), target 2: |10> <-> |11>
        let expected = [0usize, 1, 3, 2];
        for (i, e) in expected.iter().enumerate() {
            let mut c = Circuit::new(2);
            c.cnot(1, 2);
            let out = run(&c, &StateVector::basis(2, i)).unwrap();
            assert_eq!(out, StateVector::basis(2, *e));
        }
        let expected_rev = [0usize, 3, 2, 1];
        for (i, e) in expected_rev.iter().enumerate() {
            let mut c = Circuit::new(2);
            c.cnot(2, 1);
            let out = run(&c, &StateVector::basis(2, i)).unwrap();
            assert_eq!(out, StateVector::basis(2, *e));
        }
    }

    #[test]
    fn single_qubit_gate_matches_matrix() {
        let m = gates::rz(0.3) * gates::ry(1.2) * gates::rz(-0.4);
        for q in 1..=2 {
            let mut c = Circuit::new(2);
            c.single(q, m);
            let u = c.unitary();
            let id = Unitary2::identity();
            let full = if q == 1 { m.kronecker(&id) } else { id.kronecker(&m) };
            for i in 0..4 {
                for j in 0..4 {
                    assert!((u[(i, j)] - full[(i, j)]).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn fidelity_examples() {
        let mut r = rng(9);
        let psi = haar_state(3, &mut r);
        assert!((fidelity(&psi, &psi).unwrap() - 1.0).abs() < 1e-14);
        let rotated = StateVector::new(3, psi.amplitudes().iter().map(|a| a * cis(0.77)).collect()).unwrap();
        assert!((fidelity(&psi, &rotated).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(fidelity(&StateVector::basis(1, 0), &StateVector::basis(1, 1)).unwrap(), 0.0);
        assert!(matches!(fidelity(&psi, &StateVector::zero(2)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn run_checks_width() {
        assert!(matches!(run(&Circuit::new(3), &StateVector::zero(2)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let mut r = rng(4);
        let s = haar_state(3, &mut r);
        let back = StateVector::from_json(&s.to_json(), false).unwrap();
        assert!((fidelity(&s, &back).unwrap() - 1.0).abs() < 1e-15);

        let unnormalized = r#"{"n": 1, "amplitudes": [[1, 0], [1, 0]]}"#;
        assert!(matches!(StateVector::from_json(unnormalized, false), Err(Error::NotNormalized { .. })));
        let s = StateVector::from_json(unnormalized, true).unwrap();
        assert!((s.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);

        let short = r#"{"n": 2, "amplitudes": [[1, 0]]}"#;
        assert!(matches!(StateVector::from_json(short, false), Err(Error::BadLength { .. })));
        assert!(matches!(StateVector::from_json("{", false), Err(Error::Parse(_))));
    }

    fn random_circuit(n: usize, len: usize, seed: u64) -> Circuit {
        use rand::Rng;
        let mut r = rng(seed);
        let mut c = Circuit::new(n);
        for _ in 0..len {
            if r.random_bool(0.5) {
                let t = r.random_range(1..=n);
                c.single(t, gates::rz(r.random_range(-3.0..3.0)) * gates::ry(r.random_range(-3.0..3.0)));
            } else {
                let a = r.random_range(1..=n);
                let b = (a + r.random_range(0..n - 1)) % n + 1;
                c.cnot(a, b);
            }
        }
        c
    }

    #[test]
    fn norm_is_preserved_on_random_circuits() {
        let mut r = rng(12);
        for seed in 0..1000 {
            let n = 2 + (seed as usize % 4);
            let c = random_circuit(n, 30, seed);
            let out = run(&c, &haar_state(n, &mut r)).unwrap();
            assert!((out.norm() - 1.0).abs() < 1e-9);
        }
    }

    proptest! {
        #[test]
        fn composition_matches_sequential_runs(s1 in 0u64..10_000, s2 in 0u64..10_000) {
            let (c1, c2) = (random_circuit(4, 25, s1), random_circuit(4, 25, s2));
            let mut both = c1.clone();
            both.append(&c2);
            let mut r = rng(s1 ^ s2);
            let input = haar_state(4, &mut r);
            let a = run(&both, &input).unwrap();
            let b = run(&c2, &run(&c1, &input).unwrap()).unwrap();
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                prop_assert!((x - y).norm() < 1e-10);
            }
        }
    }
}
