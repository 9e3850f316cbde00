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

//! One-qubit synthesis: every 2×2 unitary is a single gate, with its ZYZ Euler angles extracted
//! only when text output needs them.

use crate::circuit::{Circuit, Unitary2};
use crate::error::{Error, Result};
use crate::numerics::{check_unitary, ComplexMatrix};

/// `U = e^{i·phase} · u3(theta, phi, lambda)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
    pub phase: f64,
}

pub fn zyz_angles(u: &Unitary2) -> EulerAngles {
    let (u00, u01, u10, u11) = (u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);
    let theta = 2.0 * u10.norm().atan2(u00.norm());
    let (phase, phi, lambda);
    if u00.norm() >= u10.norm() {
        phase = u00.arg();
        let sum = u11.arg() - phase;
        if u10.norm() > 0.0 {
            phi = u10.arg() - phase;
            lambda = sum - phi;
        } else {
            phi = 0.0;
            lambda = sum;
        }
    } else if u00.norm() > 0.0 {
        phase = u00.arg();
        phi = u10.arg() - phase;
        lambda = (-u01).arg() - phase;
    } else {
        lambda = 0.0;
        phase = (-u01).arg();
        phi = u10.arg() - phase;
    }
    EulerAngles { theta, phi, lambda, phase }
}

pub(crate) fn to_unitary2(u: &ComplexMatrix) -> Result<Unitary2> {
    if u.shape() != (2, 2) {
        return Err(Error::BadDimension(u.nrows()));
    }
    check_unitary(u)?;
    Ok(Unitary2::new(u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]))
}

/// A one-qubit circuit implementing `u` exactly (global phase included). Identity up to phase
/// yields an empty circuit.
pub fn synth_1q(u: &ComplexMatrix) -> Result<Circuit> {
    let m = to_unitary2(u)?;
    let mut c = Circuit::new(1);
    c.single(1, m);
    Ok(c.merge_single_qubit_gates())
}
