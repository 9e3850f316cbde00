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

//! Fixed one-qubit matrices and rotations.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::circuit::Unitary2;
use crate::numerics::{cis, C64, I, ONE, ZERO};

pub fn identity() -> Unitary2 {
    Unitary2::identity()
}

pub fn hadamard() -> Unitary2 {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    Unitary2::new(h, h, h, -h)
}

pub fn pauli_x() -> Unitary2 {
    Unitary2::new(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> Unitary2 {
    Unitary2::new(ZERO, -I, I, ZERO)
}

pub fn pauli_z() -> Unitary2 {
    Unitary2::new(ONE, ZERO, ZERO, -ONE)
}

pub fn s() -> Unitary2 {
    Unitary2::new(ONE, ZERO, ZERO, I)
}

pub fn sdg() -> Unitary2 {
    Unitary2::new(ONE, ZERO, ZERO, -I)
}

/// `exp(-iθX/2)`
pub fn rx(theta: f64) -> Unitary2 {
    let (s, c) = (theta / 2.0).sin_cos();
    Unitary2::new(C64::new(c, 0.0), C64::new(0.0, -s), C64::new(0.0, -s), C64::new(c, 0.0))
}

/// `exp(-iθY/2)`
pub fn ry(theta: f64) -> Unitary2 {
    let (s, c) = (theta / 2.0).sin_cos();
    Unitary2::new(C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0))
}

/// `exp(-iθZ/2)`
pub fn rz(theta: f64) -> Unitary2 {
    Unitary2::new(cis(-theta / 2.0), ZERO, ZERO, cis(theta / 2.0))
}

/// OpenQASM `u3(θ, φ, λ) = Rz(φ)·Ry(θ)·Rz(λ)·e^{i(φ+λ)/2}`.
pub fn u3(theta: f64, phi: f64, lambda: f64) -> Unitary2 {
    let (s, c) = (theta / 2.0).sin_cos();
    Unitary2::new(C64::new(c, 0.0), -cis(lambda) * s, cis(phi) * s, cis(phi + lambda) * c)
}
