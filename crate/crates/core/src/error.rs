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

use thiserror::Error;

/// Errors produced by the numerics, synthesis and preparation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("matrix dimension {0} is not even")]
    OddDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("bad length: expected {expected}, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("dimension {0} is not a power of two of the supported size")]
    BadDimension(usize),
    #[error("at least two qubits are required, got {0}")]
    TooFewQubits(usize),
    #[error("qubit index {index} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("CNOT control and target coincide on qubit {0}")]
    SameControlTarget(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad range: {0}")]
    BadRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
