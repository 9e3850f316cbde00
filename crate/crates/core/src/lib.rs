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

//! Quantum state preparation by Schmidt decomposition.

pub mod bounds;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod qasm;
pub mod random;
pub mod simulator;
pub mod state_prep;
pub mod synth;

pub use bounds::BoundSet;
pub use circuit::{Circuit, CostReport, Gate, Phase};
pub use error::{Error, Result};
pub use numerics::{ComplexMatrix, C64};
pub use simulator::{fidelity, run, StateVector};
pub use state_prep::{
    baseline_prepare, schmidt_decompose, schmidt_prepare, schmidt_prepare_with, transform, transform_with,
    Phase1Choice, PrepOptions, PrepPlan, SchmidtForm,
};
