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

//! C ABI over the schmidt-prep compiler.
//!
//! States and circuits are opaque heap handles released with their `*_free` function. Every
//! fallible call returns an [`SpStatus`]; on failure a message is available from
//! [`sp_last_error`] on the same thread until the next failing call. Panics never cross the
//! boundary and are reported as `SP_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schmidt_prep::bounds::{BoundSet, MAX_QUBITS};
use schmidt_prep::qasm::{emit_qasm, parse_qasm};
use schmidt_prep::random::haar_state;
use schmidt_prep::{
    baseline_prepare, fidelity, run, schmidt_prepare_with, transform_with, Circuit, Error, Phase1Choice, PrepOptions,
    StateVector, C64,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullPointer = 1,
    NotNormalized = 2,
    BadLength = 3,
    DimensionMismatch = 4,
    TooFewQubits = 5,
    Parse = 6,
    InvalidArgument = 7,
    Internal = 8,
}

/// Phase-1 method selection, see `PrepOptions`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpPhase1 {
    Auto = 0,
    Baseline = 1,
    Recursive = 2,
}

/// Bounds for an `n`-qubit state. `published_cnot_upper` is 0 when no value is known.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpBounds {
    pub n: usize,
    pub cnot_lower: u64,
    pub cnot_upper_scheme: u64,
    pub depth_lower: u64,
    pub depth_upper_scheme: u64,
    pub published_cnot_upper: u64,
}

/// Opaque state handle.
pub struct SpState(StateVector);

/// Opaque circuit handle.
pub struct SpCircuit(Circuit);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SpStatus {
    match e {
        Error::NotNormalized { .. } => SpStatus::NotNormalized,
        Error::BadLength { .. } | Error::BadDimension(_) => SpStatus::BadLength,
        Error::DimensionMismatch { .. } => SpStatus::DimensionMismatch,
        Error::TooFewQubits(_) => SpStatus::TooFewQubits,
        Error::Parse(_) => SpStatus::Parse,
        _ => SpStatus::InvalidArgument,
    }
}

fn fail(status: SpStatus, msg: impl Into<String>) -> SpStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), SpStatus>) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(SpStatus::Internal, "internal panic"),
    }
}

fn lib_err(e: Error) -> SpStatus {
    fail(status_of(&e), e.to_string())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, SpStatus> {
    p.as_ref().ok_or_else(|| fail(SpStatus::NullPointer, format!("{what} is null")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), SpStatus> {
    if out.is_null() {
        return Err(fail(SpStatus::NullPointer, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn options(phase1: SpPhase1, rank_aware: bool) -> PrepOptions {
    let phase1 = match phase1 {
        SpPhase1::Auto => Phase1Choice::Auto,
        SpPhase1::Baseline => Phase1Choice::Baseline,
        SpPhase1::Recursive => Phase1Choice::Recursive,
    };
    PrepOptions { phase1, rank_aware }
}

/// Message of the most recent failure on this thread, or null. Valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn sp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Creates a state from `2^n_qubits` amplitudes stored as interleaved `(re, im)` pairs, so
/// `amplitudes` holds `2 * len` doubles. With `normalize` set the vector is rescaled to unit norm.
///
/// # Safety
/// `amplitudes` must point to `2 * len` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_state_new(
    n_qubits: usize,
    amplitudes: *const f64,
    len: usize,
    normalize: bool,
    out: *mut *mut SpState,
) -> SpStatus {
    guard(|| {
        if amplitudes.is_null() {
            return Err(fail(SpStatus::NullPointer, "amplitudes is null"));
        }
        let raw = std::slice::from_raw_parts(amplitudes, 2 * len);
        let amps: Vec<C64> = raw.chunks_exact(2).map(|p| C64::new(p[0], p[1])).collect();
        let s = if normalize { StateVector::normalized(n_qubits, amps) } else { StateVector::new(n_qubits, amps) };
        store(out, SpState(s.map_err(lib_err)?))
    })
}

/// Haar-random state on `n_qubits` (1 to 20) qubits, deterministic in `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_state_random(n_qubits: usize, seed: u64, out: *mut *mut SpState) -> SpStatus {
    guard(|| {
        if !(1..=20).contains(&n_qubits) {
            return Err(fail(SpStatus::InvalidArgument, format!("qubit count {n_qubits} outside 1..=20")));
        }
        store(out, SpState(haar_state(n_qubits, &mut ChaCha8Rng::seed_from_u64(seed))))
    })
}

/// Number of qubits, or 0 for a null handle.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_state_n_qubits(state: *const SpState) -> usize {
    state.as_ref().map_or(0, |s| s.0.n_qubits())
}

/// Copies the amplitudes as interleaved `(re, im)` pairs into `buffer`, which holds `2 * len`
/// doubles; `len` must equal `2^n_qubits`.
///
/// # Safety
/// `state` must be a live handle and `buffer` must point to `2 * len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sp_state_amplitudes(state: *const SpState, buffer: *mut f64, len: usize) -> SpStatus {
    guard(|| {
        let s = deref(state, "state")?;
        if buffer.is_null() {
            return Err(fail(SpStatus::NullPointer, "buffer is null"));
        }
        let amps = s.0.amplitudes();
        if len != amps.len() {
            return Err(fail(SpStatus::BadLength, format!("buffer holds {len} amplitudes, state has {}", amps.len())));
        }
        let out = std::slice::from_raw_parts_mut(buffer, 2 * len);
        for (pair, a) in out.chunks_exact_mut(2).zip(amps) {
            pair[0] = a.re;
            pair[1] = a.im;
        }
        Ok(())
    })
}

/// # Safety
/// `state` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn sp_state_free(state: *mut SpState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Four-phase preparation circuit taking `|0…0⟩` to `state` (at least two qubits).
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_prepare(
    state: *const SpState,
    phase1: SpPhase1,
    rank_aware: bool,
    out: *mut *mut SpCircuit,
) -> SpStatus {
    guard(|| {
        let s = deref(state, "state")?;
        let plan = schmidt_prepare_with(&s.0, &options(phase1, rank_aware)).map_err(lib_err)?;
        store(out, SpCircuit(plan.total))
    })
}

/// Direct preparation with at most `2^n - n - 1` CNOTs.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_baseline_prepare(state: *const SpState, out: *mut *mut SpCircuit) -> SpStatus {
    guard(|| {
        let s = deref(state, "state")?;
        store(out, SpCircuit(baseline_prepare(&s.0).map_err(lib_err)?))
    })
}

/// Circuit taking `from` to `to`.
///
/// # Safety
/// Both states must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_transform(
    from: *const SpState,
    to: *const SpState,
    phase1: SpPhase1,
    rank_aware: bool,
    out: *mut *mut SpCircuit,
) -> SpStatus {
    guard(|| {
        let (a, b) = (deref(from, "from")?, deref(to, "to")?);
        let c = transform_with(&a.0, &b.0, &options(phase1, rank_aware)).map_err(lib_err)?;
        store(out, SpCircuit(c))
    })
}

/// # Safety
/// `circuit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_circuit_n_qubits(circuit: *const SpCircuit) -> usize {
    circuit.as_ref().map_or(0, |c| c.0.n_qubits())
}

/// Number of gates, one-qubit gates included.
///
/// # Safety
/// `circuit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_circuit_len(circuit: *const SpCircuit) -> usize {
    circuit.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
/// `circuit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_circuit_cnot_count(circuit: *const SpCircuit) -> usize {
    circuit.as_ref().map_or(0, |c| c.0.cnot_count())
}

/// Number of CNOT layers.
///
/// # Safety
/// `circuit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_circuit_depth(circuit: *const SpCircuit) -> usize {
    circuit.as_ref().map_or(0, |c| c.0.depth())
}

/// OpenQASM 2.0 text of the circuit, released with [`sp_string_free`]. Null on failure.
///
/// # Safety
/// `circuit` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_circuit_to_qasm(circuit: *const SpCircuit) -> *mut c_char {
    let mut text = ptr::null_mut();
    guard(|| {
        let c = deref(circuit, "circuit")?;
        text = CString::new(emit_qasm(&c.0)).expect("QASM has no nul").into_raw();
        Ok(())
    });
    text
}

/// Parses the `u3` / `cx` subset of OpenQASM 2.0.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_circuit_from_qasm(text: *const c_char, out: *mut *mut SpCircuit) -> SpStatus {
    guard(|| {
        if text.is_null() {
            return Err(fail(SpStatus::NullPointer, "text is null"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| fail(SpStatus::Parse, "text is not UTF-8"))?;
        store(out, SpCircuit(parse_qasm(s).map_err(lib_err)?))
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Simulates `circuit` on `input`; pass a null `input` to start from `|0…0⟩`.
///
/// # Safety
/// `circuit` must be a live handle, `input` null or live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_circuit_run(
    circuit: *const SpCircuit,
    input: *const SpState,
    out: *mut *mut SpState,
) -> SpStatus {
    guard(|| {
        let c = deref(circuit, "circuit")?;
        let zero;
        let start = match input.as_ref() {
            Some(s) => &s.0,
            None => {
                zero = StateVector::zero(c.0.n_qubits());
                &zero
            }
        };
        store(out, SpState(run(&c.0, start).map_err(lib_err)?))
    })
}

/// `|⟨a|b⟩|²`
///
/// # Safety
/// Both states must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_fidelity(a: *const SpState, b: *const SpState, out: *mut f64) -> SpStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        if out.is_null() {
            return Err(fail(SpStatus::NullPointer, "output pointer is null"));
        }
        *out = fidelity(&a.0, &b.0).map_err(lib_err)?;
        Ok(())
    })
}

/// # Safety
/// `circuit` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn sp_circuit_free(circuit: *mut SpCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// Lower and scheme upper bounds for `2 <= n <= 40` qubits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_bounds(n: usize, out: *mut SpBounds) -> SpStatus {
    guard(|| {
        if !(2..=MAX_QUBITS).contains(&n) {
            return Err(fail(SpStatus::InvalidArgument, format!("qubit count {n} outside 2..={MAX_QUBITS}")));
        }
        if out.is_null() {
            return Err(fail(SpStatus::NullPointer, "output pointer is null"));
        }
        let b = BoundSet::new(n);
        *out = SpBounds {
            n,
            cnot_lower: b.cnot_lower,
            cnot_upper_scheme: b.cnot_upper_scheme,
            depth_lower: b.depth_lower,
            depth_upper_scheme: b.depth_upper_scheme,
            published_cnot_upper: b.published_cnot_upper.unwrap_or(0),
        };
        Ok(())
    })
}
