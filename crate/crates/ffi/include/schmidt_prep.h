#ifndef SCHMIDT_PREP_H
#define SCHMIDT_PREP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_POINTER = 1,
  SP_STATUS_NOT_NORMALIZED = 2,
  SP_STATUS_BAD_LENGTH = 3,
  SP_STATUS_DIMENSION_MISMATCH = 4,
  SP_STATUS_TOO_FEW_QUBITS = 5,
  SP_STATUS_PARSE = 6,
  SP_STATUS_INVALID_ARGUMENT = 7,
  SP_STATUS_INTERNAL = 8,
} SpStatus;

/**
 * Phase-1 method selection, see `PrepOptions`.
 */
typedef enum SpPhase1 {
  SP_PHASE1_AUTO = 0,
  SP_PHASE1_BASELINE = 1,
  SP_PHASE1_RECURSIVE = 2,
} SpPhase1;

/**
 * Opaque circuit handle.
 */
typedef struct SpCircuit SpCircuit;

/**
 * Opaque state handle.
 */
typedef struct SpState SpState;

/**
 * Bounds for an `n`-qubit state. `published_cnot_upper` is 0 when no value is known.
 */
typedef struct SpBounds {
  size_t n;
  uint64_t cnot_lower;
  uint64_t cnot_upper_scheme;
  uint64_t depth_lower;
  uint64_t depth_upper_scheme;
  uint64_t published_cnot_upper;
} SpBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or null. Valid until the next failing
 * call on the same thread.
 */
const char *sp_last_error(void);

/**
 * Creates a state from `2^n_qubits` amplitudes stored as interleaved `(re, im)` pairs, so
 * `amplitudes` holds `2 * len` doubles. With `normalize` set the vector is rescaled to unit norm.
 *
 * # Safety
 * `amplitudes` must point to `2 * len` readable doubles and `out` must be writable.
 */
enum SpStatus sp_state_new(size_t n_qubits,
                           const double *amplitudes,
                           size_t len,
                           bool normalize,
                           struct SpState **out);

/**
 * Haar-random state on `n_qubits` (1 to 20) qubits, deterministic in `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_state_random(size_t n_qubits, uint64_t seed, struct SpState **out);

/**
 * Number of qubits, or 0 for a null handle.
 *
 * # Safety
 * `state` must be null or a live handle.
 */
size_t sp_state_n_qubits(const struct SpState *state);

/**
 * Copies the amplitudes as interleaved `(re, im)` pairs into `buffer`, which holds `2 * len`
 * doubles; `len` must equal `2^n_qubits`.
 *
 * # Safety
 * `state` must be a live handle and `buffer` must point to `2 * len` writable doubles.
 */
enum SpStatus sp_state_amplitudes(const struct SpState *state, double *buffer, size_t len);

/**
 * # Safety
 * `state` must be null or a handle not freed before.
 */
void sp_state_free(struct SpState *state);

/**
 * Four-phase preparation circuit taking `|0…0⟩` to `state` (at least two qubits).
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum SpStatus sp_prepare(const struct SpState *state,
                         enum SpPhase1 phase1,
                         bool rank_aware,
                         struct SpCircuit **out);

/**
 * Direct preparation with at most `2^n - n - 1` CNOTs.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum SpStatus sp_baseline_prepare(const struct SpState *state, struct SpCircuit **out);

/**
 * Circuit taking `from` to `to`.
 *
 * # Safety
 * Both states must be live handles and `out` writable.
 */
enum SpStatus sp_transform(const struct SpState *from,
                           const struct SpState *to,
                           enum SpPhase1 phase1,
                           bool rank_aware,
                           struct SpCircuit **out);

/**
 * # Safety
 * `circuit` must be null or a live handle.
 */
size_t sp_circuit_n_qubits(const struct SpCircuit *circuit);

/**
 * Number of gates, one-qubit gates included.
 *
 * # Safety
 * `circuit` must be null or a live handle.
 */
size_t sp_circuit_len(const struct SpCircuit *circuit);

/**
 * # Safety
 * `circuit` must be null or a live handle.
 */
size_t sp_circuit_cnot_count(const struct SpCircuit *circuit);

/**
 * Number of CNOT layers.
 *
 * # Safety
 * `circuit` must be null or a live handle.
 */
size_t sp_circuit_depth(const struct SpCircuit *circuit);

/**
 * OpenQASM 2.0 text of the circuit, released with [`sp_string_free`]. Null on failure.
 *
 * # Safety
 * `circuit` must be a live handle.
 */
char *sp_circuit_to_qasm(const struct SpCircuit *circuit);

/**
 * Parses the `u3` / `cx` subset of OpenQASM 2.0.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum SpStatus sp_circuit_from_qasm(const char *text, struct SpCircuit **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not freed before.
 */
void sp_string_free(char *s);

/**
 * Simulates `circuit` on `input`; pass a null `input` to start from `|0…0⟩`.
 *
 * # Safety
 * `circuit` must be a live handle, `input` null or live, `out` writable.
 */
enum SpStatus sp_circuit_run(const struct SpCircuit *circuit,
                             const struct SpState *input,
                             struct SpState **out);

/**
 * `|⟨a|b⟩|²`
 *
 * # Safety
 * Both states must be live handles and `out` writable.
 */
enum SpStatus sp_fidelity(const struct SpState *a, const struct SpState *b, double *out);

/**
 * # Safety
 * `circuit` must be null or a handle not freed before.
 */
void sp_circuit_free(struct SpCircuit *circuit);

/**
 * Lower and scheme upper bounds for `2 <= n <= 40` qubits.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_bounds(size_t n, struct SpBounds *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHMIDT_PREP_H */
