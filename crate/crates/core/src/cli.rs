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

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 fidelity check failed, 2 input file not found, 3 malformed input,
//! 4 state not normalized, 5 any other error (including usage errors).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::BoundSet;
use crate::circuit::{Circuit, CostReport};
use crate::error::Error;
use crate::qasm::{emit_qasm, parse_qasm};
use crate::random::haar_state;
use crate::simulator::{fidelity, run, LoadError, StateVector};
use crate::state_prep::{schmidt_prepare_with, transform_with, Phase1Choice, PrepOptions};

/// Fidelity a synthesized circuit must reach to pass the self-check.
pub const FIDELITY_TOL: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FIDELITY: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_NOT_NORMALIZED: i32 = 4;
pub const EXIT_OTHER: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "schmidt-prep", version, about = "Synthesize CNOT circuits that prepare quantum states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize a circuit preparing a state from |0…0⟩.
    Prepare(PrepareArgs),
    /// Simulate a QASM circuit on |0…0⟩ and compare with a target state.
    Verify(VerifyArgs),
    /// Synthesize a circuit taking one state to another.
    Transform(TransformArgs),
    /// Prepare random states and tabulate CNOT counts, depths and fidelities.
    Bench(BenchArgs),
    /// Print lower and scheme upper bounds as JSON.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CircuitFormat {
    Qasm,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Phase1Arg {
    Auto,
    Baseline,
    Recursive,
}

impl From<Phase1Arg> for Phase1Choice {
    fn from(a: Phase1Arg) -> Self {
        match a {
            Phase1Arg::Auto => Phase1Choice::Auto,
            Phase1Arg::Baseline => Phase1Choice::Baseline,
            Phase1Arg::Recursive => Phase1Choice::Recursive,
        }
    }
}

#[derive(Args, Debug)]
struct SynthOpts {
    /// Rescale input states to unit norm instead of rejecting them.
    #[arg(long)]
    normalize: bool,
    /// Only prepare and copy as many coefficient qubits as the Schmidt rank needs.
    #[arg(long)]
    rank_aware: bool,
    #[arg(long, value_enum, default_value = "auto")]
    phase1: Phase1Arg,
    #[arg(long, value_enum, default_value = "qasm")]
    format: CircuitFormat,
    /// Circuit output path (stdout if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write the cost report as JSON to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

impl SynthOpts {
    fn prep_options(&self) -> PrepOptions {
        PrepOptions { phase1: self.phase1.into(), rank_aware: self.rank_aware }
    }
}

#[derive(Args, Debug)]
struct PrepareArgs {
    /// State JSON file: {"n": int, "amplitudes": [[re, im], ...]}.
    #[arg(required_unless_present = "random")]
    state: Option<PathBuf>,
    /// Prepare a Haar-random state on this many qubits instead of reading a file.
    #[arg(long, conflicts_with = "state", value_name = "N")]
    random: Option<usize>,
    /// Seed for --random.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    opts: SynthOpts,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    qasm: PathBuf,
    state: PathBuf,
    #[arg(long)]
    normalize: bool,
}

#[derive(Args, Debug)]
struct TransformArgs {
    from: PathBuf,
    to: PathBuf,
    #[command(flatten)]
    opts: SynthOpts,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    rank_aware: bool,
    #[arg(long, value_enum, default_value = "auto")]
    phase1: Phase1Arg,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Qubit count (at least 2).
    n: usize,
    /// Report every qubit count from N up to this one, one JSON object per line.
    #[arg(long)]
    to: Option<usize>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotNormalized { .. } => EXIT_NOT_NORMALIZED,
            Error::Parse(_) | Error::BadLength { .. } | Error::BadDimension(_) => EXIT_PARSE,
            _ => EXIT_OTHER,
        };
        Failure::new(code, e.to_string())
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    let code = if e.kind() == std::io::ErrorKind::NotFound { EXIT_NOT_FOUND } else { EXIT_OTHER };
    Failure::new(code, format!("{}: {e}", path.display()))
}

fn load_state(path: &Path, normalize: bool) -> Result<StateVector, Failure> {
    StateVector::read_json(path, normalize).map_err(|e| match e {
        LoadError::Io(e) => io_failure(path, e),
        LoadError::State(e) => {
            let mut f = Failure::from(e);
            f.message = format!("{}: {}", path.display(), f.message);
            f
        }
    })
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::new(EXIT_OTHER, e.to_string())),
    }
}

#[derive(Serialize)]
struct Report {
    n: usize,
    #[serde(flatten)]
    cost: CostReport,
    fidelity: f64,
    bounds: Option<BoundSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Serialize)]
struct JsonCircuit<'a> {
    qasm: String,
    report: &'a Report,
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_OTHER } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Prepare(a) => prepare(a, stdout, stderr),
        Command::Verify(a) => verify(a, stdout),
        Command::Transform(a) => transform(a, stdout, stderr),
        Command::Bench(a) => bench(a, stdout),
        Command::Bounds(a) => bounds(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(
    circuit: &Circuit,
    input: &StateVector,
    target: &StateVector,
    seed: Option<u64>,
    opts: &SynthOpts,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let n = circuit.n_qubits();
    let f = fidelity(&run(circuit, input)?, target)?;
    let report =
        Report { n, cost: circuit.cost_report(), fidelity: f, bounds: (n >= 2).then(|| BoundSet::new(n)), seed };
    let text = match opts.format {
        CircuitFormat::Qasm => emit_qasm(circuit),
        CircuitFormat::Json => {
            let doc = JsonCircuit { qasm: emit_qasm(circuit), report: &report };
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
    };
    write_output(opts.output.as_deref(), &text, stdout)?;
    if let Some(p) = &opts.report {
        let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        std::fs::write(p, json).map_err(|e| io_failure(p, e))?;
    }
    let _ = writeln!(stderr, "n={} cnots={} depth={} fidelity={:.12}", n, report.cost.cnot_count, report.cost.depth, f);
    if f < 1.0 - FIDELITY_TOL {
        let _ = writeln!(stderr, "error: fidelity self-check failed");
        return Ok(EXIT_FIDELITY);
    }
    Ok(EXIT_OK)
}

fn prepare(a: PrepareArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let (state, seed) = match (&a.state, a.random) {
        (Some(p), _) => (load_state(p, a.opts.normalize)?, None),
        (None, Some(n)) => {
            if !(2..=16).contains(&n) {
                return Err(Failure::new(EXIT_OTHER, format!("--random expects 2..=16 qubits, got {n}")));
            }
            (haar_state(n, &mut ChaCha8Rng::seed_from_u64(a.seed)), Some(a.seed))
        }
        (None, None) => unreachable!("clap requires a state or --random"),
    };
    let plan = schmidt_prepare_with(&state, &a.opts.prep_options())?;
    let zero = StateVector::zero(state.n_qubits());
    emit(&plan.total, &zero, &state, seed, &a.opts, stdout, stderr)
}

fn transform(a: TransformArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let psi = load_state(&a.from, a.opts.normalize)?;
    let phi = load_state(&a.to, a.opts.normalize)?;
    let c = transform_with(&psi, &phi, &a.opts.prep_options())?;
    emit(&c, &psi, &phi, None, &a.opts, stdout, stderr)
}

fn verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let text = std::fs::read_to_string(&a.qasm).map_err(|e| io_failure(&a.qasm, e))?;
    let circuit = parse_qasm(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", a.qasm.display())))?;
    let target = load_state(&a.state, a.normalize)?;
    if circuit.n_qubits() != target.n_qubits() {
        return Err(Failure::new(
            EXIT_OTHER,
            format!("circuit has {} qubits, state has {}", circuit.n_qubits(), target.n_qubits()),
        ));
    }
    let out = run(&circuit, &StateVector::zero(circuit.n_qubits()))?;
    let f = fidelity(&out, &target)?;
    let ok = f >= 1.0 - FIDELITY_TOL;
    let _ = writeln!(stdout, "fidelity {f:.12} {}", if ok { "ok" } else { "FAIL" });
    Ok(if ok { EXIT_OK } else { EXIT_FIDELITY })
}

#[derive(Serialize)]
struct BenchRow {
    n: usize,
    trial: usize,
    cnots: usize,
    depth: usize,
    fidelity: f64,
    lower: u64,
    upper: u64,
}

#[derive(Serialize)]
struct BenchSummary {
    n: usize,
    trials: usize,
    max_cnots: usize,
    mean_cnots: f64,
    max_depth: usize,
    min_fidelity: f64,
    lower: u64,
    upper: u64,
}

#[derive(Serialize)]
struct BenchDoc {
    seed: u64,
    rows: Vec<BenchRow>,
    summary: Vec<BenchSummary>,
}

/// Generator for one bench trial, independent of how many trials run before it.
fn trial_rng(seed: u64, n: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | trial as u64);
    rng
}

fn bench(a: BenchArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    if !(2 <= a.n_min && a.n_min <= a.n_max && a.n_max <= 10) {
        return Err(Error::BadRange(format!("need 2 <= n_min <= n_max <= 10, got {}..{}", a.n_min, a.n_max)).into());
    }
    let opts = PrepOptions { phase1: a.phase1.into(), rank_aware: a.rank_aware };
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut all_ok = true;
    for n in a.n_min..=a.n_max {
        let bounds = BoundSet::new(n);
        let first = rows.len();
        for trial in 0..a.trials {
            let state = haar_state(n, &mut trial_rng(a.seed, n, trial));
            let plan = schmidt_prepare_with(&state, &opts)?;
            let f = fidelity(&run(&plan.total, &StateVector::zero(n))?, &state)?;
            all_ok &= f >= 1.0 - FIDELITY_TOL;
            rows.push(BenchRow {
                n,
                trial,
                cnots: plan.report.cnot_count,
                depth: plan.report.depth,
                fidelity: f,
                lower: bounds.cnot_lower,
                upper: bounds.cnot_upper_scheme,
            });
        }
        let these = &rows[first..];
        if !these.is_empty() {
            summary.push(BenchSummary {
                n,
                trials: these.len(),
                max_cnots: these.iter().map(|r| r.cnots).max().unwrap_or(0),
                mean_cnots: these.iter().map(|r| r.cnots as f64).sum::<f64>() / these.len() as f64,
                max_depth: these.iter().map(|r| r.depth).max().unwrap_or(0),
                min_fidelity: these.iter().map(|r| r.fidelity).fold(f64::INFINITY, f64::min),
                lower: bounds.cnot_lower,
                upper: bounds.cnot_upper_scheme,
            });
        }
    }
    let text = match a.format {
        TableFormat::Csv => {
            let mut s = String::from("n,trial,cnots,depth,fidelity,lower,upper\n");
            for r in &rows {
                s += &format!(
                    "{},{},{},{},{:.15},{},{}\n",
                    r.n, r.trial, r.cnots, r.depth, r.fidelity, r.lower, r.upper
                );
            }
            s
        }
        TableFormat::Json => {
            let doc = BenchDoc { seed: a.seed, rows, summary };
            serde_json::to_string_pretty(&doc).expect("bench serializes") + "\n"
        }
    };
    write_output(a.output.as_deref(), &text, stdout)?;
    Ok(if all_ok { EXIT_OK } else { EXIT_FIDELITY })
}

fn bounds(a: BoundsArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let last = a.to.unwrap_or(a.n);
    if a.n < 2 || last < a.n || last > crate::bounds::MAX_QUBITS {
        return Err(Error::BadRange(format!(
            "need 2 <= n <= to <= {}, got {}..{}",
            crate::bounds::MAX_QUBITS,
            a.n,
            last
        ))
        .into());
    }
    let mut text = String::new();
    for n in a.n..=last {
        text += &serde_json::to_string(&BoundSet::new(n)).expect("bounds serialize");
        text.push('\n');
    }
    write_output(None, &text, stdout)?;
    Ok(EXIT_OK)
}
