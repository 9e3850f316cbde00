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

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schmidt_prep::random::haar_state;
use schmidt_prep::StateVector;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schmidt-prep")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_state(dir: &Path, name: &str, s: &StateVector) -> String {
    let p = dir.join(name);
    fs::write(&p, s.to_json()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn prepare_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let s = haar_state(4, &mut ChaCha8Rng::seed_from_u64(5));
    let state = write_state(dir.path(), "s.json", &s);
    let qasm = dir.path().join("out.qasm");
    let report = dir.path().join("report.json");
    let o = bin(&["prepare", &state, "-o", qasm.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(r["cnot_count"].as_u64().unwrap() <= 9);
    assert!(r["depth"].as_u64().unwrap() <= 5);
    assert_eq!(r["per_phase"]["P2"], 2);
    assert!(r["fidelity"].as_f64().unwrap() > 1.0 - 1e-9);
    assert_eq!(r["bounds"]["cnot_lower"], 6);

    let o = bin(&["verify", qasm.to_str().unwrap(), &state]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("ok"));
}

#[test]
fn verify_bell_against_zero_fails() {
    let dir = tempfile::tempdir().unwrap();
    let qasm = dir.path().join("bell.qasm");
    fs::write(&qasm, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nu3(pi/2,0,pi) q[0];\ncx q[0],q[1];\n")
        .unwrap();
    let zero = write_state(dir.path(), "zero.json", &StateVector::zero(2));
    let o = bin(&["verify", qasm.to_str().unwrap(), &zero]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("fidelity 0.500000000000"));

    let empty = dir.path().join("empty.qasm");
    fs::write(&empty, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n").unwrap();
    let o = bin(&["verify", empty.to_str().unwrap(), &zero]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("fidelity 1.000000000000"));
}

#[test]
fn input_errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    let o = bin(&["prepare", &p("missing.json")]);
    assert_eq!(code(&o), 2);

    fs::write(p("bad.json"), "{ not json").unwrap();
    let o = bin(&["prepare", &p("bad.json")]);
    assert_eq!(code(&o), 3);
    assert!(!o.stderr.is_empty());

    fs::write(p("short.json"), r#"{"n": 2, "amplitudes": [[1, 0]]}"#).unwrap();
    assert_eq!(code(&bin(&["prepare", &p("short.json")])), 3);

    fs::write(p("unnorm.json"), r#"{"n": 2, "amplitudes": [[1, 0], [1, 0], [0, 0], [0, 0]]}"#).unwrap();
    assert_eq!(code(&bin(&["prepare", &p("unnorm.json")])), 4);
    assert_eq!(code(&bin(&["prepare", &p("unnorm.json"), "--normalize"])), 0);

    fs::write(p("bad.qasm"), "OPENQASM 2.0;\nqreg q[2];\nswap q[0],q[1];\n").unwrap();
    let zero = write_state(dir.path(), "zero.json", &StateVector::zero(2));
    assert_eq!(code(&bin(&["verify", &p("bad.qasm"), &zero])), 3);

    assert_eq!(code(&bin(&["bench", "--n-min", "0"])), 5);
    assert_eq!(code(&bin(&["no-such-command"])), 5);
}

#[test]
fn transform_between_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(9);
    let (psi, phi) = (haar_state(4, &mut r), haar_state(4, &mut r));
    let a = write_state(dir.path(), "a.json", &psi);
    let b = write_state(dir.path(), "b.json", &phi);
    let o = bin(&["transform", &a, &b, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["report"]["cnot_count"].as_u64().unwrap() <= 18);
    assert!(v["qasm"].as_str().unwrap().starts_with("OPENQASM 2.0;"));

    let small = write_state(dir.path(), "c.json", &StateVector::zero(3));
    assert_eq!(code(&bin(&["transform", &a, &small])), 5);
}

#[test]
fn bench_is_deterministic() {
    let args = ["bench", "--n-min", "4", "--n-max", "6", "--trials", "5", "--seed", "11"];
    let (a, b) = (bin(&args), bin(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,trial,cnots,depth,fidelity,lower,upper"));
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (n, cnots): (usize, usize) = (f[0].parse().unwrap(), f[2].parse().unwrap());
        let (ceiling, lower) = match n {
            4 => (9, 6),
            5 => (26, 13),
            _ => (47, 29),
        };
        assert!(cnots <= ceiling);
        assert_eq!(f[5].parse::<usize>().unwrap(), lower);
    }

    let other = bin(&["bench", "--n-min", "4", "--n-max", "4", "--trials", "5", "--seed", "12"]);
    assert_ne!(other.stdout, bin(&["bench", "--n-min", "4", "--n-max", "4", "--trials", "5", "--seed", "11"]).stdout);
}

#[test]
fn bench_json_summary() {
    let o = bin(&["bench", "--n-min", "3", "--n-max", "4", "--trials", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    let summary = v["summary"].as_array().unwrap();
    assert_eq!(summary[1]["n"], 4);
    assert!(summary[1]["max_cnots"].as_u64().unwrap() <= 9);
    assert!(summary[1]["min_fidelity"].as_f64().unwrap() > 1.0 - 1e-9);
}

#[test]
fn bounds_subcommand() {
    let o = bin(&["bounds", "5"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cnot_upper_scheme"], 26);
    assert_eq!(v["depth_lower"], 7);
    assert_eq!(v["depth_upper_scheme"], 22);
}
