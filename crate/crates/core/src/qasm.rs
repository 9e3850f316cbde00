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

//! OpenQASM 2.0 emission and parsing for the `u3` / `cx` subset.
//!
//! Qubit `j` of a [`Circuit`] is register entry `q[j-1]`. The global phase is not represented.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::synth::gates;
use crate::synth::one_qubit::zyz_angles;

pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", c.n_qubits()).unwrap();
    for g in c.gates() {
        match *g {
            Gate::Single { target, matrix } => {
                let a = zyz_angles(&matrix);
                writeln!(out, "u3({},{},{}) q[{}];", a.theta, a.phi, a.lambda, target - 1).unwrap();
            }
            Gate::Cnot { control, target } => {
                writeln!(out, "cx q[{}],q[{}];", control - 1, target - 1).unwrap();
            }
        }
    }
    out
}

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

/// Parses text produced by [`emit_qasm`] or written by hand in the same subset. `U` and `CX` are
/// accepted as aliases; `barrier` statements are ignored.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut circuit: Option<(String, Circuit)> = None;
    let mut saw_header = false;
    // Statements may span lines; track the line each one starts on.
    let mut statements = Vec::new();
    let mut buf = String::new();
    let mut start = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split("//").next().unwrap_or("");
        for ch in line.chars() {
            if buf.trim().is_empty() {
                start = i + 1;
            }
            if ch == ';' {
                statements.push((start, buf.trim().to_string()));
                buf.clear();
            } else {
                buf.push(ch);
            }
        }
        buf.push(' ');
    }
    if !buf.trim().is_empty() {
        return Err(err(start, "missing ';'"));
    }

    for (line, stmt) in statements {
        if stmt.is_empty() {
            continue;
        }
        let (head, rest) = split_head(&stmt);
        match head {
            "OPENQASM" => {
                if rest.trim() != "2.0" {
                    return Err(err(line, format!("unsupported version {}", rest.trim())));
                }
                saw_header = true;
            }
            "include" => {}
            "qreg" => {
                if circuit.is_some() {
                    return Err(err(line, "only one qreg is supported"));
                }
                let (name, size) = parse_ref(rest, line)?;
                if size == 0 {
                    return Err(err(line, "empty register"));
                }
                circuit = Some((name, Circuit::new(size)));
            }
            "creg" | "barrier" => {}
            _ => {
                let (name, c) = circuit.as_mut().ok_or_else(|| err(line, "gate before qreg"))?;
                apply_gate(&stmt, name, c, line)?;
            }
        }
    }
    if !saw_header {
        return Err(Error::Parse("missing OPENQASM header".into()));
    }
    circuit.map(|(_, c)| c).ok_or_else(|| Error::Parse("missing qreg".into()))
}

fn split_head(stmt: &str) -> (&str, &str) {
    let end = stmt.find(|c: char| c.is_whitespace() || c == '(').unwrap_or(stmt.len());
    (&stmt[..end], &stmt[end..])
}

/// Parses `name[index]`.
fn parse_ref(s: &str, line: usize) -> Result<(String, usize)> {
    let s = s.trim();
    let open = s.find('[').ok_or_else(|| err(line, format!("expected register reference, got '{s}'")))?;
    let close = s.rfind(']').filter(|c| *c > open && s[c + 1..].trim().is_empty());
    let close = close.ok_or_else(|| err(line, format!("malformed register reference '{s}'")))?;
    let index = s[open + 1..close].trim().parse().map_err(|_| err(line, format!("bad index in '{s}'")))?;
    Ok((s[..open].trim().to_string(), index))
}

fn qubit(s: &str, reg: &str, n: usize, line: usize) -> Result<usize> {
    let (name, index) = parse_ref(s, line)?;
    if name != reg {
        return Err(err(line, format!("unknown register '{name}'")));
    }
    if index >= n {
        return Err(err(line, format!("qubit {index} out of range")));
    }
    Ok(index + 1)
}

fn apply_gate(stmt: &str, reg: &str, c: &mut Circuit, line: usize) -> Result<()> {
    let (head, rest) = split_head(stmt);
    let n = c.n_qubits();
    match head {
        "u3" | "U" => {
            let rest = rest.trim_start();
            let close = rest.find(')').filter(|_| rest.starts_with('('));
            let close = close.ok_or_else(|| err(line, "expected '(' parameters ')'"))?;
            let params: Vec<f64> = rest[1..close].split(',').map(|p| eval(p, line)).collect::<Result<_>>()?;
            if params.len() != 3 {
                return Err(err(line, format!("{head} takes 3 parameters, got {}", params.len())));
            }
            let q = qubit(&rest[close + 1..], reg, n, line)?;
            c.single(q, gates::u3(params[0], params[1], params[2]));
        }
        "cx" | "CX" => {
            let args: Vec<&str> = rest.split(',').collect();
            if args.len() != 2 {
                return Err(err(line, "cx takes two qubits"));
            }
            let control = qubit(args[0], reg, n, line)?;
            let target = qubit(args[1], reg, n, line)?;
            c.try_push(Gate::Cnot { control, target }, None).map_err(|e| err(line, e))?;
        }
        other => return Err(err(line, format!("unsupported statement '{other}'"))),
    }
    Ok(())
}

/// Evaluates an angle expression over numbers, `pi`, `+ - * /`, unary minus and parentheses.
fn eval(expr: &str, line: usize) -> Result<f64> {
    let tokens = tokenize(expr, line)?;
    let mut p = ExprParser { tokens: &tokens, pos: 0, line };
    let v = p.sum()?;
    if p.pos != tokens.len() {
        return Err(err(line, format!("trailing input in '{}'", expr.trim())));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Op(char),
}

fn tokenize(s: &str, line: usize) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if "+-*/()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let begin = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                i += 1;
                if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = chars[begin..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| err(line, format!("bad number '{text}'")))?));
        } else if ch.is_ascii_alphabetic() {
            let begin = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[begin..i].iter().collect();
            if word != "pi" {
                return Err(err(line, format!("unknown identifier '{word}'")));
            }
            out.push(Tok::Num(PI));
        } else {
            return Err(err(line, format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    tokens: &'a [Tok],
    pos: usize,
    line: usize,
}

impl ExprParser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<f64> {
        let mut v = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.product()?;
            v = if op == '+' { v + rhs } else { v - rhs };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<f64> {
        let mut v = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            v = if op == '*' { v * rhs } else { v / rhs };
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<f64> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<f64> {
        match self.tokens.get(self.pos) {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(*v)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek_op() != Some(')') {
                    return Err(err(self.line, "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(err(self.line, "expected a number")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{phase_aligned_distance, testing::*};
    use crate::synth::unitary::synth_unitary;

    const HEADER: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

    #[test]
    fn empty_circuit() {
        assert_eq!(emit_qasm(&Circuit::new(2)), format!("{HEADER}qreg q[2];\n"));
    }

    #[test]
    fn single_cnot() {
        let mut c = Circuit::new(2);
        c.cnot(1, 2);
        let text = emit_qasm(&c);
        assert_eq!(text.lines().filter(|l| l.starts_with("cx")).collect::<Vec<_>>(), ["cx q[0],q[1];"]);
        assert_eq!(parse_qasm(&text).unwrap().gates(), c.gates());
    }

    #[test]
    fn round_trip_preserves_operator() {
        let mut r = rng(12);
        for k in 1..=3 {
            let u = random_unitary(1 << k, &mut r);
            let c = synth_unitary(&u).unwrap();
            let back = parse_qasm(&emit_qasm(&c)).unwrap();
            assert_eq!(back.cnot_count(), c.cnot_count());
            assert!(phase_aligned_distance(&back.unitary(), &u) < 1e-9);
        }
    }

    #[test]
    fn expressions() {
        let cases = [
            ("pi", PI),
            ("-pi/2", -PI / 2.0),
            ("2*pi/3 + 1", 2.0 * PI / 3.0 + 1.0),
            ("(1+2)*3", 9.0),
            ("-(0.5e1 - 1)", -4.0),
            ("1.5E-3", 1.5e-3),
            ("--1", 1.0),
        ];
        for (text, v) in cases {
            assert!((eval(text, 1).unwrap() - v).abs() < 1e-15, "{text}");
        }
        for bad in ["", "pi pi", "(1", "tau", "1 +", "3 $ 4"] {
            assert!(eval(bad, 1).is_err(), "{bad}");
        }
    }

    #[test]
    fn hand_written_input() {
        let text = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n// Bell pair\nqreg q[2];\ncreg c[2];\nU(pi/2, 0, pi) q[0];\nbarrier q[0],q[1];\nCX q[0], q[1];\n";
        let c = parse_qasm(text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.cnot_count(), 1);
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            "qreg q[2];",
            "OPENQASM 3.0;\nqreg q[1];",
            "OPENQASM 2.0;\ncx q[0],q[1];",
            "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[0];",
            "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[2];",
            "OPENQASM 2.0;\nqreg q[2];\nh q[0];",
            "OPENQASM 2.0;\nqreg q[2];\nu3(1,2) q[0];",
            "OPENQASM 2.0;\nqreg q[2];\nu3(1,2,3) r[0];",
            "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[1]",
            "OPENQASM 2.0;\nqreg q[2];\nqreg r[2];",
        ];
        for text in bad {
            assert!(matches!(parse_qasm(text), Err(Error::Parse(_))), "{text}");
        }
    }
}
