//! Portable line-oriented circuit text.
//!
//! ```text
//! QUBITS 2
//! H 0
//! RZZ 0 1 0.5
//! CX 0 1
//! BARRIER
//! ```
//!
//! The first line gives the width; every following line is one gate,
//! `KIND qubit... [angle]`. Angles are written in the shortest decimal form
//! that parses back to the identical `f64` (at most 17 significant digits,
//! never exponent notation).

use std::fmt::Write as _;

use super::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

pub fn export_circuit_text(c: &Circuit) -> String {
    let mut out = format!("QUBITS {}\n", c.num_qubits());
    for g in c.gates() {
        let _ = match *g {
            Gate::H(q) => writeln!(out, "H {q}"),
            Gate::Rx(q, t) => writeln!(out, "RX {q} {t}"),
            Gate::Rz(q, t) => writeln!(out, "RZ {q} {t}"),
            Gate::Rzz(a, b, t) => writeln!(out, "RZZ {a} {b} {t}"),
            Gate::Cx(a, b) => writeln!(out, "CX {a} {b}"),
            Gate::Barrier => writeln!(out, "BARRIER"),
        };
    }
    out
}

pub fn parse_circuit_text(text: &str) -> Result<Circuit> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty circuit text".into(),
    })?;
    let num_qubits = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["QUBITS", n] => n.parse().map_err(|_| err(1, "invalid qubit count"))?,
        _ => return Err(err(1, "expected `QUBITS <n>`")),
    };
    let mut circuit = Circuit::new(num_qubits).map_err(|e| err(1, &e.to_string()))?;
    for (line, content) in lines {
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let kind: GateKind = fields[0].parse().map_err(|e: Error| err(line, &e.to_string()))?;
        let args = &fields[1..];
        let qubit = |i: usize| -> Result<usize> {
            args.get(i)
                .ok_or_else(|| err(line, "missing qubit"))?
                .parse()
                .map_err(|_| err(line, "invalid qubit"))
        };
        let angle = |i: usize| -> Result<f64> {
            args.get(i)
                .ok_or_else(|| err(line, "missing angle"))?
                .parse()
                .map_err(|_| err(line, "invalid angle"))
        };
        let (gate, arity) = match kind {
            GateKind::H => (Gate::H(qubit(0)?), 1),
            GateKind::Rx => (Gate::Rx(qubit(0)?, angle(1)?), 2),
            GateKind::Rz => (Gate::Rz(qubit(0)?, angle(1)?), 2),
            GateKind::Rzz => (Gate::Rzz(qubit(0)?, qubit(1)?, angle(2)?), 3),
            GateKind::Cx => (Gate::Cx(qubit(0)?, qubit(1)?), 2),
            GateKind::Barrier => (Gate::Barrier, 0),
        };
        if args.len() != arity {
            return Err(err(line, &format!("{kind} takes {arity} arguments")));
        }
        circuit.push(gate).map_err(|e| err(line, &e.to_string()))?;
    }
    Ok(circuit)
}

fn err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}
