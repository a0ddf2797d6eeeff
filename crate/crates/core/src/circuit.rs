//! CNOT-only circuit representation.
//!
//! A [`Circuit`] is an ordered list of CNOT gates with one gate per temporal
//! layer. Two serializations are supported: a line-oriented text format
//!
//! ```text
//! # comment
//! qubits 3
//! cx 0 1
//! cx 1 2
//! ```
//!
//! and a JSON object `{"name": .., "qubits": .., "gates": [[c, t], ..]}`.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A single CNOT at a fixed temporal layer. Qubit indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CnotGate {
    pub control: usize,
    pub target: usize,
    pub layer: usize,
}

impl CnotGate {
    pub fn new(control: usize, target: usize, layer: usize) -> Self {
        Self {
            control,
            target,
            layer,
        }
    }

    pub fn acts_on(&self, qubit: usize) -> bool {
        self.control == qubit || self.target == qubit
    }
}

/// Returns `false` exactly when the control of one gate is the target of the
/// other. Shared controls, shared targets and disjoint supports commute.
pub fn cnots_commute(a: &CnotGate, b: &CnotGate) -> bool {
    !(a.control == b.target || a.target == b.control)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GateFault {
    SameQubit,
    OutOfRange { qubit: usize, n_qubits: usize },
}

impl fmt::Display for GateFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateFault::SameQubit => write!(f, "control equals target"),
            GateFault::OutOfRange { qubit, n_qubits } => {
                write!(f, "qubit {qubit} out of range for {n_qubits} qubits")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("{fault} at line {line}")]
    Gate { line: usize, fault: GateFault },
    #[error("malformed line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing `qubits <N>` header")]
    MissingHeader,
    #[error("gate {index}: {fault}")]
    InvalidGate { index: usize, fault: GateFault },
    #[error("circuit must have at least one qubit")]
    NoQubits,
    #[error("invalid circuit JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: Box<CircuitError>,
    },
}

/// Ordered CNOT sequence on `n_qubits` wires. Gate `i` sits on layer `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    name: String,
    n_qubits: usize,
    gates: Vec<CnotGate>,
}

fn check_gate(control: usize, target: usize, n_qubits: usize) -> Result<(), GateFault> {
    for q in [control, target] {
        if q >= n_qubits {
            return Err(GateFault::OutOfRange { qubit: q, n_qubits });
        }
    }
    if control == target {
        return Err(GateFault::SameQubit);
    }
    Ok(())
}

impl Circuit {
    /// Builds a circuit from `(control, target)` pairs, assigning layers in order.
    pub fn new(
        name: impl Into<String>,
        n_qubits: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self, CircuitError> {
        if n_qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        let mut gates = Vec::with_capacity(pairs.len());
        for (index, &(c, t)) in pairs.iter().enumerate() {
            check_gate(c, t, n_qubits)
                .map_err(|fault| CircuitError::InvalidGate { index, fault })?;
            gates.push(CnotGate::new(c, t, index));
        }
        Ok(Self {
            name: name.into(),
            n_qubits,
            gates,
        })
    }

    pub fn empty(name: impl Into<String>, n_qubits: usize) -> Result<Self, CircuitError> {
        Self::new(name, n_qubits, &[])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[CnotGate] {
        &self.gates
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.gates.iter().map(|g| (g.control, g.target)).collect()
    }

    /// Number of CNOTs, `C_T`.
    pub fn cnot_count(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Parses the line-oriented text format. The resulting circuit has an empty name.
    pub fn parse_text(text: &str) -> Result<Self, CircuitError> {
        let mut n_qubits: Option<usize> = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let malformed = |message: &str| CircuitError::Malformed {
                line,
                message: message.to_string(),
            };
            match n_qubits {
                None => {
                    if tokens.len() != 2 || tokens[0] != "qubits" {
                        return Err(malformed("expected `qubits <N>`"));
                    }
                    let n: usize = tokens[1]
                        .parse()
                        .map_err(|_| malformed("qubit count is not a non-negative integer"))?;
                    if n == 0 {
                        return Err(malformed("qubit count must be positive"));
                    }
                    n_qubits = Some(n);
                }
                Some(n) => {
                    if tokens.len() != 3 || tokens[0] != "cx" {
                        return Err(malformed("expected `cx <control> <target>`"));
                    }
                    let c: usize = tokens[1]
                        .parse()
                        .map_err(|_| malformed("control is not a non-negative integer"))?;
                    let t: usize = tokens[2]
                        .parse()
                        .map_err(|_| malformed("target is not a non-negative integer"))?;
                    check_gate(c, t, n).map_err(|fault| CircuitError::Gate { line, fault })?;
                    pairs.push((c, t));
                }
            }
        }
        let n = n_qubits.ok_or(CircuitError::MissingHeader)?;
        Self::new("", n, &pairs)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        for g in &self.gates {
            out.push_str(&format!("cx {} {}\n", g.control, g.target));
        }
        out
    }

    pub fn parse_json(text: &str) -> Result<Self, CircuitError> {
        let raw: CircuitJson = serde_json::from_str(text)?;
        let pairs: Vec<(usize, usize)> = raw.gates.iter().map(|g| (g[0], g[1])).collect();
        Self::new(raw.name, raw.qubits, &pairs)
    }

    pub fn to_json(&self) -> String {
        let raw = CircuitJson {
            name: self.name.clone(),
            qubits: self.n_qubits,
            gates: self.gates.iter().map(|g| [g.control, g.target]).collect(),
        };
        serde_json::to_string(&raw).expect("circuit JSON serialization cannot fail")
    }

    /// Reads a circuit file. `.json` files use the JSON format, everything else
    /// the text format. Text circuits are named after the file stem.
    pub fn read_file(path: &Path) -> Result<Self, CircuitError> {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| CircuitError::Io {
            path: display.clone(),
            source,
        })?;
        let wrap = |e: CircuitError| CircuitError::File {
            path: display.clone(),
            source: Box::new(e),
        };
        let is_json = path.extension().is_some_and(|e| e == "json");
        if is_json {
            let c = Self::parse_json(&text).map_err(wrap)?;
            if c.name.is_empty() {
                return Ok(c.with_name(file_stem(path)));
            }
            Ok(c)
        } else {
            Ok(Self::parse_text(&text)
                .map_err(wrap)?
                .with_name(file_stem(path)))
        }
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

#[derive(Serialize, Deserialize)]
struct CircuitJson {
    #[serde(default)]
    name: String,
    qubits: usize,
    gates: Vec<[usize; 2]>,
}
