//! Known gadget families and helpers for planting them into host circuits.
//!
//! Generation `g` of every family touches `2g` qubits:
//!
//! * `DCX`: double-CX blocks `CX(a,b) CX(b,a)`. Generation 1 is a single block;
//!   higher generations tile blocks on pairs `(2i, 2i+1)` and then on the
//!   shifted pairs `(2i, 2i+3 mod 2g)`.
//! * `PL`: a directed ring `CX(0,1) CX(1,2) … CX(m-1,0)`.
//! * `O`: the same ring in brickwork order, even-indexed links first.
//!
//! On two qubits all three families coincide.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, CnotGate};
use crate::graph::{circuit_to_graph, is_closed, is_connected};
use crate::miner::{filter_stationary, SubgraphCandidate};

pub const MAX_GENERATION: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unsupported generation {0} (supported: 1..={MAX_GENERATION})")]
    UnsupportedGeneration(usize),
    #[error("unknown gadget family '{0}'")]
    UnknownFamily(String),
    #[error("qubit map has {found} entries, gadget needs {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("qubit map sends two gadget qubits to host qubit {0}")]
    MapCollision(usize),
    #[error("host qubit {qubit} out of range for {n_qubits} qubits")]
    MapOutOfRange { qubit: usize, n_qubits: usize },
    #[error("layer offset {offset} beyond host length {len}")]
    LayerOverflow { offset: usize, len: usize },
    #[error("gadget {0} failed its closed/connected/stationary self-check")]
    SelfCheck(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "DCX")]
    Dcx,
    #[serde(rename = "PL")]
    Pl,
    #[serde(rename = "O")]
    O,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Dcx, Family::Pl, Family::O];

    pub fn prefix(self) -> &'static str {
        match self {
            Family::Dcx => "DCX",
            Family::Pl => "PL",
            Family::O => "O",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

impl FromStr for Family {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dcx" => Ok(Family::Dcx),
            "pl" => Ok(Family::Pl),
            "o" => Ok(Family::O),
            _ => Err(CatalogError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSpec {
    pub family: Family,
    pub generation: usize,
    pub qubits_touched: usize,
    /// Gates on local qubits `0..qubits_touched`, layers `0..len`.
    pub gate_sequence: Vec<CnotGate>,
}

impl GadgetSpec {
    /// `DCX4`, `PL6`, … (family prefix plus qubit count).
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.qubits_touched)
    }

    pub fn cx_count(&self) -> usize {
        self.gate_sequence.len()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.gate_sequence
            .iter()
            .map(|g| (g.control, g.target))
            .collect()
    }

    pub fn to_circuit(&self) -> Circuit {
        Circuit::new(self.name(), self.qubits_touched, &self.pairs())
            .expect("catalog gates are valid")
    }

    /// The whole gadget as a mining candidate.
    pub fn as_candidate(&self) -> SubgraphCandidate {
        let circuit = self.to_circuit();
        SubgraphCandidate {
            source_circuit: circuit.name().to_string(),
            gates: circuit.gates().to_vec(),
            graph: circuit_to_graph(&circuit),
            tainted: false,
        }
    }
}

fn dcx_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut blocks: Vec<(usize, usize)> = (0..m / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    if m > 2 {
        blocks.extend((0..m / 2).map(|i| (2 * i, (2 * i + 3) % m)));
    }
    blocks
        .into_iter()
        .flat_map(|(a, b)| [(a, b), (b, a)])
        .collect()
}

fn pl_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).map(|i| (i, (i + 1) % m)).collect()
}

fn o_pairs(m: usize) -> Vec<(usize, usize)> {
    let even = (0..m).step_by(2);
    let odd = (1..m).step_by(2);
    even.chain(odd).map(|i| (i, (i + 1) % m)).collect()
}

pub fn build_gadget(family: Family, generation: usize) -> Result<GadgetSpec, CatalogError> {
    if !(1..=MAX_GENERATION).contains(&generation) {
        return Err(CatalogError::UnsupportedGeneration(generation));
    }
    let m = 2 * generation;
    let pairs = match family {
        Family::Dcx => dcx_pairs(m),
        Family::Pl => pl_pairs(m),
        Family::O => o_pairs(m),
    };
    let spec = GadgetSpec {
        family,
        generation,
        qubits_touched: m,
        gate_sequence: pairs
            .iter()
            .enumerate()
            .map(|(layer, &(c, t))| CnotGate::new(c, t, layer))
            .collect(),
    };
    let cand = spec.as_candidate();
    if !(is_connected(&cand.graph) && is_closed(&cand.graph) && filter_stationary(&cand)) {
        return Err(CatalogError::SelfCheck(spec.name()));
    }
    Ok(spec)
}

/// Every catalog gadget, family by family.
pub fn catalog() -> Vec<GadgetSpec> {
    Family::ALL
        .iter()
        .flat_map(|&f| {
            (1..=MAX_GENERATION).map(move |g| build_gadget(f, g).expect("catalog self-check"))
        })
        .collect()
}

/// Inserts the gadget's gates contiguously before host gate `layer_offset`,
/// mapping local qubit `i` to `qubit_map[i]`.
pub fn plant(
    host: &Circuit,
    spec: &GadgetSpec,
    qubit_map: &[usize],
    layer_offset: usize,
) -> Result<Circuit, CatalogError> {
    if qubit_map.len() != spec.qubits_touched {
        return Err(CatalogError::MapLength {
            expected: spec.qubits_touched,
            found: qubit_map.len(),
        });
    }
    for (i, &q) in qubit_map.iter().enumerate() {
        if q >= host.n_qubits() {
            return Err(CatalogError::MapOutOfRange {
                qubit: q,
                n_qubits: host.n_qubits(),
            });
        }
        if qubit_map[..i].contains(&q) {
            return Err(CatalogError::MapCollision(q));
        }
    }
    let host_pairs = host.pairs();
    if layer_offset > host_pairs.len() {
        return Err(CatalogError::LayerOverflow {
            offset: layer_offset,
            len: host_pairs.len(),
        });
    }
    let mut pairs = host_pairs[..layer_offset].to_vec();
    pairs.extend(
        spec.pairs()
            .into_iter()
            .map(|(c, t)| (qubit_map[c], qubit_map[t])),
    );
    pairs.extend_from_slice(&host_pairs[layer_offset..]);
    Ok(Circuit::new(host.name(), host.n_qubits(), &pairs).expect("mapped gates are valid"))
}

pub fn cx_count(c: &Circuit) -> usize {
    c.cnot_count()
}
