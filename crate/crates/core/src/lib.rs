//! Discovery of repeated CNOT gadgets in corpora of quantum circuits.
//!
//! Circuits are converted to labeled directed graphs, CNOT subsets are
//! enumerated and filtered, and surviving subgraphs are grouped by canonical
//! certificate. A stabilizer tableau backend handles encoder deduplication
//! and code metrics.

pub mod canon;
pub mod catalog;
pub mod circuit;
pub mod cli;
pub mod corpus;
pub mod graph;
pub mod miner;
pub mod tableau;

pub use circuit::{cnots_commute, Circuit, CircuitError, CnotGate};
pub use graph::{CircuitGraph, EdgeKind, NodeLabel};
