//! Canonical certificates for labeled directed graphs and grouping of mined
//! candidates into isomorphism classes.
//!
//! The certificate is computed by individualization–refinement: colour
//! refinement on node labels and edge kinds, then branching on every vertex
//! of the first smallest non-trivial cell. Each discrete colouring is a
//! relabeling of the graph; the lexicographically smallest encoding over all
//! leaves is the certificate. Two graphs receive equal certificates exactly
//! when they are isomorphic, preserving node labels, edge kinds and edge
//! directions.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{CircuitGraph, EdgeKind, NodeLabel};
use crate::miner::{Provenance, SubgraphCandidate};

/// Largest graph accepted by default.
pub const DEFAULT_NODE_BOUND: usize = 64;

const CERT_VERSION: u8 = 1;

/// A node colour with its sorted (edge kind, direction, neighbour colour) list.
type Signature = (u32, Vec<(u8, u8, u32)>);
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonError {
    #[error("graph has {nodes} nodes, above the bound of {bound}")]
    TooLarge { nodes: usize, bound: usize },
    #[error("edge endpoint {0} out of range")]
    BadEdge(usize),
}

/// Canonical byte string of a graph's isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    /// SHA-256 of the certificate bytes, used as a short class id.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(&self.0))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn label_code(l: NodeLabel) -> u8 {
    match l {
        NodeLabel::C => 0,
        NodeLabel::T => 1,
        NodeLabel::N => 2,
    }
}

fn kind_code(k: EdgeKind) -> u8 {
    match k {
        EdgeKind::Cnot => 0,
        EdgeKind::Time => 1,
    }
}

struct Search {
    labels: Vec<u8>,
    edges: Vec<(u8, usize, usize)>,
    // (kind, direction, neighbour); direction 0 = outgoing.
    adj: Vec<Vec<(u8, u8, usize)>>,
    best: Option<Vec<u8>>,
}

impl Search {
    fn new(g: &CircuitGraph) -> Result<Self, CanonError> {
        let n = g.node_count();
        let labels: Vec<u8> = g.nodes().iter().map(|v| label_code(v.label)).collect();
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(g.edges().len());
        for e in g.edges() {
            if e.from >= n {
                return Err(CanonError::BadEdge(e.from));
            }
            if e.to >= n {
                return Err(CanonError::BadEdge(e.to));
            }
            let k = kind_code(e.kind);
            adj[e.from].push((k, 0, e.to));
            adj[e.to].push((k, 1, e.from));
            edges.push((k, e.from, e.to));
        }
        Ok(Self {
            labels,
            edges,
            adj,
            best: None,
        })
    }

    /// Colour refinement to the coarsest equitable partition finer than
    /// `colors`. Colours are re-ranked to `0..cells` in signature order.
    fn refine(&self, colors: &mut [u32]) {
        let n = colors.len();
        let mut cells = count_cells(colors);
        loop {
            let sigs: Vec<Signature> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(u8, u8, u32)> = self.adj[v]
                        .iter()
                        .map(|&(k, d, w)| (k, d, colors[w]))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut distinct: Vec<&Signature> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            let rank: BTreeMap<&Signature, u32> = distinct
                .iter()
                .enumerate()
                .map(|(i, s)| (*s, i as u32))
                .collect();
            for v in 0..n {
                colors[v] = rank[&sigs[v]];
            }
            let now = distinct.len();
            if now == cells {
                break;
            }
            cells = now;
        }
    }

    fn encode_leaf(&self, colors: &[u32]) -> Vec<u8> {
        let n = colors.len();
        let mut labels = vec![0u8; n];
        for v in 0..n {
            labels[colors[v] as usize] = self.labels[v];
        }
        let mut edges: Vec<(u8, u32, u32)> = self
            .edges
            .iter()
            .map(|&(k, a, b)| (k, colors[a], colors[b]))
            .collect();
        edges.sort_unstable();
        let mut out = Vec::with_capacity(7 + n + edges.len() * 5);
        out.push(CERT_VERSION);
        out.extend_from_slice(&(n as u16).to_be_bytes());
        out.extend_from_slice(&(edges.len() as u32).to_be_bytes());
        out.extend_from_slice(&labels);
        for (k, a, b) in edges {
            out.push(k);
            out.extend_from_slice(&(a as u16).to_be_bytes());
            out.extend_from_slice(&(b as u16).to_be_bytes());
        }
        out
    }

    fn search(&mut self, mut colors: Vec<u32>) {
        self.refine(&mut colors);
        let n = colors.len();
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colors {
            *sizes.entry(c).or_default() += 1;
        }
        let target = sizes
            .iter()
            .filter(|(_, &s)| s > 1)
            .min_by_key(|(&c, &s)| (s, c))
            .map(|(&c, _)| c);
        let Some(target) = target else {
            let leaf = self.encode_leaf(&colors);
            if self.best.as_ref().is_none_or(|b| leaf < *b) {
                self.best = Some(leaf);
            }
            return;
        };
        for v in 0..n {
            if colors[v] != target {
                continue;
            }
            let child: Vec<u32> = (0..n).map(|u| 2 * colors[u] + u32::from(u != v)).collect();
            self.search(child);
        }
    }
}

fn count_cells(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub fn certificate(g: &CircuitGraph) -> Result<Certificate, CanonError> {
    certificate_bounded(g, DEFAULT_NODE_BOUND)
}

pub fn certificate_bounded(g: &CircuitGraph, bound: usize) -> Result<Certificate, CanonError> {
    let n = g.node_count();
    if n > bound || n > u16::MAX as usize {
        return Err(CanonError::TooLarge { nodes: n, bound });
    }
    let mut search = Search::new(g)?;
    let colors: Vec<u32> = search.labels.iter().map(|&l| u32::from(l)).collect();
    search.search(colors);
    Ok(Certificate(
        search.best.expect("search visits at least one leaf"),
    ))
}

/// One isomorphism class of admissible candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateClass {
    pub certificate: Certificate,
    /// First candidate seen with this certificate.
    pub representative: SubgraphCandidate,
    pub occurrences: Vec<Provenance>,
}

impl CandidateClass {
    /// Number of occurrences.
    pub fn n_r(&self) -> usize {
        self.occurrences.len()
    }

    pub fn c_g(&self) -> usize {
        self.representative.c_g()
    }
}

/// Groups candidates by certificate. Classes are ordered by descending
/// occurrence count, then by certificate; occurrences keep input order.
pub fn group_candidates(cands: Vec<SubgraphCandidate>) -> Result<Vec<CandidateClass>, CanonError> {
    let certs: Vec<Certificate> = cands
        .par_iter()
        .map(|c| certificate(&c.graph))
        .collect::<Result<_, _>>()?;
    let mut classes: BTreeMap<Certificate, CandidateClass> = BTreeMap::new();
    for (cand, cert) in cands.into_iter().zip(certs) {
        let prov = cand.provenance();
        classes
            .entry(cert.clone())
            .or_insert_with(|| CandidateClass {
                certificate: cert,
                representative: cand,
                occurrences: Vec::new(),
            })
            .occurrences
            .push(prov);
    }
    let mut out: Vec<CandidateClass> = classes.into_values().collect();
    out.sort_by(|a, b| {
        b.n_r()
            .cmp(&a.n_r())
            .then_with(|| a.certificate.cmp(&b.certificate))
    });
    Ok(out)
}

/// Classes occurring more than `n_c` times.
pub fn identify_gadgets(classes: &[CandidateClass], n_c: usize) -> Vec<CandidateClass> {
    classes.iter().filter(|c| c.n_r() > n_c).cloned().collect()
}

#[derive(Serialize)]
struct GadgetRecord<'a> {
    certificate: String,
    n_r: usize,
    c_g: usize,
    qubits_touched: usize,
    representative_graph: serde_json::Value,
    occurrences: &'a [Provenance],
}

#[derive(Serialize)]
struct GadgetReport<'a> {
    schema_version: u32,
    gadgets: Vec<GadgetRecord<'a>>,
}

/// JSON gadget report; `certificate` is the class digest.
pub fn gadget_report_json(classes: &[CandidateClass]) -> String {
    let report = GadgetReport {
        schema_version: REPORT_SCHEMA_VERSION,
        gadgets: classes
            .iter()
            .map(|c| GadgetRecord {
                certificate: c.certificate.digest(),
                n_r: c.n_r(),
                c_g: c.c_g(),
                qubits_touched: c.representative.qubits_touched(),
                representative_graph: c.representative.graph.to_json(),
                occurrences: &c.occurrences,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&report).expect("report serialization cannot fail");
    s.push('\n');
    s
}

pub const CSV_HEADER: &str = "certificate_prefix,c_g,n_r,n_qubits_touched";

/// One row per class: digest prefix, `C_g`, `N_r`, qubits touched.
pub fn gadget_report_csv(classes: &[CandidateClass]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for c in classes {
        out.push_str(&format!(
            "{},{},{},{}\n",
            &c.certificate.digest()[..16],
            c.c_g(),
            c.n_r(),
            c.representative.qubits_touched()
        ));
    }
    out
}
