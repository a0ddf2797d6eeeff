//! Enumeration of CNOT subsets and admissibility filtering.
//!
//! For a chosen subset of CNOTs the candidate graph holds the endpoints of
//! those CNOTs, their `cnot` edges, and one `time` edge between every pair of
//! chosen endpoints that are consecutive on a qubit. If the source wire
//! between such a pair passes through an endpoint of an unselected CNOT the
//! candidate is tainted: that endpoint would become an "empty" node.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{cnots_commute, CnotGate};
use crate::graph::{
    is_closed, is_connected, CircuitGraph, EdgeKind, GraphEdge, GraphNode, NodeLabel,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MineError {
    #[error("gadget size {c_g} out of range 1..={c_t}")]
    SubsetSizeOutOfRange { c_g: usize, c_t: usize },
    #[error("CNOT index {0} out of range")]
    BadCnotIndex(usize),
}

/// Where a candidate came from: circuit name and the layers of its CNOTs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Provenance {
    pub circuit: String,
    pub layers: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphCandidate {
    pub source_circuit: String,
    /// Chosen CNOTs in layer order.
    pub gates: Vec<CnotGate>,
    pub graph: CircuitGraph,
    /// Set when a connecting timeline crosses an unselected CNOT endpoint.
    pub tainted: bool,
}

impl SubgraphCandidate {
    pub fn c_g(&self) -> usize {
        self.gates.len()
    }

    pub fn provenance(&self) -> Provenance {
        Provenance {
            circuit: self.source_circuit.clone(),
            layers: self.gates.iter().map(|g| g.layer).collect(),
        }
    }

    pub fn qubits_touched(&self) -> usize {
        self.graph.qubits().len()
    }
}

/// CNOTs of a graph with their endpoint node positions, plus the per-qubit
/// layer lists of every endpoint in the source graph.
struct CnotIndex {
    cnots: Vec<(CnotGate, usize, usize)>,
    wire_layers: BTreeMap<usize, Vec<usize>>,
}

impl CnotIndex {
    fn new(g: &CircuitGraph) -> Self {
        let nodes = g.nodes();
        let mut cnots: Vec<(CnotGate, usize, usize)> = g
            .cnot_edges()
            .map(|e| {
                let (c, t) = (&nodes[e.from], &nodes[e.to]);
                (CnotGate::new(c.qubit, t.qubit, c.layer), e.from, e.to)
            })
            .collect();
        cnots.sort_by_key(|(gate, _, _)| gate.layer);
        let mut wire_layers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for n in nodes {
            wire_layers.entry(n.qubit).or_default().push(n.layer);
        }
        for layers in wire_layers.values_mut() {
            layers.sort_unstable();
        }
        Self { cnots, wire_layers }
    }

    fn len(&self) -> usize {
        self.cnots.len()
    }

    /// Every chosen endpoint needs a chosen neighbour on its wire, otherwise
    /// it has degree one and the candidate cannot be closed.
    fn may_close(&self, subset: &[usize]) -> bool {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &i in subset {
            let g = &self.cnots[i].0;
            *counts.entry(g.control).or_default() += 1;
            *counts.entry(g.target).or_default() += 1;
        }
        counts.values().all(|&c| c >= 2)
    }

    fn extract(&self, source: &CircuitGraph, subset: &[usize]) -> SubgraphCandidate {
        let mut chosen: Vec<usize> = subset.to_vec();
        chosen.sort_by_key(|&i| self.cnots[i].0.layer);
        let src_nodes = source.nodes();
        let mut nodes = Vec::with_capacity(2 * chosen.len());
        let mut edges = Vec::new();
        let mut wires: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for &i in &chosen {
            let (gate, cn, tn) = self.cnots[i];
            let ci = nodes.len();
            nodes.push(src_nodes[cn]);
            let ti = nodes.len();
            nodes.push(src_nodes[tn]);
            edges.push(GraphEdge {
                from: ci,
                to: ti,
                kind: EdgeKind::Cnot,
            });
            wires
                .entry(gate.control)
                .or_default()
                .push((gate.layer, ci));
            wires.entry(gate.target).or_default().push((gate.layer, ti));
        }
        let mut tainted = false;
        for (qubit, chain) in &wires {
            let all = &self.wire_layers[qubit];
            for w in chain.windows(2) {
                let ((la, a), (lb, b)) = (w[0], w[1]);
                edges.push(GraphEdge {
                    from: a,
                    to: b,
                    kind: EdgeKind::Time,
                });
                let lo = all.partition_point(|&l| l <= la);
                if lo < all.len() && all[lo] < lb {
                    tainted = true;
                }
            }
        }
        SubgraphCandidate {
            source_circuit: source.source().to_string(),
            gates: chosen.iter().map(|&i| self.cnots[i].0).collect(),
            graph: CircuitGraph::from_parts(source.source(), nodes, edges),
            tainted,
        }
    }
}

/// Lexicographic `k`-combinations of `0..n`.
#[derive(Debug, Clone)]
pub struct CnotSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl CnotSubsets {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: Some((0..k).collect()),
        }
    }
}

impl Iterator for CnotSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let c = self.current.as_mut().expect("checked above");
        let k = c.len();
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if c[i] < self.n - k + i {
                c[i] += 1;
                for j in (i + 1)..k {
                    c[j] = c[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

/// All `C_g`-subsets of the graph's CNOTs (indices in layer order), each once,
/// in lexicographic order.
pub fn enumerate_cnot_subsets(g: &CircuitGraph, c_g: usize) -> Result<CnotSubsets, MineError> {
    let c_t = g.cnot_edges().count();
    if c_g == 0 || c_g > c_t {
        return Err(MineError::SubsetSizeOutOfRange { c_g, c_t });
    }
    Ok(CnotSubsets::new(c_t, c_g))
}

pub fn extract_candidate(
    g: &CircuitGraph,
    subset: &[usize],
) -> Result<SubgraphCandidate, MineError> {
    let index = CnotIndex::new(g);
    if let Some(&bad) = subset.iter().find(|&&i| i >= index.len()) {
        return Err(MineError::BadCnotIndex(bad));
    }
    Ok(index.extract(g, subset))
}

/// Keep iff no connecting timeline crosses an unselected CNOT endpoint.
pub fn filter_empty_nodes(cand: &SubgraphCandidate) -> bool {
    !cand.tainted
}

pub fn filter_closed_connected(cand: &SubgraphCandidate) -> bool {
    is_connected(&cand.graph) && is_closed(&cand.graph)
}

/// Reject iff two timeline-adjacent chosen CNOTs commute. Two gates are
/// timeline-adjacent when they share a qubit and no other chosen gate acts on
/// a shared qubit strictly between them.
pub fn filter_stationary(cand: &SubgraphCandidate) -> bool {
    let gates = &cand.gates;
    for (i, a) in gates.iter().enumerate() {
        for b in &gates[i + 1..] {
            let shared: Vec<usize> = [a.control, a.target]
                .into_iter()
                .filter(|&q| b.acts_on(q))
                .collect();
            if shared.is_empty() {
                continue;
            }
            let (lo, hi) = (a.layer.min(b.layer), a.layer.max(b.layer));
            let blocked = gates
                .iter()
                .any(|g| g.layer > lo && g.layer < hi && shared.iter().any(|&q| g.acts_on(q)));
            if !blocked && cnots_commute(a, b) {
                return false;
            }
        }
    }
    true
}

/// Collapses chains of time edges running through `n`-labeled nodes that have
/// exactly one incoming and one outgoing time edge and nothing else.
pub fn contract_timelines(cand: &SubgraphCandidate) -> SubgraphCandidate {
    let mut out = cand.clone();
    out.graph = contract_graph(&cand.graph);
    out
}

fn contract_graph(g: &CircuitGraph) -> CircuitGraph {
    let n = g.node_count();
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        outgoing[e.from].push(i);
        incoming[e.to].push(i);
    }
    let interior = |v: usize| {
        g.nodes()[v].label == NodeLabel::N
            && incoming[v].len() == 1
            && outgoing[v].len() == 1
            && g.edges()[incoming[v][0]].kind == EdgeKind::Time
            && g.edges()[outgoing[v][0]].kind == EdgeKind::Time
    };
    if !(0..n).any(interior) {
        return g.clone();
    }
    let keep: Vec<bool> = (0..n).map(|v| !interior(v)).collect();
    let mut edges: Vec<GraphEdge> = g
        .edges()
        .iter()
        .filter(|e| keep[e.from] && keep[e.to])
        .copied()
        .collect();
    // Walk each chain from a kept node through interior nodes.
    for e in g.edges() {
        if e.kind != EdgeKind::Time || !keep[e.from] || keep[e.to] {
            continue;
        }
        let mut v = e.to;
        let mut steps = 0;
        while !keep[v] && steps <= n {
            v = g.edges()[outgoing[v][0]].to;
            steps += 1;
        }
        if keep[v] {
            edges.push(GraphEdge {
                from: e.from,
                to: v,
                kind: EdgeKind::Time,
            });
        }
    }
    let mut remap = vec![usize::MAX; n];
    let mut nodes: Vec<GraphNode> = Vec::new();
    for v in 0..n {
        if keep[v] {
            remap[v] = nodes.len();
            nodes.push(g.nodes()[v]);
        }
    }
    let edges = edges
        .into_iter()
        .map(|e| GraphEdge {
            from: remap[e.from],
            to: remap[e.to],
            kind: e.kind,
        })
        .collect();
    CircuitGraph::from_parts(g.source(), nodes, edges)
}

/// Runs every admissibility filter.
pub fn admissible(cand: &SubgraphCandidate) -> bool {
    filter_empty_nodes(cand) && filter_closed_connected(cand) && filter_stationary(cand)
}

#[derive(Debug, Clone, Default)]
pub struct MineLimits {
    /// Stop after this many kept candidates (per call).
    pub max_candidates: Option<usize>,
    /// Stop once this instant has passed.
    pub deadline: Option<Instant>,
    /// Skip subsets that leave some chosen endpoint alone on its wire. Does
    /// not change the result.
    pub early_reject: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationReason {
    MaxCandidates,
    TimeBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MineOutput {
    pub candidates: Vec<SubgraphCandidate>,
    /// Subsets examined before stopping.
    pub subsets_examined: u64,
    pub truncated: Option<TruncationReason>,
}

const CHUNK: usize = 2048;

/// enumerate → extract → filters → contract, in lexicographic subset order.
///
/// A `c_g` larger than the CNOT count yields an empty, untruncated result.
/// Subsets are evaluated in parallel chunks on the current rayon pool and
/// merged in order, so the output does not depend on the pool size.
pub fn mine_circuit(
    g: &CircuitGraph,
    c_g: usize,
    limits: &MineLimits,
) -> Result<MineOutput, MineError> {
    let index = CnotIndex::new(g);
    let c_t = index.len();
    if c_g == 0 {
        return Err(MineError::SubsetSizeOutOfRange { c_g, c_t });
    }
    let mut out = MineOutput {
        candidates: Vec::new(),
        subsets_examined: 0,
        truncated: None,
    };
    if c_g > c_t {
        return Ok(out);
    }
    let mut subsets = CnotSubsets::new(c_t, c_g);
    loop {
        if limits.deadline.is_some_and(|d| Instant::now() >= d) {
            out.truncated = Some(TruncationReason::TimeBudget);
            break;
        }
        let chunk: Vec<Vec<usize>> = subsets.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let kept: Vec<Option<SubgraphCandidate>> = chunk
            .par_iter()
            .map(|subset| {
                if limits.early_reject && !index.may_close(subset) {
                    return None;
                }
                let cand = index.extract(g, subset);
                admissible(&cand).then(|| contract_timelines(&cand))
            })
            .collect();
        for (cand, _) in kept.into_iter().zip(&chunk) {
            out.subsets_examined += 1;
            if let Some(c) = cand {
                out.candidates.push(c);
                if limits
                    .max_candidates
                    .is_some_and(|m| out.candidates.len() >= m)
                {
                    out.truncated = Some(TruncationReason::MaxCandidates);
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}
