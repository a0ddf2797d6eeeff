//! Space-time graph of a CNOT circuit.
//!
//! Every CNOT contributes a control node and a target node on its layer,
//! joined by a `cnot` edge. Along each qubit, consecutive CNOT endpoints are
//! chained by `time` edges pointing forward in time. Wire segments before the
//! first and after the last endpoint of a qubit are dropped.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NodeLabel {
    #[serde(rename = "c")]
    C,
    #[serde(rename = "t")]
    T,
    #[serde(rename = "n")]
    N,
}

impl NodeLabel {
    pub fn symbol(self) -> char {
        match self {
            NodeLabel::C => 'c',
            NodeLabel::T => 't',
            NodeLabel::N => 'n',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Cnot,
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    pub qubit: usize,
    pub layer: usize,
    pub label: NodeLabel,
}

/// Edge between node positions (indices into [`CircuitGraph::nodes`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitGraph {
    nodes: Vec<GraphNode>,
    edges: Vec<GraphEdge>,
    source: String,
}

impl CircuitGraph {
    /// Builds a graph from raw parts. Edge endpoints index into `nodes`.
    pub fn from_parts(
        source: impl Into<String>,
        nodes: Vec<GraphNode>,
        edges: Vec<GraphEdge>,
    ) -> Self {
        for e in &edges {
            assert!(
                e.from < nodes.len() && e.to < nodes.len(),
                "edge endpoint out of range"
            );
        }
        Self {
            nodes,
            edges,
            source: source.into(),
        }
    }

    pub fn empty(source: impl Into<String>) -> Self {
        Self::from_parts(source, Vec::new(), Vec::new())
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn cnot_edges(&self) -> impl Iterator<Item = &GraphEdge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Cnot)
    }

    pub fn time_edges(&self) -> impl Iterator<Item = &GraphEdge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Time)
    }

    /// Undirected degree counting both edge kinds.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.edges {
            deg[e.from] += 1;
            deg[e.to] += 1;
        }
        deg
    }

    /// Distinct qubits carrying at least one node.
    pub fn qubits(&self) -> Vec<usize> {
        let mut q: Vec<usize> = self.nodes.iter().map(|n| n.qubit).collect();
        q.sort_unstable();
        q.dedup();
        q
    }

    /// Keeps the nodes flagged in `keep` and the edges between them.
    pub fn retain_nodes(&self, keep: &[bool]) -> Self {
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if keep[i] {
                remap[i] = nodes.len();
                nodes.push(*n);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.from] && keep[e.to])
            .map(|e| GraphEdge {
                from: remap[e.from],
                to: remap[e.to],
                kind: e.kind,
            })
            .collect();
        Self {
            nodes,
            edges,
            source: self.source.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .map(|n| {
                serde_json::json!({
                    "id": n.id,
                    "qubit": n.qubit,
                    "layer": n.layer,
                    "label": n.label.symbol().to_string(),
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|e| {
                serde_json::json!({
                    "from": self.nodes[e.from].id,
                    "to": self.nodes[e.to].id,
                    "kind": match e.kind { EdgeKind::Cnot => "cnot", EdgeKind::Time => "time" },
                })
            })
            .collect();
        serde_json::json!({ "nodes": nodes, "edges": edges })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for n in &self.nodes {
            let _ = writeln!(
                out,
                "  {} [label=\"{}{}\" pos=\"{},{}!\"];",
                n.id,
                n.label.symbol(),
                n.id,
                n.layer,
                n.qubit
            );
        }
        for e in &self.edges {
            let color = match e.kind {
                EdgeKind::Cnot => "red",
                EdgeKind::Time => "blue",
            };
            let _ = writeln!(
                out,
                "  {} -> {} [color={color}];",
                self.nodes[e.from].id, self.nodes[e.to].id
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn circuit_to_graph(c: &Circuit) -> CircuitGraph {
    let mut nodes = Vec::with_capacity(2 * c.cnot_count());
    let mut edges = Vec::new();
    let mut per_qubit: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for g in c.gates() {
        let ci = nodes.len();
        nodes.push(GraphNode {
            id: ci,
            qubit: g.control,
            layer: g.layer,
            label: NodeLabel::C,
        });
        let ti = nodes.len();
        nodes.push(GraphNode {
            id: ti,
            qubit: g.target,
            layer: g.layer,
            label: NodeLabel::T,
        });
        edges.push(GraphEdge {
            from: ci,
            to: ti,
            kind: EdgeKind::Cnot,
        });
        per_qubit.entry(g.control).or_default().push(ci);
        per_qubit.entry(g.target).or_default().push(ti);
    }
    // Gates are already in layer order, so each chain is sorted.
    for chain in per_qubit.values() {
        for w in chain.windows(2) {
            edges.push(GraphEdge {
                from: w[0],
                to: w[1],
                kind: EdgeKind::Time,
            });
        }
    }
    CircuitGraph::from_parts(c.name(), nodes, edges)
}

/// Repeatedly deletes nodes of undirected degree at most one until none remain.
pub fn prune_open_parts(g: &CircuitGraph) -> CircuitGraph {
    let mut deg = g.degrees();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); g.node_count()];
    for e in g.edges() {
        adjacency[e.from].push(e.to);
        adjacency[e.to].push(e.from);
    }
    let mut alive = vec![true; g.node_count()];
    let mut queue: VecDeque<usize> = (0..g.node_count()).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in &adjacency[v] {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    queue.push_back(u);
                }
            }
        }
    }
    g.retain_nodes(&alive)
}

/// Non-empty and a fixpoint of [`prune_open_parts`], i.e. minimum degree two.
pub fn is_closed(g: &CircuitGraph) -> bool {
    !g.is_empty() && g.degrees().iter().all(|&d| d >= 2)
}

/// Weak connectivity; the empty graph is not connected.
pub fn is_connected(g: &CircuitGraph) -> bool {
    let n = g.node_count();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = n;
    for e in g.edges() {
        let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components == 1
}
