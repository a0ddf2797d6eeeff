//! Brute-force reference implementations shared by the integration tests.
//! None of these call into the miner or the canonical labeling code.
#![allow(dead_code)]

use qgadget::graph::{GraphEdge, GraphNode};
use qgadget::tableau::{CliffordTableau, PauliString, StabilizerCode};
use qgadget::{Circuit, CircuitGraph, EdgeKind, NodeLabel};
use rand::seq::SliceRandom;
use rand::Rng;

/// Labeled multi-digraph: labels 0 = c, 1 = t, 2 = n; kinds 0 = cnot, 1 = time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    pub labels: Vec<u8>,
    pub edges: Vec<(usize, usize, u8)>,
}

impl Digraph {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn from_graph(g: &CircuitGraph) -> Self {
        Self {
            labels: g
                .nodes()
                .iter()
                .map(|v| match v.label {
                    NodeLabel::C => 0,
                    NodeLabel::T => 1,
                    NodeLabel::N => 2,
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.from, e.to, if e.kind == EdgeKind::Cnot { 0 } else { 1 }))
                .collect(),
        }
    }

    pub fn to_graph(&self) -> CircuitGraph {
        let nodes = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, &l)| GraphNode {
                id: i,
                qubit: 0,
                layer: i,
                label: [NodeLabel::C, NodeLabel::T, NodeLabel::N][l as usize],
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|&(a, b, k)| GraphEdge {
                from: a,
                to: b,
                kind: if k == 0 {
                    EdgeKind::Cnot
                } else {
                    EdgeKind::Time
                },
            })
            .collect();
        CircuitGraph::from_parts("oracle", nodes, edges)
    }

    /// Parses the `{nodes:[{id,label}], edges:[{from,to,kind}]}` export.
    pub fn from_json(v: &serde_json::Value) -> Self {
        let nodes = v["nodes"].as_array().unwrap();
        let ids: Vec<u64> = nodes.iter().map(|n| n["id"].as_u64().unwrap()).collect();
        let pos = |id: u64| ids.iter().position(|&x| x == id).unwrap();
        Self {
            labels: nodes
                .iter()
                .map(|n| match n["label"].as_str().unwrap() {
                    "c" => 0,
                    "t" => 1,
                    _ => 2,
                })
                .collect(),
            edges: v["edges"]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| {
                    (
                        pos(e["from"].as_u64().unwrap()),
                        pos(e["to"].as_u64().unwrap()),
                        if e["kind"] == "cnot" { 0 } else { 1 },
                    )
                })
                .collect(),
        }
    }

    fn edge_counts(&self) -> Vec<Vec<[u8; 2]>> {
        let n = self.n();
        let mut m = vec![vec![[0u8; 2]; n]; n];
        for &(a, b, k) in &self.edges {
            m[a][b][k as usize] += 1;
        }
        m
    }

    fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n()];
        for &(a, b, _) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut labels = vec![0; self.n()];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v];
        }
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b, k)| (perm[a], perm[b], k))
            .collect();
        edges.sort_unstable();
        Self { labels, edges }
    }
}

/// Tries every permutation of `0..n`.
pub fn isomorphic_all_perms(a: &Digraph, b: &Digraph) -> bool {
    if a.n() != b.n() || a.edges.len() != b.edges.len() {
        return false;
    }
    let (ma, mb) = (a.edge_counts(), b.edge_counts());
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok = (0..n).all(|v| a.labels[v] == b.labels[perm[v]])
            && (0..n).all(|u| (0..n).all(|v| ma[u][v] == mb[perm[u]][perm[v]]));
        if ok {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Backtracking isomorphism test for larger graphs.
pub fn isomorphic(a: &Digraph, b: &Digraph) -> bool {
    if a.n() != b.n() || a.edges.len() != b.edges.len() {
        return false;
    }
    let mut la = a.labels.clone();
    let mut lb = b.labels.clone();
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb {
        return false;
    }
    let (ma, mb) = (a.edge_counts(), b.edge_counts());
    let (da, db) = (a.degrees(), b.degrees());
    let n = a.n();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn extend(
        v: usize,
        n: usize,
        a: &Digraph,
        b: &Digraph,
        ma: &[Vec<[u8; 2]>],
        mb: &[Vec<[u8; 2]>],
        da: &[usize],
        db: &[usize],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || a.labels[v] != b.labels[w] || da[v] != db[w] || ma[v][v] != mb[w][w] {
                continue;
            }
            let consistent = (0..v).all(|u| ma[u][v] == mb[map[u]][w] && ma[v][u] == mb[w][map[u]]);
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(v + 1, n, a, b, ma, mb, da, db, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    extend(0, n, a, b, &ma, &mb, &da, &db, &mut map, &mut used)
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Candidate built straight from the circuit, plus whether a connecting
/// timeline passes an unselected CNOT endpoint.
pub fn oracle_candidate(c: &Circuit, subset: &[usize]) -> (Digraph, bool) {
    let mut chosen = subset.to_vec();
    chosen.sort_unstable();
    let gates = c.gates();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut wire: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.n_qubits()];
    for &i in &chosen {
        let g = gates[i];
        let cn = labels.len();
        labels.push(0);
        labels.push(1);
        edges.push((cn, cn + 1, 0));
        wire[g.control].push((g.layer, cn));
        wire[g.target].push((g.layer, cn + 1));
    }
    let mut tainted = false;
    for (q, chain) in wire.iter().enumerate() {
        for w in chain.windows(2) {
            edges.push((w[0].1, w[1].1, 1));
            let (lo, hi) = (w[0].0, w[1].0);
            if gates
                .iter()
                .any(|g| g.layer > lo && g.layer < hi && (g.control == q || g.target == q))
            {
                tainted = true;
            }
        }
    }
    (Digraph { labels, edges }, tainted)
}

pub fn oracle_connected(g: &Digraph) -> bool {
    let n = g.n();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b, _) in &g.edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Peels degree ≤ 1 nodes; closed iff nothing is peeled and the graph is non-empty.
pub fn oracle_closed(g: &Digraph) -> bool {
    let n = g.n();
    if n == 0 {
        return false;
    }
    let mut alive = vec![true; n];
    loop {
        let mut deg = vec![0; n];
        for &(a, b, _) in &g.edges {
            if alive[a] && alive[b] {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        let doomed: Vec<usize> = (0..n).filter(|&v| alive[v] && deg[v] < 2).collect();
        if doomed.is_empty() {
            break;
        }
        for v in doomed {
            alive[v] = false;
        }
    }
    alive.into_iter().all(|a| a)
}

/// Commutation decided by simulating both orders on a tableau.
pub fn tableau_commute(n: usize, a: (usize, usize), b: (usize, usize)) -> bool {
    let mut ab = CliffordTableau::identity(n);
    ab.apply_cnot(a.0, a.1).unwrap();
    ab.apply_cnot(b.0, b.1).unwrap();
    let mut ba = CliffordTableau::identity(n);
    ba.apply_cnot(b.0, b.1).unwrap();
    ba.apply_cnot(a.0, a.1).unwrap();
    ab == ba
}

pub fn oracle_stationary(c: &Circuit, subset: &[usize]) -> bool {
    let gates = c.gates();
    let acts = |i: usize, q: usize| gates[i].control == q || gates[i].target == q;
    for (x, &i) in subset.iter().enumerate() {
        for &j in &subset[x + 1..] {
            let (i, j) = (i.min(j), i.max(j));
            let shared: Vec<usize> = (0..c.n_qubits())
                .filter(|&q| acts(i, q) && acts(j, q))
                .collect();
            if shared.is_empty() {
                continue;
            }
            let blocked = subset
                .iter()
                .any(|&m| m > i && m < j && shared.iter().any(|&q| acts(m, q)));
            let gi = (gates[i].control, gates[i].target);
            let gj = (gates[j].control, gates[j].target);
            if !blocked && tableau_commute(c.n_qubits(), gi, gj) {
                return false;
            }
        }
    }
    true
}

pub fn oracle_admissible(c: &Circuit, subset: &[usize]) -> Option<Digraph> {
    let (g, tainted) = oracle_candidate(c, subset);
    (!tainted && oracle_connected(&g) && oracle_closed(&g) && oracle_stationary(c, subset))
        .then_some(g)
}

/// Classes of admissible `k`-subsets over all circuits, as
/// (representative, occurrence count), by backtracking isomorphism.
pub fn oracle_classes(circuits: &[Circuit], k: usize) -> Vec<(Digraph, usize)> {
    let mut classes: Vec<(Digraph, usize)> = Vec::new();
    for c in circuits {
        if k > c.cnot_count() {
            continue;
        }
        for s in combinations(c.cnot_count(), k) {
            if let Some(g) = oracle_admissible(c, &s) {
                match classes.iter_mut().find(|(r, _)| isomorphic(r, &g)) {
                    Some(cls) => cls.1 += 1,
                    None => classes.push((g, 1)),
                }
            }
        }
    }
    classes
}

pub fn random_circuit<R: Rng>(rng: &mut R, name: &str, n: usize, gates: usize) -> Circuit {
    let pairs: Vec<(usize, usize)> = (0..gates)
        .map(|_| {
            let c = rng.gen_range(0..n);
            let mut t = rng.gen_range(0..n - 1);
            if t >= c {
                t += 1;
            }
            (c, t)
        })
        .collect();
    Circuit::new(name, n, &pairs).unwrap()
}

pub fn random_digraph<R: Rng>(rng: &mut R, n: usize) -> Digraph {
    let labels = (0..n).map(|_| rng.gen_range(0..3u8)).collect();
    let m = rng.gen_range(0..=2 * n);
    let mut edges: Vec<(usize, usize, u8)> = (0..m)
        .map(|_| {
            (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..2u8),
            )
        })
        .filter(|&(a, b, _)| a != b)
        .collect();
    edges.sort_unstable();
    Digraph { labels, edges }
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Minimum weight of a Pauli commuting with every generator and outside the
/// stabilizer group, by scanning all `4^n` Paulis.
pub fn brute_force_distance(code: &StabilizerCode) -> usize {
    let n = code.n();
    let gens = code.generators();
    let mut group: Vec<(Vec<bool>, Vec<bool>)> = Vec::new();
    for mask in 0u32..(1 << gens.len()) {
        let mut x = vec![false; n];
        let mut z = vec![false; n];
        for (i, g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for q in 0..n {
                    x[q] ^= g.x_bit(q);
                    z[q] ^= g.z_bit(q);
                }
            }
        }
        group.push((x, z));
    }
    let mut best = usize::MAX;
    for code_word in 1u64..4u64.pow(n as u32) {
        let mut x = vec![false; n];
        let mut z = vec![false; n];
        let mut c = code_word;
        for q in 0..n {
            match c % 4 {
                1 => x[q] = true,
                2 => z[q] = true,
                3 => {
                    x[q] = true;
                    z[q] = true;
                }
                _ => {}
            }
            c /= 4;
        }
        let commutes = gens.iter().all(|g: &PauliString| {
            (0..n)
                .filter(|&q| (x[q] && g.z_bit(q)) ^ (z[q] && g.x_bit(q)))
                .count()
                % 2
                == 0
        });
        if commutes && !group.contains(&(x.clone(), z.clone())) {
            let w = (0..n).filter(|&q| x[q] || z[q]).count();
            best = best.min(w);
        }
    }
    best
}
