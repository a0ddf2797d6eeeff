//! Circuit corpora: ingestion, canonical deduplication, seeded encoder
//! generation, on-disk layout and summary statistics.
//!
//! A corpus directory holds one `.txt` circuit file per entry and a
//! `manifest.json` recording, per entry, the logical qubit count, ancilla
//! preparation bases, canonical-form digest and code parameters.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError};
use crate::tableau::{
    circuit_to_tableau, code_distance, generator_weights, min_logical_weight, CanonicalForm,
    DistanceConfig, Encoder, PrepBasis, StabilizerCode, TableauError, DEFAULT_DISTANCE_QUBIT_BOUND,
};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const FORMAT_VERSION: u32 = 1;
pub const PRNG_ID: &str = "chacha8-v1";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid manifest: {message}")]
    Manifest { path: String, message: String },
    #[error("{name}: {source}")]
    Encoder {
        name: String,
        #[source]
        source: TableauError,
    },
    #[error("{name}: canonical digest does not match the manifest")]
    DigestMismatch { name: String },
    #[error("invalid generator configuration: {0}")]
    Config(String),
    #[error("no encoder with distance >= {target} found within {attempts} attempts (best distance {best})")]
    NoEncoder {
        target: usize,
        attempts: u64,
        best: usize,
    },
    #[error("corpus is empty")]
    Empty,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Ingested,
    Generated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    /// `None` when the code is beyond the distance search bound.
    pub d: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub circuit: Circuit,
    /// Logical qubits `0..k`; `k == n` treats the circuit as a plain unitary.
    pub k: usize,
    /// Preparation basis of each ancilla `k..n`.
    pub prep: Vec<PrepBasis>,
    pub canonical: CanonicalForm,
    pub code_params: Option<CodeParams>,
    pub origin: Origin,
}

impl CorpusEntry {
    pub fn new(
        circuit: Circuit,
        k: usize,
        prep: Vec<PrepBasis>,
        origin: Origin,
    ) -> Result<Self, CorpusError> {
        let n = circuit.n_qubits();
        let name = circuit.name().to_string();
        let wrap = |source| CorpusError::Encoder {
            name: name.clone(),
            source,
        };
        if k >= n {
            if !prep.is_empty() {
                return Err(wrap(TableauError::PrepLength {
                    expected: 0,
                    found: prep.len(),
                }));
            }
            let canonical = CanonicalForm::encoder(&circuit_to_tableau(&circuit), n);
            return Ok(Self {
                circuit,
                k: n,
                prep,
                canonical,
                code_params: None,
                origin,
            });
        }
        let enc = Encoder::new(circuit, k, prep).map_err(wrap)?;
        let code = enc.code();
        let d = if n <= DEFAULT_DISTANCE_QUBIT_BOUND {
            Some(code_distance(&code, &DistanceConfig::default()).map_err(wrap)?)
        } else {
            None
        };
        Ok(Self {
            canonical: enc.canonical(),
            code_params: Some(CodeParams { n, k, d }),
            circuit: enc.circuit,
            k,
            prep: enc.prep,
            origin,
        })
    }

    /// The stabilizer code, when the entry is an encoder.
    pub fn code(&self) -> Option<StabilizerCode> {
        (self.k < self.circuit.n_qubits()).then(|| {
            Encoder::new(self.circuit.clone(), self.k, self.prep.clone())
                .expect("validated on construction")
                .code()
        })
    }

    pub fn prep_string(&self) -> String {
        self.prep.iter().map(|b| b.symbol()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Duplicate {
    pub name: String,
    pub duplicate_of: String,
}

/// Entries with pairwise distinct canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
    duplicates: Vec<Duplicate>,
    generator: Option<GeneratorRecord>,
}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn duplicates(&self) -> &[Duplicate] {
        &self.duplicates
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn circuits(&self) -> impl Iterator<Item = &Circuit> {
        self.entries.iter().map(|e| &e.circuit)
    }

    /// Adds the entry unless its canonical form is already present. Returns
    /// whether it was added.
    pub fn insert(&mut self, entry: CorpusEntry) -> bool {
        if let Some(prev) = self.entries.iter().find(|e| e.canonical == entry.canonical) {
            self.duplicates.push(Duplicate {
                name: entry.circuit.name().to_string(),
                duplicate_of: prev.circuit.name().to_string(),
            });
            return false;
        }
        self.entries.push(entry);
        true
    }

    /// Writes circuit files and the manifest into `dir`, creating it.
    pub fn write_dir(&self, dir: &Path) -> Result<(), CorpusError> {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let mut records = Vec::with_capacity(self.entries.len());
        for (i, e) in self.entries.iter().enumerate() {
            let file = format!("{:04}_{}.txt", i, sanitize(e.circuit.name()));
            let path = dir.join(&file);
            fs::write(&path, e.circuit.to_text()).map_err(io_err(&path))?;
            records.push(ManifestEntry {
                file,
                name: e.circuit.name().to_string(),
                k: e.k,
                prep: e.prep_string(),
                canonical_digest: e.canonical.digest(),
                code: e.code_params,
                origin: e.origin,
            });
        }
        let manifest = Manifest {
            format_version: FORMAT_VERSION,
            generator: self.generator.clone(),
            entries: records,
        };
        let path = dir.join(MANIFEST_FILE);
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        text.push('\n');
        fs::write(&path, text).map_err(io_err(&path))
    }

    /// Loads a directory written by [`Corpus::write_dir`].
    pub fn read_dir(dir: &Path) -> Result<Self, CorpusError> {
        let mut corpus = Corpus::new();
        corpus.load_manifest(&dir.join(MANIFEST_FILE))?;
        Ok(corpus)
    }

    fn load_manifest(&mut self, path: &Path) -> Result<(), CorpusError> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        let manifest: Manifest =
            serde_json::from_str(&text).map_err(|e| CorpusError::Manifest {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
        let dir = path.parent().unwrap_or(Path::new("."));
        for rec in manifest.entries {
            let circuit = Circuit::read_file(&dir.join(&rec.file))?.with_name(rec.name.clone());
            let prep = rec
                .prep
                .chars()
                .map(|c| {
                    PrepBasis::from_symbol(c).ok_or_else(|| CorpusError::Manifest {
                        path: path.display().to_string(),
                        message: format!("bad prep symbol '{c}' for {}", rec.name),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let entry = CorpusEntry::new(circuit, rec.k, prep, rec.origin)?;
            if entry.canonical.digest() != rec.canonical_digest {
                return Err(CorpusError::DigestMismatch { name: rec.name });
            }
            self.insert(entry);
        }
        if self.generator.is_none() {
            self.generator = manifest.generator;
        }
        Ok(())
    }
}

fn sanitize(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if s.is_empty() {
        "circuit".into()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ManifestEntry {
    file: String,
    name: String,
    k: usize,
    prep: String,
    canonical_digest: String,
    code: Option<CodeParams>,
    origin: Origin,
}

/// Generation settings stored in a corpus manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub prng: String,
    pub seed: u64,
    pub config: GeneratorConfig,
    pub attempts_used: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Manifest {
    format_version: u32,
    generator: Option<GeneratorRecord>,
    entries: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, Default)]
pub struct IngestOptions {
    /// Treat plain circuit files as encoders with this many logical qubits
    /// and all ancillas in `|0⟩`. `None` keeps them as whole unitaries.
    pub k: Option<usize>,
}

fn is_circuit_file(p: &Path) -> bool {
    let is_manifest = p.file_name().is_some_and(|n| n == MANIFEST_FILE);
    !is_manifest
        && p.extension()
            .is_some_and(|e| e == "txt" || e == "json" || e == "circ" || e == "qc")
}

/// Reads circuit files, corpus directories (with a manifest) and plain
/// directories of circuit files, in the order given. Directory contents are
/// visited in file-name order.
pub fn ingest(paths: &[PathBuf], opts: &IngestOptions) -> Result<Corpus, CorpusError> {
    let mut corpus = Corpus::new();
    for path in paths {
        if path.is_dir() {
            if path.join(MANIFEST_FILE).is_file() {
                corpus.load_manifest(&path.join(MANIFEST_FILE))?;
                continue;
            }
            let mut files: Vec<PathBuf> = fs::read_dir(path)
                .map_err(io_err(path))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file() && is_circuit_file(p))
                .collect();
            files.sort();
            for f in files {
                ingest_file(&mut corpus, &f, opts)?;
            }
        } else if path.file_name().is_some_and(|n| n == MANIFEST_FILE) {
            corpus.load_manifest(path)?;
        } else {
            ingest_file(&mut corpus, path, opts)?;
        }
    }
    Ok(corpus)
}

fn ingest_file(corpus: &mut Corpus, path: &Path, opts: &IngestOptions) -> Result<(), CorpusError> {
    let circuit = Circuit::read_file(path)?;
    let n = circuit.n_qubits();
    let k = opts.k.unwrap_or(n).min(n);
    let entry = CorpusEntry::new(circuit, k, vec![PrepBasis::Z; n - k], Origin::Ingested)?;
    corpus.insert(entry);
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    All,
    /// `|i - j| = 1`.
    Nn,
    /// `|i - j| <= 2`.
    Nnn,
    /// Explicit undirected edge list.
    Edges(Vec<(usize, usize)>),
}

impl Connectivity {
    /// Reads `a b` pairs, one per line; `#` starts a comment.
    pub fn parse_edges(text: &str) -> Result<Self, CorpusError> {
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<Result<_, _>>()
                .map_err(|_| CorpusError::Config(format!("bad edge on line {}", i + 1)))?;
            match nums[..] {
                [a, b] if a != b => edges.push((a.min(b), a.max(b))),
                _ => return Err(CorpusError::Config(format!("bad edge on line {}", i + 1))),
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Connectivity::Edges(edges))
    }

    pub fn allows(&self, a: usize, b: usize) -> bool {
        let d = a.abs_diff(b);
        match self {
            _ if a == b => false,
            Connectivity::All => true,
            Connectivity::Nn => d == 1,
            Connectivity::Nnn => d <= 2,
            Connectivity::Edges(e) => e.contains(&(a.min(b), a.max(b))),
        }
    }

    /// Ordered `(control, target)` pairs allowed on `n` qubits.
    pub fn directed_pairs(&self, n: usize) -> Vec<(usize, usize)> {
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.allows(a, b))
            .collect()
    }

    fn is_connected(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (w, s) in seen.iter_mut().enumerate() {
                if !*s && self.allows(v, w) {
                    *s = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Random,
    Hillclimb,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub k: usize,
    pub target_d: usize,
    pub connectivity: Connectivity,
    pub max_gates: usize,
    pub attempts: u64,
    pub seed: u64,
    pub method: Method,
    /// Stop once this many distinct encoders are kept.
    pub count: Option<usize>,
}

impl GeneratorConfig {
    fn validate(&self) -> Result<(), CorpusError> {
        let bad = |m: &str| Err(CorpusError::Config(m.to_string()));
        if self.n == 0 || self.k >= self.n {
            return bad("need 0 <= k < n");
        }
        if self.n > DEFAULT_DISTANCE_QUBIT_BOUND {
            return bad("n exceeds the distance search bound");
        }
        if self.target_d == 0 {
            return bad("target distance must be at least 1");
        }
        if self.max_gates == 0 {
            return bad("max_gates must be positive");
        }
        if let Connectivity::Edges(e) = &self.connectivity {
            if e.iter().any(|&(_, b)| b >= self.n) {
                return bad("connectivity edge out of range");
            }
        }
        if self.n > 1 && !self.connectivity.is_connected(self.n) {
            return bad("connectivity graph is not connected");
        }
        Ok(())
    }
}

/// `(distance, -count)` capped at the target: larger is better.
type Score = (usize, i64);

struct Scorer<'a> {
    cfg: &'a GeneratorConfig,
    dist: DistanceConfig,
}

impl Scorer<'_> {
    fn score(&self, enc: &Encoder) -> Score {
        match min_logical_weight(&enc.code(), &self.dist).expect("config validated") {
            Some((w, count)) => (w, -(count as i64)),
            None => (self.cfg.target_d, 0),
        }
    }

    fn reached(&self, s: Score) -> bool {
        s.0 >= self.cfg.target_d
    }
}

fn random_prep(rng: &mut ChaCha8Rng, len: usize) -> Vec<PrepBasis> {
    const BASES: [PrepBasis; 3] = [PrepBasis::Z, PrepBasis::X, PrepBasis::Y];
    (0..len).map(|_| BASES[rng.gen_range(0..3)]).collect()
}

fn random_gate(
    rng: &mut ChaCha8Rng,
    pairs: &[(usize, usize)],
    last: Option<(usize, usize)>,
) -> (usize, usize) {
    loop {
        let g = pairs[rng.gen_range(0..pairs.len())];
        if Some(g) != last || pairs.len() == 1 {
            return g;
        }
    }
}

/// Result of one attempt: a qualifying encoder, and the best distance seen.
type Attempt = (Option<Encoder>, usize);

fn attempt_random(
    cfg: &GeneratorConfig,
    scorer: &Scorer,
    pairs: &[(usize, usize)],
    rng: &mut ChaCha8Rng,
) -> Attempt {
    let prep = random_prep(rng, cfg.n - cfg.k);
    let mut gates: Vec<(usize, usize)> = Vec::with_capacity(cfg.max_gates);
    let mut best = 0;
    for _ in 0..cfg.max_gates {
        gates.push(random_gate(rng, pairs, gates.last().copied()));
        let circuit = Circuit::new("", cfg.n, &gates).expect("allowed pairs are valid");
        let enc = Encoder::new(circuit, cfg.k, prep.clone()).expect("config validated");
        let s = scorer.score(&enc);
        best = best.max(s.0);
        if scorer.reached(s) {
            return (Some(enc), best);
        }
    }
    (None, best)
}

const HILLCLIMB_PROPOSALS: usize = 8;

fn attempt_hillclimb(
    cfg: &GeneratorConfig,
    scorer: &Scorer,
    pairs: &[(usize, usize)],
    rng: &mut ChaCha8Rng,
) -> Attempt {
    let prep = random_prep(rng, cfg.n - cfg.k);
    let mut gates: Vec<(usize, usize)> = Vec::new();
    let mut best = 0;
    while gates.len() < cfg.max_gates {
        let mut top: Option<(Score, Encoder)> = None;
        for _ in 0..HILLCLIMB_PROPOSALS {
            let mut next = gates.clone();
            next.push(random_gate(rng, pairs, gates.last().copied()));
            let circuit = Circuit::new("", cfg.n, &next).expect("allowed pairs are valid");
            let enc = Encoder::new(circuit, cfg.k, prep.clone()).expect("config validated");
            let s = scorer.score(&enc);
            if top.as_ref().is_none_or(|(t, _)| s > *t) {
                top = Some((s, enc));
            }
        }
        let (s, enc) = top.expect("at least one proposal");
        best = best.max(s.0);
        if scorer.reached(s) {
            return (Some(enc), best);
        }
        gates = enc.circuit.pairs();
    }
    (None, best)
}

const GEN_CHUNK: u64 = 64;

/// Seeded encoder search. Attempt `i` draws from its own ChaCha8 stream
/// `i` of the seed, so results are independent of thread count. Kept
/// encoders are merged in attempt order and deduplicated canonically.
pub fn generate_encoders(cfg: &GeneratorConfig) -> Result<Corpus, CorpusError> {
    cfg.validate()?;
    let pairs = cfg.connectivity.directed_pairs(cfg.n);
    let scorer = Scorer {
        cfg,
        dist: DistanceConfig {
            max_qubits: DEFAULT_DISTANCE_QUBIT_BOUND,
            max_weight: Some(cfg.target_d),
        },
    };
    let mut corpus = Corpus::new();
    let mut best = 0;
    let mut used = 0u64;
    'outer: while used < cfg.attempts {
        let end = (used + GEN_CHUNK).min(cfg.attempts);
        let results: Vec<Attempt> = (used..end)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(i);
                match cfg.method {
                    Method::Random => attempt_random(cfg, &scorer, &pairs, &mut rng),
                    Method::Hillclimb => attempt_hillclimb(cfg, &scorer, &pairs, &mut rng),
                }
            })
            .collect();
        for (i, (found, b)) in (used..end).zip(results) {
            best = best.max(b);
            let Some(enc) = found else { continue };
            let circuit = enc.circuit.with_name(format!("enc_{i:06}"));
            let entry = CorpusEntry::new(circuit, cfg.k, enc.prep, Origin::Generated)?;
            corpus.insert(entry);
            if cfg.count.is_some_and(|c| corpus.len() >= c) {
                used = i + 1;
                break 'outer;
            }
        }
        used = end;
    }
    if corpus.is_empty() {
        return Err(CorpusError::NoEncoder {
            target: cfg.target_d,
            attempts: cfg.attempts,
            best,
        });
    }
    corpus.generator = Some(GeneratorRecord {
        prng: PRNG_ID.into(),
        seed: cfg.seed,
        config: cfg.clone(),
        attempts_used: used,
    });
    Ok(corpus)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub entries: usize,
    pub cx_mean: f64,
    pub cx_min: usize,
    pub cx_max: usize,
    /// Mean canonical generator weight over encoder entries.
    pub mean_generator_weight: Option<f64>,
    /// `"[[n,k,d]]"` → count; `d` is `?` when not computed.
    pub code_params: BTreeMap<String, usize>,
}

pub fn corpus_stats(corpus: &Corpus) -> Result<CorpusStats, CorpusError> {
    if corpus.is_empty() {
        return Err(CorpusError::Empty);
    }
    let counts: Vec<usize> = corpus.circuits().map(Circuit::cnot_count).collect();
    let mut weights = Vec::new();
    let mut params = BTreeMap::new();
    for e in corpus.entries() {
        if let Some(code) = e.code() {
            weights.extend(generator_weights(&code).weights);
        }
        let key = match e.code_params {
            Some(CodeParams { n, k, d: Some(d) }) => format!("[[{n},{k},{d}]]"),
            Some(CodeParams { n, k, d: None }) => format!("[[{n},{k},?]]"),
            None => format!("unitary n={}", e.circuit.n_qubits()),
        };
        *params.entry(key).or_insert(0) += 1;
    }
    Ok(CorpusStats {
        entries: corpus.len(),
        cx_mean: counts.iter().sum::<usize>() as f64 / counts.len() as f64,
        cx_min: *counts.iter().min().expect("nonempty"),
        cx_max: *counts.iter().max().expect("nonempty"),
        mean_generator_weight: (!weights.is_empty())
            .then(|| weights.iter().sum::<usize>() as f64 / weights.len() as f64),
        code_params: params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, k: usize, d: usize) -> GeneratorConfig {
        GeneratorConfig {
            n,
            k,
            target_d: d,
            connectivity: Connectivity::All,
            max_gates: 12,
            attempts: 200,
            seed: 7,
            method: Method::Hillclimb,
            count: None,
        }
    }

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn commuting_swap_deduplicates() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.txt", "qubits 3\ncx 0 1\ncx 0 2\n");
        write(dir.path(), "b.txt", "qubits 3\ncx 0 2\ncx 0 1\n");
        write(dir.path(), "c.txt", "qubits 3\ncx 1 0\ncx 0 2\n");
        let corpus = ingest(&[dir.path().to_path_buf()], &IngestOptions::default()).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(
            corpus.duplicates(),
            &[Duplicate {
                name: "b".into(),
                duplicate_of: "a".into()
            }]
        );
    }

    #[test]
    fn empty_directory() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = ingest(&[dir.path().to_path_buf()], &IngestOptions::default()).unwrap();
        assert!(corpus.is_empty());
        assert!(matches!(corpus_stats(&corpus), Err(CorpusError::Empty)));
    }

    #[test]
    fn parse_error_names_file_and_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "bad.txt", "qubits 2\ncx 0 0\n");
        let err = ingest(&[p], &IngestOptions::default())
            .unwrap_err()
            .to_string();
        assert!(err.contains("bad.txt"), "{err}");
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn trivial_generation() {
        let mut c = cfg(3, 1, 1);
        c.attempts = 1;
        let corpus = generate_encoders(&c).unwrap();
        assert_eq!(corpus.len(), 1);
    }

    #[test]
    fn five_qubit_distance_three() {
        let mut c = cfg(5, 1, 3);
        c.attempts = 400;
        let corpus = generate_encoders(&c).unwrap();
        assert!(!corpus.is_empty());
        for e in corpus.entries() {
            let d = code_distance(&e.code().unwrap(), &DistanceConfig::default()).unwrap();
            assert!(d >= 3);
            assert_eq!(e.code_params.unwrap().d, Some(d));
        }
        assert_eq!(generate_encoders(&c).unwrap(), corpus);
    }

    #[test]
    fn nearest_neighbour_gates_only() {
        let mut c = cfg(4, 1, 1);
        c.connectivity = Connectivity::Nn;
        c.method = Method::Random;
        c.attempts = 20;
        for circuit in generate_encoders(&c).unwrap().circuits() {
            assert!(circuit
                .gates()
                .iter()
                .all(|g| g.control.abs_diff(g.target) == 1));
        }
    }

    #[test]
    fn impossible_target_reports_best() {
        let mut c = cfg(5, 1, 9);
        c.attempts = 10;
        match generate_encoders(&c) {
            Err(CorpusError::NoEncoder { best, .. }) => assert!((1..=3).contains(&best)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn config_validation() {
        let mut c = cfg(4, 1, 1);
        c.connectivity = Connectivity::Edges(vec![(0, 1), (2, 3)]);
        assert!(matches!(generate_encoders(&c), Err(CorpusError::Config(_))));
        assert!(matches!(
            generate_encoders(&cfg(3, 3, 1)),
            Err(CorpusError::Config(_))
        ));
        assert!(matches!(
            generate_encoders(&cfg(3, 1, 0)),
            Err(CorpusError::Config(_))
        ));
    }

    #[test]
    fn edge_file_parsing() {
        let c = Connectivity::parse_edges("# ring\n0 1\n2 1\n\n").unwrap();
        assert!(c.allows(1, 2) && c.allows(0, 1) && !c.allows(0, 2));
        assert!(Connectivity::parse_edges("0 0\n").is_err());
        assert!(Connectivity::parse_edges("0 x\n").is_err());
    }

    #[test]
    fn round_trip_is_idempotent() {
        let corpus = generate_encoders(&cfg(4, 1, 2)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        corpus.write_dir(dir.path()).unwrap();
        let again = ingest(&[dir.path().to_path_buf()], &IngestOptions::default()).unwrap();
        assert_eq!(again.entries(), corpus.entries());
        let dir2 = tempfile::tempdir().unwrap();
        again.write_dir(dir2.path()).unwrap();
        let a = fs::read(dir.path().join(MANIFEST_FILE)).unwrap();
        let b = fs::read(dir2.path().join(MANIFEST_FILE)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn stats_examples() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "six.txt",
            "qubits 3\ncx 0 1\ncx 1 2\ncx 2 0\ncx 0 1\ncx 1 2\ncx 2 0\n",
        );
        let s = corpus_stats(&ingest(&[p], &IngestOptions::default()).unwrap()).unwrap();
        assert_eq!(s.cx_mean, 6.0);
        assert_eq!(s.mean_generator_weight, None);

        let q = write(dir.path(), "id.txt", "qubits 3\n");
        let s = corpus_stats(&ingest(&[q], &IngestOptions { k: Some(1) }).unwrap()).unwrap();
        assert_eq!(s.mean_generator_weight, Some(1.0));
        assert_eq!(s.code_params.get("[[3,1,1]]"), Some(&1));
    }
}
