use std::fmt;

use serde::{Deserialize, Serialize};

use super::{reduced_echelon, symplectic_rank, CanonicalForm, PauliString, TableauError};

/// Largest qubit count accepted by the exhaustive distance search by default.
pub const DEFAULT_DISTANCE_QUBIT_BOUND: usize = 15;

/// `[[n, k]]` stabilizer code given by `n - k` commuting independent generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    generators: Vec<PauliString>,
}

impl StabilizerCode {
    /// Validates commutation and independence; `k` is derived from the rank.
    pub fn new(n: usize, generators: Vec<PauliString>) -> Result<Self, TableauError> {
        for g in &generators {
            if g.n() != n {
                return Err(TableauError::LengthMismatch {
                    expected: n,
                    found: g.n(),
                });
            }
        }
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                if !generators[i].commutes_with(&generators[j]) {
                    return Err(TableauError::Anticommuting(i, j));
                }
            }
        }
        if symplectic_rank(n, &generators) != generators.len() || generators.len() > n {
            return Err(TableauError::Dependent);
        }
        Ok(Self {
            n,
            k: n - generators.len(),
            generators,
        })
    }

    /// Generators taken from a tableau are valid by construction.
    pub(crate) fn from_parts(n: usize, k: usize, generators: Vec<PauliString>) -> Self {
        debug_assert_eq!(generators.len(), n - k);
        Self { n, k, generators }
    }

    pub fn parse(n: usize, generators: &[&str]) -> Result<Self, TableauError> {
        let gens = generators
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<PauliString>, _>>()?;
        Self::new(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn canonical(&self) -> CanonicalForm {
        CanonicalForm::of_group(self.n, &self.generators)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CodeJson {
            n: self.n,
            k: self.k,
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
        })
        .expect("code JSON serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, TableauError> {
        let raw: CodeJson =
            serde_json::from_str(text).map_err(|e| TableauError::BadPauli(e.to_string()))?;
        let refs: Vec<&str> = raw.generators.iter().map(String::as_str).collect();
        let code = Self::parse(raw.n, &refs)?;
        if code.k != raw.k {
            return Err(TableauError::BadLogicalCount { k: raw.k, n: raw.n });
        }
        Ok(code)
    }
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}]]", self.n, self.k)?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    n: usize,
    k: usize,
    generators: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceConfig {
    pub max_qubits: usize,
    /// Highest weight examined; `None` searches up to `n`.
    pub max_weight: Option<usize>,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        Self {
            max_qubits: DEFAULT_DISTANCE_QUBIT_BOUND,
            max_weight: None,
        }
    }
}

/// Precomputed bit masks for the hot loop of the weight search.
struct MaskedCode {
    gens: Vec<(u64, u64)>,
    // Reduced echelon rows with their pivot column.
    echelon: Vec<(u64, u64, usize)>,
    n: usize,
}

impl MaskedCode {
    fn new(code: &StabilizerCode) -> Self {
        let (rows, pivots) = reduced_echelon(code.n, code.generators.clone());
        Self {
            gens: code.generators.iter().map(|g| g.masks()).collect(),
            echelon: rows
                .iter()
                .zip(pivots)
                .map(|(r, p)| {
                    let (x, z) = r.masks();
                    (x, z, p)
                })
                .collect(),
            n: code.n,
        }
    }

    fn commutes_with_all(&self, x: u64, z: u64) -> bool {
        self.gens
            .iter()
            .all(|&(gx, gz)| ((gx & z) ^ (gz & x)).count_ones().is_multiple_of(2))
    }

    fn in_group(&self, mut x: u64, mut z: u64) -> bool {
        for &(rx, rz, col) in &self.echelon {
            let bit = if col < self.n {
                x >> col & 1
            } else {
                z >> (col - self.n) & 1
            };
            if bit == 1 {
                x ^= rx;
                z ^= rz;
            }
        }
        x == 0 && z == 0
    }

    /// Number of logical operators of exactly weight `w`.
    fn count_logicals(&self, w: usize, stop_at_first: bool) -> usize {
        let mut count = 0;
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            // 3^w Pauli assignments on this support.
            let total = 3usize.pow(w as u32);
            for code in 0..total {
                let (mut x, mut z) = (0u64, 0u64);
                let mut c = code;
                for &q in &support {
                    match c % 3 {
                        0 => x |= 1 << q,
                        1 => {
                            x |= 1 << q;
                            z |= 1 << q;
                        }
                        _ => z |= 1 << q,
                    }
                    c /= 3;
                }
                if self.commutes_with_all(x, z) && !self.in_group(x, z) {
                    count += 1;
                    if stop_at_first {
                        return count;
                    }
                }
            }
            if !next_combination(&mut support, self.n) {
                break;
            }
        }
        count
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in (i + 1)..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn check_bounds(code: &StabilizerCode, cfg: &DistanceConfig) -> Result<(), TableauError> {
    if code.n > cfg.max_qubits || code.n > 64 {
        return Err(TableauError::TooManyQubits {
            n: code.n,
            bound: cfg.max_qubits.min(64),
        });
    }
    if code.k == 0 {
        return Err(TableauError::BadLogicalCount { k: 0, n: code.n });
    }
    Ok(())
}

/// Minimum weight of a Pauli that commutes with every generator but is not in
/// the stabilizer group (signs ignored). Searches weights `1, 2, …` in order.
pub fn code_distance(code: &StabilizerCode, cfg: &DistanceConfig) -> Result<usize, TableauError> {
    check_bounds(code, cfg)?;
    let limit = cfg.max_weight.unwrap_or(code.n).min(code.n);
    let masked = MaskedCode::new(code);
    for w in 1..=limit {
        if masked.count_logicals(w, true) > 0 {
            return Ok(w);
        }
    }
    Err(TableauError::SearchBoundExceeded(limit))
}

/// Distance together with the number of logical operators attaining it, or
/// `None` when no logical exists up to `max_weight`.
pub fn min_logical_weight(
    code: &StabilizerCode,
    cfg: &DistanceConfig,
) -> Result<Option<(usize, usize)>, TableauError> {
    check_bounds(code, cfg)?;
    let limit = cfg.max_weight.unwrap_or(code.n).min(code.n);
    let masked = MaskedCode::new(code);
    for w in 1..=limit {
        let count = masked.count_logicals(w, false);
        if count > 0 {
            return Ok(Some((w, count)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorWeights {
    /// Weights in canonical row order.
    pub weights: Vec<usize>,
    pub mean: f64,
}

/// Weights of the canonical-form generators and their mean.
pub fn generator_weights(code: &StabilizerCode) -> GeneratorWeights {
    let canonical = code.canonical();
    let weights: Vec<usize> = canonical.stabilizers().iter().map(|g| g.weight()).collect();
    let mean = if weights.is_empty() {
        0.0
    } else {
        weights.iter().sum::<usize>() as f64 / weights.len() as f64
    };
    GeneratorWeights { weights, mean }
}
