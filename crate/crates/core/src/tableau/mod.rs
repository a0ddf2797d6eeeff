//! Stabilizer tableau simulation over GF(2).
//!
//! The tableau holds `2n` Pauli rows: row `i` is the image of `X_i` and row
//! `n + i` the image of `Z_i` under the simulated Clifford unitary. Gate
//! updates follow the Aaronson–Gottesman rules, including sign tracking.

mod code;
mod pauli;

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::circuit::Circuit;

pub use code::{
    code_distance, generator_weights, min_logical_weight, DistanceConfig, GeneratorWeights,
    StabilizerCode, DEFAULT_DISTANCE_QUBIT_BOUND,
};
pub use pauli::{Pauli, PauliString};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("CNOT control equals target ({0})")]
    SameQubit(usize),
    #[error("malformed Pauli string `{0}`")]
    BadPauli(String),
    #[error("generators must act on {expected} qubits, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("generators {0} and {1} anticommute")]
    Anticommuting(usize, usize),
    #[error("generators are linearly dependent")]
    Dependent,
    #[error("logical qubit count {k} must be below qubit count {n}")]
    BadLogicalCount { k: usize, n: usize },
    #[error("code has {n} qubits, above the brute-force bound of {bound}")]
    TooManyQubits { n: usize, bound: usize },
    #[error("search bound exceeded: no logical operator up to weight {0}")]
    SearchBoundExceeded(usize),
    #[error("preparation list has {found} entries, expected {expected}")]
    PrepLength { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    n: usize,
    rows: Vec<PauliString>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        let mut rows = Vec::with_capacity(2 * n);
        rows.extend((0..n).map(|q| PauliString::single(n, q, Pauli::X)));
        rows.extend((0..n).map(|q| PauliString::single(n, q, Pauli::Z)));
        Self { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Image of `X_q`.
    pub fn destabilizer(&self, q: usize) -> &PauliString {
        &self.rows[q]
    }

    /// Image of `Z_q`.
    pub fn stabilizer(&self, q: usize) -> &PauliString {
        &self.rows[self.n + q]
    }

    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    fn check(&self, q: usize) -> Result<(), TableauError> {
        if q >= self.n {
            return Err(TableauError::QubitOutOfRange {
                qubit: q,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<(), TableauError> {
        self.check(control)?;
        self.check(target)?;
        if control == target {
            return Err(TableauError::SameQubit(control));
        }
        for row in &mut self.rows {
            let (xc, zc) = (row.x_bit(control), row.z_bit(control));
            let (xt, zt) = (row.x_bit(target), row.z_bit(target));
            if xc && zt && (xt == zc) {
                row.flip_sign();
            }
            row.set_x(target, xt ^ xc);
            row.set_z(control, zc ^ zt);
        }
        Ok(())
    }

    pub fn apply_h(&mut self, q: usize) -> Result<(), TableauError> {
        self.check(q)?;
        for row in &mut self.rows {
            let (x, z) = (row.x_bit(q), row.z_bit(q));
            if x && z {
                row.flip_sign();
            }
            row.set_x(q, z);
            row.set_z(q, x);
        }
        Ok(())
    }

    pub fn apply_s(&mut self, q: usize) -> Result<(), TableauError> {
        self.check(q)?;
        for row in &mut self.rows {
            let (x, z) = (row.x_bit(q), row.z_bit(q));
            if x && z {
                row.flip_sign();
            }
            row.set_z(q, z ^ x);
        }
        Ok(())
    }

    /// Rows `r` and `r + n` anticommute, every other pair commutes.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        for i in 0..2 * n {
            for j in (i + 1)..2 * n {
                let should_anticommute = j == i + n;
                if self.rows[i].commutes_with(&self.rows[j]) == should_anticommute {
                    return false;
                }
            }
        }
        true
    }

    pub fn from_circuit(c: &Circuit) -> Self {
        let mut t = Self::identity(c.n_qubits());
        for g in c.gates() {
            t.apply_cnot(g.control, g.target)
                .expect("validated circuit gates are in range");
        }
        t
    }
}

/// Fold of `apply_cnot` over the circuit's gates, starting from the identity.
pub fn circuit_to_tableau(c: &Circuit) -> CliffordTableau {
    CliffordTableau::from_circuit(c)
}

/// Deterministic normal form of stabilizer-group data.
///
/// `stabilizers` is the fully reduced row echelon form of the group with
/// column order `X_0 … X_{n-1} Z_0 … Z_{n-1}`; signs are whatever the group
/// assigns to those elements. `logicals` holds, for each logical qubit `j`,
/// the images of `X_j` and `Z_j` reduced modulo the stabilizer pivots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    stabilizers: Vec<PauliString>,
    logicals: Vec<PauliString>,
}

impl CanonicalForm {
    /// Canonical form of a set of commuting generators (no logical part).
    pub fn of_group(n: usize, generators: &[PauliString]) -> Self {
        let (stabilizers, _) = reduced_echelon(n, generators.to_vec());
        Self {
            n,
            stabilizers,
            logicals: Vec::new(),
        }
    }

    /// Canonical form of an encoder tableau with `k` logical qubits carried by
    /// qubits `0..k`. The remaining qubits start in the `+1` eigenstate of `Z`.
    pub fn encoder(t: &CliffordTableau, k: usize) -> Self {
        let n = t.n();
        let k = k.min(n);
        let gens: Vec<PauliString> = (k..n).map(|q| t.stabilizer(q).clone()).collect();
        let (stabilizers, pivots) = reduced_echelon(n, gens);
        let mut logicals = Vec::with_capacity(2 * k);
        for j in 0..k {
            for image in [t.destabilizer(j), t.stabilizer(j)] {
                let mut op = image.clone();
                for (row, &col) in stabilizers.iter().zip(&pivots) {
                    if op.symplectic_bit(col) {
                        op.left_multiply(row);
                    }
                }
                logicals.push(op);
            }
        }
        Self {
            n,
            stabilizers,
            logicals,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliString] {
        &self.stabilizers
    }

    pub fn logicals(&self) -> &[PauliString] {
        &self.logicals
    }

    /// Text form: `n=<n>;S=<rows,...>;L=<rows,...>`.
    pub fn encode(&self) -> String {
        let join = |v: &[PauliString]| {
            v.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "n={};S={};L={}",
            self.n,
            join(&self.stabilizers),
            join(&self.logicals)
        )
    }

    /// Hex SHA-256 of [`CanonicalForm::encode`].
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.encode().as_bytes()))
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stabilizers")?;
        for s in &self.stabilizers {
            writeln!(f, "  {s}")?;
        }
        if !self.logicals.is_empty() {
            writeln!(f, "logicals")?;
            for l in &self.logicals {
                writeln!(f, "  {l}")?;
            }
        }
        Ok(())
    }
}

/// Canonical form of the stabilizer rows of `t` (the state `U|0…0⟩`).
pub fn canonical_tableau(t: &CliffordTableau) -> CanonicalForm {
    CanonicalForm::encoder(t, 0)
}

/// Gauss–Jordan elimination over the symplectic columns. Returns the nonzero
/// reduced rows and their pivot columns, both sorted by pivot.
pub(crate) fn reduced_echelon(
    n: usize,
    mut rows: Vec<PauliString>,
) -> (Vec<PauliString>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..2 * n {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r].symplectic_bit(col)) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.symplectic_bit(col) {
                row.left_multiply(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// GF(2) rank of the symplectic vectors, ignoring signs.
pub(crate) fn symplectic_rank(n: usize, rows: &[PauliString]) -> usize {
    let mut rows = rows.to_vec();
    let mut rank = 0;
    for col in 0..2 * n {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r].symplectic_bit(col)) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row.symplectic_bit(col) {
                row.xor_symplectic(&pivot_row);
            }
        }
        rank += 1;
    }
    rank
}

/// Initial single-qubit state of an ancilla: `+1` eigenstate of the basis operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrepBasis {
    Z,
    X,
    Y,
}

impl PrepBasis {
    pub fn symbol(self) -> char {
        match self {
            PrepBasis::Z => 'Z',
            PrepBasis::X => 'X',
            PrepBasis::Y => 'Y',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'Z' | 'z' | '0' => Some(PrepBasis::Z),
            'X' | 'x' | '+' => Some(PrepBasis::X),
            'Y' | 'y' => Some(PrepBasis::Y),
            _ => None,
        }
    }
}

/// An encoding circuit: qubits `0..k` carry logical data, qubits `k..n` are
/// prepared in the given bases and then the CNOT network is applied.
///
/// Preparation is realized with `H` (Z→X) and `H·S` (Z→Y); those single-qubit
/// gates never appear in the circuit itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoder {
    pub circuit: Circuit,
    pub k: usize,
    pub prep: Vec<PrepBasis>,
}

impl Encoder {
    pub fn new(circuit: Circuit, k: usize, prep: Vec<PrepBasis>) -> Result<Self, TableauError> {
        let n = circuit.n_qubits();
        if k >= n {
            return Err(TableauError::BadLogicalCount { k, n });
        }
        if prep.len() != n - k {
            return Err(TableauError::PrepLength {
                expected: n - k,
                found: prep.len(),
            });
        }
        Ok(Self { circuit, k, prep })
    }

    /// All ancillas in `|0⟩`.
    pub fn zero_prep(circuit: Circuit, k: usize) -> Result<Self, TableauError> {
        let n = circuit.n_qubits();
        Self::new(circuit, k, vec![PrepBasis::Z; n.saturating_sub(k)])
    }

    pub fn prep_string(&self) -> String {
        self.prep.iter().map(|b| b.symbol()).collect()
    }

    pub fn tableau(&self) -> CliffordTableau {
        let n = self.circuit.n_qubits();
        let mut t = CliffordTableau::identity(n);
        for (i, basis) in self.prep.iter().enumerate() {
            let q = self.k + i;
            match basis {
                PrepBasis::Z => {}
                PrepBasis::X => t.apply_h(q).expect("in range"),
                PrepBasis::Y => {
                    t.apply_h(q).expect("in range");
                    t.apply_s(q).expect("in range");
                }
            }
        }
        for g in self.circuit.gates() {
            t.apply_cnot(g.control, g.target)
                .expect("validated circuit");
        }
        t
    }

    pub fn code(&self) -> StabilizerCode {
        let t = self.tableau();
        let n = t.n();
        let gens = (self.k..n).map(|q| t.stabilizer(q).clone()).collect();
        StabilizerCode::from_parts(n, self.k, gens)
    }

    pub fn canonical(&self) -> CanonicalForm {
        CanonicalForm::encoder(&self.tableau(), self.k)
    }
}

/// Code stabilized by the images of `Z_k … Z_{n-1}` under the circuit, with
/// all ancillas starting in `|0⟩`.
pub fn encoder_code(c: &Circuit, k: usize) -> Result<StabilizerCode, TableauError> {
    Ok(Encoder::zero_prep(c.clone(), k)?.code())
}
