use std::fmt;
use std::str::FromStr;

use super::TableauError;

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD).max(1)
}

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Hermitian Pauli operator `±P_0 ⊗ … ⊗ P_{n-1}` in symplectic form.
///
/// Bit `q` of `x`/`z` is the X/Z component on qubit `q`; `Y = XZ` up to phase,
/// so a factor with both bits set is a `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    negative: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
            negative: false,
        }
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.set(qubit, p);
        s
    }

    pub fn from_paulis(factors: &[Pauli], negative: bool) -> Self {
        let mut s = Self::identity(factors.len());
        for (q, &p) in factors.iter().enumerate() {
            s.set(q, p);
        }
        s.negative = negative;
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn set_negative(&mut self, negative: bool) {
        self.negative = negative;
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub(crate) fn set_x(&mut self, q: usize, v: bool) {
        let mask = 1u64 << (q % WORD);
        if v {
            self.x[q / WORD] |= mask;
        } else {
            self.x[q / WORD] &= !mask;
        }
    }

    pub(crate) fn set_z(&mut self, q: usize, v: bool) {
        let mask = 1u64 << (q % WORD);
        if v {
            self.z[q / WORD] |= mask;
        } else {
            self.z[q / WORD] &= !mask;
        }
    }

    pub(crate) fn flip_sign(&mut self) {
        self.negative = !self.negative;
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.set_x(q, x);
        self.set_z(q, z);
    }

    /// Bit of the symplectic vector `(x_0 … x_{n-1} | z_0 … z_{n-1})`.
    pub fn symplectic_bit(&self, col: usize) -> bool {
        if col < self.n {
            self.x_bit(col)
        } else {
            self.z_bit(col - self.n)
        }
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones() & 1;
        }
        parity == 0
    }

    /// Replaces `self` with `other · self`. Both operators must commute so
    /// the product is again Hermitian.
    pub fn left_multiply(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        debug_assert!(self.commutes_with(other));
        // Exponent of i picked up when multiplying factor by factor.
        let mut exponent: i64 = 0;
        for q in 0..self.n {
            exponent +=
                phase_exponent(other.x_bit(q), other.z_bit(q), self.x_bit(q), self.z_bit(q));
        }
        let total =
            exponent.rem_euclid(4) as u8 + 2 * (self.negative as u8) + 2 * (other.negative as u8);
        debug_assert!(total.is_multiple_of(2));
        self.negative = total % 4 == 2;
        for i in 0..self.x.len() {
            self.x[i] ^= other.x[i];
            self.z[i] ^= other.z[i];
        }
    }

    pub(crate) fn xor_symplectic(&mut self, other: &Self) {
        for i in 0..self.x.len() {
            self.x[i] ^= other.x[i];
            self.z[i] ^= other.z[i];
        }
    }

    /// Low 64 bits of the X and Z parts. Only meaningful for `n <= 64`.
    pub(crate) fn masks(&self) -> (u64, u64) {
        (self.x[0], self.z[0])
    }
}

/// Power of `i` in the product of single-qubit Paulis `(x1,z1)·(x2,z2)`.
fn phase_exponent(x1: bool, z1: bool, x2: bool, z2: bool) -> i64 {
    let (x2, z2) = (x2 as i64, z2 as i64);
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2 - x2,
        (true, false) => z2 * (2 * x2 - 1),
        (false, true) => x2 * (1 - 2 * z2),
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for q in 0..self.n {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, word) = match s.as_bytes().first() {
            Some(b'+') => (false, &s[1..]),
            Some(b'-') => (true, &s[1..]),
            _ => (false, s),
        };
        if word.is_empty() {
            return Err(TableauError::BadPauli(s.to_string()));
        }
        let factors = word
            .chars()
            .map(|c| match c {
                'I' | '_' | '.' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(TableauError::BadPauli(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_paulis(&factors, negative))
    }
}
