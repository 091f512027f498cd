//! Binary symplectic Pauli operators with exact phase tracking.
//!
//! An operator is stored as i^phase · Π_q X_q^{x_q} Z_q^{z_q} with x/z bit
//! masks (bit q = qubit q, n ≤ 64) and phase ∈ Z₄. Y = iXZ, so "+Y" has
//! phase 1 and both bits set. Signs are tracked exactly, not modulo phase:
//! code switching and decoding need sign-correct syndromes.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C_ONE};

pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    pub n: usize,
    pub x_bits: u64,
    pub z_bits: u64,
    /// Power of i in the canonical X-then-Z factorization.
    pub phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::QubitLimit { n, max: MAX_QUBITS });
        }
        Ok(PauliOperator {
            n,
            x_bits: 0,
            z_bits: 0,
            phase: 0,
        })
    }

    pub fn from_bits(n: usize, x_bits: u64, z_bits: u64, phase: u8) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::QubitLimit { n, max: MAX_QUBITS });
        }
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(PauliOperator {
            n,
            x_bits: x_bits & mask,
            z_bits: z_bits & mask,
            phase: phase % 4,
        })
    }

    /// Single-qubit X/Y/Z embedded at `qubit`.
    pub fn single(n: usize, qubit: usize, letter: char) -> Result<Self> {
        if qubit >= n {
            return Err(Error::IndexOutOfRange { index: qubit, n });
        }
        let bit = 1u64 << qubit;
        let (x, z, phase) = match letter {
            'I' => (0, 0, 0),
            'X' => (bit, 0, 0),
            'Y' => (bit, bit, 1),
            'Z' => (0, bit, 0),
            other => return Err(Error::InvalidPauli(format!("letter '{other}'"))),
        };
        Self::from_bits(n, x, z, phase)
    }

    /// Parse "+XZZXI"-style strings; the sign prefix (+, -, +i, -i) is
    /// optional and defaults to +.
    pub fn parse(s: &str) -> Result<Self> {
        let body_start = s
            .find(|c| matches!(c, 'I' | 'X' | 'Y' | 'Z'))
            .ok_or_else(|| Error::InvalidPauli(s.into()))?;
        let (prefix, body) = s.split_at(body_start);
        let sign_phase: u8 = match prefix {
            "" | "+" => 0,
            "+i" | "i" => 1,
            "-" => 2,
            "-i" => 3,
            other => return Err(Error::InvalidPauli(format!("sign prefix '{other}'"))),
        };
        let n = body.chars().count();
        let mut op = PauliOperator::identity(n)?;
        for (q, c) in body.chars().enumerate() {
            op = op.mul(&PauliOperator::single(n, q, c)?)?;
        }
        op.phase = (op.phase + sign_phase) % 4;
        Ok(op)
    }

    pub fn weight(&self) -> u32 {
        (self.x_bits | self.z_bits).count_ones()
    }

    pub fn is_identity_mod_phase(&self) -> bool {
        self.x_bits == 0 && self.z_bits == 0
    }

    /// Operator product self · other with exact phase.
    pub fn mul(&self, other: &PauliOperator) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        // Moving Z^{z_a} past X^{x_b} picks up (-1) per overlapping qubit.
        let swaps = (self.z_bits & other.x_bits).count_ones() as u8;
        Ok(PauliOperator {
            n: self.n,
            x_bits: self.x_bits ^ other.x_bits,
            z_bits: self.z_bits ^ other.z_bits,
            phase: (self.phase + other.phase + 2 * swaps) % 4,
        })
    }

    pub fn dagger(&self) -> Self {
        let y_count = (self.x_bits & self.z_bits).count_ones() as u8;
        PauliOperator {
            phase: (4 - self.phase % 4 + 2 * y_count) % 4,
            ..*self
        }
    }

    pub fn negated(&self) -> Self {
        PauliOperator {
            phase: (self.phase + 2) % 4,
            ..*self
        }
    }

    pub fn commutes(&self, other: &PauliOperator) -> bool {
        ((self.x_bits & other.z_bits).count_ones() + (self.z_bits & other.x_bits).count_ones()) % 2
            == 0
    }

    /// Hermitian Paulis (eigenvalues ±1) have phase parity matching the
    /// Y-count parity.
    pub fn is_hermitian(&self) -> bool {
        (self.phase as u32 + (self.x_bits & self.z_bits).count_ones()) % 2 == 0
    }

    /// Sign of a Hermitian Pauli relative to its +1 canonical form.
    pub fn herm_sign(&self) -> i8 {
        debug_assert!(self.is_hermitian());
        let y_count = (self.x_bits & self.z_bits).count_ones() as u8;
        if (self.phase + 4 - (y_count % 4)) % 4 == 0 {
            1
        } else {
            -1
        }
    }

    /// The +1-signed Hermitian Pauli with the same bits.
    pub fn canonical_hermitian(&self) -> Self {
        let y_count = ((self.x_bits & self.z_bits).count_ones() % 4) as u8;
        PauliOperator {
            phase: y_count,
            ..*self
        }
    }

    pub fn with_sign(&self, sign: i8) -> Self {
        let base = self.canonical_hermitian();
        if sign >= 0 {
            base
        } else {
            base.negated()
        }
    }

    /// Letter at `qubit` ignoring phase.
    pub fn letter(&self, qubit: usize) -> char {
        let x = (self.x_bits >> qubit) & 1 == 1;
        let z = (self.z_bits >> qubit) & 1 == 1;
        match (x, z) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    /// Dense 2^n × 2^n matrix. Qubit 0 is the leftmost tensor factor
    /// (most significant index bit).
    pub fn dense(&self) -> ComplexMatrix {
        let dim = 1usize << self.n;
        let mut m = ComplexMatrix::zeros(dim, dim);
        let global = match self.phase % 4 {
            0 => C_ONE,
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        for col in 0..dim {
            let (row, sign) = self.apply_to_basis(col as u64);
            let val = if sign { -global } else { global };
            m.set(row as usize, col, val);
        }
        m
    }

    /// Action on a computational basis index: X^x Z^z |b⟩ =
    /// (-1)^{|z∧b|} |b ⊕ x⟩. Indices use the dense convention (qubit 0 =
    /// most significant bit). Returns (new index, sign flip) without the
    /// global i^phase.
    pub fn apply_to_basis(&self, index: u64) -> (u64, bool) {
        let n = self.n;
        let reverse = |mask: u64| -> u64 {
            let mut out = 0u64;
            for q in 0..n {
                if (mask >> q) & 1 == 1 {
                    out |= 1 << (n - 1 - q);
                }
            }
            out
        };
        let x_idx = reverse(self.x_bits);
        let z_idx = reverse(self.z_bits);
        let sign = (z_idx & index).count_ones() % 2 == 1;
        (index ^ x_idx, sign)
    }

    pub fn phase_factor(&self) -> Complex64 {
        match self.phase % 4 {
            0 => C_ONE,
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let y_count = ((self.x_bits & self.z_bits).count_ones() % 4) as u8;
        let residual = (self.phase + 4 - y_count) % 4;
        let prefix = match residual {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}")?;
        for q in 0..self.n {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// GF(2) rank of the (x|z) rows.
pub fn symplectic_rank(ops: &[PauliOperator]) -> usize {
    let mut rows: Vec<(u64, u64)> = ops.iter().map(|p| (p.x_bits, p.z_bits)).collect();
    let n = ops.first().map_or(0, |p| p.n);
    let mut rank = 0;
    for col in 0..(2 * n) {
        let bit_of = |row: &(u64, u64)| -> bool {
            if col < n {
                (row.0 >> col) & 1 == 1
            } else {
                (row.1 >> (col - n)) & 1 == 1
            }
        };
        let Some(pivot) = (rank..rows.len()).find(|&r| bit_of(&rows[r])) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && bit_of(&rows[r]) {
                rows[r].0 ^= rows[rank].0;
                rows[r].1 ^= rows[rank].1;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
