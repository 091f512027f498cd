//! Stabilizer-state tableau: a maximal independent commuting generator set
//! with exact sign tracking. Updates are mutation-free (each operation
//! returns a new tableau), so Monte Carlo workers own private copies.

use rand::Rng;

use super::pauli::{symplectic_rank, PauliOperator};
use crate::error::{Error, Result};

/// Clifford gates supported for tableau conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    Cnot(usize, usize),
    X(usize),
    Z(usize),
}

impl Gate {
    fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Z(q) => (q, None),
            Gate::Cnot(c, t) => (c, Some(t)),
        }
    }

    /// Image of the X factor on `q` under conjugation.
    fn image_x(&self, n: usize, q: usize) -> PauliOperator {
        let single = |l: char, at: usize| PauliOperator::single(n, at, l).unwrap();
        match *self {
            Gate::H(g) if g == q => single('Z', q),
            Gate::S(g) if g == q => single('Y', q),
            Gate::Cnot(c, t) if c == q => single('X', c).mul(&single('X', t)).unwrap(),
            Gate::Z(g) if g == q => single('X', q).negated(),
            _ => single('X', q),
        }
    }

    /// Image of the Z factor on `q` under conjugation.
    fn image_z(&self, n: usize, q: usize) -> PauliOperator {
        let single = |l: char, at: usize| PauliOperator::single(n, at, l).unwrap();
        match *self {
            Gate::H(g) if g == q => single('X', q),
            Gate::Cnot(c, t) if t == q => single('Z', c).mul(&single('Z', t)).unwrap(),
            Gate::X(g) if g == q => single('Z', q).negated(),
            _ => single('Z', q),
        }
    }
}

/// Conjugate a Pauli by a Clifford gate, multiplying the per-qubit factor
/// images in canonical order so every sign is tracked exactly.
pub fn conjugate_pauli(p: &PauliOperator, gate: Gate) -> PauliOperator {
    let n = p.n;
    let mut acc = PauliOperator::from_bits(n, 0, 0, p.phase).unwrap();
    for q in 0..n {
        if (p.x_bits >> q) & 1 == 1 {
            acc = acc.mul(&gate.image_x(n, q)).unwrap();
        }
        if (p.z_bits >> q) & 1 == 1 {
            acc = acc.mul(&gate.image_z(n, q)).unwrap();
        }
    }
    acc
}

/// Maximal independent commuting generator set for an n-qubit stabilizer
/// state.
#[derive(Debug, Clone)]
pub struct Tableau {
    pub n: usize,
    generators: Vec<PauliOperator>,
}

impl Tableau {
    /// Validating constructor: n Hermitian, pairwise commuting, independent
    /// generators (independence excludes -I from the group).
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        if generators.len() != n {
            return Err(Error::InvalidCode(format!(
                "stabilizer state on {n} qubits needs {n} generators, got {}",
                generators.len()
            )));
        }
        for g in &generators {
            if g.n != n {
                return Err(Error::DimensionMismatch { left: g.n, right: n });
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidCode(format!("generator {g} is not Hermitian")));
            }
        }
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                if !generators[i].commutes(&generators[j]) {
                    return Err(Error::InvalidCode(format!(
                        "generators {} and {} anticommute",
                        generators[i], generators[j]
                    )));
                }
            }
        }
        if symplectic_rank(&generators) != n {
            return Err(Error::InvalidCode("generators are dependent over GF(2)".into()));
        }
        Ok(Tableau { n, generators })
    }

    /// |0…0⟩: stabilized by +Z on every qubit.
    pub fn zero_state(n: usize) -> Result<Self> {
        let generators = (0..n)
            .map(|q| PauliOperator::single(n, q, 'Z'))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, generators)
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn apply_gate(&self, gate: Gate) -> Result<Tableau> {
        let (a, b) = gate.qubits();
        if a >= self.n || b.is_some_and(|t| t >= self.n) {
            return Err(Error::IndexOutOfRange {
                index: b.unwrap_or(a).max(a),
                n: self.n,
            });
        }
        if let Gate::Cnot(c, t) = gate {
            if c == t {
                return Err(Error::IndexOutOfRange { index: t, n: self.n });
            }
        }
        let generators = self
            .generators
            .iter()
            .map(|g| conjugate_pauli(g, gate))
            .collect();
        Ok(Tableau {
            n: self.n,
            generators,
        })
    }

    pub fn apply_circuit(&self, gates: &[Gate]) -> Result<Tableau> {
        let mut t = self.clone();
        for &g in gates {
            t = t.apply_gate(g)?;
        }
        Ok(t)
    }

    /// Conjugate by a Pauli unitary: flips the sign of every generator that
    /// anticommutes with it.
    pub fn apply_pauli(&self, p: &PauliOperator) -> Tableau {
        let generators = self
            .generators
            .iter()
            .map(|g| if g.commutes(p) { *g } else { g.negated() })
            .collect();
        Tableau {
            n: self.n,
            generators,
        }
    }

    /// Deterministic measurement value of a Hermitian Pauli, or None if the
    /// outcome is random. For a maximal tableau, any operator commuting with
    /// every generator lies in the group (up to sign).
    pub fn expectation(&self, p: &PauliOperator) -> Option<i8> {
        if self.generators.iter().any(|g| !g.commutes(p)) {
            return None;
        }
        let diff = self
            .reduce_mod_group(p)
            .expect("commuting Pauli must lie in a maximal group");
        Some(if diff == 0 { 1 } else { -1 })
    }

    /// Reduce `p` against the group. Returns the phase difference
    /// (product - p) mod 4 when the bits cancel (0 = +p in group,
    /// 2 = -p in group), or None if p is not in the group mod phase.
    pub fn reduce_mod_group(&self, p: &PauliOperator) -> Option<u8> {
        let mut rows = self.generators.clone();
        let mut acc = PauliOperator::identity(self.n).unwrap();
        let mut target = (p.x_bits, p.z_bits);
        let n = self.n;
        let mut used = vec![false; rows.len()];
        for col in 0..(2 * n) {
            let bit_of = |x: u64, z: u64| -> bool {
                if col < n {
                    (x >> col) & 1 == 1
                } else {
                    (z >> (col - n)) & 1 == 1
                }
            };
            let Some(pivot) = (0..rows.len())
                .find(|&r| !used[r] && bit_of(rows[r].x_bits, rows[r].z_bits))
            else {
                continue;
            };
            used[pivot] = true;
            let pivot_row = rows[pivot];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != pivot && !used[r] && bit_of(row.x_bits, row.z_bits) {
                    *row = row.mul(&pivot_row).unwrap();
                }
            }
            if bit_of(target.0, target.1) {
                acc = acc.mul(&pivot_row).unwrap();
                target.0 ^= pivot_row.x_bits;
                target.1 ^= pivot_row.z_bits;
            }
        }
        if target == (0, 0) {
            Some((acc.phase + 4 - p.phase % 4) % 4)
        } else {
            None
        }
    }

    /// True if ±p (mod any phase) is in the group.
    pub fn contains_mod_phase(&self, p: &PauliOperator) -> bool {
        self.reduce_mod_group(p).is_some()
    }

    /// True if exactly +p is in the group.
    pub fn contains_signed(&self, p: &PauliOperator) -> bool {
        self.reduce_mod_group(p) == Some(0)
    }

    /// Measure a Hermitian Pauli. Deterministic outcomes leave the state
    /// unchanged; random ones take `forced` when given (for reproducibility)
    /// or a coin flip from `rng`, and update the group by the standard
    /// anticommuting-generator replacement.
    pub fn measure(
        &self,
        p: &PauliOperator,
        forced: Option<i8>,
        rng: &mut impl Rng,
    ) -> Result<(i8, Tableau)> {
        if p.n != self.n {
            return Err(Error::DimensionMismatch {
                left: p.n,
                right: self.n,
            });
        }
        if !p.is_hermitian() {
            return Err(Error::InvalidPauli(format!("{p} is not Hermitian")));
        }
        if let Some(outcome) = self.expectation(p) {
            return Ok((outcome, self.clone()));
        }
        let outcome = forced.unwrap_or_else(|| if rng.gen::<bool>() { 1 } else { -1 });
        debug_assert!(outcome == 1 || outcome == -1);
        let first = self
            .generators
            .iter()
            .position(|g| !g.commutes(p))
            .expect("random outcome implies an anticommuting generator");
        let anchor = self.generators[first];
        let mut generators = self.generators.clone();
        for (idx, g) in generators.iter_mut().enumerate() {
            if idx != first && !g.commutes(p) {
                *g = g.mul(&anchor).unwrap();
            }
        }
        generators[first] = p.with_sign(outcome);
        Ok((outcome, Tableau {
            n: self.n,
            generators,
        }))
    }

    /// Unique reduced generator set (symplectic RREF with signs). Two
    /// tableaux describe the same state iff their canonical forms are equal.
    pub fn canonical_form(&self) -> Vec<PauliOperator> {
        let mut rows = self.generators.clone();
        let n = self.n;
        let mut rank = 0;
        for col in 0..(2 * n) {
            let bit_of = |p: &PauliOperator| -> bool {
                if col < n {
                    (p.x_bits >> col) & 1 == 1
                } else {
                    (p.z_bits >> (col - n)) & 1 == 1
                }
            };
            let Some(pivot) = (rank..rows.len()).find(|&r| bit_of(&rows[r])) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && bit_of(row) {
                    *row = row.mul(&pivot_row).unwrap();
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows
    }

    pub fn same_group(&self, other: &Tableau) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }
}
