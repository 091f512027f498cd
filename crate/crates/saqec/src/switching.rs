//! Gauge-fixing code switching between the Steane code (padded into the
//! 15-qubit frame) and the Reed-Muller [[15,1,3]] code, program-state
//! construction for logical Cliffords, and transversal-gate verification.
//!
//! Frame: qubits 0..14 carry the nonzero 4-bit labels q+1. The Steane block
//! is the bit3=0 subset (labels 1..7, Steane's own Hamming labeling); the 8
//! bit3=1 qubits form the fixed block. Both codes share 11 stabilizers;
//! three Z-type gauge generators complete the Reed-Muller side and three
//! X-type gauge generators complete the Steane side. The common logicals are
//! X/Z on the whole Steane block (weight 7).

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::qec::encoded_statevectors;
use crate::stabilizer::{
    build_code, conjugate_pauli, CodeName, Gate, PauliOperator, StabilizerCode, Tableau,
};

/// One side of the subsystem-code gauge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeSide {
    ReedMuller,
    Steane,
}

impl GaugeSide {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "reed_muller" | "rm" | "a" => Ok(GaugeSide::ReedMuller),
            "steane" | "b" => Ok(GaugeSide::Steane),
            other => Err(Error::UnknownCode(format!("gauge side '{other}'"))),
        }
    }
}

/// The shared-stabilizer/gauge decomposition with precomputed corrections.
/// Serializes as JSON lists of Pauli strings.
#[derive(Debug, Clone, Serialize)]
pub struct SubsystemSwitchSpec {
    pub n: usize,
    pub shared_stabilizers: Vec<PauliOperator>,
    /// Z-type generators completing the Reed-Muller side.
    pub gauge_rm: Vec<PauliOperator>,
    /// X-type generators completing the Steane side.
    pub gauge_steane: Vec<PauliOperator>,
    pub logical_x: PauliOperator,
    pub logical_z: PauliOperator,
    /// corrections_rm[j] flips exactly gauge_rm[j] (commuting with the
    /// shared stabilizers, the other RM gauge generators, and the logicals).
    corrections_rm: Vec<PauliOperator>,
    corrections_steane: Vec<PauliOperator>,
}

fn mask(f: impl Fn(u16) -> bool) -> u64 {
    (0..15u16).filter(|&q| f(q + 1)).fold(0, |m, q| m | (1 << q))
}

fn bit(l: u16, j: usize) -> bool {
    (l >> j) & 1 == 1
}

/// GF(2) solve of `rows · v = rhs`; coefficient rows are bit masks over
/// `vars` unknowns. Returns any particular solution.
fn solve_gf2(rows: &[(u64, bool)], vars: usize) -> Option<u64> {
    let mut aug: Vec<u64> = rows
        .iter()
        .map(|&(coeff, rhs)| coeff | ((rhs as u64) << vars))
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..vars {
        let Some(r) = (rank..aug.len()).find(|&r| (aug[r] >> col) & 1 == 1) else {
            continue;
        };
        aug.swap(rank, r);
        let pivot_row = aug[rank];
        for (i, row) in aug.iter_mut().enumerate() {
            if i != rank && (*row >> col) & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    // Inconsistent system: zero coefficients with nonzero rhs.
    if aug[rank..].iter().any(|row| (row >> vars) & 1 == 1) {
        return None;
    }
    let mut v = 0u64;
    for &(row, col) in &pivots {
        if (aug[row] >> vars) & 1 == 1 {
            v |= 1 << col;
        }
    }
    Some(v)
}

impl SubsystemSwitchSpec {
    /// The Steane↔Reed-Muller-15 gauge decomposition.
    pub fn steane_rm15() -> Self {
        let n = 15;
        let op = |x: u64, z: u64| PauliOperator::from_bits(n, x, z, 0).unwrap();

        let mut shared = Vec::new();
        // X on {bit_j}, j = 0..3 (the full RM X group).
        for j in 0..4 {
            shared.push(op(mask(|l| bit(l, j)), 0));
        }
        // Z on {bit_j ∧ ¬bit3} (the embedded Steane Z stabilizers).
        for j in 0..3 {
            shared.push(op(0, mask(|l| bit(l, j) && !bit(l, 3))));
        }
        // Z on {bit3} and Z on {bit_j ∧ bit3} (the fixed-block Z group).
        shared.push(op(0, mask(|l| bit(l, 3))));
        for j in 0..3 {
            shared.push(op(0, mask(|l| bit(l, j) && bit(l, 3))));
        }

        let gauge_rm: Vec<PauliOperator> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(j, k)| op(0, mask(|l| bit(l, j) && bit(l, k))))
            .collect();
        let gauge_steane: Vec<PauliOperator> = (0..3)
            .map(|j| op(mask(|l| bit(l, j) && bit(l, 3)), 0))
            .collect();

        let logical_x = op(mask(|l| !bit(l, 3)), 0);
        let logical_z = op(0, mask(|l| !bit(l, 3)));

        let mut spec = SubsystemSwitchSpec {
            n,
            shared_stabilizers: shared,
            gauge_rm,
            gauge_steane,
            logical_x,
            logical_z,
            corrections_rm: Vec::new(),
            corrections_steane: Vec::new(),
        };
        spec.corrections_rm = spec.solve_corrections(GaugeSide::ReedMuller);
        spec.corrections_steane = spec.solve_corrections(GaugeSide::Steane);
        spec
    }

    pub fn gauge(&self, side: GaugeSide) -> &[PauliOperator] {
        match side {
            GaugeSide::ReedMuller => &self.gauge_rm,
            GaugeSide::Steane => &self.gauge_steane,
        }
    }

    fn corrections(&self, side: GaugeSide) -> &[PauliOperator] {
        match side {
            GaugeSide::ReedMuller => &self.corrections_rm,
            GaugeSide::Steane => &self.corrections_steane,
        }
    }

    /// The full 14-generator stabilizer set of one side.
    pub fn code_stabilizers(&self, side: GaugeSide) -> Vec<PauliOperator> {
        let mut gens = self.shared_stabilizers.clone();
        gens.extend_from_slice(self.gauge(side));
        gens
    }

    /// One side as an [[15,1]] stabilizer code with the common logicals.
    pub fn side_code(&self, side: GaugeSide) -> StabilizerCode {
        StabilizerCode::new(
            self.n,
            self.code_stabilizers(side),
            vec![self.logical_x],
            vec![self.logical_z],
        )
        .expect("gauge decomposition is a valid code")
    }

    /// Per-generator correction Paulis from a GF(2) solve: anticommute with
    /// exactly one target gauge generator, commute with the shared
    /// stabilizers, the other target generators, and both logicals.
    fn solve_corrections(&self, side: GaugeSide) -> Vec<PauliOperator> {
        let n = self.n;
        let constraint_row = |o: &PauliOperator| -> u64 {
            // ⟨v, O⟩ = x_v·z_O + z_v·x_O over GF(2).
            o.z_bits | (o.x_bits << n)
        };
        let gauge = self.gauge(side);
        (0..gauge.len())
            .map(|j| {
                let mut rows: Vec<(u64, bool)> = Vec::new();
                for s in &self.shared_stabilizers {
                    rows.push((constraint_row(s), false));
                }
                rows.push((constraint_row(&self.logical_x), false));
                rows.push((constraint_row(&self.logical_z), false));
                for (i, g) in gauge.iter().enumerate() {
                    rows.push((constraint_row(g), i == j));
                }
                let v = solve_gf2(&rows, 2 * n).expect("gauge corrections always exist");
                let x = v & ((1 << n) - 1);
                let z = v >> n;
                let c = PauliOperator::from_bits(n, x, z, 0)
                    .unwrap()
                    .canonical_hermitian();
                debug_assert!(!c.commutes(&gauge[j]));
                debug_assert!(c.commutes(&self.logical_x) && c.commutes(&self.logical_z));
                c
            })
            .collect()
    }
}

/// Outcome record of one switch.
#[derive(Debug, Clone, Serialize)]
pub struct SwitchRecord {
    pub from: GaugeSide,
    pub to: GaugeSide,
    pub outcomes: Vec<i8>,
    pub corrections: Vec<PauliOperator>,
}

/// Switch an encoded state between gauges: measure each target gauge
/// generator, then apply the precomputed Pauli fix for every -1 outcome.
/// The input must be stabilized (+1) by the shared stabilizers and the
/// source gauge; `from == to` is the fixed point and yields no corrections.
pub fn switch(
    state: &Tableau,
    spec: &SubsystemSwitchSpec,
    from: GaugeSide,
    to: GaugeSide,
    rng: &mut impl Rng,
) -> Result<(Tableau, SwitchRecord)> {
    for s in spec.shared_stabilizers.iter().chain(spec.gauge(from)) {
        if state.expectation(s) != Some(1) {
            return Err(Error::NotInCode(format!(
                "generator {s} is not a deterministic +1 on the input"
            )));
        }
    }

    let mut current = state.clone();
    let mut outcomes = Vec::new();
    for g in spec.gauge(to) {
        let (outcome, next) = current.measure(g, None, rng)?;
        outcomes.push(outcome);
        current = next;
    }

    let mut corrections = Vec::new();
    for (j, &outcome) in outcomes.iter().enumerate() {
        if outcome == -1 {
            let c = spec.corrections(to)[j];
            current = current.apply_pauli(&c);
            corrections.push(c);
        }
    }

    // The output must lie in the target code.
    for s in spec.shared_stabilizers.iter().chain(spec.gauge(to)) {
        debug_assert_eq!(current.expectation(s), Some(1));
    }

    Ok((
        current,
        SwitchRecord {
            from,
            to,
            outcomes,
            corrections,
        },
    ))
}

// ---------------------------------------------------------------------------
// Program states
// ---------------------------------------------------------------------------

fn embed(p: &PauliOperator, total: usize, offset: usize) -> PauliOperator {
    PauliOperator::from_bits(total, p.x_bits << offset, p.z_bits << offset, p.phase).unwrap()
}

/// Encode a k-qubit logical Pauli into physical operators block-wise
/// (logical qubit l lives in block `block_of(l)`).
fn encode_logical(
    p: &PauliOperator,
    code: &StabilizerCode,
    total: usize,
    block_of: impl Fn(usize) -> usize,
) -> PauliOperator {
    let mut acc = PauliOperator::from_bits(total, 0, 0, p.phase).unwrap();
    for l in 0..p.n {
        let offset = block_of(l) * code.n;
        if (p.x_bits >> l) & 1 == 1 {
            acc = acc.mul(&embed(&code.logical_x[0], total, offset)).unwrap();
        }
        if (p.z_bits >> l) & 1 == 1 {
            acc = acc.mul(&embed(&code.logical_z[0], total, offset)).unwrap();
        }
    }
    acc
}

/// Choi program state of a logical Clifford circuit on k logical qubits,
/// encoded block-wise into 2k code blocks (blocks 0..k carry the rotated
/// half, blocks k..2k the reference half). The returned correlator group is
/// the full stabilizer group of the encoded |G⟩ and is directly usable as a
/// state-adaptive decoder generator set.
pub fn build_program_state(
    k: usize,
    circuit: &[Gate],
    code: &StabilizerCode,
) -> Result<Tableau> {
    if code.k != 1 {
        return Err(Error::InvalidCode(
            "program states are built from k=1 code blocks".into(),
        ));
    }
    let total = 2 * k * code.n;
    if total > crate::stabilizer::MAX_QUBITS {
        return Err(Error::QubitLimit {
            n: total,
            max: crate::stabilizer::MAX_QUBITS,
        });
    }
    for g in circuit {
        let ok = match *g {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Z(q) => q < k,
            Gate::Cnot(c, t) => c < k && t < k && c != t,
        };
        if !ok {
            return Err(Error::IndexOutOfRange { index: k, n: k });
        }
    }

    // Logical images under the circuit.
    let mut images_x = Vec::with_capacity(k);
    let mut images_z = Vec::with_capacity(k);
    for l in 0..k {
        let mut ix = PauliOperator::single(k, l, 'X')?;
        let mut iz = PauliOperator::single(k, l, 'Z')?;
        for &g in circuit {
            ix = conjugate_pauli(&ix, g);
            iz = conjugate_pauli(&iz, g);
        }
        images_x.push(ix);
        images_z.push(iz);
    }

    let mut generators = Vec::new();
    for block in 0..(2 * k) {
        for s in &code.stabilizers {
            generators.push(embed(s, total, block * code.n));
        }
    }
    for l in 0..k {
        let rotated_x = encode_logical(&images_x[l], code, total, |q| q);
        let reference_x = encode_logical(&PauliOperator::single(k, l, 'X')?, code, total, |q| k + q);
        generators.push(rotated_x.mul(&reference_x)?);
        let rotated_z = encode_logical(&images_z[l], code, total, |q| q);
        let reference_z = encode_logical(&PauliOperator::single(k, l, 'Z')?, code, total, |q| k + q);
        generators.push(rotated_z.mul(&reference_z)?);
    }
    Tableau::new(total, generators)
}

/// Parse a logical circuit like "H 0; CNOT 0 1; S 1". Non-Clifford names
/// (e.g. T) are rejected.
pub fn parse_circuit(s: &str) -> Result<Vec<Gate>> {
    let mut gates = Vec::new();
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = part.split_whitespace().collect();
        let arg = |i: usize| -> Result<usize> {
            tokens
                .get(i)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidCode(format!("bad gate syntax '{part}'")))
        };
        let gate = match tokens[0].to_ascii_uppercase().as_str() {
            "H" => Gate::H(arg(1)?),
            "S" => Gate::S(arg(1)?),
            "X" => Gate::X(arg(1)?),
            "Z" => Gate::Z(arg(1)?),
            "CNOT" | "CX" => Gate::Cnot(arg(1)?, arg(2)?),
            other => return Err(Error::NonCliffordGate(other.into())),
        };
        gates.push(gate);
    }
    Ok(gates)
}

// ---------------------------------------------------------------------------
// Transversal-gate verification
// ---------------------------------------------------------------------------

/// Gate whose transversal action is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckGate {
    H,
    S,
    Cnot,
    T,
}

impl CheckGate {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "H" => Ok(CheckGate::H),
            "S" => Ok(CheckGate::S),
            "CNOT" | "CX" => Ok(CheckGate::Cnot),
            "T" => Ok(CheckGate::T),
            other => Err(Error::UnknownCode(format!("gate '{other}'"))),
        }
    }
}

/// Verdict of a transversality check.
#[derive(Debug, Clone, Serialize)]
pub struct TransversalVerdict {
    pub code: String,
    pub gate: CheckGate,
    /// "logical U", "logical U-inverse", or "not transversal".
    pub verdict: String,
    pub logical: bool,
    /// For the logical case: the transversal gate implements the inverse
    /// convention (U^{-1}) rather than U.
    pub inverse: bool,
    /// Statevector overlaps (T checks only): |⟨T|+⟩_L|ψ⟩|² and the
    /// T-inverse counterpart.
    pub overlap_t: Option<f64>,
    pub overlap_t_inverse: Option<f64>,
}

/// Is +p in the group generated by `gens` (signs included)?
fn in_group_signed(gens: &[PauliOperator], p: &PauliOperator) -> bool {
    if p.n == 0 {
        return true;
    }
    let t_gens = gens.to_vec();
    // Reuse the tableau reduction on a possibly non-maximal set.
    reduce_in_span(&t_gens, p) == Some(0)
}

fn reduce_in_span(gens: &[PauliOperator], p: &PauliOperator) -> Option<u8> {
    let n = p.n;
    let mut rows = gens.to_vec();
    let mut acc = PauliOperator::identity(n).unwrap();
    let mut target = (p.x_bits, p.z_bits);
    let mut used = vec![false; rows.len()];
    for col in 0..(2 * n) {
        let bit_of = |x: u64, z: u64| -> bool {
            if col < n {
                (x >> col) & 1 == 1
            } else {
                (z >> (col - n)) & 1 == 1
            }
        };
        let Some(pivot) =
            (0..rows.len()).find(|&r| !used[r] && bit_of(rows[r].x_bits, rows[r].z_bits))
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

fn conjugate_transversal_1q(p: &PauliOperator, make: impl Fn(usize) -> Gate) -> PauliOperator {
    let mut out = *p;
    for q in 0..p.n {
        out = conjugate_pauli(&out, make(q));
    }
    out
}

/// Check a transversal gate on a named code.
pub fn transversal_gate_check(
    code_name: CodeName,
    gate: CheckGate,
    cfg: &Config,
) -> Result<TransversalVerdict> {
    let code = build_code(code_name);
    let verdict = |logical: bool, inverse: bool, ot: Option<f64>, oti: Option<f64>| {
        TransversalVerdict {
            code: code_name.name().into(),
            gate,
            verdict: if !logical {
                "not transversal".into()
            } else if inverse {
                "logical U-inverse".into()
            } else {
                "logical U".into()
            },
            logical,
            inverse,
            overlap_t: ot,
            overlap_t_inverse: oti,
        }
    };

    match gate {
        CheckGate::H | CheckGate::S => {
            let make = |q: usize| match gate {
                CheckGate::H => Gate::H(q),
                _ => Gate::S(q),
            };
            let conjugated: Vec<PauliOperator> = code
                .stabilizers
                .iter()
                .map(|s| conjugate_transversal_1q(s, make))
                .collect();
            let group_preserved = conjugated
                .iter()
                .all(|g| in_group_signed(&code.stabilizers, g));
            if !group_preserved {
                return Ok(verdict(false, false, None, None));
            }
            let xl = conjugate_transversal_1q(&code.logical_x[0], make);
            let zl = conjugate_transversal_1q(&code.logical_z[0], make);
            let matches = |candidate: &PauliOperator, expected: &PauliOperator| -> bool {
                in_group_signed(&code.stabilizers, &candidate.mul(&expected.dagger()).unwrap())
            };
            match gate {
                CheckGate::H => {
                    // Logical H: X_L ↔ Z_L (self-inverse).
                    if matches(&xl, &code.logical_z[0]) && matches(&zl, &code.logical_x[0]) {
                        Ok(verdict(true, false, None, None))
                    } else {
                        Ok(verdict(false, false, None, None))
                    }
                }
                _ => {
                    // Logical S: X_L → Y_L = iX_L Z_L; S-inverse: X_L → -Y_L.
                    let mut y_l = code.logical_x[0].mul(&code.logical_z[0]).unwrap();
                    y_l.phase = (y_l.phase + 1) % 4;
                    if !matches(&zl, &code.logical_z[0]) {
                        return Ok(verdict(false, false, None, None));
                    }
                    if matches(&xl, &y_l) {
                        Ok(verdict(true, false, None, None))
                    } else if matches(&xl, &y_l.negated()) {
                        Ok(verdict(true, true, None, None))
                    } else {
                        Ok(verdict(false, false, None, None))
                    }
                }
            }
        }
        CheckGate::Cnot => {
            let n = code.n;
            let total = 2 * n;
            let mut two_block: Vec<PauliOperator> = Vec::new();
            for s in &code.stabilizers {
                two_block.push(embed(s, total, 0));
                two_block.push(embed(s, total, n));
            }
            let transversal: Vec<Gate> = (0..n).map(|q| Gate::Cnot(q, q + n)).collect();
            let conj = |p: &PauliOperator| -> PauliOperator {
                let mut out = *p;
                for &g in &transversal {
                    out = conjugate_pauli(&out, g);
                }
                out
            };
            let group_preserved = two_block.iter().map(&conj).all(|g| in_group_signed(&two_block, &g));
            if !group_preserved {
                return Ok(verdict(false, false, None, None));
            }
            // Logical CNOT: X⊗I → X⊗X, I⊗Z → Z⊗Z, X⊗... on encoded blocks.
            let xl0 = embed(&code.logical_x[0], total, 0);
            let xl1 = embed(&code.logical_x[0], total, n);
            let zl0 = embed(&code.logical_z[0], total, 0);
            let zl1 = embed(&code.logical_z[0], total, n);
            let ok = in_group_signed(&two_block, &conj(&xl0).mul(&xl0.mul(&xl1).unwrap().dagger()).unwrap())
                && in_group_signed(&two_block, &conj(&xl1).mul(&xl1.dagger()).unwrap())
                && in_group_signed(&two_block, &conj(&zl0).mul(&zl0.dagger()).unwrap())
                && in_group_signed(&two_block, &conj(&zl1).mul(&zl0.mul(&zl1).unwrap().dagger()).unwrap());
            Ok(verdict(ok, false, None, None))
        }
        CheckGate::T => {
            if code.n > cfg.limits.statevector_qubits {
                return Err(Error::ResourceLimit {
                    requested: code.n,
                    limit: cfg.limits.statevector_qubits,
                });
            }
            let columns = encoded_statevectors(&code, cfg)?;
            let dim = 1usize << code.n;
            let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
            // |+_L⟩ = (|0_L⟩ + |1_L⟩)/√2.
            let plus: Vec<Complex64> = (0..dim)
                .map(|i| (columns[0][i] + columns[1][i]) * sqrt_half)
                .collect();
            // Transversal T multiplies each basis amplitude by e^{iπw/4}.
            let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
            let applied: Vec<Complex64> = plus
                .iter()
                .enumerate()
                .map(|(idx, amp)| amp * phase.powu(idx.count_ones()))
                .collect();
            // Logical targets T^{±1}|+_L⟩.
            let target = |sign: f64| -> Vec<Complex64> {
                let ph = Complex64::from_polar(1.0, sign * std::f64::consts::FRAC_PI_4);
                (0..dim)
                    .map(|i| (columns[0][i] + ph * columns[1][i]) * sqrt_half)
                    .collect()
            };
            let overlap = |a: &[Complex64], b: &[Complex64]| -> f64 {
                let inner: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
                inner.norm_sqr()
            };
            let o_t = overlap(&target(1.0), &applied);
            let o_ti = overlap(&target(-1.0), &applied);
            if o_t >= 1.0 - 1e-9 {
                Ok(verdict(true, false, Some(o_t), Some(o_ti)))
            } else if o_ti >= 1.0 - 1e-9 {
                Ok(verdict(true, true, Some(o_t), Some(o_ti)))
            } else {
                Ok(verdict(false, false, Some(o_t), Some(o_ti)))
            }
        }
    }
}
