//! Dense-space error-correction analysis: encodings, Knill-Laflamme
//! checking, environment states, Petz recovery, and the state-adaptive
//! protect cycle.
//!
//! The Petz map of a state ρ and channel Φ has Kraus operators
//! R_i = ρ^{1/2} K_i† Φ(ρ)^{-1/2}, with the inverse square root taken on
//! the support of Φ(ρ). Off that support the map is completed so it is
//! exactly trace-preserving: kernel weight routes to ρ itself.

use num_complex::Complex64;
use serde_json::json;

use crate::channels::{matrix_to_json, QuantumChannel};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::numerics::{
    fidelity, gram_schmidt_columns, hermitian_eig, psd_power, ComplexMatrix, DensityMatrix,
    C_ZERO,
};
use crate::stabilizer::{PauliOperator, StabilizerCode};

/// Isometric encoder V: 2^k → 2^n with its code projector P = VV†.
#[derive(Debug, Clone)]
pub struct DenseCode {
    pub n: usize,
    pub k: usize,
    pub encoder: ComplexMatrix,
    pub projector: ComplexMatrix,
}

impl DenseCode {
    pub fn new(n: usize, k: usize, encoder: ComplexMatrix, cfg: &Config) -> Result<Self> {
        let (dim_n, dim_k) = (1usize << n, 1usize << k);
        if encoder.rows != dim_n || encoder.cols != dim_k {
            return Err(Error::ShapeMismatch {
                left_rows: dim_n,
                left_cols: dim_k,
                right_rows: encoder.rows,
                right_cols: encoder.cols,
            });
        }
        let gram = encoder.dagger().mul(&encoder);
        let dev = gram.sub(&ComplexMatrix::identity(dim_k)).max_abs_entry();
        if dev > 1e-9 {
            return Err(Error::InvalidCode(format!(
                "encoder columns are not orthonormal (deviation {dev:.3e})"
            )));
        }
        let projector = encoder.mul(&encoder.dagger());
        let idem = projector.mul(&projector).sub(&projector).max_abs_entry();
        if idem > 1e-8 || projector.herm_deviation()? > cfg.tol.herm {
            return Err(Error::InvalidCode(format!(
                "projector is not idempotent Hermitian (deviation {idem:.3e})"
            )));
        }
        Ok(DenseCode {
            n,
            k,
            encoder,
            projector,
        })
    }

    /// Conjugate a logical state into the code space: VρV†.
    pub fn encode(&self, source: &DensityMatrix) -> Result<DensityMatrix> {
        if source.dim != 1 << self.k {
            return Err(Error::DimensionMismatch {
                left: source.dim,
                right: 1 << self.k,
            });
        }
        Ok(DensityMatrix::from_trusted(
            self.encoder.mul(source.matrix()).mul(&self.encoder.dagger()),
        ))
    }

    /// Code-space state as a density matrix: P/tr P.
    pub fn projector_state(&self) -> DensityMatrix {
        let tr = self.projector.trace().re;
        DensityMatrix::from_trusted(self.projector.scale(Complex64::new(1.0 / tr, 0.0)))
    }
}

// ---------------------------------------------------------------------------
// Statevector encoders from stabilizer data
// ---------------------------------------------------------------------------

fn apply_pauli_to_statevector(p: &PauliOperator, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![C_ZERO; v.len()];
    let global = p.phase_factor();
    for (idx, &amp) in v.iter().enumerate() {
        if amp == C_ZERO {
            continue;
        }
        let (new_idx, flip) = p.apply_to_basis(idx as u64);
        out[new_idx as usize] += if flip { -global * amp } else { global * amp };
    }
    out
}

fn project_onto_plus_one(p: &PauliOperator, v: &[Complex64]) -> Vec<Complex64> {
    let moved = apply_pauli_to_statevector(p, v);
    v.iter().zip(&moved).map(|(a, b)| 0.5 * (a + b)).collect()
}

fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Phase convention: first nonzero amplitude in lexicographic basis order is
/// real positive.
fn fix_phase(v: &mut [Complex64]) {
    let norm = norm_sq(v).sqrt();
    for z in v.iter_mut() {
        *z /= norm;
    }
    if let Some(first) = v.iter().find(|z| z.norm() > 1e-9) {
        let phase = first / first.norm();
        let correction = phase.conj();
        for z in v.iter_mut() {
            *z *= correction;
        }
    }
}

/// Statevector of the encoded logical-Z basis state |j_L⟩ (logical qubit 0
/// is the most significant bit of `j`). Built from |0_L⟩ by applying the
/// code's logical X operators, so the columns are exactly orthonormal.
pub fn encoded_statevectors(code: &StabilizerCode, cfg: &Config) -> Result<Vec<Vec<Complex64>>> {
    if code.n > cfg.limits.statevector_qubits {
        return Err(Error::ResourceLimit {
            requested: code.n,
            limit: cfg.limits.statevector_qubits,
        });
    }
    let dim = 1usize << code.n;

    // |0_L⟩: project an anchor basis state onto all stabilizer and +Z_L
    // eigenspaces; scan anchors lexicographically until the projection
    // survives.
    let mut zero_logical: Option<Vec<Complex64>> = None;
    for anchor in 0..dim {
        let mut v = vec![C_ZERO; dim];
        v[anchor] = Complex64::new(1.0, 0.0);
        for s in &code.stabilizers {
            v = project_onto_plus_one(s, &v);
        }
        for zl in &code.logical_z {
            v = project_onto_plus_one(zl, &v);
        }
        if norm_sq(&v) > 1e-9 {
            fix_phase(&mut v);
            zero_logical = Some(v);
            break;
        }
    }
    let zero_logical = zero_logical
        .ok_or_else(|| Error::InvalidCode("no basis state survives the code projector".into()))?;

    let mut columns = Vec::with_capacity(1 << code.k);
    for j in 0..(1usize << code.k) {
        let mut v = zero_logical.clone();
        for l in 0..code.k {
            if (j >> (code.k - 1 - l)) & 1 == 1 {
                v = apply_pauli_to_statevector(&code.logical_x[l], &v);
            }
        }
        fix_phase(&mut v);
        columns.push(v);
    }
    Ok(columns)
}

/// Dense encoder from stabilizer data. Full-projector work is capped at
/// `limits.projector_qubits`.
pub fn dense_code_from_stabilizer(code: &StabilizerCode, cfg: &Config) -> Result<DenseCode> {
    if code.n > cfg.limits.projector_qubits {
        return Err(Error::ResourceLimit {
            requested: code.n,
            limit: cfg.limits.projector_qubits,
        });
    }
    let columns = encoded_statevectors(code, cfg)?;
    let dim = 1usize << code.n;
    let cols = 1usize << code.k;
    let raw = ComplexMatrix::from_fn(dim, cols, |i, j| columns[j][i]);
    // Columns are orthogonal by construction; Gram-Schmidt in lexicographic
    // column order pins any residual numerical drift deterministically.
    let encoder = gram_schmidt_columns(&raw);
    DenseCode::new(code.n, code.k, encoder, cfg)
}

// ---------------------------------------------------------------------------
// Knill-Laflamme checking
// ---------------------------------------------------------------------------

/// Result of checking P E_i† E_j P = c_ij P for an error set.
#[derive(Debug, Clone)]
pub struct KLReport {
    /// The c matrix (Hermitian).
    pub c: ComplexMatrix,
    /// Max Frobenius deviation of P E_i† E_j P from c_ij P.
    pub residual: f64,
    /// Environment state Σ tr(P E_i† E_j)|j⟩⟨i| / tr P (possibly
    /// sub-normalized; its trace is reported, not renormalized).
    pub rho_e: ComplexMatrix,
    /// Effective errors F_i = Σ_m U_mi E_m from diagonalizing c.
    pub effective_errors: Vec<ComplexMatrix>,
    /// Eigenvalues of c, descending.
    pub probabilities: Vec<f64>,
    /// Rank of the environment state at cutoff 1e-10.
    pub degeneracy_rank: usize,
    pub exact: bool,
}

impl KLReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "c": matrix_to_json(&self.c),
            "residual": self.residual,
            "rho_e": matrix_to_json(&self.rho_e),
            "trace_rho_e": self.rho_e.trace().re,
            "effective_errors": self.effective_errors.iter().map(matrix_to_json).collect::<Vec<_>>(),
            "probabilities": self.probabilities,
            "degeneracy_rank": self.degeneracy_rank,
            "exact": self.exact,
        })
    }
}

/// Check the Knill-Laflamme condition for an error set on a code.
///
/// With `normalized` (the default convention) c_ij divides by tr P exactly
/// as the environment-state formula does; the unnormalized alternative is
/// exposed because some references omit the division.
pub fn kl_check(
    code: &DenseCode,
    errors: &[ComplexMatrix],
    normalized: bool,
    cfg: &Config,
) -> Result<KLReport> {
    let dim = 1usize << code.n;
    for e in errors {
        if e.rows != dim || e.cols != dim {
            return Err(Error::ShapeMismatch {
                left_rows: dim,
                left_cols: dim,
                right_rows: e.rows,
                right_cols: e.cols,
            });
        }
    }
    let m = errors.len();
    let p = &code.projector;
    let tr_p = p.trace().re;
    let scale = if normalized { tr_p } else { 1.0 };

    // With A_i = E_i P: P E_i† E_j P = A_i† A_j and
    // tr(P E_i† E_j P) = ⟨A_i, A_j⟩.
    let a: Vec<ComplexMatrix> = errors.iter().map(|e| e.mul(p)).collect();
    let mut c = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let mut inner = C_ZERO;
            for (x, y) in a[i].entries().iter().zip(a[j].entries()) {
                inner += x.conj() * y;
            }
            c.set(i, j, inner / Complex64::new(scale, 0.0));
        }
    }
    let c = c.hermitize();

    let mut residual: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let prod = a[i].dagger().mul(&a[j]);
            let dev = prod.sub(&p.scale(c.get(i, j))).frobenius_norm();
            residual = residual.max(dev);
        }
    }

    // rho_E = Σ tr(P E_i† E_j)|j⟩⟨i| / tr P; equal to c transposed when the
    // normalized convention is chosen.
    let mut rho_e = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            rho_e.set(j, i, c.get(i, j) * Complex64::new(scale / tr_p, 0.0));
        }
    }

    let (eigenvalues, vectors) = hermitian_eig(&c, &cfg.tol)?;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| eigenvalues[y].total_cmp(&eigenvalues[x]));
    let probabilities: Vec<f64> = order.iter().map(|&i| eigenvalues[i]).collect();
    let degeneracy_rank = probabilities.iter().filter(|&&p| p > 1e-10).count();

    let mut effective_errors = Vec::with_capacity(m);
    for &col in &order {
        let mut f = ComplexMatrix::zeros(dim, dim);
        for (row, e) in errors.iter().enumerate() {
            let u = vectors.get(row, col);
            if u != C_ZERO {
                f = f.add(&e.scale(u));
            }
        }
        effective_errors.push(f);
    }

    let exact = residual < cfg.tol.kl_exact;
    Ok(KLReport {
        c,
        residual,
        rho_e,
        effective_errors,
        probabilities,
        degeneracy_rank,
        exact,
    })
}

// ---------------------------------------------------------------------------
// Petz recovery
// ---------------------------------------------------------------------------

/// The Petz recovery map of (ρ, Φ): Kraus set {ρ^{1/2} K_i† Φ(ρ)^{-1/2}} on
/// the support of Φ(ρ), completed off the support by routing to ρ.
pub fn petz_map(rho: &DensityMatrix, channel: &QuantumChannel, cfg: &Config) -> Result<QuantumChannel> {
    if rho.dim != channel.din {
        return Err(Error::DimensionMismatch {
            left: rho.dim,
            right: channel.din,
        });
    }
    let sqrt_rho = psd_power(rho.matrix(), 0.5, None, &cfg.tol)?;
    let phi_rho = channel.apply(rho)?;
    let inv_sqrt = psd_power(phi_rho.matrix(), -0.5, None, &cfg.tol)?;

    let mut kraus: Vec<ComplexMatrix> = channel
        .kraus()
        .iter()
        .map(|k| sqrt_rho.mul(&k.dagger()).mul(&inv_sqrt))
        .collect();

    // Completion: kernel weight of Φ(ρ) routes to ρ. Kraus terms
    // √μ_m |v_m⟩⟨w_a| over eigenpairs (μ_m, v_m) of ρ and a kernel basis
    // {w_a} of Φ(ρ).
    let (out_vals, out_vecs) = hermitian_eig(phi_rho.matrix(), &cfg.tol)?;
    let lam_max = out_vals.last().copied().unwrap_or(0.0).max(0.0);
    let cut = cfg.tol.cutoff_rel * lam_max;
    let kernel: Vec<usize> = (0..out_vals.len()).filter(|&i| out_vals[i] <= cut).collect();
    if !kernel.is_empty() {
        let (rho_vals, rho_vecs) = hermitian_eig(rho.matrix(), &cfg.tol)?;
        let rho_cut = cfg.tol.cutoff_rel * rho_vals.last().copied().unwrap_or(0.0).max(0.0);
        for (m_idx, &mu) in rho_vals.iter().enumerate() {
            if mu <= rho_cut {
                continue;
            }
            let amp = mu.sqrt();
            for &a in &kernel {
                let op = ComplexMatrix::from_fn(channel.din, channel.dout, |i, j| {
                    rho_vecs.get(i, m_idx) * out_vecs.get(j, a).conj() * Complex64::new(amp, 0.0)
                });
                kraus.push(op);
            }
        }
    }

    Ok(QuantumChannel::from_kraus_trusted(
        kraus,
        channel.dout,
        channel.din,
    ))
}

// ---------------------------------------------------------------------------
// Protect cycle
// ---------------------------------------------------------------------------

/// Which reference state the recovery map is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecoveryKind {
    /// Petz map of the encoded known state VρV† (state-adaptive).
    StateAdaptive,
    /// Petz map of the code projector P/tr P (the transpose channel /
    /// pretty-good-measurement decoder).
    TransposeChannel,
}

/// Outcome of one encode → noise → recover → decode cycle.
#[derive(Debug, Clone, Copy)]
pub struct ProtectReport {
    /// Fidelity of the decoded logical state to the source.
    pub fidelity: f64,
    /// Probability weight left outside the code space before decoding; the
    /// decoded state is renormalized on the logical space.
    pub leakage: f64,
}

/// Run the protect cycle: encode `source`, send through `noise`
/// (already tensored over the block), recover with the chosen Petz
/// reference, decode, compare to the source.
pub fn protect_cycle(
    source: &DensityMatrix,
    code: &DenseCode,
    noise: &QuantumChannel,
    recovery: RecoveryKind,
    cfg: &Config,
) -> Result<ProtectReport> {
    let dim_n = 1usize << code.n;
    if noise.din != dim_n || noise.dout != dim_n {
        return Err(Error::DimensionMismatch {
            left: noise.din.max(noise.dout),
            right: dim_n,
        });
    }
    let encoded = code.encode(source)?;
    let reference = match recovery {
        RecoveryKind::StateAdaptive => encoded.clone(),
        RecoveryKind::TransposeChannel => code.projector_state(),
    };
    let noisy = noise.apply(&encoded)?;
    let recover = petz_map(&reference, noise, cfg)?;
    let recovered = recover.apply(&noisy)?;

    // Decode by V† · V conjugation; weight outside the code space is
    // reported as leakage and the logical state renormalized.
    let decoded_raw = code
        .encoder
        .dagger()
        .mul(recovered.matrix())
        .mul(&code.encoder);
    let weight = decoded_raw.trace().re;
    let leakage = (1.0 - weight).max(0.0);
    if weight <= 1e-12 {
        return Ok(ProtectReport {
            fidelity: 0.0,
            leakage,
        });
    }
    let decoded = DensityMatrix::from_trusted(decoded_raw.scale(Complex64::new(1.0 / weight, 0.0)));
    let f = fidelity(&decoded, source, &cfg.tol)?;
    Ok(ProtectReport {
        fidelity: f,
        leakage,
    })
}

/// Weight-≤1 Pauli error set {I} ∪ {X_q, Y_q, Z_q} as dense matrices.
pub fn weight_le_one_errors(n: usize) -> Vec<ComplexMatrix> {
    let mut errors = vec![PauliOperator::identity(n).unwrap().dense()];
    for q in 0..n {
        for letter in ['X', 'Y', 'Z'] {
            errors.push(PauliOperator::single(n, q, letter).unwrap().dense());
        }
    }
    errors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{build_family, ChannelFamily};
    use crate::stabilizer::{build_code, CodeName};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn trivial_code_has_identity_encoder() {
        let cfg = cfg();
        let code = StabilizerCode::new(
            1,
            vec![],
            vec![PauliOperator::parse("X").unwrap()],
            vec![PauliOperator::parse("Z").unwrap()],
        )
        .unwrap();
        let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
        assert!(dense.encoder.approx_eq(&ComplexMatrix::identity(2), 1e-12));
    }

    #[test]
    fn five_qubit_encoder_is_isometry() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
        assert_eq!((dense.encoder.rows, dense.encoder.cols), (32, 2));
        // V†V = I is enforced by the constructor; double-check trace of P.
        assert!((dense.projector.trace().re - 2.0).abs() < 1e-9);
    }

    #[test]
    fn steane_projector_trace_is_two() {
        let cfg = cfg();
        let code = build_code(CodeName::Steane);
        let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
        assert!((dense.projector.trace().re - 2.0).abs() < 1e-8);
    }

    #[test]
    fn encoded_statevectors_respect_stabilizers() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let cols = encoded_statevectors(&code, &cfg).unwrap();
        for col in &cols {
            for s in &code.stabilizers {
                let moved = apply_pauli_to_statevector(s, col);
                let overlap: Complex64 = col
                    .iter()
                    .zip(&moved)
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                assert!((overlap.re - 1.0).abs() < 1e-10);
            }
        }
        // Logical Z distinguishes the columns.
        let z = &code.logical_z[0];
        let moved = apply_pauli_to_statevector(z, &cols[1]);
        let overlap: Complex64 = cols[1].iter().zip(&moved).map(|(a, b)| a.conj() * b).sum();
        assert!((overlap.re + 1.0).abs() < 1e-10);
    }

    #[test]
    fn kl_identity_error_is_trivial() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
        let report = kl_check(&dense, &[ComplexMatrix::identity(32)], true, &cfg).unwrap();
        assert!(report.exact);
        assert!((report.c.get(0, 0).re - 1.0).abs() < 1e-10);
        assert_eq!(report.degeneracy_rank, 1);
    }

    #[test]
    fn kl_five_qubit_weight_one_is_exact_nondegenerate() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
        let errors = weight_le_one_errors(5);
        let report = kl_check(&dense, &errors, true, &cfg).unwrap();
        assert!(report.exact, "residual {}", report.residual);
        assert!(report
            .c
            .approx_eq(&ComplexMatrix::identity(errors.len()), 1e-8));
        assert_eq!(report.degeneracy_rank, 16);
        // Σ p_i = tr ρ_E.
        let sum: f64 = report.probabilities.iter().sum();
        assert!((sum - report.rho_e.trace().re).abs() < 1e-8);
    }

    #[test]
    fn kl_shor_z1z2_is_degenerate() {
        let cfg = cfg();
        let code = build_code(CodeName::Shor);
        // Shor has n=9 > projector_qubits=7; lift the cap for this check.
        let mut cfg9 = cfg;
        cfg9.limits.projector_qubits = 9;
        let dense = dense_code_from_stabilizer(&code, &cfg9).unwrap();
        let errors = vec![
            PauliOperator::single(9, 0, 'Z').unwrap().dense(),
            PauliOperator::single(9, 1, 'Z').unwrap().dense(),
        ];
        let report = kl_check(&dense, &errors, true, &cfg9).unwrap();
        assert!(report.exact);
        assert!((report.c.get(0, 1).norm() - 1.0).abs() < 1e-8);
        assert_eq!(report.degeneracy_rank, 1);
    }

    #[test]
    fn kl_five_qubit_weight_two_pair_fails() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
        // X0·Y1 and Z1·Z3 multiply to the weight-3 logical X0X1Z3, so this
        // weight-2 pair shares a syndrome and cannot satisfy the condition.
        let e1 = PauliOperator::parse("XYIII").unwrap();
        let e2 = PauliOperator::parse("IZIZI").unwrap();
        let product = e1.dagger().mul(&e2).unwrap();
        for s in &code.stabilizers {
            assert!(product.commutes(s));
        }
        let report = kl_check(&dense, &[e1.dense(), e2.dense()], true, &cfg).unwrap();
        assert!(!report.exact);
        assert!(report.residual > 0.1);
    }

    #[test]
    fn petz_of_identity_channel_is_identity() {
        let cfg = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let rho = DensityMatrix::random(3, &mut rng);
        let petz = petz_map(&rho, &QuantumChannel::identity(3), &cfg).unwrap();
        for _ in 0..5 {
            let probe = DensityMatrix::random(3, &mut rng);
            let out = petz.apply(&probe).unwrap();
            assert!(out.matrix().approx_eq(probe.matrix(), 1e-9));
        }
    }

    #[test]
    fn petz_recovers_its_reference_state() {
        let cfg = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..50 {
            let dim = 2 + (rng.gen::<u64>() % 4) as usize;
            let rho = DensityMatrix::random(dim, &mut rng);
            let ch = QuantumChannel::random(dim, dim, 3, &mut rng);
            let petz = petz_map(&rho, &ch, &cfg).unwrap();
            let recovered = petz.apply(&ch.apply(&rho).unwrap()).unwrap();
            let f = fidelity(&recovered, &rho, &cfg.tol).unwrap();
            assert!(f >= 1.0 - 1e-8, "fidelity {f}");
        }
    }

    #[test]
    fn petz_is_state_adaptive_not_universal() {
        let cfg = cfg();
        let zero = DensityMatrix::basis_state(2, 0);
        let depol = build_family(ChannelFamily::Depolarizing, 0.3, &cfg).unwrap();
        let petz = petz_map(&zero, &depol, &cfg).unwrap();
        // Its reference state comes back exactly...
        let f_ref = fidelity(
            &petz.apply(&depol.apply(&zero).unwrap()).unwrap(),
            &zero,
            &cfg.tol,
        )
        .unwrap();
        assert!(f_ref >= 1.0 - 1e-9);
        // ...but a different input does not.
        let plus = DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        let f_other = fidelity(
            &petz.apply(&depol.apply(&plus).unwrap()).unwrap(),
            &plus,
            &cfg.tol,
        )
        .unwrap();
        assert!(f_other < 0.99, "state-adaptivity gap missing: {f_other}");
    }

    #[test]
    fn petz_support_identity() {
        // Σ R†R equals the support projector of Φ(ρ) for a rank-deficient
        // reference.
        let cfg = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        let rho = DensityMatrix::basis_state(4, 1);
        let ch = QuantumChannel::random(4, 4, 2, &mut rng);
        let phi_rho = ch.apply(&rho).unwrap();
        let petz = petz_map(&rho, &ch, &cfg).unwrap();
        let mut sum = ComplexMatrix::zeros(4, 4);
        // Only the support part (the first r Kraus operators).
        for r in petz.kraus().iter().take(ch.kraus().len()) {
            sum = sum.add(&r.dagger().mul(r));
        }
        let proj = crate::numerics::support_projector(phi_rho.matrix(), None, &cfg.tol).unwrap();
        assert!(sum.approx_eq(&proj, 1e-8));
    }

    #[test]
    fn protect_cycle_zero_noise_is_exact() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
        let noise = build_family(ChannelFamily::Depolarizing, 0.0, &cfg)
            .unwrap()
            .tensor_power(5, &cfg)
            .unwrap();
        let source = DensityMatrix::basis_state(2, 0);
        let report = protect_cycle(&source, &dense, &noise, RecoveryKind::StateAdaptive, &cfg).unwrap();
        assert!(report.fidelity >= 1.0 - 1e-10);
        assert!(report.leakage < 1e-10);
    }

    #[test]
    fn protect_cycle_state_adaptive_is_exact_under_noise() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
        let noise = build_family(ChannelFamily::Depolarizing, 0.05, &cfg)
            .unwrap()
            .tensor_power(5, &cfg)
            .unwrap();
        let source = DensityMatrix::basis_state(2, 0);
        let report = protect_cycle(&source, &dense, &noise, RecoveryKind::StateAdaptive, &cfg).unwrap();
        assert!(report.fidelity >= 1.0 - 1e-8, "fidelity {}", report.fidelity);
    }
}
