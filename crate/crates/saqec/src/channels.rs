//! Quantum channel representations (Kraus, Choi, complementary) and the
//! standard parameterized noise families.
//!
//! Kraus conventions are bit-exact as documented on [`ChannelFamily`]:
//!
//! - depolarizing, p ∈ [0, 1]: ρ → (1-p)ρ + (p/3)(XρX + YρY + ZρZ)
//! - dephasing, p ∈ [0, 1]: ρ → (1-p)ρ + pZρZ
//! - amplitude damping, γ ∈ [0, 1]: K₀ = diag(1, √(1-γ)), K₁ = √γ |0⟩⟨1|
//! - erasure, p ∈ [0, 1]: flag as an extra orthogonal output dimension,
//!   ρ → (1-p)ρ ⊕ p|2⟩⟨2| (dout = din + 1)

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::numerics::{
    hermitian_eig, random_isometry, ComplexMatrix, DensityMatrix, C_ONE, C_ZERO,
};

/// Completely positive trace-preserving map as a finite Kraus family.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    pub din: usize,
    pub dout: usize,
    kraus: Vec<ComplexMatrix>,
}

impl QuantumChannel {
    /// Validating constructor: checks shapes and Σ K†K = I within `tol.cptp`,
    /// and canonicalizes if the operator count exceeds din·dout.
    pub fn new(kraus: Vec<ComplexMatrix>, cfg: &Config) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidCode("empty Kraus set".into()));
        }
        let dout = kraus[0].rows;
        let din = kraus[0].cols;
        if din.max(dout) > cfg.limits.max_channel_dim {
            return Err(Error::ResourceLimit {
                requested: din.max(dout),
                limit: cfg.limits.max_channel_dim,
            });
        }
        for k in &kraus {
            if k.rows != dout || k.cols != din {
                return Err(Error::ShapeMismatch {
                    left_rows: dout,
                    left_cols: din,
                    right_rows: k.rows,
                    right_cols: k.cols,
                });
            }
        }
        let mut sum = ComplexMatrix::zeros(din, din);
        for k in &kraus {
            sum = sum.add(&k.dagger().mul(k));
        }
        let dev = sum.sub(&ComplexMatrix::identity(din)).max_abs_entry();
        if dev > cfg.tol.cptp {
            return Err(Error::NotTracePreserving { deviation: dev });
        }
        let ch = QuantumChannel { din, dout, kraus };
        if ch.kraus.len() > din * dout {
            ch.canonicalize(cfg)
        } else {
            Ok(ch)
        }
    }

    /// Construction path for maps that are trace-preserving by construction
    /// (Petz recovery with its completion); skips the conditioning-sensitive
    /// CPTP entry check.
    pub(crate) fn from_kraus_trusted(kraus: Vec<ComplexMatrix>, din: usize, dout: usize) -> Self {
        QuantumChannel { din, dout, kraus }
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn identity(dim: usize) -> Self {
        QuantumChannel {
            din: dim,
            dout: dim,
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    /// Random channel with `r` Kraus operators from a Haar-ish Stinespring
    /// isometry, exactly trace-preserving.
    pub fn random(din: usize, dout: usize, r: usize, rng: &mut impl Rng) -> Self {
        let iso = random_isometry(r * dout, din, rng);
        let kraus = (0..r)
            .map(|i| ComplexMatrix::from_fn(dout, din, |a, m| iso.get(i * dout + a, m)))
            .collect();
        QuantumChannel { din, dout, kraus }
    }

    /// Σ K ρ K†.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim != self.din {
            return Err(Error::DimensionMismatch {
                left: rho.dim,
                right: self.din,
            });
        }
        let mut out = ComplexMatrix::zeros(self.dout, self.dout);
        for k in &self.kraus {
            out = out.add(&k.mul(rho.matrix()).mul(&k.dagger()));
        }
        Ok(DensityMatrix::from_trusted(out))
    }

    /// Apply to an arbitrary (not necessarily unit-trace) operator.
    pub fn apply_matrix(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dout, self.dout);
        for k in &self.kraus {
            out = out.add(&k.mul(m).mul(&k.dagger()));
        }
        out
    }

    /// Choi state ω_Φ = (Φ ⊗ 1)(ω), on dimension dout·din with the channel
    /// output as the left tensor factor.
    pub fn choi(&self) -> ChoiState {
        let d = self.din as f64;
        let dim = self.dout * self.din;
        let mut m = ComplexMatrix::zeros(dim, dim);
        for k in &self.kraus {
            // (K ⊗ 1)|ω⟩ has amplitudes K[a,i]/√d at |a⟩⊗|i⟩.
            for a in 0..self.dout {
                for i in 0..self.din {
                    let amp_ai = k.get(a, i);
                    if amp_ai == C_ZERO {
                        continue;
                    }
                    for b in 0..self.dout {
                        for j in 0..self.din {
                            let r = a * self.din + i;
                            let c = b * self.din + j;
                            let cur = m.get(r, c);
                            m.set(r, c, cur + amp_ai * k.get(b, j).conj() / d);
                        }
                    }
                }
            }
        }
        ChoiState {
            din: self.din,
            dout: self.dout,
            matrix: DensityMatrix::from_trusted(m),
        }
    }

    /// Rebuild the channel from its Choi eigendecomposition, dropping
    /// eigenvalues below `tol.choi_kraus_cutoff`. Bounds the Kraus count by
    /// din·dout.
    pub fn canonicalize(&self, cfg: &Config) -> Result<Self> {
        self.choi().to_channel(cfg)
    }

    /// The complementary channel Φ^c (system → environment), from the
    /// Stinespring dilation V|ψ⟩ = Σ_i |i⟩_E ⊗ K_i|ψ⟩. The environment
    /// dimension is the Kraus count and Φ^c(ρ)_{ij} = tr(K_i ρ K_j†).
    pub fn complementary(&self) -> QuantumChannel {
        let r = self.kraus.len();
        let kraus = (0..self.dout)
            .map(|a| ComplexMatrix::from_fn(r, self.din, |i, m| self.kraus[i].get(a, m)))
            .collect();
        QuantumChannel {
            din: self.din,
            dout: r,
            kraus,
        }
    }

    /// Kraus set of the parallel composition: all pairwise tensor products.
    pub fn tensor(&self, other: &QuantumChannel, cfg: &Config) -> Result<QuantumChannel> {
        let din = self.din * other.din;
        let dout = self.dout * other.dout;
        if din.max(dout) > cfg.limits.max_channel_dim {
            return Err(Error::ResourceLimit {
                requested: din.max(dout),
                limit: cfg.limits.max_channel_dim,
            });
        }
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for a in &self.kraus {
            for b in &other.kraus {
                kraus.push(a.kron(b));
            }
        }
        let ch = QuantumChannel { din, dout, kraus };
        // Canonicalize only when the pairwise set is actually redundant.
        if ch.kraus.len() > din * dout {
            ch.canonicalize(cfg)
        } else {
            Ok(ch)
        }
    }

    /// n-fold parallel composition Φ^⊗n.
    pub fn tensor_power(&self, n: usize, cfg: &Config) -> Result<QuantumChannel> {
        assert!(n >= 1);
        let mut out = self.clone();
        for _ in 1..n {
            out = out.tensor(self, cfg)?;
        }
        Ok(out)
    }
}

/// Choi state of a channel: PSD, with tr_out ω_Φ = I/din.
#[derive(Debug, Clone)]
pub struct ChoiState {
    pub din: usize,
    pub dout: usize,
    pub matrix: DensityMatrix,
}

impl ChoiState {
    /// Validates the partial-trace invariant before accepting an
    /// externally supplied Choi matrix.
    pub fn new(matrix: DensityMatrix, din: usize, dout: usize, cfg: &Config) -> Result<Self> {
        if matrix.dim != din * dout {
            return Err(Error::DimensionMismatch {
                left: matrix.dim,
                right: din * dout,
            });
        }
        let reduced = crate::numerics::partial_trace(&matrix, &[dout, din], &[1])?;
        let target = DensityMatrix::maximally_mixed(din);
        let dev = reduced.matrix().sub(target.matrix()).max_abs_entry();
        if dev > cfg.tol.cptp {
            return Err(Error::BadChoi { deviation: dev });
        }
        Ok(ChoiState { din, dout, matrix })
    }

    /// Kraus extraction by eigendecomposition, discarding eigenvalues below
    /// the configured cutoff.
    pub fn to_channel(&self, cfg: &Config) -> Result<QuantumChannel> {
        let (vals, vecs) = hermitian_eig(self.matrix.matrix(), &cfg.tol)?;
        let d = self.din as f64;
        let mut kraus = Vec::new();
        for (idx, &lam) in vals.iter().enumerate() {
            if lam < cfg.tol.choi_kraus_cutoff {
                continue;
            }
            let scale = (lam * d).sqrt();
            kraus.push(ComplexMatrix::from_fn(self.dout, self.din, |a, i| {
                vecs.get(a * self.din + i, idx) * scale
            }));
        }
        QuantumChannel::new(kraus, cfg)
    }
}

// ---------------------------------------------------------------------------
// Parameterized noise families
// ---------------------------------------------------------------------------

/// The standard qubit noise families Φ(λ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelFamily {
    Depolarizing,
    Dephasing,
    AmplitudeDamping,
    Erasure,
}

impl ChannelFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelFamily::Depolarizing => "depolarizing",
            ChannelFamily::Dephasing => "dephasing",
            ChannelFamily::AmplitudeDamping => "amplitude_damping",
            ChannelFamily::Erasure => "erasure",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "depolarizing" => Ok(ChannelFamily::Depolarizing),
            "dephasing" => Ok(ChannelFamily::Dephasing),
            "amplitude_damping" => Ok(ChannelFamily::AmplitudeDamping),
            "erasure" => Ok(ChannelFamily::Erasure),
            other => Err(Error::UnknownCode(format!("channel family '{other}'"))),
        }
    }

    /// Parameter domain (closed interval).
    pub fn domain(&self) -> (f64, f64) {
        (0.0, 1.0)
    }
}

fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![C_ZERO, C_ONE, C_ONE, C_ZERO],
    )
    .unwrap()
}

fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            C_ZERO,
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            C_ZERO,
        ],
    )
    .unwrap()
}

fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![C_ONE, C_ZERO, C_ZERO, Complex64::new(-1.0, 0.0)],
    )
    .unwrap()
}

/// Build a family member at parameter `lambda`.
pub fn build_family(kind: ChannelFamily, lambda: f64, cfg: &Config) -> Result<QuantumChannel> {
    let (lo, hi) = kind.domain();
    if !(lo..=hi).contains(&lambda) || !lambda.is_finite() {
        return Err(Error::OutOfDomain {
            family: kind.name(),
            value: lambda,
            lo,
            hi,
        });
    }
    let re = |x: f64| Complex64::new(x, 0.0);
    let kraus = match kind {
        ChannelFamily::Depolarizing => {
            let p = lambda;
            vec![
                ComplexMatrix::identity(2).scale(re((1.0 - p).sqrt())),
                pauli_x().scale(re((p / 3.0).sqrt())),
                pauli_y().scale(re((p / 3.0).sqrt())),
                pauli_z().scale(re((p / 3.0).sqrt())),
            ]
        }
        ChannelFamily::Dephasing => {
            let p = lambda;
            vec![
                ComplexMatrix::identity(2).scale(re((1.0 - p).sqrt())),
                pauli_z().scale(re(p.sqrt())),
            ]
        }
        ChannelFamily::AmplitudeDamping => {
            let g = lambda;
            let mut k0 = ComplexMatrix::zeros(2, 2);
            k0.set(0, 0, C_ONE);
            k0.set(1, 1, re((1.0 - g).sqrt()));
            let mut k1 = ComplexMatrix::zeros(2, 2);
            k1.set(0, 1, re(g.sqrt()));
            vec![k0, k1]
        }
        ChannelFamily::Erasure => {
            let p = lambda;
            let mut k0 = ComplexMatrix::zeros(3, 2);
            k0.set(0, 0, re((1.0 - p).sqrt()));
            k0.set(1, 1, re((1.0 - p).sqrt()));
            let mut k1 = ComplexMatrix::zeros(3, 2);
            k1.set(2, 0, re(p.sqrt()));
            let mut k2 = ComplexMatrix::zeros(3, 2);
            k2.set(2, 1, re(p.sqrt()));
            vec![k0, k1, k2]
        }
    };
    QuantumChannel::new(kraus, cfg)
}

// ---------------------------------------------------------------------------
// JSON channel specs
// ---------------------------------------------------------------------------

/// Serialized channel description: either a family reference or an explicit
/// Kraus list with complex entries as [re, im] pairs.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChannelSpec {
    Family { kind: ChannelFamily, param: f64 },
    Explicit {
        din: usize,
        dout: usize,
        kraus: Vec<Vec<Vec<[f64; 2]>>>,
    },
}

impl ChannelSpec {
    pub fn build(&self, cfg: &Config) -> Result<QuantumChannel> {
        match self {
            ChannelSpec::Family { kind, param } => build_family(*kind, *param, cfg),
            ChannelSpec::Explicit { din, dout, kraus } => {
                let mut ops = Vec::with_capacity(kraus.len());
                for k in kraus {
                    if k.len() != *dout || k.iter().any(|row| row.len() != *din) {
                        return Err(Error::ShapeMismatch {
                            left_rows: *dout,
                            left_cols: *din,
                            right_rows: k.len(),
                            right_cols: k.first().map_or(0, |r| r.len()),
                        });
                    }
                    let entries = k
                        .iter()
                        .flat_map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)))
                        .collect();
                    ops.push(ComplexMatrix::new(*dout, *din, entries)?);
                }
                QuantumChannel::new(ops, cfg)
            }
        }
    }
}

/// Matrix serialization with complex entries as [re, im] pairs.
pub fn matrix_to_json(m: &ComplexMatrix) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect();
    serde_json::json!({ "rows": m.rows, "cols": m.cols, "entries": rows })
}
