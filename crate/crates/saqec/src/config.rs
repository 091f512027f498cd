//! Centralized tolerances and dense-size limits.
//!
//! Every numerical threshold used by the library lives here so that tests,
//! the CLI, and library callers agree on one set of values.

/// Numerical tolerances. `Default` gives the values the whole crate is
/// calibrated against; override only with care.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Max absolute entry deviation allowed in |A - A†| for Hermitian inputs.
    pub herm: f64,
    /// Eigenvalues ≥ -psd are accepted as nonnegative.
    pub psd: f64,
    /// |tr ρ - 1| allowed for density matrices.
    pub trace: f64,
    /// Max |ΣK†K - I| entry for trace preservation.
    pub cptp: f64,
    /// Relative spectral cutoff: eigenvalues below `cutoff_rel · λ_max`
    /// are treated as exactly zero in pseudo-inverse powers.
    pub cutoff_rel: f64,
    /// Residual below which a Knill-Laflamme check is reported exact.
    pub kl_exact: f64,
    /// Eigenvalues of a Choi matrix below this are discarded when
    /// extracting Kraus operators.
    pub choi_kraus_cutoff: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm: 1e-10,
            psd: 1e-10,
            trace: 1e-10,
            cptp: 1e-9,
            cutoff_rel: 1e-10,
            kl_exact: 1e-8,
            choi_kraus_cutoff: 1e-10,
        }
    }
}

/// Hard caps for dense work. Dense density matrices are quadratic in
/// dimension and channel application is cubic; these keep every documented
/// invocation desk-scale.
#[derive(Debug, Clone, Copy)]
pub struct DenseLimits {
    /// Largest dimension for a dense matrix (4096 = 12 qubits).
    pub max_matrix_dim: usize,
    /// Largest input/output dimension for a dense channel (128 = 7 qubits).
    pub max_channel_dim: usize,
    /// Largest qubit count for full-projector code work.
    pub projector_qubits: usize,
    /// Largest qubit count for statevector encoder columns.
    pub statevector_qubits: usize,
    /// Largest generator count for full syndrome tables (2^m entries).
    pub max_table_generators: usize,
    /// Largest qubit count for exhaustive 4^n Pauli enumeration.
    pub max_exhaustive_qubits: usize,
}

impl Default for DenseLimits {
    fn default() -> Self {
        DenseLimits {
            max_matrix_dim: 4096,
            max_channel_dim: 128,
            projector_qubits: 7,
            statevector_qubits: 15,
            max_table_generators: 20,
            max_exhaustive_qubits: 8,
        }
    }
}

/// One record holding both, passed wherever checks are configurable.
#[derive(Debug, Clone, Copy, Default)]
pub struct Config {
    pub tol: Tolerances,
    pub limits: DenseLimits,
}

impl Config {
    pub fn new() -> Self {
        Self::default()
    }
}
