use thiserror::Error;

/// Errors for channel, code, and decoder computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("not Hermitian: max |A - A†| entry = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is {trace:.12} (expected 1 within tolerance)")]
    BadTrace { trace: f64 },

    #[error("Kraus set is not trace-preserving: max |ΣK†K - I| entry = {deviation:.3e}")]
    NotTracePreserving { deviation: f64 },

    #[error("Choi partial-trace invariant violated: max deviation = {deviation:.3e}")]
    BadChoi { deviation: f64 },

    #[error("parameter {value} outside domain [{lo}, {hi}] for {family}")]
    OutOfDomain {
        family: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("dense dimension {requested} exceeds configured limit {limit}")]
    ResourceLimit { requested: usize, limit: usize },

    #[error("qubit count {n} exceeds the bit-mask limit {max}")]
    QubitLimit { n: usize, max: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid stabilizer set: {0}")]
    InvalidCode(String),

    #[error("invalid Pauli string: {0}")]
    InvalidPauli(String),

    #[error("syndrome length {got} does not match generator count {expected}")]
    SyndromeLength { expected: usize, got: usize },

    #[error("probability {value} outside [0, 1)")]
    InvalidProbability { value: f64 },

    #[error("bracket endpoints have the same sign: f({lo}) = {f_lo:.3e}, f({hi}) = {f_hi:.3e}")]
    SameSignBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("state is not in the source code: {0}")]
    NotInCode(String),

    #[error("non-Clifford gate in circuit: {0}")]
    NonCliffordGate(String),

    #[error("unknown code name: {0}")]
    UnknownCode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
