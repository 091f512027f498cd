//! Binary symplectic Pauli algebra, tableau stabilizer-state simulation,
//! code constructors, correlator groups, and graph-state conversion.

pub mod codes;
pub mod graph;
pub mod pauli;
pub mod tableau;

pub use codes::{build_code, correlator_group, encoded_basis_state, CodeName, LogicalBasis, StabilizerCode};
pub use graph::{to_graph_state, GraphState, LocalGate};
pub use pauli::{symplectic_rank, PauliOperator, MAX_QUBITS};
pub use tableau::{conjugate_pauli, Gate, Tableau};

/// True iff the operators commute under the GF(2) symplectic form.
pub fn symplectic_commute(a: &PauliOperator, b: &PauliOperator) -> crate::error::Result<bool> {
    if a.n != b.n {
        return Err(crate::error::Error::DimensionMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(a.commutes(b))
}
