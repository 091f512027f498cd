//! Graph-state normal form for stabilizer states.
//!
//! Every stabilizer state is local-Clifford equivalent to a graph state with
//! generators X_v Π_{u~v} Z_u. The conversion row-reduces the (X|Z)
//! generator matrix over GF(2); where the X block is singular it applies
//! Hadamards on the non-pivot qubits (lowest index first, deterministic),
//! then clears the adjacency diagonal with S and the generator signs with Z.
//! The per-qubit gate sequences are recorded so the source group can be
//! reconstructed exactly.

use super::pauli::PauliOperator;
use super::tableau::{Gate, Tableau};
use crate::error::Result;

/// Single-qubit gates recorded by the conversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalGate {
    H,
    S,
    Z,
}

/// Graph adjacency plus the local Cliffords relating it to the source state.
#[derive(Debug, Clone)]
pub struct GraphState {
    pub n: usize,
    /// Symmetric, zero-diagonal.
    pub adjacency: Vec<Vec<bool>>,
    /// `local_cliffords[q]` applied in order to the source state maps it to
    /// the canonical graph state of `adjacency`.
    pub local_cliffords: Vec<Vec<LocalGate>>,
}

impl GraphState {
    /// Canonical tableau of a graph state: X_v Π_{u~v} Z_u with + signs.
    pub fn canonical_tableau(adjacency: &[Vec<bool>]) -> Result<Tableau> {
        let n = adjacency.len();
        let mut gens = Vec::with_capacity(n);
        for v in 0..n {
            let mut x = 0u64;
            let mut z = 0u64;
            x |= 1 << v;
            for u in 0..n {
                if adjacency[v][u] {
                    z |= 1 << u;
                }
            }
            gens.push(PauliOperator::from_bits(n, x, z, 0)?);
        }
        Tableau::new(n, gens)
    }

    /// Toggle edges among the neighbours of `v` (a local complementation).
    pub fn local_complement(&self, v: usize) -> GraphState {
        let mut adj = self.adjacency.clone();
        let nbrs: Vec<usize> = (0..self.n).filter(|&u| self.adjacency[v][u]).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in nbrs.iter().skip(i + 1) {
                adj[a][b] = !adj[a][b];
                adj[b][a] = !adj[b][a];
            }
        }
        GraphState {
            n: self.n,
            adjacency: adj,
            local_cliffords: vec![Vec::new(); self.n],
        }
    }
}

fn apply_local(t: &Tableau, q: usize, g: LocalGate) -> Tableau {
    let gate = match g {
        LocalGate::H => Gate::H(q),
        LocalGate::S => Gate::S(q),
        LocalGate::Z => Gate::Z(q),
    };
    t.apply_gate(gate).expect("index validated by caller")
}

/// Convert a stabilizer state to its graph normal form.
pub fn to_graph_state(t: &Tableau) -> GraphState {
    let n = t.n;
    let mut work = t.clone();
    let mut local: Vec<Vec<LocalGate>> = vec![Vec::new(); n];

    // Pass 1: RREF the X block to find the pivot columns.
    let pivot_cols = x_block_pivots(&work);

    // Hadamard every non-pivot qubit; commutation of the residual pure-Z
    // rows forces the regularized X block to full rank.
    for q in 0..n {
        if !pivot_cols.contains(&q) {
            work = apply_local(&work, q, LocalGate::H);
            local[q].push(LocalGate::H);
        }
    }

    // Pass 2: full RREF onto X = identity.
    let mut rows = work.generators().to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| (rows[r].x_bits >> col) & 1 == 1)
            .expect("X block is invertible after regularization");
        rows.swap(col, pivot);
        let pivot_row = rows[col];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && (row.x_bits >> col) & 1 == 1 {
                *row = row.mul(&pivot_row).unwrap();
            }
        }
    }
    work = Tableau::new(n, rows).expect("row operations preserve the group");

    // Clear the adjacency diagonal with S (only row q has X on q).
    for q in 0..n {
        if (work.generators()[q].z_bits >> q) & 1 == 1 {
            work = apply_local(&work, q, LocalGate::S);
            local[q].push(LocalGate::S);
        }
    }

    // Fix signs with Z (flips exactly generator q).
    for q in 0..n {
        if work.generators()[q].herm_sign() == -1 {
            work = apply_local(&work, q, LocalGate::Z);
            local[q].push(LocalGate::Z);
        }
    }

    let mut adjacency = vec![vec![false; n]; n];
    for v in 0..n {
        let g = work.generators()[v];
        debug_assert_eq!(g.x_bits, 1 << v);
        debug_assert_eq!(g.herm_sign(), 1);
        for u in 0..n {
            adjacency[v][u] = (g.z_bits >> u) & 1 == 1;
        }
        debug_assert!(!adjacency[v][v]);
    }
    for v in 0..n {
        for u in 0..n {
            debug_assert_eq!(adjacency[v][u], adjacency[u][v]);
        }
    }

    let graph = GraphState {
        n,
        adjacency,
        local_cliffords: local,
    };
    debug_assert!(
        reconstructs_source(&graph, t),
        "graph conversion must reproduce the source group"
    );
    graph
}

/// Apply the inverses of the recorded local Cliffords to the canonical graph
/// state and compare groups with the source.
pub fn reconstructs_source(graph: &GraphState, source: &Tableau) -> bool {
    let mut t = GraphState::canonical_tableau(&graph.adjacency).expect("valid adjacency");
    for q in 0..graph.n {
        for g in graph.local_cliffords[q].iter().rev() {
            match g {
                // H and Z are involutions; S⁻¹ = S³.
                LocalGate::H => t = apply_local(&t, q, LocalGate::H),
                LocalGate::Z => t = apply_local(&t, q, LocalGate::Z),
                LocalGate::S => {
                    for _ in 0..3 {
                        t = apply_local(&t, q, LocalGate::S);
                    }
                }
            }
        }
    }
    t.same_group(source)
}

/// Pivot columns of the X block after RREF (lowest column first).
fn x_block_pivots(t: &Tableau) -> Vec<usize> {
    let n = t.n;
    let mut rows: Vec<u64> = t.generators().iter().map(|g| g.x_bits).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| (rows[r] >> col) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && (*row >> col) & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }
    pivots
}
