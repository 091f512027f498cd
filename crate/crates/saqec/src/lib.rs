//! Quantum channel capacities and state-adaptive error correction.
//!
//! The crate provides, desk-scale and fully deterministic:
//!
//! - dense channel representations (Kraus, Choi, complementary) and the
//!   standard parameterized noise families;
//! - entropic quantities (coherent information, quantum mutual information),
//!   entanglement fidelity, and concave capacity maximization over input
//!   states;
//! - Knill-Laflamme checking, Petz recovery maps, and the state-adaptive
//!   protect cycle on explicit small codes;
//! - a binary-symplectic Pauli/tableau layer with code constructors,
//!   correlator groups, and graph-state conversion;
//! - syndrome-table decoding (standard vs. correlator-based) with exhaustive
//!   and Monte Carlo evaluation;
//! - Steane↔Reed-Muller code switching with transversal-gate verification;
//! - capacity-threshold finding for parameterized noise families.

pub mod channels;
pub mod config;
pub mod decoder;
pub mod error;
pub mod information;
pub mod numerics;
pub mod qec;
pub mod stabilizer;
pub mod switching;
pub mod threshold;

pub use config::{Config, DenseLimits, Tolerances};
pub use error::{Error, Result};

/// Round to 12 significant digits. Result emission goes through this so
/// JSON and CSV artifacts agree and are byte-stable across runs.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("round-trip of formatted float")
}

/// Shortest display of the 12-significant-digit rounding.
pub fn fmt_sig(x: f64) -> String {
    format!("{}", round_sig(x))
}
