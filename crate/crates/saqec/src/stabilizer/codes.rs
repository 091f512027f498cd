//! Stabilizer code constructors and correlator groups.
//!
//! Generator tables (qubits left to right in the string):
//!
//! - five_qubit [[5,1,3]] — cyclic XZZXI family: XZZXI, IXZZX, XIXZZ, ZXIXZ;
//!   X_L = XXXXX, Z_L = ZZZZZ. (The ZXXZ-pattern presentation generates the
//!   same group.)
//! - steane [[7,1,3]] — CSS on the Hamming(7,4) supports {q : bit_j(q+1)=1}:
//!   X and Z types on IIIXXXX / IXXIIXX / XIXIXIX; X_L = X⊗7, Z_L = Z⊗7.
//! - shor [[9,1,3]] — Z0Z1, Z1Z2, Z3Z4, Z4Z5, Z6Z7, Z7Z8, X0..5, X3..8;
//!   X_L = Z0Z3Z6, Z_L = X⊗9.
//! - reed_muller_15 [[15,1,3]] — qubit q labeled by the 4-bit string q+1;
//!   X-type on {bit_j} (4 generators, weight 8), Z-type on {bit_j} (4) and
//!   {bit_j ∧ bit_k} (6, weight 4); X_L = X⊗15, Z_L = Z⊗15.

use serde::Serialize;

use super::pauli::{symplectic_rank, PauliOperator};
use super::tableau::Tableau;
use crate::error::{Error, Result};

/// [[n,k]] stabilizer code with explicit logical operators.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizerCode {
    pub n: usize,
    pub k: usize,
    pub stabilizers: Vec<PauliOperator>,
    pub logical_x: Vec<PauliOperator>,
    pub logical_z: Vec<PauliOperator>,
}

impl StabilizerCode {
    pub fn new(
        n: usize,
        stabilizers: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self> {
        let k = logical_x.len();
        if stabilizers.len() + k != n || logical_z.len() != k {
            return Err(Error::InvalidCode(format!(
                "expected n-k stabilizers and k logical pairs: n={n}, stabs={}, X_L={}, Z_L={}",
                stabilizers.len(),
                logical_x.len(),
                logical_z.len()
            )));
        }
        for op in stabilizers.iter().chain(&logical_x).chain(&logical_z) {
            if op.n != n {
                return Err(Error::DimensionMismatch { left: op.n, right: n });
            }
            if !op.is_hermitian() {
                return Err(Error::InvalidCode(format!("{op} is not Hermitian")));
            }
        }
        for i in 0..stabilizers.len() {
            for j in (i + 1)..stabilizers.len() {
                if !stabilizers[i].commutes(&stabilizers[j]) {
                    return Err(Error::InvalidCode(format!(
                        "stabilizers {} and {} anticommute",
                        stabilizers[i], stabilizers[j]
                    )));
                }
            }
        }
        if symplectic_rank(&stabilizers) != stabilizers.len() {
            return Err(Error::InvalidCode("dependent stabilizer set".into()));
        }
        for (name, logicals) in [("X_L", &logical_x), ("Z_L", &logical_z)] {
            for (i, l) in logicals.iter().enumerate() {
                for s in &stabilizers {
                    if !l.commutes(s) {
                        return Err(Error::InvalidCode(format!(
                            "{name}[{i}] anticommutes with stabilizer {s}"
                        )));
                    }
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                let should_anticommute = i == j;
                if logical_x[i].commutes(&logical_z[j]) == should_anticommute {
                    return Err(Error::InvalidCode(format!(
                        "logical pair commutation wrong at ({i},{j})"
                    )));
                }
                if i < j
                    && (!logical_x[i].commutes(&logical_x[j])
                        || !logical_z[i].commutes(&logical_z[j]))
                {
                    return Err(Error::InvalidCode("logicals of equal type anticommute".into()));
                }
            }
        }
        // Logicals must extend the stabilizer span.
        let mut all = stabilizers.clone();
        all.extend(logical_x.iter().copied());
        all.extend(logical_z.iter().copied());
        if symplectic_rank(&all) != n + k {
            return Err(Error::InvalidCode(
                "logical operators are not independent of the stabilizer group".into(),
            ));
        }
        Ok(StabilizerCode {
            n,
            k,
            stabilizers,
            logical_x,
            logical_z,
        })
    }
}

/// Named small codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeName {
    FiveQubit,
    Steane,
    Shor,
    ReedMuller15,
}

impl CodeName {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "five_qubit" => Ok(CodeName::FiveQubit),
            "steane" => Ok(CodeName::Steane),
            "shor" => Ok(CodeName::Shor),
            "reed_muller_15" => Ok(CodeName::ReedMuller15),
            other => Err(Error::UnknownCode(other.into())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CodeName::FiveQubit => "five_qubit",
            CodeName::Steane => "steane",
            CodeName::Shor => "shor",
            CodeName::ReedMuller15 => "reed_muller_15",
        }
    }
}

fn from_strings(n: usize, stabs: &[&str], lx: &[&str], lz: &[&str]) -> Result<StabilizerCode> {
    let parse_all = |v: &[&str]| -> Result<Vec<PauliOperator>> {
        v.iter().map(|s| PauliOperator::parse(s)).collect()
    };
    StabilizerCode::new(n, parse_all(stabs)?, parse_all(lx)?, parse_all(lz)?)
}

/// Pauli string with the given letter on a masked support.
fn masked(n: usize, mask: u16, letter: char) -> String {
    (0..n)
        .map(|q| if (mask >> q) & 1 == 1 { letter } else { 'I' })
        .collect()
}

/// Support mask {q : f(q+1)} for 1-based 4-bit labels.
fn label_mask(n: usize, f: impl Fn(u16) -> bool) -> u16 {
    (0..n as u16).filter(|&q| f(q + 1)).fold(0, |m, q| m | (1 << q))
}

pub fn build_code(name: CodeName) -> StabilizerCode {
    match name {
        CodeName::FiveQubit => from_strings(
            5,
            &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
            &["XXXXX"],
            &["ZZZZZ"],
        )
        .expect("five-qubit table is valid"),
        CodeName::Steane => from_strings(
            7,
            &[
                "XIXIXIX", "IXXIIXX", "IIIXXXX", "ZIZIZIZ", "IZZIIZZ", "IIIZZZZ",
            ],
            &["XXXXXXX"],
            &["ZZZZZZZ"],
        )
        .expect("steane table is valid"),
        CodeName::Shor => from_strings(
            9,
            &[
                "ZZIIIIIII",
                "IZZIIIIII",
                "IIIZZIIII",
                "IIIIZZIII",
                "IIIIIIZZI",
                "IIIIIIIZZ",
                "XXXXXXIII",
                "IIIXXXXXX",
            ],
            &["ZIIZIIZII"],
            &["XXXXXXXXX"],
        )
        .expect("shor table is valid"),
        CodeName::ReedMuller15 => {
            let n = 15;
            let mut stabs: Vec<String> = Vec::new();
            for j in 0..4 {
                stabs.push(masked(n, label_mask(n, |l| (l >> j) & 1 == 1), 'X'));
            }
            for j in 0..4 {
                stabs.push(masked(n, label_mask(n, |l| (l >> j) & 1 == 1), 'Z'));
            }
            for j in 0..4 {
                for k in (j + 1)..4 {
                    stabs.push(masked(
                        n,
                        label_mask(n, |l| (l >> j) & 1 == 1 && (l >> k) & 1 == 1),
                        'Z',
                    ));
                }
            }
            let stab_refs: Vec<&str> = stabs.iter().map(String::as_str).collect();
            from_strings(n, &stab_refs, &["XXXXXXXXXXXXXXX"], &["ZZZZZZZZZZZZZZZ"])
                .expect("reed-muller table is valid")
        }
    }
}

/// Basis in which an encoded stabilizer basis state is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalBasis {
    Z,
    X,
}

/// Full n-generator group of an encoded logical basis state: the code
/// stabilizers plus one signed logical operator per logical qubit.
pub fn encoded_basis_state(
    code: &StabilizerCode,
    basis: LogicalBasis,
    signs: &[i8],
) -> Result<Tableau> {
    if signs.len() != code.k {
        return Err(Error::InvalidCode(format!(
            "expected {} logical signs, got {}",
            code.k,
            signs.len()
        )));
    }
    let logicals = match basis {
        LogicalBasis::Z => &code.logical_z,
        LogicalBasis::X => &code.logical_x,
    };
    let mut generators = code.stabilizers.clone();
    for (l, &s) in logicals.iter().zip(signs) {
        generators.push(l.with_sign(s));
    }
    Tableau::new(code.n, generators)
}

/// The correlator group of the logical-Z basis state selected by the frame:
/// (n-k) code stabilizers plus k signed logical-Z operators.
pub fn correlator_group(code: &StabilizerCode, frame: &[i8]) -> Result<Tableau> {
    encoded_basis_state(code, LogicalBasis::Z, frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_code_tables_are_valid() {
        for name in [
            CodeName::FiveQubit,
            CodeName::Steane,
            CodeName::Shor,
            CodeName::ReedMuller15,
        ] {
            let code = build_code(name);
            let expected = match name {
                CodeName::FiveQubit => (5, 1, 4),
                CodeName::Steane => (7, 1, 6),
                CodeName::Shor => (9, 1, 8),
                CodeName::ReedMuller15 => (15, 1, 14),
            };
            assert_eq!((code.n, code.k, code.stabilizers.len()), expected);
        }
    }

    #[test]
    fn five_qubit_generators_are_cyclic() {
        let code = build_code(CodeName::FiveQubit);
        // Cyclic shift of XZZXI by one stays in the generator list.
        assert_eq!(code.stabilizers[1].to_string(), "+IXZZX");
    }

    #[test]
    fn correlator_group_counts() {
        let five = build_code(CodeName::FiveQubit);
        let group = correlator_group(&five, &[1]).unwrap();
        assert_eq!(group.generators().len(), 5);

        let steane = build_code(CodeName::Steane);
        let group = correlator_group(&steane, &[1]).unwrap();
        assert_eq!(group.generators().len(), 7);
    }

    #[test]
    fn correlators_measure_plus_one_on_encoded_state() {
        let code = build_code(CodeName::FiveQubit);
        let group = correlator_group(&code, &[1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for g in group.generators() {
            let (outcome, after) = group.measure(g, None, &mut rng).unwrap();
            assert_eq!(outcome, 1);
            assert!(after.same_group(&group));
        }
        // Same for every code stabilizer individually.
        for s in &code.stabilizers {
            assert_eq!(group.expectation(s), Some(1));
        }
    }

    #[test]
    fn correlator_group_contains_stabilizers_as_subgroup() {
        let code = build_code(CodeName::Steane);
        let group = correlator_group(&code, &[1]).unwrap();
        for s in &code.stabilizers {
            assert!(group.contains_signed(s));
        }
        // Index 2^k: the logical Z extends the span by exactly k dimensions.
        let mut ops = code.stabilizers.clone();
        assert_eq!(symplectic_rank(&ops), code.n - code.k);
        ops.push(code.logical_z[0]);
        assert_eq!(symplectic_rank(&ops), code.n);
    }

    #[test]
    fn minus_frame_flips_logical_sign() {
        let code = build_code(CodeName::FiveQubit);
        let group = correlator_group(&code, &[-1]).unwrap();
        assert_eq!(group.expectation(&code.logical_z[0]), Some(-1));
        let plus = encoded_basis_state(&code, LogicalBasis::X, &[1]).unwrap();
        assert_eq!(plus.expectation(&code.logical_x[0]), Some(1));
        assert_eq!(plus.expectation(&code.logical_z[0]), None);
    }

    #[test]
    fn frame_size_mismatch_rejected() {
        let code = build_code(CodeName::FiveQubit);
        assert!(correlator_group(&code, &[1, 1]).is_err());
    }
}
