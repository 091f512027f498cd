//! Cross-module invariants that exercise several subsystems at once.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use saqec::channels::{build_family, ChannelFamily, QuantumChannel};
use saqec::decoder::{build_decoder, exhaustive_eval, DecoderMode};
use saqec::information::{
    entanglement_fidelity, maximize_capacity, mutual_information, CapacityFunctional,
    OptimizerConfig,
};
use saqec::numerics::{random_unitary, ComplexMatrix, DensityMatrix};
use saqec::qec::{dense_code_from_stabilizer, protect_cycle, RecoveryKind};
use saqec::stabilizer::{build_code, CodeName};
use saqec::switching::build_program_state;
use saqec::Config;

#[test]
fn symplectic_commutation_wrapper() {
    use saqec::stabilizer::{symplectic_commute, PauliOperator};
    let x = PauliOperator::parse("X").unwrap();
    let z = PauliOperator::parse("Z").unwrap();
    assert!(symplectic_commute(&x, &x).unwrap());
    assert!(!symplectic_commute(&x, &z).unwrap());
    let g1 = PauliOperator::parse("XZZXI").unwrap();
    let g2 = PauliOperator::parse("IXZZX").unwrap();
    assert!(symplectic_commute(&g1, &g2).unwrap());
    assert!(symplectic_commute(&x, &g1).is_err());
}

#[test]
fn mutual_information_is_basis_covariant() {
    // I(ρ, Φ) is invariant when both the state and the Kraus set are
    // pre-rotated by the same unitary.
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    for _ in 0..25 {
        let rho = DensityMatrix::random(3, &mut rng);
        let channel = QuantumChannel::random(3, 3, 3, &mut rng);
        let u = random_unitary(3, &mut rng);

        let rotated_state = DensityMatrix::new(
            u.dagger().mul(rho.matrix()).mul(&u).hermitize(),
            &cfg.tol,
        )
        .unwrap();
        let rotated_kraus: Vec<ComplexMatrix> =
            channel.kraus().iter().map(|k| k.mul(&u)).collect();
        let rotated = QuantumChannel::new(rotated_kraus, &cfg).unwrap();

        let a = mutual_information(&rho, &channel, &cfg).unwrap();
        let b = mutual_information(&rotated_state, &rotated, &cfg).unwrap();
        assert!((a.i - b.i).abs() < 1e-8, "deviation {}", (a.i - b.i).abs());
    }
}

#[test]
fn two_letter_coherent_dominates_single_letter() {
    let cfg = Config::default();
    let opt = OptimizerConfig::default();
    for (family, lambda) in [
        (ChannelFamily::Dephasing, 0.15),
        (ChannelFamily::Depolarizing, 0.1),
        (ChannelFamily::AmplitudeDamping, 0.25),
    ] {
        let ch = build_family(family, lambda, &cfg).unwrap();
        let single = maximize_capacity(&ch, CapacityFunctional::Coherent, 1, &opt, &cfg).unwrap();
        let warm = single.maximizer.tensor(&single.maximizer);
        let opt2 = OptimizerConfig {
            warm_start: Some(warm),
            ..OptimizerConfig::default()
        };
        let double = maximize_capacity(&ch, CapacityFunctional::Coherent, 2, &opt2, &cfg).unwrap();
        assert!(
            double.value >= single.value - 1e-5,
            "{}: two-letter {} < single-letter {}",
            family.name(),
            double.value,
            single.value
        );
    }
}

#[test]
fn protect_cycle_fidelity_is_monotone_in_noise() {
    let cfg = Config::default();
    let code = build_code(CodeName::FiveQubit);
    let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
    let source = DensityMatrix::basis_state(2, 0);
    let grid = [0.0, 0.05, 0.1, 0.15, 0.2];
    for kind in [RecoveryKind::StateAdaptive, RecoveryKind::TransposeChannel] {
        let mut previous = f64::INFINITY;
        for &p in &grid {
            let noise = build_family(ChannelFamily::Depolarizing, p, &cfg)
                .unwrap()
                .tensor_power(5, &cfg)
                .unwrap();
            let report = protect_cycle(&source, &dense, &noise, kind, &cfg).unwrap();
            assert!(
                report.fidelity <= previous + 1e-6,
                "{kind:?} not monotone at p={p}: {} > {previous}",
                report.fidelity
            );
            previous = report.fidelity;
        }
    }
}

#[test]
fn transpose_channel_gap_at_p_02() {
    // Golden values from the dense evaluation: the state-adaptive Petz
    // decoder stays exact while the projector-based transpose channel
    // degrades.
    let cfg = Config::default();
    let code = build_code(CodeName::FiveQubit);
    let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
    let source = DensityMatrix::basis_state(2, 0);
    let noise = build_family(ChannelFamily::Depolarizing, 0.2, &cfg)
        .unwrap()
        .tensor_power(5, &cfg)
        .unwrap();
    let sa = protect_cycle(&source, &dense, &noise, RecoveryKind::StateAdaptive, &cfg).unwrap();
    let tc = protect_cycle(&source, &dense, &noise, RecoveryKind::TransposeChannel, &cfg).unwrap();
    assert!(sa.fidelity >= 1.0 - 1e-8);
    assert!((tc.fidelity - 0.746938028043).abs() < 1e-6, "{}", tc.fidelity);
    assert!(sa.fidelity > tc.fidelity + 0.25);
}

#[test]
fn entanglement_fidelity_interpolates_depolarizing() {
    let cfg = Config::default();
    for p in [0.0, 0.33, 0.9] {
        let ch = build_family(ChannelFamily::Depolarizing, p, &cfg).unwrap();
        assert!((entanglement_fidelity(&ch).unwrap() - (1.0 - p)).abs() < 1e-12);
    }
}

#[test]
fn program_state_group_feeds_the_decoder() {
    // The identity program state on two [[5,1,3]] blocks yields a
    // 10-generator correlator group that the decoder accepts, and the
    // resulting state-adaptive table corrects every Pauli on 10 qubits.
    let cfg = Config::default();
    let code = build_code(CodeName::FiveQubit);
    let program = build_program_state(1, &[], &code).unwrap();
    let table = build_decoder(
        program.generators().to_vec(),
        DecoderMode::StateAdaptive,
        &cfg,
    )
    .unwrap();
    assert_eq!(table.syndrome_count(), 1024);
    let mut cfg10 = cfg;
    cfg10.limits.max_exhaustive_qubits = 10;
    let (correctable, failing) = exhaustive_eval(&table, &cfg10).unwrap();
    assert_eq!(correctable, 1 << 20);
    assert!(failing.is_empty());
}

#[test]
fn erasure_capacity_closed_forms() {
    // Q(p) = 1 - 2p and Q_SA(p) = 1 - p for the erasure channel.
    let cfg = Config::default();
    let opt = OptimizerConfig::default();
    for p in [0.1, 0.3] {
        let ch = build_family(ChannelFamily::Erasure, p, &cfg).unwrap();
        let coherent =
            maximize_capacity(&ch, CapacityFunctional::Coherent, 1, &opt, &cfg).unwrap();
        assert!(
            (coherent.value - (1.0 - 2.0 * p)).abs() < 1e-4,
            "Q({p}) = {}",
            coherent.value
        );
        let mutual = maximize_capacity(&ch, CapacityFunctional::Mutual, 1, &opt, &cfg).unwrap();
        assert!(
            (mutual.value - (1.0 - p)).abs() < 1e-4,
            "Q_SA({p}) = {}",
            mutual.value
        );
    }
}

#[test]
fn petz_leakage_is_reported_for_lossy_recovery() {
    // The transpose channel at strong noise leaves weight outside the code
    // space after recovery; leakage is reported, not silently dropped.
    let cfg = Config::default();
    let code = build_code(CodeName::FiveQubit);
    let dense = dense_code_from_stabilizer(&code, &cfg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let amps: Vec<Complex64> = (0..2)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let source = DensityMatrix::pure(&amps);
    let noise = build_family(ChannelFamily::Depolarizing, 0.3, &cfg)
        .unwrap()
        .tensor_power(5, &cfg)
        .unwrap();
    let report = protect_cycle(&source, &dense, &noise, RecoveryKind::TransposeChannel, &cfg).unwrap();
    assert!(report.fidelity < 1.0);
    assert!(report.leakage >= 0.0 && report.leakage < 1.0);
}
