//! Syndrome decoding: standard stabilizer decoding vs. state-adaptive
//! correlator decoding, with exhaustive oracles and Monte Carlo estimation.
//!
//! A decoder table maps every syndrome to the minimum-weight Pauli producing
//! it (increasing weight, ties broken lexicographically on the (x, z) bit
//! vectors). Success of recovery R on error E means R·E stabilizes the
//! protected object: membership of the product in the generator span over
//! GF(2) (a global phase on a stabilizer state is not a failure).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::stabilizer::{correlator_group, symplectic_rank, PauliOperator, StabilizerCode};

/// Which generator set the decoder measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderMode {
    /// The n-k code stabilizers.
    Standard,
    /// A full n-generator correlator group of a protected stabilizer state.
    StateAdaptive,
}

impl DecoderMode {
    pub fn name(&self) -> &'static str {
        match self {
            DecoderMode::Standard => "standard",
            DecoderMode::StateAdaptive => "state_adaptive",
        }
    }
}

/// Precomputed GF(2) reduction basis for span-membership tests.
#[derive(Debug, Clone)]
struct SpanBasis {
    rows: Vec<(u64, u64)>,
    pivots: Vec<usize>,
    n: usize,
}

impl SpanBasis {
    fn new(ops: &[PauliOperator], n: usize) -> Self {
        let mut rows: Vec<(u64, u64)> = ops.iter().map(|p| (p.x_bits, p.z_bits)).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..(2 * n) {
            let bit = |r: &(u64, u64)| -> bool {
                if col < n {
                    (r.0 >> col) & 1 == 1
                } else {
                    (r.1 >> (col - n)) & 1 == 1
                }
            };
            let Some(p) = (rank..rows.len()).find(|&r| bit(&rows[r])) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && bit(row) {
                    row.0 ^= pivot_row.0;
                    row.1 ^= pivot_row.1;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        SpanBasis { rows, pivots, n }
    }

    /// Reduce (x, z) mod the span; (0, 0) means membership.
    fn reduce(&self, mut x: u64, mut z: u64) -> (u64, u64) {
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let bit = if col < self.n {
                (x >> col) & 1 == 1
            } else {
                (z >> (col - self.n)) & 1 == 1
            };
            if bit {
                x ^= row.0;
                z ^= row.1;
            }
        }
        (x, z)
    }

    fn contains(&self, x: u64, z: u64) -> bool {
        self.reduce(x, z) == (0, 0)
    }
}

/// Full syndrome lookup table.
#[derive(Debug, Clone)]
pub struct DecoderTable {
    pub n: usize,
    pub mode: DecoderMode,
    pub generators: Vec<PauliOperator>,
    recoveries: Vec<PauliOperator>,
    span: SpanBasis,
}

/// Syndrome bits of an error against a generator list (bit i set iff the
/// error anticommutes with generator i).
pub fn syndrome_bits(error: &PauliOperator, generators: &[PauliOperator]) -> u32 {
    let mut s = 0u32;
    for (i, g) in generators.iter().enumerate() {
        if !error.commutes(g) {
            s |= 1 << i;
        }
    }
    s
}

/// Enumerate weight-w Paulis on n qubits in lexicographic (x, z) order.
fn paulis_of_weight(n: usize, w: usize) -> Vec<(u64, u64)> {
    let mut supports: Vec<Vec<usize>> = Vec::new();
    let mut combo: Vec<usize> = (0..w).collect();
    if w > n {
        return Vec::new();
    }
    loop {
        supports.push(combo.clone());
        // next combination
        let mut i = w;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if combo[i] != i + n - w {
                combo[i] += 1;
                for j in (i + 1)..w {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return finish(supports, w);
            }
        }
        if w == 0 {
            return finish(supports, w);
        }
    }

    fn finish(supports: Vec<Vec<usize>>, w: usize) -> Vec<(u64, u64)> {
        let letters = [(1u64, 0u64), (1, 1), (0, 1)]; // X, Y, Z
        let mut out = Vec::new();
        for support in supports {
            let combos = 3usize.pow(w as u32);
            for mut code in 0..combos {
                let (mut x, mut z) = (0u64, 0u64);
                for &q in &support {
                    let (lx, lz) = letters[code % 3];
                    x |= lx << q;
                    z |= lz << q;
                    code /= 3;
                }
                out.push((x, z));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Build a full syndrome table for independent commuting generators.
///
/// For each syndrome the recovery is the minimum-weight Pauli producing it;
/// ties break lexicographically on the (x, z) bit vectors.
pub fn build_decoder(
    generators: Vec<PauliOperator>,
    mode: DecoderMode,
    cfg: &Config,
) -> Result<DecoderTable> {
    let m = generators.len();
    if m == 0 || m > cfg.limits.max_table_generators {
        return Err(Error::ResourceLimit {
            requested: m,
            limit: cfg.limits.max_table_generators,
        });
    }
    let n = generators[0].n;
    for g in &generators {
        if g.n != n {
            return Err(Error::DimensionMismatch { left: g.n, right: n });
        }
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if !generators[i].commutes(&generators[j]) {
                return Err(Error::InvalidCode(format!(
                    "generators {} and {} anticommute",
                    generators[i], generators[j]
                )));
            }
        }
    }
    if symplectic_rank(&generators) != m {
        return Err(Error::InvalidCode("dependent generator set".into()));
    }

    let table_size = 1usize << m;
    let mut recoveries: Vec<Option<PauliOperator>> = vec![None; table_size];
    let mut filled = 0;
    'outer: for w in 0..=n {
        for (x, z) in paulis_of_weight(n, w) {
            let p = PauliOperator::from_bits(n, x, z, 0)?.canonical_hermitian();
            let s = syndrome_bits(&p, &generators) as usize;
            if recoveries[s].is_none() {
                recoveries[s] = Some(p);
                filled += 1;
                if filled == table_size {
                    break 'outer;
                }
            }
        }
    }
    let recoveries: Vec<PauliOperator> = recoveries
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidCode("syndrome table is not total".into()))?;

    // Table sanity: zero syndrome is identity, every recovery reproduces
    // its own syndrome.
    debug_assert!(recoveries[0].is_identity_mod_phase());
    debug_assert!(recoveries
        .iter()
        .enumerate()
        .all(|(s, r)| syndrome_bits(r, &generators) as usize == s));

    let span = SpanBasis::new(&generators, n);
    Ok(DecoderTable {
        n,
        mode,
        generators,
        recoveries,
        span,
    })
}

impl DecoderTable {
    pub fn syndrome_count(&self) -> usize {
        self.recoveries.len()
    }

    pub fn syndrome_of(&self, error: &PauliOperator) -> u32 {
        syndrome_bits(error, &self.generators)
    }

    /// Table lookup; total over all syndromes of the right length.
    pub fn decode(&self, syndrome: &[bool]) -> Result<PauliOperator> {
        if syndrome.len() != self.generators.len() {
            return Err(Error::SyndromeLength {
                expected: self.generators.len(),
                got: syndrome.len(),
            });
        }
        let mut s = 0usize;
        for (i, &b) in syndrome.iter().enumerate() {
            if b {
                s |= 1 << i;
            }
        }
        Ok(self.recoveries[s])
    }

    pub fn decode_bits(&self, syndrome: u32) -> PauliOperator {
        self.recoveries[syndrome as usize]
    }

    /// Success criterion: R·E lies in the generator span (mod phase).
    pub fn corrects(&self, error: &PauliOperator) -> bool {
        let r = self.decode_bits(self.syndrome_of(error));
        self.span
            .contains(r.x_bits ^ error.x_bits, r.z_bits ^ error.z_bits)
    }
}

/// Failure class of an exhaustive evaluation: a syndrome together with the
/// residual logical action of R·E reduced mod the generator span.
#[derive(Debug, Clone, Serialize)]
pub struct FailingCoset {
    pub syndrome: u32,
    pub residual: PauliOperator,
    pub count: usize,
}

/// Evaluate every Pauli error (mod phase) against the table.
pub fn exhaustive_eval(
    table: &DecoderTable,
    cfg: &Config,
) -> Result<(usize, Vec<FailingCoset>)> {
    if table.n > cfg.limits.max_exhaustive_qubits {
        return Err(Error::ResourceLimit {
            requested: table.n,
            limit: cfg.limits.max_exhaustive_qubits,
        });
    }
    let n = table.n;
    let total = 1usize << (2 * n);
    let mut correctable = 0usize;
    let mut failing: std::collections::BTreeMap<(u32, u64, u64), usize> =
        std::collections::BTreeMap::new();
    for bits in 0..total {
        let x = (bits as u64) & ((1 << n) - 1);
        let z = (bits as u64) >> n;
        let e = PauliOperator::from_bits(n, x, z, 0)?;
        let s = table.syndrome_of(&e);
        let r = table.decode_bits(s);
        let residue = table.span.reduce(r.x_bits ^ e.x_bits, r.z_bits ^ e.z_bits);
        if residue == (0, 0) {
            correctable += 1;
        } else {
            *failing.entry((s, residue.0, residue.1)).or_insert(0) += 1;
        }
    }
    let failing = failing
        .into_iter()
        .map(|((syndrome, x, z), count)| {
            Ok(FailingCoset {
                syndrome,
                residual: PauliOperator::from_bits(n, x, z, 0)?.canonical_hermitian(),
                count,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((correctable, failing))
}

/// Exact logical failure probability under iid depolarizing noise with
/// strength `p` (each qubit suffers X, Y, or Z with probability p/3).
pub fn exhaustive_failure_probability(table: &DecoderTable, p: f64, cfg: &Config) -> Result<f64> {
    if table.n > cfg.limits.max_exhaustive_qubits {
        return Err(Error::ResourceLimit {
            requested: table.n,
            limit: cfg.limits.max_exhaustive_qubits,
        });
    }
    let n = table.n;
    let total = 1usize << (2 * n);
    let mut failure = 0.0;
    for bits in 0..total {
        let x = (bits as u64) & ((1 << n) - 1);
        let z = (bits as u64) >> n;
        let e = PauliOperator::from_bits(n, x, z, 0)?;
        if !table.corrects(&e) {
            let w = e.weight() as i32;
            failure += (p / 3.0).powi(w) * (1.0 - p).powi(n as i32 - w);
        }
    }
    Ok(failure)
}

/// Monte Carlo outcome for one decoding mode.
#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloResult {
    pub mode: DecoderMode,
    pub trials: u64,
    pub physical_p: f64,
    pub syndrome_flip_q: f64,
    pub failures: u64,
    pub logical_error_rate: f64,
    pub std_error: f64,
    pub seed: u64,
}

impl MonteCarloResult {
    fn new(mode: DecoderMode, trials: u64, p: f64, q: f64, failures: u64, seed: u64) -> Self {
        let rate = failures as f64 / trials as f64;
        MonteCarloResult {
            mode,
            trials,
            physical_p: p,
            syndrome_flip_q: q,
            failures,
            logical_error_rate: rate,
            std_error: (rate * (1.0 - rate) / trials as f64).sqrt(),
            seed,
        }
    }

    pub fn csv_header() -> &'static str {
        "mode,p,q,trials,failures,rate,std_error,seed"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.mode.name(),
            self.physical_p,
            self.syndrome_flip_q,
            self.trials,
            self.failures,
            crate::fmt_sig(self.logical_error_rate),
            crate::fmt_sig(self.std_error),
            self.seed
        )
    }
}

/// Standard and state-adaptive tables for one code (the state-adaptive side
/// protects the +1-frame logical-Z basis state).
pub fn code_tables(code: &StabilizerCode, cfg: &Config) -> Result<(DecoderTable, DecoderTable)> {
    let std_table = build_decoder(code.stabilizers.clone(), DecoderMode::Standard, cfg)?;
    let frame = vec![1i8; code.k];
    let group = correlator_group(code, &frame)?;
    let sa_table = build_decoder(
        group.generators().to_vec(),
        DecoderMode::StateAdaptive,
        cfg,
    )?;
    Ok((std_table, sa_table))
}

/// Paired Monte Carlo run: both modes decode identical error samples.
///
/// Per trial: sample an iid depolarizing Pauli error, compute each mode's
/// true syndrome, flip each syndrome bit independently with probability `q`,
/// decode, and judge success by span membership. Trials use counter-based
/// ChaCha streams (stream = trial index), so results are bit-identical for a
/// fixed seed regardless of thread count.
pub fn monte_carlo(
    std_table: &DecoderTable,
    sa_table: &DecoderTable,
    p: f64,
    q: f64,
    trials: u64,
    seed: u64,
) -> Result<(MonteCarloResult, MonteCarloResult)> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidProbability { value: p });
    }
    if !(0.0..1.0).contains(&q) {
        return Err(Error::InvalidProbability { value: q });
    }
    if std_table.n != sa_table.n {
        return Err(Error::DimensionMismatch {
            left: std_table.n,
            right: sa_table.n,
        });
    }
    if trials == 0 {
        return Err(Error::InvalidProbability { value: 0.0 });
    }
    let n = std_table.n;

    let (std_failures, sa_failures) = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial + 1);
            // Shared error sample.
            let (mut x, mut z) = (0u64, 0u64);
            for qubit in 0..n {
                if rng.gen::<f64>() < p {
                    match rng.gen_range(0..3u8) {
                        0 => x |= 1 << qubit,
                        1 => {
                            x |= 1 << qubit;
                            z |= 1 << qubit;
                        }
                        _ => z |= 1 << qubit,
                    }
                }
            }
            let e = PauliOperator::from_bits(n, x, z, 0).unwrap();

            let mut fail = [0u64; 2];
            for (idx, table) in [std_table, sa_table].into_iter().enumerate() {
                let mut s = table.syndrome_of(&e);
                for bit in 0..table.generators.len() {
                    if q > 0.0 && rng.gen::<f64>() < q {
                        s ^= 1 << bit;
                    }
                }
                let r = table.decode_bits(s);
                let ok = table
                    .span
                    .contains(r.x_bits ^ e.x_bits, r.z_bits ^ e.z_bits);
                if !ok {
                    fail[idx] = 1;
                }
            }
            (fail[0], fail[1])
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    Ok((
        MonteCarloResult::new(DecoderMode::Standard, trials, p, q, std_failures, seed),
        MonteCarloResult::new(DecoderMode::StateAdaptive, trials, p, q, sa_failures, seed),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::{build_code, CodeName};

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn single_qubit_z_generator() {
        let cfg = cfg();
        let z = PauliOperator::parse("Z").unwrap();
        let table = build_decoder(vec![z], DecoderMode::Standard, &cfg).unwrap();
        assert_eq!(table.syndrome_count(), 2);
        assert!(table.decode(&[false]).unwrap().is_identity_mod_phase());
        assert_eq!(table.decode(&[true]).unwrap().to_string(), "+X");
    }

    #[test]
    fn five_qubit_standard_table_is_weight_one() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, _) = code_tables(&code, &cfg).unwrap();
        assert_eq!(std_table.syndrome_count(), 16);
        let mut weight_one = 0;
        for s in 0..16u32 {
            let r = std_table.decode_bits(s);
            if s == 0 {
                assert!(r.is_identity_mod_phase());
            } else {
                assert_eq!(r.weight(), 1);
                weight_one += 1;
            }
        }
        assert_eq!(weight_one, 15);
    }

    #[test]
    fn five_qubit_sa_table_has_32_syndromes() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (_, sa_table) = code_tables(&code, &cfg).unwrap();
        assert_eq!(sa_table.syndrome_count(), 32);
    }

    #[test]
    fn decode_matches_syndrome_of_error() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, sa_table) = code_tables(&code, &cfg).unwrap();
        // Standard: the syndrome of X_3 decodes to X_3 itself.
        let x3 = PauliOperator::single(5, 3, 'X').unwrap();
        let r = std_table.decode_bits(std_table.syndrome_of(&x3));
        assert_eq!(r, x3);
        // SA: Z_0Z_1 decodes to something equivalent mod the correlators.
        let e = PauliOperator::parse("ZZIII").unwrap();
        let r = sa_table.decode_bits(sa_table.syndrome_of(&e));
        assert!(sa_table
            .span
            .contains(r.x_bits ^ e.x_bits, r.z_bits ^ e.z_bits));
    }

    #[test]
    fn table_recoveries_reproduce_their_syndromes() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, sa_table) = code_tables(&code, &cfg).unwrap();
        for s in 0..std_table.syndrome_count() as u32 {
            assert_eq!(std_table.syndrome_of(&std_table.decode_bits(s)), s);
        }
        for s in 0..sa_table.syndrome_count() as u32 {
            assert_eq!(sa_table.syndrome_of(&sa_table.decode_bits(s)), s);
        }
    }

    #[test]
    fn exhaustive_sa_corrects_everything() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (_, sa_table) = code_tables(&code, &cfg).unwrap();
        let (correctable, failing) = exhaustive_eval(&sa_table, &cfg).unwrap();
        assert_eq!(correctable, 1024);
        assert!(failing.is_empty());
    }

    #[test]
    fn exhaustive_standard_matches_perfect_code_structure() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, _) = code_tables(&code, &cfg).unwrap();
        let (correctable, failing) = exhaustive_eval(&std_table, &cfg).unwrap();
        // 16 elements of the stabilizer-span coset succeed per syndrome.
        assert_eq!(correctable, 16 * 16);
        let failed: usize = failing.iter().map(|f| f.count).sum();
        assert_eq!(correctable + failed, 1024);
        // Every weight-2 error fails.
        for bits in 0..(1usize << 10) {
            let x = (bits as u64) & 0x1f;
            let z = (bits as u64) >> 5;
            let e = PauliOperator::from_bits(5, x, z, 0).unwrap();
            if e.weight() == 2 {
                assert!(!std_table.corrects(&e), "weight-2 {e} was corrected");
            }
        }
    }

    #[test]
    fn trivial_single_qubit_state_protection() {
        let cfg = cfg();
        let z = PauliOperator::parse("Z").unwrap();
        let table = build_decoder(vec![z], DecoderMode::StateAdaptive, &cfg).unwrap();
        // X and Y correctable; Z acts trivially (phase on the state).
        assert!(table.corrects(&PauliOperator::parse("X").unwrap()));
        assert!(table.corrects(&PauliOperator::parse("Y").unwrap()));
        assert!(table.corrects(&PauliOperator::parse("Z").unwrap()));
        let (correctable, _) = exhaustive_eval(&table, &cfg).unwrap();
        assert_eq!(correctable, 4);
    }

    #[test]
    fn monte_carlo_zero_noise_is_clean() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, sa_table) = code_tables(&code, &cfg).unwrap();
        let (std_res, sa_res) = monte_carlo(&std_table, &sa_table, 0.0, 0.0, 1000, 7).unwrap();
        assert_eq!(std_res.failures, 0);
        assert_eq!(sa_res.failures, 0);
    }

    #[test]
    fn monte_carlo_sa_never_fails_at_q_zero() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, sa_table) = code_tables(&code, &cfg).unwrap();
        let (_, sa_res) = monte_carlo(&std_table, &sa_table, 0.2, 0.0, 20_000, 11).unwrap();
        assert_eq!(sa_res.failures, 0);
    }

    #[test]
    fn monte_carlo_matches_exhaustive_standard_rate() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, sa_table) = code_tables(&code, &cfg).unwrap();
        let p = 0.1;
        let exact = exhaustive_failure_probability(&std_table, p, &cfg).unwrap();
        let (std_res, _) = monte_carlo(&std_table, &sa_table, p, 0.0, 100_000, 13).unwrap();
        let dev = (std_res.logical_error_rate - exact).abs();
        assert!(
            dev <= 3.0 * std_res.std_error.max(1e-6),
            "MC {} vs exact {exact}",
            std_res.logical_error_rate
        );
    }

    #[test]
    fn monte_carlo_syndrome_noise_only_baseline() {
        // At p = 0 the only failures are miscorrections from flipped
        // syndrome bits: any nonzero observed syndrome applies a recovery
        // outside the span, so rate = 1 - (1-q)^m exactly.
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, sa_table) = code_tables(&code, &cfg).unwrap();
        let q = 0.05;
        let trials = 200_000;
        let (std_res, sa_res) = monte_carlo(&std_table, &sa_table, 0.0, q, trials, 23).unwrap();
        let expect = |m: i32| 1.0 - (1.0 - q).powi(m);
        for (res, m) in [(&std_res, 4), (&sa_res, 5)] {
            let dev = (res.logical_error_rate - expect(m)).abs();
            assert!(
                dev <= 3.0 * res.std_error,
                "{:?}: {} vs {}",
                res.mode,
                res.logical_error_rate,
                expect(m)
            );
        }
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, sa_table) = code_tables(&code, &cfg).unwrap();
        let a = monte_carlo(&std_table, &sa_table, 0.15, 0.02, 50_000, 99).unwrap();
        let b = monte_carlo(&std_table, &sa_table, 0.15, 0.02, 50_000, 99).unwrap();
        assert_eq!(a.0.failures, b.0.failures);
        assert_eq!(a.1.failures, b.1.failures);
        assert_eq!(a.0.csv_row(), b.0.csv_row());
    }

    #[test]
    fn paired_dominance_on_samples() {
        // At q = 0 the SA decoder succeeds on every error where the standard
        // decoder succeeds (checked per shared sample).
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, sa_table) = code_tables(&code, &cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10_000 {
            let x = rng.gen::<u64>() & 0x1f;
            let z = rng.gen::<u64>() & 0x1f;
            let e = PauliOperator::from_bits(5, x, z, 0).unwrap();
            if std_table.corrects(&e) {
                assert!(sa_table.corrects(&e), "SA failed where standard passed: {e}");
            }
        }
    }

    #[test]
    fn rejects_bad_probabilities_and_dependent_generators() {
        let cfg = cfg();
        let code = build_code(CodeName::FiveQubit);
        let (std_table, sa_table) = code_tables(&code, &cfg).unwrap();
        assert!(monte_carlo(&std_table, &sa_table, 1.0, 0.0, 10, 0).is_err());
        assert!(monte_carlo(&std_table, &sa_table, 0.1, -0.1, 10, 0).is_err());
        let g = PauliOperator::parse("ZZ").unwrap();
        assert!(build_decoder(vec![g, g], DecoderMode::Standard, &cfg).is_err());
    }
}
