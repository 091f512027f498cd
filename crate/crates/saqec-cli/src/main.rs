//! Command-line surface: channel capacities, Petz recovery, Knill-Laflamme
//! checks, paired decoding Monte Carlo, code switching, thresholds, and
//! sweeps. Every command is deterministic under a fixed seed; artifacts are
//! byte-identical across runs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use saqec::channels::{matrix_to_json, ChannelSpec, ChannelFamily, QuantumChannel};
use saqec::decoder::{code_tables, monte_carlo, MonteCarloResult};
use saqec::information::{maximize_capacity, CapacityFunctional, OptimizerConfig};
use saqec::numerics::{fidelity, ComplexMatrix, DensityMatrix};
use saqec::qec::{dense_code_from_stabilizer, kl_check, petz_map};
use saqec::stabilizer::{build_code, encoded_basis_state, CodeName, LogicalBasis, PauliOperator};
use saqec::switching::{switch, GaugeSide, SubsystemSwitchSpec};
use saqec::threshold::{
    default_bracket, find_threshold, linspace, sweep, sweep_csv, ThresholdFunctional,
};
use saqec::{round_sig, Config};

#[derive(Parser)]
#[command(name = "saqec", version, about = "Channel capacities and state-adaptive error correction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Artifact format (commands with tabular output honor csv).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for optimizer restarts, Monte Carlo streams, and measurements.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bisection tolerance for threshold search.
    #[arg(long, global = true, default_value_t = 1e-5)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Maximize a capacity functional over input states of a channel.
    Capacity {
        /// Channel spec JSON path.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "mutual")]
        functional: String,
        #[arg(long, default_value_t = 1)]
        letters: usize,
        #[arg(long, default_value_t = 5)]
        restarts: usize,
    },
    /// Recovery fidelity of the Petz map for a known state and channel.
    Petz {
        #[arg(long)]
        spec: PathBuf,
        /// Density-matrix JSON path.
        #[arg(long)]
        state: PathBuf,
    },
    /// Knill-Laflamme report for an error set on a named code.
    Klcheck {
        #[arg(long)]
        code: String,
        /// Errors JSON path, or the preset "weight_le_1".
        #[arg(long)]
        errors: String,
        /// Skip the tr P normalization of c.
        #[arg(long)]
        unnormalized: bool,
        /// Dense-projector qubit cap (shor needs 9).
        #[arg(long, default_value_t = 7)]
        projector_qubits: usize,
    },
    /// Paired standard vs. state-adaptive decoding Monte Carlo.
    Sadecode {
        #[arg(long)]
        code: String,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0.0)]
        q: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Prepare an encoded state and hop between gauges.
    Switch {
        /// Logical state: zero, one, plus, minus.
        #[arg(long, default_value = "zero")]
        prep: String,
        /// Side the state is prepared in: steane or reed_muller.
        #[arg(long, default_value = "steane")]
        start: String,
        /// Comma-separated sides to visit, e.g. "reed_muller,steane".
        #[arg(long, default_value = "reed_muller,steane")]
        path: String,
    },
    /// Noise parameter where a capacity functional reaches zero.
    Threshold {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "coherent_1letter")]
        functional: String,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
    },
    /// Capacity values over a parameter grid.
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "coherent_1letter")]
        functional: String,
        /// "lo:hi:points" or a comma-separated list.
        #[arg(long)]
        grid: String,
    },
}

/// Density matrix JSON: {"dim": n, "matrix": [[[re, im], ...], ...]}.
#[derive(Deserialize)]
struct StateSpec {
    dim: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Error-set JSON: {"paulis": ["XIIII", ...]}.
#[derive(Deserialize)]
struct ErrorSetSpec {
    paulis: Vec<String>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_channel(path: &Path, cfg: &Config) -> anyhow::Result<QuantumChannel> {
    let spec: ChannelSpec = read_json(path)?;
    Ok(spec.build(cfg)?)
}

fn load_state(path: &Path, cfg: &Config) -> anyhow::Result<DensityMatrix> {
    let spec: StateSpec = read_json(path)?;
    if spec.matrix.len() != spec.dim || spec.matrix.iter().any(|row| row.len() != spec.dim) {
        return Err(anyhow!(
            "state matrix in {} is not {}x{}",
            path.display(),
            spec.dim,
            spec.dim
        ));
    }
    let entries = spec
        .matrix
        .iter()
        .flat_map(|row| row.iter().map(|&[re, im]| num_complex::Complex64::new(re, im)))
        .collect();
    let m = ComplexMatrix::new(spec.dim, spec.dim, entries)?;
    Ok(DensityMatrix::new(m, &cfg.tol)?)
}

/// Round every JSON float to 12 significant digits so artifacts are stable.
fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            if n.is_f64() {
                let x = round_sig(n.as_f64().unwrap());
                Value::Number(serde_json::Number::from_f64(x).expect("finite float"))
            } else {
                Value::Number(n)
            }
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

fn emit(artifact: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, artifact)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{artifact}"),
    }
    Ok(())
}

fn json_artifact(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_floats(v)).expect("serializable value");
    s.push('\n');
    s
}

fn capacity_functional(name: &str) -> anyhow::Result<CapacityFunctional> {
    match name {
        "coherent" => Ok(CapacityFunctional::Coherent),
        "mutual" => Ok(CapacityFunctional::Mutual),
        other => Err(anyhow!("unknown functional '{other}' (coherent|mutual)")),
    }
}

fn logical_prep(name: &str) -> anyhow::Result<(LogicalBasis, i8)> {
    match name {
        "zero" => Ok((LogicalBasis::Z, 1)),
        "one" => Ok((LogicalBasis::Z, -1)),
        "plus" => Ok((LogicalBasis::X, 1)),
        "minus" => Ok((LogicalBasis::X, -1)),
        other => Err(anyhow!("unknown prep '{other}' (zero|one|plus|minus)")),
    }
}

fn parse_grid(s: &str) -> anyhow::Result<Vec<f64>> {
    if let Some((range, points)) = s.rsplit_once(':') {
        if let Some((lo, hi)) = range.split_once(':') {
            let lo: f64 = lo.parse().context("grid lo")?;
            let hi: f64 = hi.parse().context("grid hi")?;
            let points: usize = points.parse().context("grid points")?;
            if points < 2 {
                return Err(anyhow!("grid needs at least 2 points"));
            }
            return Ok(linspace(lo, hi, points));
        }
    }
    s.split(',')
        .map(|t| t.trim().parse::<f64>().context("grid value"))
        .collect()
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(threads) = cli.threads {
        // Ignore the error if a pool already exists (repeat calls in tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let cfg = Config::default();
    let opt = OptimizerConfig {
        seed: cli.seed,
        ..OptimizerConfig::default()
    };

    let artifact: String = match &cli.command {
        Command::Capacity {
            spec,
            functional,
            letters,
            restarts,
        } => {
            let channel = load_channel(spec, &cfg)?;
            let functional = capacity_functional(functional)?;
            let opt = OptimizerConfig {
                restarts: *restarts,
                ..opt
            };
            let est = maximize_capacity(&channel, functional, *letters, &opt, &cfg)?;
            json_artifact(json!({
                "functional": match functional {
                    CapacityFunctional::Coherent => "coherent",
                    CapacityFunctional::Mutual => "mutual",
                },
                "letters": letters,
                "value": est.value,
                "maximizer": matrix_to_json(est.maximizer.matrix()),
                "iterations": est.iterations,
                "converged": est.converged,
                "restarts_used": est.restarts_used,
                "restarts_agree": est.restarts_agree,
                "seed": cli.seed,
            }))
        }
        Command::Petz { spec, state } => {
            let channel = load_channel(spec, &cfg)?;
            let rho = load_state(state, &cfg)?;
            let recovery = petz_map(&rho, &channel, &cfg)?;
            let recovered = recovery.apply(&channel.apply(&rho)?)?;
            let f = fidelity(&recovered, &rho, &cfg.tol)?;
            json_artifact(json!({
                "recovery_fidelity": f,
                "din": channel.din,
                "dout": channel.dout,
                "kraus_count": recovery.kraus().len(),
            }))
        }
        Command::Klcheck {
            code,
            errors,
            unnormalized,
            projector_qubits,
        } => {
            let code_name = CodeName::parse(code)?;
            let stab_code = build_code(code_name);
            let mut cfg_kl = cfg;
            cfg_kl.limits.projector_qubits = *projector_qubits;
            let dense = dense_code_from_stabilizer(&stab_code, &cfg_kl)?;
            let ops: Vec<ComplexMatrix> = if errors == "weight_le_1" {
                saqec::qec::weight_le_one_errors(stab_code.n)
            } else {
                let set: ErrorSetSpec = read_json(Path::new(errors))?;
                set.paulis
                    .iter()
                    .map(|s| Ok(PauliOperator::parse(s)?.dense()))
                    .collect::<anyhow::Result<_>>()?
            };
            let report = kl_check(&dense, &ops, !unnormalized, &cfg_kl)?;
            json_artifact(report.to_json())
        }
        Command::Sadecode { code, p, q, trials } => {
            let code_name = CodeName::parse(code)?;
            let stab_code = build_code(code_name);
            let (std_table, sa_table) = code_tables(&stab_code, &cfg)?;
            let (std_res, sa_res) = monte_carlo(&std_table, &sa_table, *p, *q, *trials, cli.seed)?;
            match cli.format {
                Format::Csv => format!(
                    "{}\n{}\n{}\n",
                    MonteCarloResult::csv_header(),
                    std_res.csv_row(),
                    sa_res.csv_row()
                ),
                Format::Json => json_artifact(json!({
                    "code": code_name.name(),
                    "standard": std_res,
                    "state_adaptive": sa_res,
                })),
            }
        }
        Command::Switch { prep, start, path } => {
            let spec = SubsystemSwitchSpec::steane_rm15();
            let (basis, sign) = logical_prep(prep)?;
            let start_side = GaugeSide::parse(start)?;
            let hops: Vec<GaugeSide> = path
                .split(',')
                .map(|t| GaugeSide::parse(t.trim()))
                .collect::<saqec::Result<_>>()?;
            let code = spec.side_code(start_side);
            let mut state = encoded_basis_state(&code, basis, &[sign])?;
            let logical = match basis {
                LogicalBasis::Z => spec.logical_z,
                LogicalBasis::X => spec.logical_x,
            };
            let before = state.expectation(&logical);
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
            let mut records = Vec::new();
            let mut side = start_side;
            for &target in &hops {
                let (next, record) = switch(&state, &spec, side, target, &mut rng)?;
                state = next;
                side = target;
                records.push(record);
            }
            let after = state.expectation(&logical);
            let in_code = spec
                .code_stabilizers(side)
                .iter()
                .all(|s| state.expectation(s) == Some(1));
            json_artifact(json!({
                "prep": prep,
                "start": start_side,
                "hops": records,
                "logical_operator": logical.to_string(),
                "logical_before": before,
                "logical_after": after,
                "logical_preserved": before == after,
                "final_in_code": in_code,
                "seed": cli.seed,
            }))
        }
        Command::Threshold {
            family,
            functional,
            lo,
            hi,
        } => {
            let family = ChannelFamily::parse(family)?;
            let functional = ThresholdFunctional::parse(functional)?;
            let bracket = match (lo, hi) {
                (Some(lo), Some(hi)) => (*lo, *hi),
                _ => default_bracket(family, functional).ok_or_else(|| {
                    anyhow!(
                        "{} {} has no zero inside the domain; pass --lo/--hi explicitly",
                        family.name(),
                        functional.name()
                    )
                })?,
            };
            let res = find_threshold(family, functional, bracket, cli.tol, &opt, &cfg)?;
            json_artifact(serde_json::to_value(&res)?)
        }
        Command::Sweep {
            family,
            functional,
            grid,
        } => {
            let family = ChannelFamily::parse(family)?;
            let functional = ThresholdFunctional::parse(functional)?;
            let grid = parse_grid(grid)?;
            let points = sweep(family, functional, &grid, &opt, &cfg)?;
            match cli.format {
                Format::Csv => sweep_csv(family, functional, &points),
                Format::Json => json_artifact(json!({
                    "family": family,
                    "functional": functional,
                    "points": points,
                })),
            }
        }
    };

    emit(&artifact, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let payload = json!({
                "error": {
                    "message": format!("{err:#}"),
                }
            });
            eprintln!("{payload}");
            ExitCode::FAILURE
        }
    }
}
