//! Command-line front end: ingest process/state specs, run measurement
//! schemes and certificates, emit distributions, lambda reports, sweeps, and
//! certificate payloads.
//!
//! Exit codes: 0 = computed (certificate verdicts are data, not exit codes),
//! 2 = malformed configuration or JSON, 3 = domain validation failure
//! (hermiticity, unitarity, dimensions, parameter ranges).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qwork::io::{
    certificate_to_json, distribution_to_csv, distribution_to_json, fmt_sig,
    lambda_result_to_json, process_from_spec, process_kind_from_name, process_to_spec,
    raw_outcomes_to_json, state_from_spec, ProcessSpec, StateSpec,
};
use qwork::nogo;
use qwork::process::{builtin_process, maximally_coherent_state};
use qwork::schemes::{evaluate_povm, evaluate_povm_raw, lambda_max, tpm_povm, two_copy_povm};
use qwork::stats::{jarzynski_check, sample};
use qwork::sweep::{alpha_grid, alpha_sweep, sweep_to_csv};
use qwork::Process;

#[derive(Parser)]
#[command(
    name = "qwork",
    version,
    about = "Work statistics for driven finite-dimensional quantum processes",
    long_about = "Computes work distributions of the TPM and two-copy collective measurement \
                  schemes, maximal-lambda reports, angle sweeps, the Jarzynski identity, and \
                  no-go certificates. Sampling uses the ChaCha8 generator (rand_chacha 0.9), \
                  so fixed seeds give byte-identical output on every platform."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ProcessArgs {
    /// Path to a JSON process spec: {"dim", "H", "H_final", "U"}
    #[arg(long, value_name = "FILE", conflicts_with = "builtin")]
    process: Option<PathBuf>,
    /// Builtin process family: dft_cyclic, rotation_cyclic,
    /// near_identity_cyclic, coherent_swap
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Builtin parameters, e.g. --params d=4 or --params eps=0 eps_prime=1
    #[arg(long, value_name = "K=V", num_args = 0..)]
    params: Vec<String>,
}

#[derive(Args)]
struct StateArgs {
    /// Path to a JSON state spec: {"builtin", "params"} or {"matrix": ...}
    #[arg(long, value_name = "FILE", conflicts_with = "state_builtin")]
    state: Option<PathBuf>,
    /// Builtin state: thermal, basis, maximally_coherent
    #[arg(long, value_name = "NAME")]
    state_builtin: Option<String>,
    /// Builtin state parameters, e.g. --state-params beta=1.0
    #[arg(long, value_name = "K=V", num_args = 0..)]
    state_params: Vec<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the primary artifact here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Output format of the primary artifact
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct SampleArgs {
    /// Draw this many work samples from the computed distribution
    #[arg(long, value_name = "COUNT")]
    samples: Option<usize>,
    /// PRNG seed (ChaCha8); required with --samples
    #[arg(long, value_name = "INT", requires = "samples")]
    seed: Option<u64>,
    /// Write drawn samples to this CSV file (header `sample`); without it
    /// samples embed in the JSON payload or follow the CSV artifact
    #[arg(long, value_name = "FILE", requires = "samples")]
    samples_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// TPM work distribution of a process on a state
    Tpm {
        #[command(flatten)]
        process: ProcessArgs,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        sampling: SampleArgs,
    },
    /// Two-copy collective distribution plus the lambda report
    Collective {
        #[command(flatten)]
        process: ProcessArgs,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        sampling: SampleArgs,
    },
    /// Maximal lambda of the two-copy scheme for a process
    Lambda {
        #[command(flatten)]
        process: ProcessArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Impossibility certificates
    Nogo {
        #[command(subcommand)]
        which: NogoCommand,
    },
    /// Sweep the cyclic qubit rotation angle: lambda and outcome
    /// probabilities, closed form vs numeric
    SweepAlpha {
        /// Lower edge of the angle range (radians)
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        /// Upper edge of the angle range (radians); default pi/2
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        to: f64,
        /// Number of sweep points (sampled at half-step offsets)
        #[arg(long, default_value_t = 64)]
        steps: usize,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Jarzynski identity check at inverse temperature beta
    Jarzynski {
        #[command(flatten)]
        process: ProcessArgs,
        /// Inverse temperature (>= 0)
        #[arg(long)]
        beta: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum NogoCommand {
    /// Single-copy gap between the TPM-forced and required work operators
    Single {
        #[command(flatten)]
        process: ProcessArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// N-copy individual-work bound certificate
    Individual {
        /// Number of copies
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// N-copy total-work infeasibility residual (qubits, N in {2, 3})
    Total {
        #[command(flatten)]
        process: ProcessArgs,
        /// Number of copies
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Config-shaped failures exit 2; domain validation failures exit 3.
enum CliError {
    Config(String),
    Domain(qwork::Error),
}

impl From<qwork::Error> for CliError {
    fn from(e: qwork::Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn read_json<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| config_err(format!("malformed JSON in {}: {e}", path.display())))
}

fn parse_params(pairs: &[String]) -> CliResult<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for pair in pairs {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| config_err(format!("parameter '{pair}' is not of the form K=V")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| config_err(format!("parameter '{pair}' has a non-numeric value")))?;
        out.insert(key.to_string(), value);
    }
    Ok(out)
}

fn resolve_process(args: &ProcessArgs) -> CliResult<Process> {
    match (&args.process, &args.builtin) {
        (Some(path), None) => {
            let spec: ProcessSpec = read_json(path)?;
            Ok(process_from_spec(&spec)?)
        }
        (None, Some(name)) => {
            let params = parse_params(&args.params)?;
            let kind = process_kind_from_name(name, &params)?;
            Ok(builtin_process(kind)?)
        }
        _ => Err(config_err("exactly one of --process or --builtin is required")),
    }
}

fn resolve_state(args: &StateArgs, process: &Process) -> CliResult<qwork::DensityMatrix> {
    match (&args.state, &args.state_builtin) {
        (Some(path), None) => {
            let spec: StateSpec = read_json(path)?;
            Ok(state_from_spec(&spec, process)?)
        }
        (None, Some(name)) => {
            let params = parse_params(&args.state_params)?;
            let spec = StateSpec::Builtin { builtin: name.clone(), params };
            Ok(state_from_spec(&spec, process)?)
        }
        _ => Err(config_err("exactly one of --state or --state-builtin is required")),
    }
}

/// Optional default state: the maximally coherent one, used by sweep-alpha.
fn resolve_state_or_coherent(args: &StateArgs, dim: usize) -> CliResult<qwork::DensityMatrix> {
    if args.state.is_none() && args.state_builtin.is_none() {
        return Ok(maximally_coherent_state(dim)?);
    }
    // Builtin thermal states need a process; sweep states are qubit-only, so
    // build them against the cyclic qubit reference process.
    let reference = builtin_process(qwork::ProcessKind::RotationCyclic { alpha: 0.0 })?;
    resolve_state(args, &reference)
}

fn format_of(output: &OutputArgs, default: Format) -> Format {
    output.format.unwrap_or(default)
}

fn emit(output: &OutputArgs, payload: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, payload)
            .map_err(|e| config_err(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn draw_samples(
    dist: &qwork::WorkDistribution,
    sampling: &SampleArgs,
) -> CliResult<Option<(u64, Vec<f64>)>> {
    match sampling.samples {
        None => Ok(None),
        Some(n) => {
            let seed = sampling
                .seed
                .ok_or_else(|| config_err("--samples requires an explicit --seed"))?;
            Ok(Some((seed, sample(dist, n, seed))))
        }
    }
}

fn samples_to_csv(draws: &[f64]) -> String {
    let mut out = String::from("sample\n");
    for w in draws {
        out.push_str(&fmt_sig(*w));
        out.push('\n');
    }
    out
}

/// Emit samples per the sampling flags. Returns the JSON block to embed when
/// no dedicated file was requested and the payload is JSON.
fn route_samples(
    dist: &qwork::WorkDistribution,
    sampling: &SampleArgs,
) -> CliResult<SampleSink> {
    let Some((seed, draws)) = draw_samples(dist, sampling)? else {
        return Ok(SampleSink::None);
    };
    if let Some(path) = &sampling.samples_out {
        fs::write(path, samples_to_csv(&draws))
            .map_err(|e| config_err(format!("cannot write {}: {e}", path.display())))?;
        return Ok(SampleSink::Written);
    }
    Ok(SampleSink::Inline { seed, draws })
}

enum SampleSink {
    None,
    Written,
    Inline { seed: u64, draws: Vec<f64> },
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON serialization");
    text.push('\n');
    text
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Tpm { process, state, output, sampling } => {
            let proc = resolve_process(&process)?;
            let rho = resolve_state(&state, &proc)?;
            let povm = tpm_povm(&proc)?;
            let dist = evaluate_povm(&povm, &rho)?;
            let sink = route_samples(&dist, &sampling)?;
            match format_of(&output, Format::Json) {
                Format::Csv => {
                    let mut payload = distribution_to_csv(&dist);
                    if let SampleSink::Inline { draws, .. } = &sink {
                        payload.push_str(&samples_to_csv(draws));
                    }
                    emit(&output, &payload)
                }
                Format::Json => {
                    let mut value = json!({
                        "command": "tpm",
                        "process": process_to_spec(&proc),
                        "distribution": distribution_to_json(&dist),
                    });
                    if let SampleSink::Inline { seed, draws } = &sink {
                        value["samples"] = json!({ "seed": seed, "values": draws });
                    }
                    emit(&output, &pretty(&value))
                }
            }
        }
        Command::Collective { process, state, output, sampling } => {
            let proc = resolve_process(&process)?;
            let rho = resolve_state(&state, &proc)?;
            let (povm, lambda) = two_copy_povm(&proc)?;
            let raw = evaluate_povm_raw(&povm, &rho)?;
            let dist = evaluate_povm(&povm, &rho)?;
            let sink = route_samples(&dist, &sampling)?;
            match format_of(&output, Format::Json) {
                Format::Csv => {
                    // Distribution CSV is the primary artifact; the lambda
                    // report and raw outcome probabilities go to stdout.
                    let mut payload = distribution_to_csv(&dist);
                    if let SampleSink::Inline { draws, .. } = &sink {
                        payload.push_str(&samples_to_csv(draws));
                    }
                    emit(&output, &payload)?;
                    let report = json!({
                        "lambda": lambda_result_to_json(&lambda),
                        "raw_outcomes": raw_outcomes_to_json(&raw),
                    });
                    if output.out.is_some() {
                        print!("{}", pretty(&report));
                    }
                    Ok(())
                }
                Format::Json => {
                    let mut value = json!({
                        "command": "collective",
                        "process": process_to_spec(&proc),
                        "lambda": lambda_result_to_json(&lambda),
                        "raw_outcomes": raw_outcomes_to_json(&raw),
                        "distribution": distribution_to_json(&dist),
                    });
                    if let SampleSink::Inline { seed, draws } = &sink {
                        value["samples"] = json!({ "seed": seed, "values": draws });
                    }
                    emit(&output, &pretty(&value))
                }
            }
        }
        Command::Lambda { process, output } => {
            if format_of(&output, Format::Json) == Format::Csv {
                return Err(config_err("lambda reports are JSON-only"));
            }
            let proc = resolve_process(&process)?;
            let lambda = lambda_max(&proc);
            let value = json!({
                "command": "lambda",
                "process": process_to_spec(&proc),
                "lambda": lambda_result_to_json(&lambda),
            });
            emit(&output, &pretty(&value))
        }
        Command::Nogo { which } => {
            let (cert, output) = match which {
                NogoCommand::Single { process, output } => {
                    let proc = resolve_process(&process)?;
                    (nogo::single_copy_gap(&proc), output)
                }
                NogoCommand::Individual { n, output } => {
                    (nogo::individual_work_bound(n)?, output)
                }
                NogoCommand::Total { process, n, output } => {
                    let proc = resolve_process(&process)?;
                    (nogo::total_work_infeasibility(&proc, n)?, output)
                }
            };
            if format_of(&output, Format::Json) == Format::Csv {
                return Err(config_err("certificates are JSON-only"));
            }
            emit(&output, &pretty(&certificate_to_json(&cert)))
        }
        Command::SweepAlpha { from, to, steps, state, output } => {
            let rho = resolve_state_or_coherent(&state, 2)?;
            let grid = alpha_grid(from, to, steps)?;
            let points = alpha_sweep(&grid, &rho)?;
            match format_of(&output, Format::Csv) {
                Format::Csv => emit(&output, &sweep_to_csv(&points)),
                Format::Json => {
                    let rows: Vec<serde_json::Value> = points
                        .iter()
                        .map(|pt| {
                            json!({
                                "alpha": pt.alpha,
                                "lambda": pt.lambda,
                                "lambda_closed_form": pt.lambda_closed_form,
                                "probabilities": pt.probabilities,
                                "probabilities_closed_form": pt.probabilities_closed_form,
                            })
                        })
                        .collect();
                    let value = json!({ "command": "sweep-alpha", "points": rows });
                    emit(&output, &pretty(&value))
                }
            }
        }
        Command::Jarzynski { process, beta, output } => {
            if format_of(&output, Format::Json) == Format::Csv {
                return Err(config_err("jarzynski reports are JSON-only"));
            }
            let proc = resolve_process(&process)?;
            let (lhs, rhs) = jarzynski_check(&proc, beta)?;
            let value = json!({
                "command": "jarzynski",
                "process": process_to_spec(&proc),
                "beta": beta,
                "lhs": lhs,
                "rhs": rhs,
                "difference": lhs - rhs,
            });
            emit(&output, &pretty(&value))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(3)
        }
    }
}
