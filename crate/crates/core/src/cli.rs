//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime or resource error, 2 usage or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::braid::{parse_braid, BraidWord};
use crate::discriminate::{run_discrimination, select_panel, ClosureFilter};
use crate::dqc1::{NoiseModel, DEFAULT_SEED};
use crate::error::Error;
use crate::fibrep::FibBasis;
use crate::jones::{eval_exact, jones_from_m, JonesRecord};
use crate::oracle::{OracleConfig, OracleRecord};

#[derive(Debug, Parser)]
#[command(
    name = "jones-dqc1",
    version,
    about = "Jones polynomial at t = e^{2πi/5} via one-clean-qubit simulation"
)]
pub struct Cli {
    /// Output format (default: json; `basis` defaults to text).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact value from the weighted trace of the braid matrix.
    Eval(BraidArgs),
    /// Circuit simulation with noise; one row per repeat.
    Simulate(SimulateArgs),
    /// Brute-force Kauffman bracket of the closure.
    Oracle(BraidArgs),
    /// Knot-discrimination experiment on a panel of braids.
    Discriminate(DiscriminateArgs),
    /// List the encoded Fibonacci basis.
    Basis(BasisArgs),
}

#[derive(Debug, Args, Serialize)]
struct BraidArgs {
    /// Number of strands.
    #[arg(long)]
    strands: Option<usize>,
    /// Braid tokens (`s1 s2^-1`, `1 -2`) or JSON `{"strands": m, "word": [...]}`.
    #[arg(allow_hyphen_values = true)]
    braid: String,
}

#[derive(Debug, Args, Serialize)]
struct NoiseArgs {
    /// Process fidelity of each controlled-crossing gate.
    #[arg(long, default_value_t = 0.99)]
    fidelity: f64,
    /// Use a global depolarizing channel instead of coherent errors.
    #[arg(long)]
    depolarizing: bool,
    /// End-to-end signal attenuation.
    #[arg(long, default_value_t = 1.0)]
    attenuation: f64,
    /// Standard deviation of readout noise on each expectation value.
    #[arg(long, default_value_t = 0.01)]
    readout_std: f64,
}

impl NoiseArgs {
    fn model(&self, seed: u64) -> NoiseModel {
        NoiseModel {
            gate_fidelity: self.fidelity,
            coherent: !self.depolarizing,
            attenuation: self.attenuation,
            readout_noise_std: self.readout_std,
            seed,
        }
    }
}

#[derive(Debug, Args, Serialize)]
struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    braid: BraidArgs,
    /// Polarization of the clean qubit, in (0, 1].
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    epsilon: f64,
    #[arg(long, default_value_t = 200)]
    repeats: usize,
    #[command(flatten)]
    #[serde(flatten)]
    noise: NoiseArgs,
}

#[derive(Debug, Args, Serialize)]
struct DiscriminateArgs {
    #[arg(long, default_value_t = 4)]
    strands: usize,
    #[arg(long, default_value_t = 3)]
    crossings: usize,
    /// Braids per knot class.
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Keep only words whose closure has a single component.
    #[arg(long)]
    knots_only: bool,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    epsilon: f64,
    #[arg(long, default_value_t = 200)]
    repeats: usize,
    #[command(flatten)]
    #[serde(flatten)]
    noise: NoiseArgs,
    /// Also write report.json, clouds.csv and ellipses.csv here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct BasisArgs {
    #[arg(long)]
    strands: usize,
}

/// Failure of a CLI run together with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } | Error::Shortfall { .. } => 1,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn runtime(message: impl Into<String>) -> CliError {
    CliError {
        code: 1,
        message: message.into(),
    }
}

fn read_braid(args: &BraidArgs) -> Result<BraidWord, CliError> {
    let text = args.braid.trim();
    if text.starts_with('{') {
        let b: BraidWord = serde_json::from_str(text).map_err(|e| CliError {
            code: 2,
            message: format!("invalid braid JSON: {e}"),
        })?;
        if let Some(m) = args.strands {
            if m != b.strands() {
                return Err(CliError {
                    code: 2,
                    message: format!("--strands {m} disagrees with JSON strands {}", b.strands()),
                });
            }
        }
        return Ok(b);
    }
    let strands = args.strands.ok_or_else(|| CliError {
        code: 2,
        message: "--strands is required for token braids".into(),
    })?;
    Ok(parse_braid(text, strands)?)
}

fn metadata(command: &str, seed: u64, config: &impl Serialize) -> serde_json::Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": seed,
        "config": config,
    })
}

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| runtime(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| runtime(e.to_string()))
}

fn write_csv_rows<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| runtime(e.to_string()))?;
    }
    w.flush().map_err(|e| runtime(e.to_string()))
}

#[derive(Serialize)]
struct SimulateRow {
    repeat: usize,
    sx: f64,
    sy: f64,
    re_m: f64,
    im_m: f64,
    re_v: f64,
    im_v: f64,
}

fn mean_cov(values: &[Complex64]) -> (Complex64, [[f64; 2]; 2]) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<Complex64>() / n;
    if values.len() < 2 {
        return (mean, [[0.0; 2]; 2]);
    }
    let (mut xx, mut xy, mut yy) = (0.0, 0.0, 0.0);
    for v in values {
        let d = v - mean;
        xx += d.re * d.re;
        xy += d.re * d.im;
        yy += d.im * d.im;
    }
    let k = n - 1.0;
    (mean, [[xx / k, xy / k], [xy / k, yy / k]])
}

/// Parses `args` and runs the command, writing results to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError {
        code: e.exit_code(),
        message: e.to_string(),
    })?;
    let seed = cli.seed;
    let format = cli.format;

    match &cli.command {
        Command::Eval(args) => {
            let b = read_braid(args)?;
            let r = eval_exact(&b)?;
            let record = JonesRecord::new(&b, &r);
            match format.unwrap_or(Format::Json) {
                Format::Csv => write_csv_rows(out, &[record]),
                _ => write_json(
                    out,
                    &json!({ "metadata": metadata("eval", seed, args), "result": record }),
                ),
            }
        }
        Command::Oracle(args) => {
            let b = read_braid(args)?;
            let record = OracleRecord::compute(&b, &OracleConfig::default())?;
            match format.unwrap_or(Format::Json) {
                Format::Csv => write_csv_rows(out, &[record]),
                _ => write_json(
                    out,
                    &json!({ "metadata": metadata("oracle", seed, args), "result": record }),
                ),
            }
        }
        Command::Simulate(args) => {
            let b = read_braid(&args.braid)?;
            let noise = args.noise.model(seed);
            let exact = eval_exact(&b)?;
            let basis = FibBasis::new(b.strands())?;
            let records = crate::dqc1::run_noisy(&b, &basis, args.epsilon, &noise, args.repeats)?;
            let results = records
                .iter()
                .map(|r| {
                    jones_from_m(
                        r.m_estimate,
                        b.writhe(),
                        basis.register_qubits(),
                        b.strands(),
                    )
                })
                .collect::<crate::Result<Vec<_>>>()?;
            match format.unwrap_or(Format::Json) {
                Format::Csv => {
                    let rows: Vec<SimulateRow> = records
                        .iter()
                        .zip(&results)
                        .enumerate()
                        .map(|(i, (m, v))| SimulateRow {
                            repeat: i,
                            sx: m.sx,
                            sy: m.sy,
                            re_m: m.m_estimate.re,
                            im_m: m.m_estimate.im,
                            re_v: v.value.re,
                            im_v: v.value.im,
                        })
                        .collect();
                    write_csv_rows(out, &rows)
                }
                _ => {
                    let values: Vec<Complex64> = results.iter().map(|r| r.value).collect();
                    let (mean, cov) = mean_cov(&values);
                    write_json(
                        out,
                        &json!({
                            "metadata": metadata("simulate", seed, args),
                            "result": {
                                "exact": JonesRecord::new(&b, &exact),
                                "repeats": args.repeats,
                                "mean_re": mean.re,
                                "mean_im": mean.im,
                                "covariance": cov,
                                "noise": noise,
                                "samples": values.iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
                            }
                        }),
                    )
                }
            }
        }
        Command::Discriminate(args) => {
            let filter = if args.knots_only {
                ClosureFilter::KnotsOnly
            } else {
                ClosureFilter::All
            };
            let panel = select_panel(args.strands, args.crossings, args.reps, filter)?;
            let noise = args.noise.model(seed);
            let run = run_discrimination(&panel, args.epsilon, &noise, args.repeats)?;
            let doc =
                json!({ "metadata": metadata("discriminate", seed, args), "result": run.report });
            if let Some(dir) = &args.out_dir {
                fs::create_dir_all(dir).map_err(|e| runtime(format!("{}: {e}", dir.display())))?;
                let text =
                    serde_json::to_string_pretty(&doc).map_err(|e| runtime(e.to_string()))?;
                fs::write(dir.join("report.json"), text + "\n")
                    .map_err(|e| runtime(e.to_string()))?;
                let clouds =
                    fs::File::create(dir.join("clouds.csv")).map_err(|e| runtime(e.to_string()))?;
                run.write_clouds_csv(clouds)?;
                let ellipses = fs::File::create(dir.join("ellipses.csv"))
                    .map_err(|e| runtime(e.to_string()))?;
                run.write_ellipses_csv(ellipses)?;
            }
            match format.unwrap_or(Format::Json) {
                Format::Csv => Ok(run.write_clouds_csv(out)?),
                _ => write_json(out, &doc),
            }
        }
        Command::Basis(args) => {
            let basis = FibBasis::new(args.strands)?;
            match format.unwrap_or(Format::Text) {
                Format::Text => out
                    .write_all(basis.listing().as_bytes())
                    .map_err(|e| runtime(e.to_string())),
                Format::Csv => {
                    let mut text = String::from("string,encoded,subspace\n");
                    text.push_str(&basis.listing().replace('\t', ","));
                    out.write_all(text.as_bytes())
                        .map_err(|e| runtime(e.to_string()))
                }
                Format::Json => {
                    let members: Vec<_> = basis
                        .members()
                        .iter()
                        .map(|s| {
                            json!({
                                "string": s.to_string(),
                                "encoded": basis.encode(s).expect("member encodes"),
                                "subspace": s.subspace().tag(),
                            })
                        })
                        .collect();
                    write_json(
                        out,
                        &json!({
                            "metadata": metadata("basis", seed, args),
                            "result": {
                                "strands": basis.strands(),
                                "register_qubits": basis.register_qubits(),
                                "members": members,
                            }
                        }),
                    )
                }
            }
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run(args, out) {
        Ok(()) => 0,
        Err(e) => {
            // clap renders --help and --version through the error path with code 0
            if e.code == 0 {
                let _ = write!(out, "{}", e.message);
            } else {
                let _ = writeln!(err, "error: {}", e.message.trim_end());
            }
            e.code
        }
    }
}
