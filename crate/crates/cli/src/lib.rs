//! Command-line front end: `synth`, `verify`, `bench` and `cost`.

pub mod bench;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use revsynth_core::circuit::{GateClass, MctSmallFormula};
use revsynth_core::synth::MAX_SYNTH_WIDTH;
use revsynth_core::{Circuit, CostModel, Permutation, RestStrategy, SynthOptions};

use bench::{BenchConfig, BenchError};

/// Widest circuit `--verify` and `verify` will simulate.
pub const VERIFY_MAX_WIDTH: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "revsynth",
    version,
    about = "Reversible circuit synthesis from truth tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a circuit from a truth table.
    Synth(SynthArgs),
    /// Check a circuit against a truth table.
    Verify(VerifyArgs),
    /// Synthesize seeded random permutations and emit CSV.
    Bench(BenchArgs),
    /// Elementary-gate estimate of a circuit.
    Cost(CostArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RestArg {
    Naive,
    Improved,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MctArg {
    #[value(name = "12m22")]
    TwelveM22,
    #[value(name = "14m22")]
    FourteenM22,
}

#[derive(Clone, Debug, Args)]
pub struct ModelArgs {
    /// Elementary cost of a Toffoli gate.
    #[arg(long, default_value_t = 15)]
    pub model_toffoli: u64,
    /// Formula for C^mNOT with 3 <= m <= n/2.
    #[arg(long, value_enum, default_value = "12m22")]
    pub model_mct: MctArg,
}

impl ModelArgs {
    pub fn cost_model(&self) -> CostModel {
        CostModel {
            toffoli_cost: self.model_toffoli,
            mct_small_formula: match self.model_mct {
                MctArg::TwelveM22 => MctSmallFormula::TwelveM22,
                MctArg::FourteenM22 => MctSmallFormula::FourteenM22,
            },
            ..CostModel::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Truth table (`n <n>` header plus 2^n images, or `perm: …`).
    pub input: PathBuf,
    /// Circuit output path; the JSON report goes next to it.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Report path (default: output with `.json` appended).
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "naive")]
    pub rest: RestArg,
    /// Simulate the result and fail on mismatch (n <= 20).
    #[arg(long)]
    pub verify: bool,
    /// PMH section size (default round(log2(n) / 2)).
    #[arg(long)]
    pub pmh_section: Option<usize>,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub circuit: PathBuf,
    pub truth_table: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Width range `a..b` (inclusive) or a single width.
    #[arg(long, value_parser = parse_range)]
    pub n: (usize, usize),
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "naive")]
    pub rest: RestArg,
    /// CSV output path (default: stdout).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Fill `wall_time_ms`; makes the CSV run-dependent.
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub pmh_section: Option<usize>,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    pub circuit: PathBuf,
    #[command(flatten)]
    pub model: ModelArgs,
}

/// Parses `a..b`, `a..=b` or `a`.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad width {t:?}: {e}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("empty or invalid range {s:?}"));
    }
    Ok((lo, hi))
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    WidthCap(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Other(_) => 1,
            CliError::Verification(_) => 2,
            CliError::WidthCap(_) => 3,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))
}

fn load_permutation(path: &Path) -> Result<Permutation, CliError> {
    Permutation::parse_truth_table(&read(path)?).map_err(|e| match e {
        revsynth_core::PermutationError::TooWide { .. } => {
            CliError::WidthCap(format!("{}: {e}", path.display()))
        }
        e => CliError::Parse(format!("{}: {e}", path.display())),
    })
}

fn load_circuit(path: &Path) -> Result<Circuit, CliError> {
    read(path)?
        .parse()
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Compares `circuit` with `p`; on failure names the first input that differs.
pub fn check(circuit: &Circuit, p: &Permutation) -> Result<(), CliError> {
    let n = p.width();
    if circuit.width() != n {
        return Err(CliError::Verification(format!(
            "circuit has {} wires, truth table has {n}",
            circuit.width()
        )));
    }
    if n > VERIFY_MAX_WIDTH {
        return Err(CliError::WidthCap(format!(
            "verification is limited to n <= {VERIFY_MAX_WIDTH} (got {n})"
        )));
    }
    let sim = circuit
        .simulate()
        .map_err(|e| CliError::WidthCap(e.to_string()))?;
    match (0..p.size()).find(|&x| sim.apply(x) != p.apply(x)) {
        None => Ok(()),
        Some(x) => Err(CliError::Verification(format!(
            "mismatch at input {x}: circuit gives {}, expected {}",
            sim.apply(x),
            p.apply(x)
        ))),
    }
}

fn strategies(rest: RestArg) -> Vec<RestStrategy> {
    match rest {
        RestArg::Naive => vec![RestStrategy::Naive],
        RestArg::Improved => vec![RestStrategy::Improved],
        RestArg::Both => vec![RestStrategy::Naive, RestStrategy::Improved],
    }
}

pub fn cmd_synth(args: &SynthArgs) -> Result<String, CliError> {
    let p = load_permutation(&args.input)?;
    let n = p.width();
    if args.verify && n > VERIFY_MAX_WIDTH {
        return Err(CliError::WidthCap(format!(
            "--verify is limited to n <= {VERIFY_MAX_WIDTH} (got {n})"
        )));
    }
    let rest_strategy = match args.rest {
        RestArg::Naive => RestStrategy::Naive,
        RestArg::Improved => RestStrategy::Improved,
        RestArg::Both => {
            return Err(CliError::Parse(
                "synth takes --rest naive or improved".into(),
            ))
        }
    };
    let opts = SynthOptions {
        rest_strategy,
        cost_model: args.model.cost_model(),
        pmh_section: args.pmh_section,
    };
    let (circuit, report) = revsynth_core::synthesize(&p, &opts).map_err(|e| match e {
        revsynth_core::SynthError::TooWide { .. } => CliError::WidthCap(e.to_string()),
        e => CliError::Other(e.to_string()),
    })?;
    if args.verify {
        check(&circuit, &p)?;
    }
    write(&args.output, &circuit.to_string())?;
    let report_path = args.report.clone().unwrap_or_else(|| {
        let mut s = args.output.clone().into_os_string();
        s.push(".json");
        s.into()
    });
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write(&report_path, &(json + "\n"))?;
    Ok(format!(
        "n={n} gates={} elementary={} iterations={}{}\n",
        report.gate_count,
        report.elementary_estimate,
        report.iterations,
        if args.verify { " verified" } else { "" }
    ))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<String, CliError> {
    let circuit = load_circuit(&args.circuit)?;
    let p = load_permutation(&args.truth_table)?;
    check(&circuit, &p)?;
    Ok(format!(
        "ok: {} gates realize the truth table\n",
        circuit.len()
    ))
}

/// Returns the CSV text (when no `--csv` path is given) and the summary.
pub fn cmd_bench(args: &BenchArgs) -> Result<(String, String), CliError> {
    let (lo, hi) = args.n;
    if hi > MAX_SYNTH_WIDTH {
        return Err(CliError::WidthCap(format!(
            "bench widths are limited to n <= {MAX_SYNTH_WIDTH}"
        )));
    }
    let cfg = BenchConfig {
        widths: lo..=hi,
        trials: args.trials,
        seed: args.seed,
        strategies: strategies(args.rest),
        options: SynthOptions {
            rest_strategy: RestStrategy::Naive,
            cost_model: args.model.cost_model(),
            pmh_section: args.pmh_section,
        },
        timing: args.timing,
    };
    // Any failure, including a verification mismatch, exits with 1.
    let rows = bench::run_bench(&cfg).map_err(|e: BenchError| CliError::Other(e.to_string()))?;
    let mut buf = Vec::new();
    bench::write_csv(&rows, &mut buf).map_err(|e| CliError::Other(e.to_string()))?;
    let csv = String::from_utf8(buf).expect("csv is utf-8");

    let mut summary = String::new();
    match bench::fit_constant(&rows) {
        Some(c) => writeln!(
            summary,
            "fit: cost ~ {c:.4} * 2^n * n / log2(n) over {} rows",
            rows.len()
        ),
        None => writeln!(summary, "fit: no rows with n >= 2"),
    }
    .expect("string write");
    if args.rest == RestArg::Both {
        for n in lo..=hi {
            let total = |s: RestStrategy| -> u64 {
                rows.iter()
                    .filter(|r| r.n == n && r.strategy == s)
                    .map(|r| r.rest_elementary)
                    .sum()
            };
            let (naive, improved) = (total(RestStrategy::Naive), total(RestStrategy::Improved));
            writeln!(
                summary,
                "rest n={n}: naive {naive} improved {improved}{}",
                if improved <= naive {
                    ""
                } else {
                    " (improved is larger)"
                }
            )
            .expect("string write");
        }
    }
    match &args.csv {
        Some(path) => {
            write(path, &csv)?;
            Ok((String::new(), summary))
        }
        None => Ok((csv, summary)),
    }
}

pub fn cmd_cost(args: &CostArgs) -> Result<String, CliError> {
    let circuit = load_circuit(&args.circuit)?;
    let model = args.model.cost_model();
    let n = circuit.width();
    let mut hist: BTreeMap<GateClass, (usize, u64)> = BTreeMap::new();
    let mut neg = 0;
    for g in circuit.gates() {
        let e = hist.entry(GateClass::of(g.num_controls(), n)).or_default();
        e.0 += 1;
        e.1 += model.gate_cost(g, n);
        neg += g.negative_controls().len();
    }
    let mut out = String::new();
    writeln!(out, "{:<18}{:>10}{:>14}", "class", "gates", "elementary").unwrap();
    for (class, (count, cost)) in &hist {
        writeln!(out, "{:<18}{count:>10}{cost:>14}", class.label()).unwrap();
    }
    writeln!(out, "negative controls {neg}").unwrap();
    writeln!(out, "elementary_estimate {}", model.circuit_cost(&circuit)).unwrap();
    Ok(out)
}

/// Runs a parsed command, printing output; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Synth(a) => cmd_synth(a).map(|s| print!("{s}")),
        Command::Verify(a) => cmd_verify(a).map(|s| print!("{s}")),
        Command::Bench(a) => cmd_bench(a).map(|(csv, summary)| {
            print!("{csv}");
            eprint!("{summary}");
        }),
        Command::Cost(a) => cmd_cost(a).map(|s| print!("{s}")),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
