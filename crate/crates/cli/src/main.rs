use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankmetric::delsarte::MatrixCodeJson;
use rankmetric::gabidulin::VectorCodeJson;
use rankmetric::make_tower;
use rankmetric_cli::certificate::{exit_status, to_csv, to_ndjson};
use rankmetric_cli::report::{self, check_matrix_code, check_vector_code, dual_basis_report};
use rankmetric_cli::suite::{AnticodePoint, TowerSpec};
use rankmetric_cli::{construct_and_report, run_suite, BasisSpec, CliError, CliResult, Kind, ReportRequest, SuiteConfig};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "rankmetric", version, about = "Rank-metric codes over small finite fields")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Describe GF((p^e)^m) and check its arithmetic.
    Field(TowerArgs),
    #[command(subcommand)]
    Basis(BasisCommand),
    #[command(subcommand)]
    Gabidulin(GabidulinCommand),
    #[command(subcommand)]
    Delsarte(DelsarteCommand),
    #[command(subcommand)]
    Suite(SuiteCommand),
    /// Rebuild a report from a request object (e.g. a certificate witness).
    Report {
        /// JSON request, or @path to read it from a file.
        #[arg(long)]
        request: String,
    },
}

#[derive(Args, Clone)]
struct TowerArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum BasisCommand {
    FindSelfDual(TowerArgs),
    FindAlmost(TowerArgs),
    /// Dual basis of a given basis (standard by default).
    Dual {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long)]
        basis: Option<String>,
    },
}

#[derive(Args, Clone)]
struct CodeArgs {
    #[command(flatten)]
    tower: TowerArgs,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s: Option<usize>,
    /// self-dual, almost-self-dual, standard, or a JSON array of elements.
    #[arg(long)]
    basis: Option<String>,
    #[arg(long)]
    max_enum: Option<u64>,
}

#[derive(Subcommand)]
enum GabidulinCommand {
    /// Build a Moore-matrix code and report its parameters.
    New(CodeArgs),
    /// Report on a serialized vector code.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_enum: Option<u64>,
    },
}

#[derive(Subcommand)]
enum DelsarteCommand {
    /// Expand a Moore-matrix code into a matrix code.
    Expand {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        expand_basis: Option<String>,
    },
    /// Restriction of n × m matrices to column spaces inside U.
    Anticode {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// JSON array of spanning vectors of U.
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        max_enum: Option<u64>,
    },
    /// Report on a serialized matrix code.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_enum: Option<u64>,
    },
}

#[derive(Subcommand)]
enum SuiteCommand {
    /// Run the audit; exits 1 if any certificate is FAIL.
    Run {
        /// JSON config with towers, anticode_grid, max_enum, seed, out.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_enum: Option<u64>,
        /// Restrict to the single tower (p, e, m).
        #[arg(long, requires = "m")]
        p: Option<u32>,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long, requires = "p")]
        m: Option<u32>,
        /// With --p and --m, also run the anticode point (p, e, n, m).
        #[arg(long, requires = "p")]
        n: Option<usize>,
    },
}

fn read_arg(s: &str) -> CliResult<String> {
    match s.strip_prefix('@') {
        Some(path) => Ok(fs::read_to_string(path)?),
        None => Ok(s.to_owned()),
    }
}

fn code_request(kind: Kind, a: &CodeArgs) -> CliResult<ReportRequest> {
    Ok(ReportRequest {
        m: Some(a.tower.m as usize),
        n: a.n,
        k: Some(a.k),
        s: a.s,
        seed: a.tower.seed,
        basis: a.basis.as_deref().map(BasisSpec::parse).transpose()?,
        max_enum: a.max_enum,
        ..ReportRequest::new(kind, a.tower.p, a.tower.e)
    })
}

fn tower_request(kind: Kind, a: &TowerArgs) -> ReportRequest {
    ReportRequest { m: Some(a.m as usize), seed: a.seed, ..ReportRequest::new(kind, a.p, a.e) }
}

enum Output {
    Report(Value),
    Suite(SuiteConfig),
}

fn dispatch(command: Command) -> CliResult<Output> {
    let report = |r: ReportRequest| construct_and_report(&r).map(Output::Report);
    match command {
        Command::Field(a) => report(tower_request(Kind::Field, &a)),
        Command::Basis(BasisCommand::FindSelfDual(a)) => report(tower_request(Kind::SelfDualBasis, &a)),
        Command::Basis(BasisCommand::FindAlmost(a)) => report(tower_request(Kind::AlmostSelfDualBasis, &a)),
        Command::Basis(BasisCommand::Dual { tower, basis }) => {
            let t = make_tower(tower.p, tower.e, tower.m)?;
            let spec = basis.as_deref().map(BasisSpec::parse).transpose()?;
            dual_basis_report(&t, spec.as_ref(), tower.seed).map(Output::Report)
        }
        Command::Gabidulin(GabidulinCommand::New(a)) => report(code_request(Kind::Gabidulin, &a)?),
        Command::Gabidulin(GabidulinCommand::Check { input, max_enum }) => {
            let j: VectorCodeJson = serde_json::from_str(&fs::read_to_string(input)?)?;
            check_vector_code(&j, max_enum.unwrap_or(rankmetric::delsarte::DEFAULT_ENUM_CAP)).map(Output::Report)
        }
        Command::Delsarte(DelsarteCommand::Expand { code, expand_basis }) => {
            let mut r = code_request(Kind::Expand, &code)?;
            r.expand_basis = expand_basis.as_deref().map(BasisSpec::parse).transpose()?;
            report(r)
        }
        Command::Delsarte(DelsarteCommand::Anticode { p, e, n, m, subspace, max_enum }) => {
            let rows: Vec<Vec<Value>> = serde_json::from_str(&subspace)?;
            report(ReportRequest {
                n: Some(n),
                m: Some(m),
                subspace: Some(rows),
                max_enum,
                ..ReportRequest::new(Kind::Anticode, p, e)
            })
        }
        Command::Delsarte(DelsarteCommand::Check { input, max_enum }) => {
            let j: MatrixCodeJson = serde_json::from_str(&fs::read_to_string(input)?)?;
            check_matrix_code(&j, max_enum.unwrap_or(rankmetric::delsarte::DEFAULT_ENUM_CAP)).map(Output::Report)
        }
        Command::Suite(SuiteCommand::Run { config, seed, max_enum, p, e, m, n }) => {
            let mut cfg = match config {
                Some(path) => serde_json::from_str(&fs::read_to_string(path)?)
                    .map_err(|err| CliError::Config(err.to_string()))?,
                None => SuiteConfig::default(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(c) = max_enum {
                cfg.max_enum = c;
            }
            if let (Some(p), Some(m)) = (p, m) {
                let e = e.unwrap_or(1);
                cfg.towers = vec![TowerSpec { p, e, m }];
                cfg.anticode_grid = n.map(|n| AnticodePoint { p, e, n, m: m as usize }).into_iter().collect();
            }
            Ok(Output::Suite(cfg))
        }
        Command::Report { request } => {
            let r: ReportRequest = serde_json::from_str(&read_arg(&request)?)?;
            report(r)
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<i32> {
    match dispatch(cli.command)? {
        Output::Report(doc) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&doc)? + "\n",
                Format::Csv => report::to_csv(&doc),
            };
            emit(&text, cli.out.as_ref())?;
            Ok(0)
        }
        Output::Suite(cfg) => {
            let certs = run_suite(&cfg)?;
            let text = match cli.format {
                Format::Json => to_ndjson(&certs),
                Format::Csv => to_csv(&certs),
            };
            emit(&text, cli.out.as_ref().or(cfg.out.as_ref()))?;
            Ok(exit_status(&certs))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("rankmetric: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
