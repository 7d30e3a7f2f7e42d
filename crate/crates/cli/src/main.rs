use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use milnor_core::class_engine::{compute_report, Route};
use milnor_core::identity_lab::{check_cor11_identity, check_expansion_identity};
use milnor_core::{validate, ClassReport, CompleteIntersectionSpec, Error};

mod render;

const EXIT_INVALID: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
const EXIT_NON_INTEGRAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "milnor",
    version,
    about = "Characteristic and Milnor classes of complete intersections in P^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute c^FJ, c^SM and Milnor classes along the chosen routes.
    Compute {
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Run every route and print one agreement row per variety and route.
    Crosscheck {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Randomized exact check of the expansion and telescoped formulas.
    Identity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Definition,
    Thm1,
    Expansion,
    Cor11,
    Aluffi,
    Pp,
    All,
}

impl Method {
    fn routes(self) -> Vec<Route> {
        match self {
            Method::Definition => vec![Route::Definition],
            Method::Thm1 => vec![Route::Thm1],
            Method::Expansion => vec![Route::Expansion],
            Method::Cor11 => vec![Route::Cor11],
            Method::Aluffi => vec![Route::Aluffi],
            Method::Pp => vec![Route::Pp],
            Method::All => Route::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::invalid(format!("{e:#}"))
    }
}

fn load(path: &Path) -> Result<CompleteIntersectionSpec, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let spec = serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    Ok(spec)
}

fn document_routes(spec: &CompleteIntersectionSpec) -> Vec<Route> {
    match &spec.routes {
        Some(names) if !names.iter().any(|n| n == "all") => {
            names.iter().filter_map(|n| n.parse().ok()).collect()
        }
        _ => Route::ALL.to_vec(),
    }
}

fn report_for(path: &Path, method: Option<Method>) -> Result<ClassReport, Failure> {
    let spec = load(path)?;
    let routes = method.map_or_else(|| document_routes(&spec), Method::routes);
    let valid = validate(spec)
        .map_err(|errors| Failure::invalid(format!("{}: validation failed\n{errors}", path.display())))?;
    compute_report(&valid, &routes).map_err(|e| match e {
        Error::NonIntegral { .. } => Failure {
            code: EXIT_NON_INTEGRAL,
            message: format!("{}: {e}", path.display()),
        },
        other => Failure::invalid(format!("{}: {other}", path.display())),
    })
}

fn emit(
    report: &ClassReport,
    output: Output,
    text: impl FnOnce(&ClassReport) -> String,
) -> Result<(), Failure> {
    match output {
        Output::Text => print!("{}", text(report)),
        Output::Json => println!(
            "{}",
            render::json(report).map_err(|e| Failure::invalid(e.to_string()))?
        ),
    }
    Ok(())
}

fn disagreement_exit(report: &ClassReport) -> Result<(), Failure> {
    if report.has_disagreement() {
        let names: Vec<&str> = report
            .varieties
            .iter()
            .filter(|v| v.verdict == milnor_core::Verdict::Disagree)
            .map(|v| v.name.as_str())
            .collect();
        return Err(Failure {
            code: EXIT_DISAGREE,
            message: format!("routes disagree for {}", names.join(", ")),
        });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute {
            input,
            method,
            output,
        } => {
            let report = report_for(&input, method)?;
            emit(&report, output, render::text)?;
            let routes_run = report.varieties.first().map_or(0, |v| v.milnor.len());
            if routes_run > 1 {
                disagreement_exit(&report)
            } else {
                Ok(())
            }
        }
        Command::Crosscheck { input, output } => {
            let report = report_for(&input, Some(Method::All))?;
            emit(&report, output, render::crosscheck)?;
            disagreement_exit(&report)
        }
        Command::Identity { n, r, trials, seed } => {
            if r < 1 || r > n {
                return Err(Failure::invalid(format!("need 1 <= r <= n, got n={n} r={r}")));
            }
            let expansion = check_expansion_identity(n, r, trials, seed)
                .map_err(|e| Failure::invalid(format!("invalid range: {e}")))?;
            let cor11 = check_cor11_identity(n, r, trials, seed)
                .map_err(|e| Failure::invalid(format!("invalid range: {e}")))?;
            println!("{expansion}");
            println!("{cor11}");
            let failures = expansion.failures + cor11.failures;
            println!("total failures: {failures}");
            if failures == 0 {
                Ok(())
            } else {
                Err(Failure {
                    code: 1,
                    message: format!("{failures} identity failures"),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
