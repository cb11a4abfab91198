use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gcs_cli::commands::{self, SolveArgs};
use gcs_cli::config::DEFAULT_SEED;
use gcs_cli::verify::Suite;
use gcs_cli::{CliError, Format, Report, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "gcs", version, about = "Graded Grassmann coherent states: constructions, solves and checks")]
struct Cli {
    /// Grade (or site count for w_n/ghz_n); each command has its own default.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Comparison tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a catalog entry and compare it with its printed target.
    Construct {
        id: String,
        /// +1 or -1 for the ± entries.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i32,
        /// ω = q^omega for qutrit_psi22.
        #[arg(long, default_value_t = 0)]
        omega: u32,
        /// Site dimension for qudit_squeezed_mes_n.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Run a verification suite: algebra, catalog, closure, boson or all.
    Verify { suite: String },
    /// Find the weight that maps a product state to a target.
    SolveWeight {
        /// kind:var[:dim], comma separated (coherent, squeezed, squeezed_exp).
        #[arg(long)]
        factors: String,
        /// diag, random, @file.json, or terms like "0 2:1; 2 0:1".
        #[arg(long)]
        target: String,
        /// full, diag, or monomials like "1, t1^2 t2^2".
        #[arg(long, default_value = "full")]
        basis: String,
        /// Integrated variables, e.g. "t1,t2"; defaults to the factor variables.
        #[arg(long)]
        differentials: Option<String>,
        /// Fail unless the solve is feasible (or infeasible).
        #[arg(long, value_parser = ["feasible", "infeasible"])]
        expect: Option<String>,
    },
    /// Check closure of the q-deformed ladder algebras.
    Closure {
        /// su_q2, squeeze or both.
        #[arg(long, default_value = "both")]
        kind: String,
        #[arg(long, default_value_t = 3)]
        d: usize,
    },
}

fn run(cli: &Cli, echo: Vec<String>) -> Result<Report, CliError> {
    let cfg = RunConfig {
        tol: cli.tol,
        n: cli.n,
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        seed: cli.seed,
    };
    cfg.validate()?;
    match &cli.command {
        Command::Construct { id, sign, omega, dim } => commands::construct(echo, &cfg, id, *sign, *omega, *dim),
        Command::Verify { suite } => commands::verify(echo, &cfg, suite.parse::<Suite>()?),
        Command::SolveWeight { factors, target, basis, differentials, expect } => commands::solve(
            echo,
            &cfg,
            &SolveArgs {
                factors,
                target,
                basis,
                differentials: differentials.as_deref(),
                expect: expect.as_deref().map(|e| e == "feasible"),
            },
        ),
        Command::Closure { kind, d } => commands::closure(echo, &cfg, kind, *d),
    }
}

fn main() -> ExitCode {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let report = match run(&cli, echo) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gcs: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let rendered = match cli.format {
        FormatArg::Json => report.to_json() + "\n",
        FormatArg::Text => report.to_text(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("gcs: {e}");
        return ExitCode::from(1);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
