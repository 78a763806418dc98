//! Command-line access to period-polynomial spaces, operators and congruence verifiers.

mod commands;
mod output;
mod reproduce;
mod scan;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::{Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "periodpoly", version, about = "Period polynomials for Gamma_0(N) and Eisenstein congruences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Emit the versioned JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<std::path::PathBuf>,
    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

/// Weight given either as k (--weight/-k/--k) or as w = k - 2 (--w).
#[derive(Args, Debug, Clone)]
pub struct Weight {
    /// Weight k of the modular forms.
    #[arg(short = 'k', long = "weight", visible_alias = "k")]
    pub k: Option<u64>,
    /// Polynomial degree w = k - 2.
    #[arg(long = "w")]
    pub w: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct Space {
    #[arg(short = 'N', long = "level")]
    pub level: u64,
    #[command(flatten)]
    pub weight: Weight,
    /// Coefficient field: Q or a prime ell.
    #[arg(long = "mod", default_value = "Q")]
    pub field: String,
    /// Restrict to the delta-eigenspace with this sign.
    #[arg(long, allow_hyphen_values = true)]
    pub parity: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of W_w(N) and its delta-eigenspaces.
    Dim(Space),
    /// Basis of W_w(N), integral and saturated over Q.
    Basis(Space),
    /// Matrix and characteristic polynomial of T_n on W_w(N).
    HeckeMatrix {
        #[command(flatten)]
        space: Space,
        #[arg(short = 'n', long = "n")]
        n: u64,
    },
    /// Matrix of the normalized Atkin-Lehner operator at an exact divisor Q.
    AlMatrix {
        #[command(flatten)]
        space: Space,
        #[arg(short = 'Q', long = "q")]
        q: u64,
    },
    /// Even Eisenstein class for Atkin-Lehner signs eps.
    Eisenstein {
        #[arg(short = 'N', long = "level")]
        level: u64,
        #[command(flatten)]
        weight: Weight,
        /// Coefficient field: Q or a prime ell.
        #[arg(long = "mod", default_value = "Q")]
        field: String,
        /// "+1", "-1", or a list such as "2=-1,7=+1".
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// Trace of the even Eisenstein class from level N down to level M = N / p.
    Trace {
        #[arg(short = 'N', long = "level")]
        level: u64,
        #[command(flatten)]
        weight: Weight,
        /// Target level M.
        #[arg(long = "to")]
        to: u64,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// Dimension of the p-new subspace.
    NewDim {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        p: u64,
        /// Atkin-Lehner constraints such as "7=+1,2=-1".
        #[arg(long, allow_hyphen_values = true)]
        al: Option<String>,
    },
    /// Eisenstein congruence at prime level p.
    VerifyT1 {
        #[command(flatten)]
        weight: Weight,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long)]
        ell: u64,
    },
    /// Surjectivity of reduction mod ell on the p-new subspace.
    VerifyT2 {
        #[arg(short = 'N', long = "level")]
        level: u64,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        weight: Weight,
        #[arg(long)]
        ell: u64,
    },
    /// Congruence between a level-Mp newform and a p-stabilized level-M form.
    VerifyT3 {
        /// Level M of the form g.
        #[arg(short = 'N', long = "level")]
        level: u64,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        weight: Weight,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long)]
        ell: u64,
        /// Eigenvalue selecting g, as "n=lambda" (e.g. "2=-10").
        #[arg(long, allow_hyphen_values = true)]
        select: String,
    },
    /// Search for (k, p, eps, ell) satisfying the Eisenstein congruence hypotheses.
    ScanT1(scan::ScanArgs),
    /// Reproduce a worked example.
    Reproduce {
        /// One of 5.1, 5.2, 5.3, ramanujan, t2.
        #[arg(long)]
        example: String,
    },
}

fn run(cli: &Cli) -> Result<Report, Outcome> {
    match &cli.command {
        Command::Dim(s) => commands::dim(s),
        Command::Basis(s) => commands::basis(s),
        Command::HeckeMatrix { space, n } => commands::hecke_matrix(space, *n),
        Command::AlMatrix { space, q } => commands::al_matrix(space, *q),
        Command::Eisenstein { level, weight, field, eps } => commands::eisenstein(*level, weight, field, eps),
        Command::Trace { level, weight, to, eps } => commands::trace(*level, weight, *to, eps),
        Command::NewDim { space, p, al } => commands::new_dim(space, *p, al.as_deref()),
        Command::VerifyT1 { weight, p, eps, ell } => commands::verify_t1(weight, *p, eps, *ell),
        Command::VerifyT2 { level, p, weight, ell } => commands::verify_t2(*level, *p, weight, *ell),
        Command::VerifyT3 { level, p, weight, eps, ell, select } => {
            commands::verify_t3(*level, *p, weight, eps, *ell, select)
        }
        Command::ScanT1(args) => scan::run(args),
        Command::Reproduce { example } => reproduce::run(example),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if cli.common.timings {
                report.set_elapsed(start.elapsed());
            }
            match output::emit(&report, &cli.common) {
                Ok(()) => ExitCode::from(if report.all_passed() { 0 } else { 1 }),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(Outcome::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
