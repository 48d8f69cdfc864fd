//! `conflop`: exact experiments on the conifold quiver, its stability
//! chambers, the sphere pipeline and the flop on arcs.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{CliError, Report};
use crate::config::Config;

#[derive(Parser, Debug)]
#[command(name = "conflop", version, about = "Exact computations for the conifold flop")]
struct Cli {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized isomorphism checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// JSON file supplying defaults for z0, z1, n and the arc scene.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Charges {
    /// Central charge of simple(v0), as RE,IM.
    #[arg(long, allow_hyphen_values = true)]
    pub z0: Option<String>,
    /// Central charge of simple(v1), as RE,IM.
    #[arg(long, allow_hyphen_values = true)]
    pub z1: Option<String>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct RepSource {
    /// Catalog kind, e.g. vplus:3, vminus:2, point:1,2, simple:0.
    #[arg(long)]
    pub kind: Option<String>,
    /// Representation JSON file.
    #[arg(long, value_name = "FILE")]
    pub rep: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArcOp {
    Invariants,
    Flop,
    Twist,
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Build a catalog representation.
    Make {
        #[arg(long)]
        kind: String,
        /// Also write the JSON to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check the relations and nilpotency.
    Check {
        #[command(flatten)]
        src: RepSource,
    },
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// The four relations, as cyclic derivatives of the potential.
    Relations,
    /// Components of the Maurer-Cartan equation for b = xX + yY + zZ + wW.
    Mc,
    /// Exhaustive check of the A-infinity relations.
    AinftyCheck {
        #[arg(long, default_value_t = 6)]
        arity: usize,
    },
    /// Dimension table of the truncated Jacobi algebra.
    Truncate {
        #[arg(long)]
        n: usize,
    },
    /// Catalog representations.
    Rep {
        #[command(subcommand)]
        op: RepCmd,
    },
    /// Stability verdict for a representation.
    Stable {
        #[command(flatten)]
        src: RepSource,
        #[command(flatten)]
        charges: Charges,
    },
    /// Brute-force search for dimension vectors with stable representations.
    Scan {
        #[arg(long, default_value_t = 5)]
        bound: usize,
        #[command(flatten)]
        charges: Charges,
    },
    /// Modules attached to spheres, torus-fibre cones and differential tables.
    Psi {
        /// sphere:K, cone:MX,MZ or table:NAME (L0, L1, Lc:RHO, S<m>).
        #[arg(long, allow_hyphen_values = true)]
        object: String,
        /// Truncation for table cohomology.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Ext dimensions from a vertex simple.
    Ext {
        /// simple:0 or simple:1.
        #[arg(long)]
        from: String,
        /// Catalog kind or representation JSON file.
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Flop on K-theory classes or on a point module.
    Flop {
        /// Signed dimension vector D0,D1.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "point", required_unless_present = "point")]
        dimvec: Option<String>,
        /// Point module parameters MX,MZ.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[command(flatten)]
        charges: Charges,
    },
    /// Arc invariants and the flop and twist maps.
    Arc {
        #[arg(long, value_enum, default_value = "invariants")]
        op: ArcOp,
        /// Arc JSON file.
        #[arg(long, value_name = "FILE", conflicts_with = "catalog", required_unless_present = "catalog")]
        arc: Option<PathBuf>,
        /// Catalog arc S_K or S'_K.
        #[arg(long, allow_hyphen_values = true)]
        catalog: Option<String>,
        /// Use the inverse twist.
        #[arg(long)]
        inverse: bool,
    },
    /// Run every acceptance criterion.
    VerifyAll {
        /// Restrict to these criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Include wall-clock times (makes the output run-dependent).
        #[arg(long)]
        timings: bool,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::Relations => commands::relations(),
        Cmd::Mc => commands::mc(),
        Cmd::AinftyCheck { arity } => commands::ainfty_check(*arity),
        Cmd::Truncate { n } => commands::truncate(*n),
        Cmd::Rep { op } => match op {
            RepCmd::Make { kind, out } => commands::rep_make(kind, out.as_deref()),
            RepCmd::Check { src } => commands::rep_check(src),
        },
        Cmd::Stable { src, charges } => commands::stable(src, &cfg.params(charges, false)?),
        Cmd::Scan { bound, charges } => commands::scan(*bound, cfg.explicit_params(charges)?),
        Cmd::Psi { object, n } => commands::psi(object, cfg.truncation(*n), seed),
        Cmd::Ext { from, to, n } => commands::ext(from, to, cfg.truncation(*n)),
        Cmd::Flop { dimvec, point, charges } => match (dimvec, point) {
            (Some(d), _) => commands::flop_dimvec(d),
            (None, Some(p)) => commands::flop_point(p, &cfg.params(charges, true)?),
            (None, None) => Err(CliError::bad("flop needs --dimvec or --point")),
        },
        Cmd::Arc {
            op,
            arc,
            catalog,
            inverse,
        } => commands::arc(*op, arc.as_deref(), catalog.as_deref(), *inverse, &cfg.scene()?),
        Cmd::VerifyAll { only, timings } => commands::verify_all(only, *timings, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let out = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("JSON values always serialize") + "\n"
            } else {
                report.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
