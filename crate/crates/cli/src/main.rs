use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use strata_lab::{parse_poly, render, resolve_cache_dir, CliError, Command, Format, RunConfig, VerifyReport};

#[derive(Parser)]
#[command(name = "strata-lab", version, about = "Reproducible finite computations around vertex lattices, building balls, strata and GGP intersection numbers")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Odd prime.
    #[arg(long, global = true, default_value_t = 3)]
    p: u32,
    /// Extension degree of the counting field.
    #[arg(long, global = true, default_value_t = 1)]
    k: u32,
    #[arg(long, global = true, default_value_t = 1)]
    radius: u32,
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    #[arg(long, global = true)]
    table: bool,
    /// Overridden by STRATA_LAB_CACHE.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Cap on enumerated subspaces and ball sizes.
    #[arg(long, global = true)]
    budget_subspaces: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Counting table of isotropic subspaces: formula against enumeration.
    QuadCounts,
    /// Vertex-lattice ball, building ball and the isomorphism between them.
    Vrt,
    /// Same report as `vrt`.
    Building,
    #[command(subcommand)]
    Strata(StrataCmd),
    #[command(subcommand)]
    Ggp(GgpCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum StrataCmd {
    /// Points of S over F_{p^k} by stratum.
    S {
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    Fermat,
    Klingen,
    LocalModel,
    /// Comparison with the nonsplit even orthogonal space.
    Even {
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Projective zeros of a homogeneous form such as `x0^2 + x1*x2`.
    Hypersurface {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        nvars: usize,
    },
}

#[derive(Subcommand)]
enum GgpCmd {
    /// Closed form and oracles for one polynomial.
    Report {
        /// Coefficients from the constant term upward, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Every valid polynomial of the given degrees.
    Catalog {
        #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
        degrees: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// The full acceptance suite.
    All,
}

fn config(cli: Cli) -> Result<RunConfig, CliError> {
    let command = match cli.cmd {
        Cmd::QuadCounts => Command::QuadCounts,
        Cmd::Vrt => Command::Vrt,
        Cmd::Building => Command::Building,
        Cmd::Strata(s) => match s {
            StrataCmd::S { m } => Command::StrataS { m },
            StrataCmd::Fermat => Command::StrataFermat,
            StrataCmd::Klingen => Command::StrataKlingen,
            StrataCmd::LocalModel => Command::StrataLocalModel,
            StrataCmd::Even { m } => Command::StrataEven { m },
            StrataCmd::Hypersurface { expr, nvars } => Command::StrataHypersurface { expr, nvars },
        },
        Cmd::Ggp(GgpCmd::Report { poly }) => Command::GgpReport { poly: parse_poly(&poly)? },
        Cmd::Ggp(GgpCmd::Catalog { degrees }) => Command::GgpCatalog { degrees },
        Cmd::Verify(VerifyCmd::All) => Command::VerifyAll,
    };
    let c = cli.common;
    let mut cfg = RunConfig::new(command);
    cfg.p = c.p;
    cfg.k = c.k;
    cfg.radius = c.radius;
    if let Some(n) = c.budget_subspaces {
        cfg.budget.max_subspaces = n;
    }
    cfg.cache_dir = resolve_cache_dir(c.cache_dir.as_deref());
    cfg.format = if c.table { Format::Table } else { Format::Json };
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    let cfg = match config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("strata-lab: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match strata_lab::run(&cfg) {
        Ok(out) => {
            if cfg.command == Command::VerifyAll {
                if let Ok(r) = serde_json::from_value::<VerifyReport>(out.doc["result"].clone()) {
                    for c in &r.criteria {
                        eprintln!("{}", c.ledger_line());
                    }
                }
            }
            print!("{}", render(&out.doc, cfg.format));
            ExitCode::from(if out.ok { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("strata-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
