mod commands;
mod config;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, RunConfig, CONFIG_ENV};

#[derive(Parser, Debug)]
#[command(name = "preimage", version, about = "Rational maps sharing preimages: orbifolds, deck groups, fiber products and invariant orbits")]
struct Cli {
    /// JSON config file with caps and defaults.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Initial working precision in bits.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[arg(long, global = true)]
    precision_cap: Option<u32>,
    #[arg(long, global = true)]
    group_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Signature, Euler characteristic and normalization genus verdict.
    Classify { file: PathBuf },
    /// Galois test with the deck group or a witness.
    Galois { file: PathBuf },
    /// Deck transformation group.
    Deck { file: PathBuf },
    /// Components of the fiber product of maps or constellations.
    Fiberprod { file: PathBuf },
    /// Genus of the Galois closure.
    Normalize { file: PathBuf },
    /// Monodromy constellations of maps.
    Monodromy { file: PathBuf },
    /// Truncated orbit of a base point.
    Orbit(OrbitArgs),
    /// Value sets K_i = P_i(S).
    Construct {
        #[arg(long)]
        maps: PathBuf,
        #[arg(long)]
        orbit: PathBuf,
    },
    /// Windowed check of P_1^-1(K_1) = ... = P_k^-1(K_k).
    Verify(VerifyArgs),
    /// Common finite quotient of all maps, if the deck groups generate a finite group.
    ReduceFinite {
        #[arg(long)]
        maps: PathBuf,
    },
    /// Invariant suite over the built-in corpus.
    CorpusCheck,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    /// Base point, e.g. 0, 1/2, inf or a JSON field element.
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,
    /// Generators file, or maps whose deck generators and mu are used.
    #[arg(long)]
    pub gens: PathBuf,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub cap: Option<usize>,
    /// Also write a scatter plot of the finite points.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Maps, with optional base, mu and value sets.
    pub file: PathBuf,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub window: Option<usize>,
    /// Also require one value set for all maps on the window image.
    #[arg(long)]
    pub single_k: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut cfg = match &cli.config {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => c,
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        },
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(p) = cli.precision {
        cfg.precision = p;
    }
    if let Some(p) = cli.precision_cap {
        cfg.precision_cap = p;
    }
    if let Some(g) = cli.group_cap {
        cfg.group_cap = g;
    }
    if let Err(msg) = cfg.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match commands::run(&cli.command, &cfg) {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            ExitCode::from(report.status)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
