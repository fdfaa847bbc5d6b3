mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use augresolve::{BraidSpec, Engine, Error};
use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "augresolve", version, about = "DGAs, augmentations and resolution maps of positive braid closures")]
struct Cli {
    /// Disk search: walk, oracle, or both (cross-checked).
    #[arg(long, global = true, default_value = "walk", value_parser = parse_engine)]
    engine: Engine,
    /// Boundary-event cap for the walk search.
    #[arg(long, global = true, env = "AUGRESOLVE_CAP")]
    cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BraidArg {
    /// `torus(p,q) [minus (i,j) ...]`, `word(p; j ...)`, or a JSON document.
    braid: Option<String>,
    /// Reads the braid from a file instead.
    #[arg(long, conflicts_with = "braid")]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generators, degrees and differential; fails unless ∂² = 0.
    Dga(BraidArg),
    /// All augmentations in lexicographic order.
    Augs(BraidArg),
    /// Bilinearized cohomology dimensions per augmentation pair.
    Lch {
        #[command(flatten)]
        braid: BraidArg,
        /// Restricts to one pair of augmentation indices, e.g. `0,2`.
        #[arg(long)]
        pair: Option<String>,
    },
    /// The resolution map on generators.
    Resolve {
        #[command(flatten)]
        braid: BraidArg,
        #[arg(long)]
        at: String,
    },
    /// One A∞ operation on dual generators.
    Mu {
        #[command(flatten)]
        braid: BraidArg,
        /// Augmentation indices, one more than the inputs, e.g. `0,1,1`.
        #[arg(long)]
        augs: String,
        /// Comma-separated generators, e.g. `b[1,1],b[2,1]`.
        #[arg(long)]
        inputs: String,
    },
    /// Structural checks on one resolution; with no check flags all run.
    Verify {
        #[command(flatten)]
        braid: BraidArg,
        #[arg(long)]
        at: String,
        #[arg(long)]
        lemma31: bool,
        #[arg(long)]
        thm32: bool,
        #[arg(long)]
        cor33: bool,
        /// Second-index direction for the crossing order.
        #[arg(long, value_enum, default_value = "descending")]
        order: commands::OrderArg,
    },
    /// Compares computed values with the published worked examples.
    VerifyPaper {
        /// Comma-separated fixture ids; all by default.
        #[arg(long)]
        fixtures: Option<String>,
    },
    /// Exhaustive checks over torus(p,q) and single resolutions.
    Sweep {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        p_max: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        q_max: u32,
        #[arg(long, value_enum, default_value = "soundness")]
        check: commands::SweepCheck,
    },
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl BraidArg {
    fn load(&self) -> anyhow::Result<BraidSpec> {
        let text = match (&self.braid, &self.file) {
            (Some(b), _) => b.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("reading {}: {e}", path.display())))?,
            (None, None) => return Err(Error::Parse("a braid or --file is required".into()).into()),
        };
        Ok(BraidSpec::parse(&text)?)
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse(_) | Error::InvalidBraid(_) | Error::UnknownGenerator(_) | Error::NotResolvable(_)) => 2,
        Some(
            Error::CapExceeded { .. }
            | Error::TooManyGenerators { .. }
            | Error::HeightsUnsolved { .. }
            | Error::FaceBound { .. },
        ) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((report, pass)) => {
            print!("{}", report.render(cli.format));
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
