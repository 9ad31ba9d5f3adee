//! `legtree`: exact formal Legendre transforms, tree expansions, map
//! inversion and Wick counting from the command line.

mod commands;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use formal_legendre::inversion::InversionMethod;
use formal_legendre::verify::VerifyConfig;

use report::Outcome;

const DEGREE_CAP: usize = 12;

#[derive(Parser)]
#[command(name = "legtree", version, about = "Exact formal Legendre transforms and their tree expansions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Human-readable lines.
    Text,
    /// Line-oriented key/value with nested lists.
    Structured,
    /// The structured report as JSON.
    Json,
}

#[derive(Args)]
struct DegreeArgs {
    /// Truncation degree D.
    #[arg(long, short, default_value_t = 6)]
    degree: usize,

    /// Allow D above the default cap of 12.
    #[arg(long)]
    allow_large_degree: bool,
}

impl DegreeArgs {
    fn checked(&self) -> Result<usize> {
        if self.degree < 2 {
            bail!("degree {} is below the minimum 2", self.degree);
        }
        if self.degree > DEGREE_CAP && !self.allow_large_degree {
            bail!(
                "degree {} exceeds the cap {DEGREE_CAP}; pass --allow-large-degree to proceed",
                self.degree
            );
        }
        Ok(self.degree)
    }
}

#[derive(Args)]
struct PotentialInput {
    /// Potential, e.g. "1/2*x1^2 + 1/6*x1^3".
    #[arg(long, conflicts_with = "file")]
    phi: Option<String>,

    /// Read the potential from a file ("-" for stdin). Without --phi or
    /// --file the potential is read from stdin.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct MapInput {
    /// Map components, repeated or separated by ';'.
    #[arg(long, value_delimiter = ';', conflicts_with = "file")]
    map: Vec<String>,

    /// Read components from a file ("-" for stdin), one per line or separated
    /// by ';'. Blank lines and lines starting with '#' are skipped.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Legendre,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Gradient inverse g and Legendre transform of a potential.
    Legendre {
        #[command(flatten)]
        input: PotentialInput,
        #[command(flatten)]
        degree: DegreeArgs,
    },
    /// Tree classes, automorphism orders and weights, summed and compared
    /// with the Legendre transform.
    Trees {
        #[command(flatten)]
        input: PotentialInput,
        #[command(flatten)]
        degree: DegreeArgs,
        /// Also run the labeled-tree oracle.
        #[arg(long)]
        oracle: bool,
        /// Largest leaf count the oracle may enumerate.
        #[arg(long, env = "LEGTREE_ORACLE_BOUND", default_value_t = formal_legendre::trees::DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
        /// Include an outline of every tree.
        #[arg(long)]
        sketch: bool,
    },
    /// Formal inverse of a polynomial map.
    Invert {
        #[command(flatten)]
        input: MapInput,
        #[command(flatten)]
        degree: DegreeArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Hessian matrix, determinant and constancy class of a potential, or of
    /// the bridge potential v·f(x) of a map.
    Hessian {
        /// Potential.
        #[arg(long, conflicts_with_all = ["map", "file"])]
        phi: Option<String>,
        /// Map components for the bridge potential, repeated or ';'-separated.
        #[arg(long, value_delimiter = ';', conflicts_with = "file")]
        map: Vec<String>,
        /// Read a map from a file ("-" for stdin).
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Closed 4-valent graphs, symmetry factors and the quartic series.
    Wick {
        /// Highest power of lambda.
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Largest order whose pairings may be enumerated.
        #[arg(long, env = "LEGTREE_PAIRING_BOUND", default_value_t = formal_legendre::wick::DEFAULT_PAIRING_BOUND)]
        pairing_bound: usize,
    },
    /// Run the acceptance cross-checks.
    Verify {
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        /// Run only these criteria (comma separated ids).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        #[arg(long, env = "LEGTREE_ORACLE_BOUND", default_value_t = formal_legendre::trees::DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
        #[arg(long, env = "LEGTREE_PAIRING_BOUND", default_value_t = formal_legendre::wick::DEFAULT_PAIRING_BOUND)]
        pairing_bound: usize,
    },
}

fn read_source(file: &Option<PathBuf>) -> Result<String> {
    match file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("cannot read stdin")?;
            Ok(s)
        }
    }
}

fn potential_text(input: &PotentialInput) -> Result<String> {
    match &input.phi {
        Some(p) => Ok(p.clone()),
        None => read_source(&input.file),
    }
}

fn split_components(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .flat_map(|l| l.split(';'))
        .map(|c| c.trim().to_string())
        .filter(|c| !c.is_empty())
        .collect()
}

fn map_components(map: &[String], file: &Option<PathBuf>) -> Result<Vec<String>> {
    let comps = if map.is_empty() {
        split_components(&read_source(file)?)
    } else {
        map.iter().map(|c| c.trim().to_string()).filter(|c| !c.is_empty()).collect()
    };
    if comps.is_empty() {
        bail!("no map components given");
    }
    Ok(comps)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Legendre { input, degree } => commands::legendre(&potential_text(input)?, degree.checked()?),
        Command::Trees {
            input,
            degree,
            oracle,
            oracle_bound,
            sketch,
        } => commands::trees(
            &potential_text(input)?,
            degree.checked()?,
            oracle.then_some(*oracle_bound),
            *sketch,
        ),
        Command::Invert { input, degree, method } => {
            let methods = match method {
                MethodArg::Direct => vec![InversionMethod::Direct],
                MethodArg::Legendre => vec![InversionMethod::Legendre],
                MethodArg::Both => vec![InversionMethod::Direct, InversionMethod::Legendre],
            };
            commands::invert(&map_components(&input.map, &input.file)?, degree.checked()?, &methods)
        }
        Command::Hessian { phi, map, file } => match phi {
            Some(p) => commands::hessian_potential(p),
            None => commands::hessian_bridge(&map_components(map, file)?),
        },
        Command::Wick { order, pairing_bound } => commands::wick(*order, *pairing_bound),
        Command::Verify {
            seed,
            only,
            oracle_bound,
            pairing_bound,
        } => commands::verify(
            &VerifyConfig {
                seed: *seed,
                oracle_bound: *oracle_bound,
                pairing_bound: *pairing_bound,
            },
            only,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let out = match cli.format {
                Format::Text => outcome.text.clone(),
                Format::Structured => report::to_structured(&outcome.node),
                Format::Json => report::to_json(&outcome.node),
            };
            print!("{out}");
            if outcome.all_passed() {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: a cross-check failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
