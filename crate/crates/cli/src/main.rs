use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use contact_atlas_core::contact::{bundled_action, parse_action, BUNDLED_ACTIONS};
use contact_atlas_core::nilpotent::SamplePlan;
use contact_atlas_core::report::{
    chow_report, fav_report, nilpotent_report, p5_report, quotient_report, threefold_report, NilpotentTarget,
    PipelineReport, VerdictExpectation,
};

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(name = "contact-atlas", version, about = "Reproducible checks for contact quotients and their resolutions")]
struct Cli {
    /// Print the machine-readable report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Z_2^n quotient of P^(2n+1) and its crepant toric resolution.
    Fav {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        n: u8,
    },
    /// Z_2 quotient of P^5 with its full and partial resolutions.
    P5,
    /// Intersection numbers on P(TS) for a ruled surface S.
    Threefold {
        #[arg(long)]
        g: i64,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, default_value_t = 0)]
        a: u64,
    },
    /// Decide whether P^(2n+1)/G inherits the contact structure.
    QuotientCheck {
        /// Action file, or the name of a bundled action.
        action: String,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Nilpotent cone maps and the orbit poset of sl(2)^k.
    Nilpotent(NilpotentArgs),
    /// Evaluate a class in the Chow ring of P(TS).
    Chow {
        expression: String,
        #[arg(long, default_value_t = 0)]
        g: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        e: i64,
        /// Expected degree of the class, e.g. 4 or -3/2.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<BigRational>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Induced,
    Fails,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "target")]
struct NilpotentTargetArgs {
    /// Orbit poset of sl(2)^k only.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=20))]
    k: Option<u8>,
    /// Map checks on C^(2n+2).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    n: Option<u8>,
}

#[derive(Args)]
struct NilpotentArgs {
    #[command(flatten)]
    target: NilpotentTargetArgs,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..=100_000))]
    samples: u32,
    #[arg(long, env = "CONTACT_ATLAS_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample coordinates are p/q with |p| <= range and 1 <= q <= range.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    range: u32,
}

fn load_action(name: &str) -> anyhow::Result<(String, String)> {
    let path = Path::new(name);
    if path.exists() {
        let src = std::fs::read_to_string(path).with_context(|| format!("reading {name}"))?;
        return Ok((src, name.to_string()));
    }
    match bundled_action(name) {
        Some(src) => Ok((src.to_string(), format!("bundled:{name}"))),
        None => {
            let names: Vec<_> = BUNDLED_ACTIONS.iter().map(|(n, _)| *n).collect();
            bail!("no file {name:?} and no bundled action of that name (bundled: {})", names.join(", "))
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<PipelineReport> {
    let report = match &cli.command {
        Command::Fav { n } => fav_report(usize::from(*n))?,
        Command::P5 => p5_report()?,
        Command::Threefold { g, e, a } => threefold_report(*g, *e, *a)?,
        Command::QuotientCheck { action, expect } => {
            let (src, source) = load_action(action)?;
            let parsed = parse_action(&src).with_context(|| format!("invalid action {source}"))?;
            let expect = expect.map(|e| match e {
                Expect::Induced => VerdictExpectation::Induced,
                Expect::Fails => VerdictExpectation::Fails,
            });
            quotient_report(&parsed, &source, expect)?
        }
        Command::Nilpotent(args) => {
            let plan = SamplePlan::with_range(args.samples as usize, args.seed, args.range)?;
            let target = match (args.target.k, args.target.n) {
                (Some(k), _) => NilpotentTarget::Poset(usize::from(k)),
                (None, Some(n)) => NilpotentTarget::Maps(usize::from(n)),
                (None, None) => unreachable!("clap requires one of --k, --n"),
            };
            nilpotent_report(target, &plan)?
        }
        Command::Chow { expression, g, e, expect } => chow_report(expression, *g, *e, expect.as_ref())?,
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    match report.first_failure() {
        None => ExitCode::SUCCESS,
        Some(c) => {
            eprintln!("check failed: {}", c.name);
            ExitCode::FAILURE
        }
    }
}
