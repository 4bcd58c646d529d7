//! `adams`: verification suites, JSON compute front-end and generators.

use std::fs;
use std::io::{self, Read as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use adams_core::adams::adams_split;
use adams_core::cubes::{normalized_project, ChainTermJson, CubeChain, Grid, GridJson};
use adams_core::exactalg::Q;
use adams_core::splitcubes::{random_split_cube, SplitCube, SplitCubeJson};
use adams_core::transgression::{box_chain_to_json, canonical_kernel_cube, full_adams, transgression_morphism};
use adams_core::verify::{registry, run_suite, Params, Status, VerificationReport};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "adams", version, about = "Chain-level Adams operations on cubes of free modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        /// Repeatable.
        #[arg(long = "k", default_values_t = [2])]
        k: Vec<usize>,
        /// Write the report (an array for `all`) to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Count tier-2 passes as failures.
        #[arg(long)]
        tier_strict: bool,
    },
    /// Apply an operation to a cube, split cube or chain read as JSON.
    Compute {
        op: Op,
        /// Input file; `-` reads stdin.
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Output file; stdout by default.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print a seeded random object as JSON.
    Gen {
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The k = 2, n = 1 worked example.
    Demo { which: Demo },
    /// List the registered suites.
    Suites,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    #[value(name = "adams_split", alias = "adams-split")]
    AdamsSplit,
    Transgress,
    #[value(name = "full_adams", alias = "full-adams")]
    FullAdams,
    Normalize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cube,
    CanonicalKernelCube,
    SplitCube,
    ExactSeq,
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    K2n1,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("invalid input: {0}")]
    Input(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` when some check failed.
fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Verify { suite, seed, cases, max_rank, max_n, k, json, tier_strict } => {
            let params = Params { seed, cases, max_rank, max_n, k_list: k };
            let names: Vec<&str> = if suite == "all" { registry().iter().map(|s| s.name).collect() } else { vec![&suite] };
            let mut reports = Vec::new();
            for name in names {
                let start = Instant::now();
                let report = run_suite(name, &params, tier_strict).map_err(|e| CliError::Config(e.to_string()))?;
                print_report(&report, start.elapsed().as_secs_f64());
                reports.push(report);
            }
            if let Some(path) = json {
                if reports.len() == 1 {
                    write_json(&path, &reports[0])?;
                } else {
                    write_json(&path, &reports)?;
                }
            }
            Ok(reports.iter().all(VerificationReport::all_passed))
        }
        Command::Compute { op, input, k, json } => {
            let text = read_input(&input)?;
            let out = compute(op, &text, k)?;
            emit(json.as_deref(), &out)?;
            Ok(true)
        }
        Command::Gen { kind, n, max_rank, seed } => {
            if n > 3 {
                return Err(CliError::Config(format!("n = {n} exceeds 3")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = match kind {
                Kind::Cube => serde_json::to_value(random_split_cube::<Q>(&mut rng, n, max_rank, "E").cube.to_json()),
                Kind::SplitCube => serde_json::to_value(random_split_cube::<Q>(&mut rng, n, max_rank, "E").to_json()),
                Kind::CanonicalKernelCube => serde_json::to_value(canonical_kernel_cube(&mut rng, n, max_rank, "E").to_json()),
                Kind::ExactSeq => serde_json::to_value(random_split_cube::<Q>(&mut rng, 1, max_rank, "E").cube.to_json()),
            }
            .expect("serializable");
            emit(None, &out)?;
            Ok(true)
        }
        Command::Demo { which: Demo::K2n1 } => {
            let start = Instant::now();
            let report = run_suite("adams-example", &Params { cases: 1, ..Params::default() }, false)
                .map_err(|e| CliError::Config(e.to_string()))?;
            print_report(&report, start.elapsed().as_secs_f64());
            Ok(report.all_passed())
        }
        Command::Suites => {
            for s in registry() {
                println!("{:<14} {}", s.name, s.about);
            }
            Ok(true)
        }
    }
}

fn print_report(r: &VerificationReport, seconds: f64) {
    let verdict = if r.all_passed() { "PASS" } else { "FAIL" };
    println!(
        "{verdict} {:<14} {} cases: {} passed ({} at tier 2), {} failed [{seconds:.2}s]",
        r.suite,
        r.cases.len(),
        r.passed,
        r.passed_tier2,
        r.failed
    );
    for c in r.cases.iter().filter(|c| c.status == Status::Fail) {
        let why = c.failure.as_ref().map_or("", |f| f.message.as_str());
        println!("  case {} ({}): {why}", c.index, c.label);
        if let Some(f) = &c.failure {
            for line in f.diff.iter().take(6) {
                println!("    {line}");
            }
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    fs::write(path, text + "\n")?;
    Ok(())
}

fn emit(path: Option<&Path>, value: &serde_json::Value) -> Result<(), CliError> {
    match path {
        Some(p) => write_json(p, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
            Ok(())
        }
    }
}

/// A chain (array of terms) or a single cube.
fn parse_chain(text: &str) -> Result<CubeChain<Q>, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    if value.is_array() {
        let terms: Vec<ChainTermJson> = serde_json::from_value(value).map_err(|e| CliError::Input(e.to_string()))?;
        CubeChain::from_json(&terms).map_err(|e| CliError::Input(e.to_string()))
    } else {
        let g: GridJson = serde_json::from_value(value).map_err(|e| CliError::Input(e.to_string()))?;
        let grid = Grid::<Q>::from_json(&g).map_err(|e| CliError::Input(e.to_string()))?;
        grid.validate().map_err(|e| CliError::Input(e.to_string()))?;
        Ok(CubeChain::single(1, grid))
    }
}

fn compute(op: Op, text: &str, k: usize) -> Result<serde_json::Value, CliError> {
    let input = |e: &dyn std::fmt::Display| CliError::Input(e.to_string());
    let value = match op {
        Op::AdamsSplit => {
            let j: SplitCubeJson = serde_json::from_str(text).map_err(|e| input(&e))?;
            let s = SplitCube::<Q>::from_json(&j).map_err(|e| input(&e))?;
            serde_json::to_value(adams_split(&s, k).map_err(|e| input(&e))?.to_json())
        }
        Op::Transgress => {
            let x = parse_chain(text)?;
            serde_json::to_value(box_chain_to_json(&transgression_morphism(&x).map_err(|e| input(&e))?))
        }
        Op::FullAdams => {
            let x = parse_chain(text)?;
            serde_json::to_value(box_chain_to_json(&full_adams(&x, k).map_err(|e| input(&e))?))
        }
        Op::Normalize => serde_json::to_value(normalized_project(&parse_chain(text)?).to_json()),
    };
    Ok(value.expect("serializable"))
}
