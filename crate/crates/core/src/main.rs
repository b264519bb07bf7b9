use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use penonlab::braid::{self, BraidWord, CLI_MAX_STRANDS};
use penonlab::glob::{doubly_degenerate, Mode, Presentation};
use penonlab::penon::{FreePenonStructure, PenonTerm};
use penonlab::verify::{self, Config, Scenario, REPORT_SCHEMA};

/// Exact checks on low-dimensional Penon weak n-categories and braids.
#[derive(Parser)]
#[command(name = "penonlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario
    Run {
        scenario: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Run every scenario
    RunAll {
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Braid word utilities
    Braid {
        #[command(subcommand)]
        command: BraidCommand,
    },
    /// Typecheck and normalize a term given as JSON (a file or a literal)
    Normalize {
        term: String,
        /// presentation file; defaults to the doubly degenerate one
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "reflexive")]
        mode: Mode,
    },
    /// Print the JSON schema of reports
    Schema,
}

#[derive(Subcommand)]
enum BraidCommand {
    /// Decide whether two words are the same braid (exit 0 if so, 1 if not)
    Eq {
        /// `{"n":3,"word":[1,2,1]}` or the shorthand `3:1,2,1`
        w1: String,
        w2: String,
    },
}

#[derive(Args)]
struct RunOpts {
    /// presentation file (JSON)
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    mode: Option<Mode>,
    /// symmetry candidates gamma^k are tried for |k| <= K
    #[arg(long = "K", visible_alias = "k", default_value_t = braid::DEFAULT_K)]
    k: u32,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// random instances per braided-monoidal identity
    #[arg(long, default_value_t = 200)]
    sample_size: usize,
    /// random braid pairs for the oracle crosscheck
    #[arg(long, default_value_t = 500)]
    braid_pairs: usize,
    /// write the JSON report here
    #[arg(long)]
    json: Option<PathBuf>,
}

fn config(opts: &RunOpts) -> Result<Config, String> {
    let presentation = match &opts.input {
        Some(path) => Some(Presentation::from_json_file(path).map_err(|e| format!("{}: {e}", path.display()))?),
        None => None,
    };
    Ok(Config {
        mode: opts.mode,
        k: opts.k,
        seed: opts.seed,
        sample_size: opts.sample_size,
        braid_pairs: opts.braid_pairs,
        presentation,
        input: opts.input.as_ref().map(|p| p.display().to_string()),
        ..Config::default()
    })
}

fn write_json(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, format!("{text}\n")).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Run { scenario, opts } => {
            let scenario: Scenario = scenario.parse().map_err(|e| format!("{e}"))?;
            let report = verify::run_scenario(scenario, &config(&opts)?);
            print!("{}", report.render());
            if let Some(path) = &opts.json {
                write_json(path, &report.to_json())?;
            }
            Ok(report.exit_code() as u8)
        }
        Command::RunAll { opts } => {
            let report = verify::run_all(&config(&opts)?);
            print!("{}", report.render());
            if let Some(path) = &opts.json {
                write_json(path, &report.to_json())?;
            }
            Ok(report.exit_code as u8)
        }
        Command::Braid { command: BraidCommand::Eq { w1, w2 } } => {
            let a = BraidWord::parse(&w1).map_err(|e| e.to_string())?;
            let b = BraidWord::parse(&w2).map_err(|e| e.to_string())?;
            for w in [&a, &b] {
                if w.strands() > CLI_MAX_STRANDS {
                    return Err(format!("{} strands exceeds the cap of {CLI_MAX_STRANDS}", w.strands()));
                }
            }
            match braid::distinguish(&a, &b).map_err(|e| e.to_string())? {
                None => {
                    println!("equal: {a} = {b}");
                    Ok(0)
                }
                Some(d) => {
                    println!("different: {a} != {b} (told apart by {d})");
                    Ok(1)
                }
            }
        }
        Command::Normalize { term, input, mode } => {
            let text = if Path::new(&term).exists() {
                fs::read_to_string(&term).map_err(|e| format!("{term}: {e}"))?
            } else {
                term
            };
            let t: PenonTerm = serde_json::from_str(&text).map_err(|e| format!("bad term: {e}"))?;
            let pres = match input {
                Some(path) => Presentation::from_json_file(&path).map_err(|e| format!("{}: {e}", path.display()))?,
                None => doubly_degenerate(mode),
            };
            let p = FreePenonStructure::new(&pres).map_err(|e| e.to_string())?;
            let typing = match p.typecheck(&t) {
                Ok(ty) => ty,
                Err(e) => {
                    println!("ill-typed: {e}");
                    return Ok(1);
                }
            };
            let out = serde_json::json!({
                "term": p.normalize(&t),
                "display": p.normalize(&t).to_string(),
                "dim": typing.dim,
                "src": typing.src,
                "tgt": typing.tgt,
                "phi": p.phi(&t).map_err(|e| e.to_string())?.canonical_value(),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            Ok(0)
        }
        Command::Schema => {
            print!("{REPORT_SCHEMA}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("penonlab: {e}");
            ExitCode::from(2)
        }
    }
}
