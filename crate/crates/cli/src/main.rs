use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pm_cli::examples::{example, EXAMPLES};
use pm_cli::verify::CASES;
use pm_cli::{compare_analytic, load_instance, run_traced, verify_builtin, CliError};
use pm_core::methods::NeighborSearch;

#[derive(Parser)]
#[command(name = "pm", version, about = "Run, trace and verify particle methods")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an instance to its stopping condition and write a JSON Lines trace.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Write every N-th state plus the final one (0: final state only).
        #[arg(long)]
        trace_every: Option<usize>,
        /// Fail if the stopping condition does not hold after N transitions.
        #[arg(long)]
        max_steps: Option<usize>,
        /// Find cut-off neighborhoods with a cell list instead of a full scan.
        #[arg(long)]
        cell_list: bool,
    },
    /// Run built-in verification cases (all when no case is given).
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CASES))]
        case: Option<String>,
    },
    /// Compare a PSE run with the exact solution at a given time.
    Compare {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        at_time: f64,
        #[arg(long)]
        cell_list: bool,
    },
    /// Print the configuration of a reference instance.
    Gen {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(EXAMPLES))]
        example: String,
    },
}

fn search(cell_list: bool) -> NeighborSearch {
    if cell_list {
        NeighborSearch::CellList
    } else {
        NeighborSearch::Scan
    }
}

fn read_config(path: &PathBuf) -> Result<pm_cli::Loaded, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    load_instance(&text)
}

fn execute(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Run { config, out, trace_every, max_steps, cell_list } => {
            let mut loaded = read_config(&config)?;
            if let Some(n) = trace_every {
                loaded.trace_every = n;
            }
            if max_steps.is_some() {
                loaded.max_steps = max_steps;
            }
            let file = File::create(&out)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", out.display())))?;
            let mut sink = BufWriter::new(file);
            let summary = run_traced(&loaded, search(cell_list), &mut sink)?;
            eprintln!(
                "{}: {} transitions, {} records written to {}",
                loaded.instance.method_name(),
                summary.transitions,
                summary.records,
                out.display()
            );
            Ok(true)
        }
        Command::Verify { case } => {
            let cases: Vec<&str> = match &case {
                Some(c) => vec![c.as_str()],
                None => CASES.to_vec(),
            };
            let mut all = true;
            for c in cases {
                let report = verify_builtin(c)?;
                print!("{report}");
                all &= report.passed();
            }
            Ok(all)
        }
        Command::Compare { config, at_time, cell_list } => {
            let loaded = read_config(&config)?;
            let r = compare_analytic(&loaded, at_time, search(cell_list))?;
            println!("t = {}", r.t);
            println!("transitions = {}", r.transitions);
            println!("linf = {:e}", r.linf);
            println!("rms = {:e}", r.rms);
            println!("mass_drift = {:e}", r.mass_drift);
            Ok(true)
        }
        Command::Gen { example: name } => {
            let text = example(&name)?.to_json();
            io::stdout().write_all(text.as_bytes())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
