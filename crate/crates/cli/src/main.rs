use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use matgrowth_cli::selfcheck::selfcheck;
use matgrowth_cli::{run_file, status_name, Mode, Overrides};

#[derive(Parser)]
#[command(name = "matgrowth", version, about = "Growth polynomials of matroid ranks under operator systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the problem described by a JSON config file.
    Run {
        config: PathBuf,
        /// Initial table box, comma separated; one value applies to every coordinate.
        #[arg(long = "box", value_delimiter = ',')]
        bound: Option<Vec<u32>>,
        #[arg(long)]
        window: Option<u32>,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        /// Write the result document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// RNG seed for the sampled hypothesis checks.
        #[arg(long = "seed-sample")]
        seed_sample: Option<u64>,
    },
    /// Run the built-in golden corpus.
    Selfcheck,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: matgrowth_cli::CliError| e.to_string())
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            config,
            bound,
            window,
            mode,
            out,
            threads,
            seed_sample,
        } => {
            let overrides = Overrides {
                bound,
                window,
                mode,
                threads,
                seed: seed_sample,
                output: out.map(|p| p.display().to_string()),
            };
            let start = Instant::now();
            let outcome = run_file(&config, &overrides);
            if let Some(doc) = &outcome.document {
                let text = doc.to_json();
                match &outcome.output {
                    Some(path) => {
                        if let Err(e) = std::fs::write(path, text) {
                            eprintln!("cannot write {path}: {e}");
                            return ExitCode::from(1);
                        }
                    }
                    None => print!("{text}"),
                }
                eprintln!(
                    "{}: {} in {:.3} s",
                    doc.mode,
                    status_name(doc.status),
                    start.elapsed().as_secs_f64()
                );
            }
            if let Some(m) = &outcome.message {
                eprintln!("{m}");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Command::Selfcheck => {
            let results = selfcheck();
            for r in &results {
                if r.passed {
                    println!("PASS {}", r.name);
                } else {
                    println!("FAIL {}: {}", r.name, r.detail);
                }
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("{} of {} passed", results.len() - failed, results.len());
            ExitCode::from(u8::from(failed > 0))
        }
    }
}
