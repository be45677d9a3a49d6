use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use vhiggs::moment::FlowConfig;
use vhiggs_cli::{batch_files, read_input, run, run_batch, Command, Options, Outcome, EXIT_INVALID, TOOL, VERSION};

/// Exact computations with rank-2 twisted Higgs bundles on the projective line
#[derive(Parser, Debug)]
#[command(name = "vhiggs", version, about)]
struct Args {
    command: Command,
    /// JSON input: a path, `-` for stdin, or the document itself
    #[arg(required_unless_present = "batch", conflicts_with = "batch")]
    input: Option<String>,
    /// Reject inputs with validation findings instead of reporting them
    #[arg(long)]
    strict: bool,
    /// Power K of the factor for local unit expansions (default n + 1)
    #[arg(long, value_name = "K")]
    truncation: Option<u32>,
    /// Genus of the base curve used in genus formulas
    #[arg(long, default_value_t = 0)]
    genus: u64,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Run on every *.json file in a directory
    #[arg(long, value_name = "DIR")]
    batch: Option<PathBuf>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    divergence_cond: Option<f64>,
}

impl Args {
    fn options(&self) -> Options {
        let d = FlowConfig::default();
        Options {
            strict: self.strict,
            truncation: self.truncation,
            genus: self.genus,
            flow: FlowConfig {
                step: self.step.unwrap_or(d.step),
                tol: self.tol.unwrap_or(d.tol),
                max_iters: self.max_iters.unwrap_or(d.max_iters),
                divergence_cond: self.divergence_cond.unwrap_or(d.divergence_cond),
            },
        }
    }
}

fn failure(command: Command, msg: String) -> Outcome {
    Outcome {
        code: EXIT_INVALID,
        report: json!({ "tool": TOOL, "version": VERSION, "command": command.name(), "error": msg }),
    }
}

fn main() -> ExitCode {
    // Usage errors are invalid input (exit 1); exit 2 is reserved for internal limits.
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID as u8 } else { 0 });
        }
    };
    let opts = args.options();
    let outcome = match (&args.batch, &args.input) {
        (Some(dir), _) => match batch_files(dir) {
            Ok(files) => run_batch(args.command, &files, &opts),
            Err(e) => failure(args.command, format!("cannot read {}: {e}", dir.display())),
        },
        (None, Some(input)) => match read_input(input) {
            Ok(bytes) => run(args.command, &bytes, &opts),
            Err(e) => failure(args.command, format!("cannot read {input}: {e}")),
        },
        (None, None) => unreachable!("clap requires an input or --batch"),
    };
    let text = outcome.render();
    match &args.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("vhiggs: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INVALID as u8);
            }
        }
        None => {
            // A closed pipe (e.g. `| head`) is not an error of the job.
            let mut out = io::stdout().lock();
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("vhiggs: cannot write to stdout: {e}");
                    return ExitCode::from(EXIT_INVALID as u8);
                }
            }
        }
    }
    ExitCode::from(outcome.code as u8)
}
