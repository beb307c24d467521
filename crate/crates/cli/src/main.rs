use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use zipcalc_cli::{run, Command, Options, DEFAULT_MAX_ORDER};

/// Refinement, equivalence classes and representative forests of zip data
/// over finite groups.
#[derive(Debug, Parser)]
#[command(name = "zipcalc", version)]
struct Args {
    /// TOML file describing the zip datum (not needed for `zoo`).
    #[arg(long)]
    config: Option<PathBuf>,

    /// What to compute; defaults to `output.command` from the config.
    #[arg(long, value_enum)]
    command: Option<Command>,

    /// Directory for report files; without it the JSON goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Twist the datum by this element of G before running.
    #[arg(long)]
    twist: Option<String>,

    /// Refuse groups with more elements than this.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options {
        config: args.config,
        command: args.command,
        out: args.out,
        twist: args.twist,
        max_order: args.max_order,
    };
    match run(&opts) {
        Ok(output) => {
            if output.written.is_empty() {
                print!("{}", output.json);
            } else {
                for path in &output.written {
                    println!("wrote {}", path.display());
                }
            }
            ExitCode::from(output.exit_code as u8)
        }
        Err(e) => {
            eprintln!("zipcalc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
