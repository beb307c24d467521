use std::path::{Path, PathBuf};

use clap::ValueEnum;
use zipcalc::catalog::build_small_zoo;
use zipcalc::equivalence::{fine_orbits, zip_classes};
use zipcalc::forest::build_forest;
use zipcalc::suite::run_suite;

use crate::config::{load_datum, read_config, ConfigFile};
use crate::error::{CliError, EXIT_CHECK_FAILED, EXIT_OK};
use crate::report::{self, Report, ZooEntryReport, ZooReport, SCHEMA_VERSION};

pub const DEFAULT_MAX_ORDER: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Refine,
    Infinity,
    Orbits,
    Classes,
    Forest,
    Verify,
    Zoo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Refine => "refine",
            Command::Infinity => "infinity",
            Command::Orbits => "orbits",
            Command::Classes => "classes",
            Command::Forest => "forest",
            Command::Verify => "verify",
            Command::Zoo => "zoo",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub config: Option<PathBuf>,
    pub command: Option<Command>,
    pub out: Option<PathBuf>,
    pub twist: Option<String>,
    pub max_order: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            config: None,
            command: None,
            out: None,
            twist: None,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// What a run produced: the documents, where they went, and the exit code.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub exit_code: i32,
    pub json: String,
    pub dot: Option<String>,
    pub written: Vec<PathBuf>,
}

pub fn run(opts: &Options) -> Result<RunOutput, CliError> {
    let loaded_config = match &opts.config {
        Some(path) => Some((path.clone(), read_config(path)?)),
        None => None,
    };
    let command = resolve_command(opts, loaded_config.as_ref())?;
    let out_dir = resolve_out_dir(opts, loaded_config.as_ref());

    let (json, dot, passed) = if command == Command::Zoo {
        zoo_report()
    } else {
        let (path, config) = loaded_config.as_ref().ok_or_else(|| CliError::Config {
            location: "--config".into(),
            message: format!("`{}` needs a config file", command.name()),
        })?;
        let loaded = load_datum(path, config, opts.twist.as_deref(), opts.max_order)?;
        let z = &loaded.datum;
        let doc = |body| document(command, &loaded, body);
        match command {
            Command::Refine => (
                doc(Body::Refine(report::refine_body(&z.refine_to_stationary()))),
                None,
                true,
            ),
            Command::Infinity => {
                let trace = z.refine_to_stationary();
                (doc(Body::Infinity(report::infinity_body(z, &trace))), None, true)
            }
            Command::Orbits => (doc(Body::Classes(report::classes_body(&fine_orbits(z)?))), None, true),
            Command::Classes => (doc(Body::Classes(report::classes_body(&zip_classes(z)?))), None, true),
            Command::Forest => {
                let f = build_forest(z)?;
                (doc(Body::Forest(report::forest_body(&f))), Some(f.to_dot()), true)
            }
            Command::Verify => {
                let suite = run_suite(z);
                (doc(Body::Verify(report::verify_body(&suite))), None, suite.passed())
            }
            Command::Zoo => unreachable!("handled above"),
        }
    };

    let mut written = Vec::new();
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(&dir).map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))?;
        let json_path = dir.join(format!("{}.json", command.name()));
        write(&json_path, &json)?;
        written.push(json_path);
        if let Some(dot) = &dot {
            let dot_path = dir.join("forest.dot");
            write(&dot_path, dot)?;
            written.push(dot_path);
        }
    }
    Ok(RunOutput {
        exit_code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
        json,
        dot,
        written,
    })
}

#[derive(serde::Serialize)]
#[serde(untagged)]
enum Body {
    Refine(report::RefineBody),
    Infinity(report::InfinityBody),
    Classes(report::ClassesBody),
    Forest(report::ForestBody),
    Verify(report::VerifyBody),
}

fn document(command: Command, loaded: &crate::config::LoadedDatum, body: Body) -> String {
    report::to_json(&Report {
        schema_version: SCHEMA_VERSION,
        command: command.name(),
        datum: report::summarize(loaded),
        body,
    })
}

fn zoo_report() -> (String, Option<String>, bool) {
    let entries: Vec<ZooEntryReport> = build_small_zoo()
        .into_iter()
        .map(|entry| ZooEntryReport {
            name: entry.name,
            datum: report::summarize_datum(&entry.datum, &format!("zoo {}", entry.name), None),
            verify: report::verify_body(&run_suite(&entry.datum)),
        })
        .collect();
    let passed = entries.iter().all(|e| e.verify.passed);
    let doc = ZooReport {
        schema_version: SCHEMA_VERSION,
        command: Command::Zoo.name(),
        passed,
        entries,
    };
    (report::to_json(&doc), None, passed)
}

fn resolve_command(opts: &Options, config: Option<&(PathBuf, ConfigFile)>) -> Result<Command, CliError> {
    if let Some(c) = opts.command {
        return Ok(c);
    }
    let from_file = config.and_then(|(path, c)| Some((path, c.output.as_ref()?.command.as_ref()?)));
    match from_file {
        Some((path, name)) => Command::from_str(name, true)
            .map_err(|_| CliError::config(path, "output.command", format!("unknown command `{name}`"))),
        None => Err(CliError::Config {
            location: "--command".into(),
            message: "no command given on the command line or in the config".into(),
        }),
    }
}

/// `--out` wins; a directory in the config is taken relative to the file.
fn resolve_out_dir(opts: &Options, config: Option<&(PathBuf, ConfigFile)>) -> Option<PathBuf> {
    if let Some(dir) = &opts.out {
        return Some(dir.clone());
    }
    let (path, c) = config?;
    let dir = c.output.as_ref()?.dir.as_ref()?;
    Some(path.parent().unwrap_or(Path::new(".")).join(dir))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}
