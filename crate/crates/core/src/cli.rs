//! Command-line front end: `list`, `run`, `suite` and `flow`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};
use serde_json::Value;
use thiserror::Error;

use crate::experiments::{self, ExperimentError, Scenario, ScenarioRun, SelfCheck};
use crate::geometry::SurfaceSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_SELF_CHECK: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "curveflow", version, about = "Curve-shortening flow of closed curves on surfaces")]
pub struct RunSpec {
    /// Also print the detected plateaus of each run.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in surfaces and scenarios.
    List,
    /// Run one built-in scenario.
    Run {
        #[arg(long)]
        scenario: String,
        #[command(flatten)]
        out: OutDir,
        /// Override a scenario field, e.g. `N=128` or `generator.amplitude=0.2`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Run every built-in scenario.
    Suite {
        #[command(flatten)]
        out: OutDir,
        /// Scenarios to run concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run an ad-hoc scenario from a JSON config document.
    Flow {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: OutDir,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
}

#[derive(Debug, clap::Args)]
pub struct OutDir {
    /// Output directory; one subdirectory per scenario.
    #[arg(long = "out", env = "CURVEFLOW_OUT", default_value = "out")]
    pub dir: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid override {0:?}: expected KEY=VALUE")]
    MalformedOverride(String),
    #[error("unknown override key {0:?}")]
    UnknownKey(String),
    #[error("override produced an invalid scenario: {0}")]
    InvalidOverride(serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config document {path}: {source}")]
    Config {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
}

/// Parses `argv` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn parse_and_dispatch(argv: &[String]) -> i32 {
    let spec = match RunSpec::try_parse_from(argv) {
        Ok(spec) => spec,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&spec) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(spec: &RunSpec) -> Result<i32, CliError> {
    match &spec.command {
        Command::List => {
            print!("{}", listing());
            Ok(EXIT_OK)
        }
        Command::Run { scenario, out, overrides } => {
            let scenario = apply_overrides(&experiments::find_scenario(scenario)?, overrides)?;
            let run = run_one(&scenario, &out.dir, spec.verbose)?;
            Ok(exit_code(&[run.manifest.self_check]))
        }
        Command::Suite { out, jobs } => run_suite(&out.dir, *jobs, spec.verbose),
        Command::Flow { config, out, overrides } => {
            let path = config.display().to_string();
            let text =
                std::fs::read_to_string(config).map_err(|source| CliError::Read { path: path.clone(), source })?;
            let scenario: Scenario = serde_json::from_str(&text).map_err(|source| CliError::Config { path, source })?;
            let scenario = apply_overrides(&scenario, overrides)?;
            let run = run_one(&scenario, &out.dir, spec.verbose)?;
            Ok(exit_code(&[run.manifest.self_check]))
        }
    }
}

fn exit_code(checks: &[SelfCheck]) -> i32 {
    if checks.contains(&SelfCheck::Fail) {
        EXIT_SELF_CHECK
    } else {
        EXIT_OK
    }
}

fn listing() -> String {
    let mut text = String::from("surfaces:\n");
    for s in SurfaceSpec::catalog() {
        let params = serde_json::to_string(&s).unwrap_or_default();
        let _ = writeln!(text, "  {:<14} {params}", s.tag());
    }
    text.push_str("scenarios:\n");
    for s in experiments::builtin_scenarios() {
        let _ = writeln!(text, "  {:<28} {}", s.name, s.description);
    }
    text
}

fn summary(run: &ScenarioRun, dir: &Path, verbose: u8) -> String {
    let m = &run.manifest;
    let mut text = format!(
        "{:<28} {:<20} steps={:<8} length={:.6} self_check={} -> {}",
        m.scenario,
        m.classification,
        run.result.state.step,
        m.final_length,
        serde_json::to_value(m.self_check).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
        dir.display()
    );
    if verbose > 0 {
        for p in &run.plateaus {
            let _ = write!(
                text,
                "\n  plateau steps {}..{} mean_length={:.6} min_int_k2={:.3e}",
                p.start_step, p.end_step, p.mean_length, p.min_int_k2
            );
        }
    }
    text
}

fn run_one(scenario: &Scenario, out: &Path, verbose: u8) -> Result<ScenarioRun, CliError> {
    let dir = out.join(&scenario.name);
    let run = experiments::run_scenario(scenario, &dir)?;
    println!("{}", summary(&run, &dir, verbose));
    Ok(run)
}

fn run_suite(out: &Path, jobs: usize, verbose: u8) -> Result<i32, CliError> {
    let scenarios = experiments::builtin_scenarios();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Result<SelfCheck, String>)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, scenarios.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(scenario) = scenarios.get(i) else { break };
                let dir = out.join(&scenario.name);
                let outcome = match experiments::run_scenario(scenario, &dir) {
                    Ok(run) => {
                        println!("{}", summary(&run, &dir, verbose));
                        Ok(run.manifest.self_check)
                    }
                    Err(e) => {
                        eprintln!("error: {}: {e}", scenario.name);
                        Err(e.to_string())
                    }
                };
                results.lock().unwrap_or_else(|p| p.into_inner()).push((i, outcome));
            });
        }
    });
    let results = results.into_inner().unwrap_or_else(|p| p.into_inner());
    let failed = results.iter().filter(|(_, r)| r.is_err()).count();
    if failed > 0 {
        eprintln!("{failed} of {} scenarios failed", scenarios.len());
        return Ok(EXIT_ERROR);
    }
    let checks: Vec<SelfCheck> = results.into_iter().filter_map(|(_, r)| r.ok()).collect();
    Ok(exit_code(&checks))
}

/// Applies `KEY=VALUE` overrides to a scenario through its JSON form.
///
/// Keys are dotted paths into the scenario document; a bare key such as `N`
/// addresses `config.N`. Values are parsed as JSON, falling back to a string.
pub fn apply_overrides(scenario: &Scenario, overrides: &[String]) -> Result<Scenario, CliError> {
    if overrides.is_empty() {
        return Ok(scenario.clone());
    }
    let mut doc = serde_json::to_value(scenario).map_err(CliError::InvalidOverride)?;
    for item in overrides {
        let (key, raw) = item.split_once('=').ok_or_else(|| CliError::MalformedOverride(item.clone()))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(CliError::MalformedOverride(item.clone()));
        }
        let path = if key.contains('.') { key.to_string() } else { format!("config.{key}") };
        let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
        let mut slot = &mut doc;
        for part in path.split('.') {
            slot = slot
                .as_object_mut()
                .and_then(|obj| obj.get_mut(part))
                .ok_or_else(|| CliError::UnknownKey(key.to_string()))?;
        }
        *slot = value;
    }
    serde_json::from_value(doc).map_err(CliError::InvalidOverride)
}
