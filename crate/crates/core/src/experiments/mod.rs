//! Scenario catalog, plateau detection and data export.

mod catalog;
mod generators;
mod plateau;

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::CurveError;
use crate::flow::{self, Classification, FlowConfig, FlowFailure, FlowResult};
use crate::geometry::{GeometryError, SurfaceSpec};
use crate::io;

pub use catalog::{builtin_scenarios, find_scenario};
pub use generators::Generator;
pub use plateau::{detect_plateaus, PlateauEvent, HYSTERESIS};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const METRICS_FILE: &str = "metrics.jsonl";
pub const SNAPSHOTS_FILE: &str = "snapshots.csv";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("generator {0} produced a self-intersecting curve; reduce its amplitude")]
    GeneratorSelfIntersects(String),
    #[error("generator {generator} cannot build a curve on {surface}")]
    GeneratorSurfaceMismatch { generator: String, surface: String },
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Flow(#[from] Box<FlowFailure<f64>>),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Plateau detector settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlateauParams {
    pub eps_k2: f64,
    pub min_duration: usize,
}

impl Default for PlateauParams {
    fn default() -> Self {
        Self { eps_k2: 1e-4, min_duration: 20 }
    }
}

/// A surface, an initial curve and flow settings. Also the config document
/// format of `curveflow flow --config`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub surface: SurfaceSpec,
    pub generator: Generator,
    #[serde(default)]
    pub config: FlowConfig<f64>,
    #[serde(default)]
    pub plateaus: PlateauParams,
    /// Self-check: the classification this scenario should end in.
    #[serde(default)]
    pub expected: Option<Classification>,
}

impl Scenario {
    pub fn build_initial(&self) -> Result<crate::Curve64, ExperimentError> {
        let surface = self.surface.build::<f64>()?;
        self.generator.build(&surface, self.config.vertices)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelfCheck {
    Pass,
    Fail,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestPlateau {
    pub start: usize,
    pub end: usize,
    pub mean_length: f64,
}

/// `manifest.json` of a scenario output directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub scenario: String,
    pub surface: SurfaceSpec,
    pub generator: Generator,
    pub config: FlowConfig<f64>,
    pub classification: Classification,
    pub final_length: f64,
    pub plateaus: Vec<ManifestPlateau>,
    pub self_check: SelfCheck,
}

#[derive(Debug)]
pub struct ScenarioRun {
    pub result: FlowResult<f64>,
    pub manifest: Manifest,
    pub plateaus: Vec<PlateauEvent<f64>>,
}

/// Flows a scenario without touching the filesystem.
pub fn simulate(scenario: &Scenario) -> Result<ScenarioRun, ExperimentError> {
    let initial = scenario.build_initial()?;
    let result = flow::run(initial, &scenario.config).map_err(Box::new)?;
    Ok(summarize(scenario, result))
}

fn summarize(scenario: &Scenario, result: FlowResult<f64>) -> ScenarioRun {
    let plateaus = detect_plateaus(&result.trace, scenario.plateaus.eps_k2, scenario.plateaus.min_duration);
    let self_check = match scenario.expected {
        None => SelfCheck::None,
        Some(c) if c == result.classification => SelfCheck::Pass,
        Some(_) => SelfCheck::Fail,
    };
    let manifest = Manifest {
        scenario: scenario.name.clone(),
        surface: scenario.surface.clone(),
        generator: scenario.generator.clone(),
        config: scenario.config.clone(),
        classification: result.classification,
        final_length: result.state.length(),
        plateaus: plateaus
            .iter()
            .map(|p| ManifestPlateau { start: p.start_step, end: p.end_step, mean_length: p.mean_length })
            .collect(),
        self_check,
    };
    ScenarioRun { result, manifest, plateaus }
}

fn create(path: &Path) -> Result<BufWriter<File>, ExperimentError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| ExperimentError::Io { path: path.display().to_string(), source })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Io { path: path.display().to_string(), source }
}

fn write_trace(dir: &Path, trace: &crate::FlowTrace64) -> Result<(), ExperimentError> {
    let metrics = dir.join(METRICS_FILE);
    io::write_metrics(create(&metrics)?, trace).map_err(io_err(&metrics))?;
    let snapshots = dir.join(SNAPSHOTS_FILE);
    io::write_snapshots(create(&snapshots)?, trace).map_err(io_err(&snapshots))?;
    Ok(())
}

/// Runs a scenario and writes `metrics.jsonl`, `snapshots.csv` and
/// `manifest.json` into `output_dir`. A failed flow still leaves its partial
/// metrics and snapshots behind.
pub fn run_scenario(scenario: &Scenario, output_dir: &Path) -> Result<ScenarioRun, ExperimentError> {
    fs::create_dir_all(output_dir).map_err(io_err(output_dir))?;
    let initial = scenario.build_initial()?;
    let result = match flow::run(initial, &scenario.config) {
        Ok(r) => r,
        Err(failure) => {
            write_trace(output_dir, &failure.trace)?;
            return Err(Box::new(failure).into());
        }
    };
    let run = summarize(scenario, result);
    write_trace(output_dir, &run.result.trace)?;
    let path = output_dir.join(MANIFEST_FILE);
    let mut text = serde_json::to_string_pretty(&run.manifest)?;
    text.push('\n');
    fs::write(&path, text).map_err(io_err(&path))?;
    Ok(run)
}
