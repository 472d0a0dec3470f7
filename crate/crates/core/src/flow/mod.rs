//! Explicit curve-shortening stepper, run loop and terminal classification.
//!
//! Each step moves vertex `p_i` to `project(p_i + dt K_i)` with the discrete
//! geodesic curvature vector `K_i`, i.e. an explicit Euler step of
//! `∂u/∂t = k N`, which is the same flow as `∂_t v = −∇L(v)`.

mod trace;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, CurveGeometry, DiscreteCurve};
use crate::geometry::{GeometryError, SurfaceKind};
use crate::scalar::Real;

pub use trace::{energy_balance_residual, median, FlowRecord, FlowTrace, Snapshot};

/// Relative slack allowed on the per-step length decrease.
pub const MONOTONICITY_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    #[default]
    Forward,
    /// Negated time step. Ill-posed; used to show how the flow blows up.
    Backward,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, bound(serialize = "T: Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct FlowConfig<T> {
    /// CFL factor in `(0, 1]`.
    pub dt_safety: T,
    pub resample_every: usize,
    /// Vertex count the curve is resampled to.
    #[serde(rename = "N")]
    pub vertices: usize,
    pub max_steps: usize,
    /// Threshold on `max_i ‖K_i‖` for convergence to a geodesic.
    pub tol_geodesic: T,
    /// Length below which the curve counts as shrunk to a point.
    pub tol_point: T,
    pub direction: Direction,
    pub snapshot_every: usize,
}

impl<T: Real> Default for FlowConfig<T> {
    fn default() -> Self {
        Self {
            dt_safety: T::lit(0.2),
            resample_every: 10,
            vertices: 256,
            max_steps: 200_000,
            tol_geodesic: T::lit(1e-3),
            tol_point: T::lit(1e-2),
            direction: Direction::Forward,
            snapshot_every: 1000,
        }
    }
}

impl<T: Real> FlowConfig<T> {
    pub fn validate(&self) -> Result<(), FlowError> {
        let bad = |msg: String| Err(FlowError::InvalidConfig(msg));
        if !(self.dt_safety > T::zero() && self.dt_safety <= T::one()) {
            return bad(format!("dt_safety must lie in (0, 1], got {}", self.dt_safety));
        }
        if !(self.tol_geodesic > T::zero() && self.tol_point > T::zero()) {
            return bad("tolerances must be positive".into());
        }
        if self.max_steps == 0 || self.resample_every == 0 || self.snapshot_every == 0 {
            return bad("max_steps, resample_every and snapshot_every must be at least 1".into());
        }
        if self.vertices < crate::curve::MIN_VERTICES {
            return bad(format!("N must be at least {}, got {}", crate::curve::MIN_VERTICES, self.vertices));
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("invalid flow configuration: {0}")]
    InvalidConfig(String),
    #[error("curve has a zero-length vertex spacing")]
    ZeroEdge,
    #[error("length increased at step {step}: {before} -> {after}; step too large or resolution too low")]
    MonotonicityViolated { step: usize, before: f64, after: f64 },
    #[error("initial curve is not embedded")]
    InitialNotEmbedded,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A curve at flow time `time`, with its discrete geometry.
#[derive(Clone, Debug)]
pub struct FlowState<T: Real> {
    pub curve: DiscreteCurve<T>,
    /// Flow parameter; decreases in backward mode.
    pub time: T,
    pub step: usize,
    pub geometry: CurveGeometry<T>,
    /// The curve was resampled at the end of the step that produced it.
    pub resampled: bool,
}

impl<T: Real> FlowState<T> {
    pub fn new(curve: DiscreteCurve<T>) -> Result<Self, FlowError> {
        let geometry = curve.geometry()?;
        Ok(Self { curve, time: T::zero(), step: 0, geometry, resampled: false })
    }

    pub fn length(&self) -> T {
        self.geometry.length
    }

    pub fn max_k(&self) -> T {
        self.geometry.max_k
    }
}

/// Explicit parabolic stability bound `dt = dt_safety · (min_i h_i)² / 2`.
pub fn adaptive_dt<T: Real>(state: &FlowState<T>, config: &FlowConfig<T>) -> Result<T, FlowError> {
    min_spacing_dt(state.geometry.min_spacing(), config.dt_safety)
}

fn min_spacing_dt<T: Real>(h: T, safety: T) -> Result<T, FlowError> {
    if h <= T::zero() || h.is_nan() {
        return Err(FlowError::ZeroEdge);
    }
    Ok(safety * h * h * T::lit(0.5))
}

/// Advances the flow by one explicit step. Forward runs are resampled every
/// `resample_every` steps and a length increase beyond [`MONOTONICITY_SLACK`]
/// is reported as [`FlowError::MonotonicityViolated`]. Backward runs are never
/// resampled: a backward step on a polygon cannot shorten it, while resampling
/// the resulting zigzag would.
pub fn step<T: Real>(state: &FlowState<T>, config: &FlowConfig<T>) -> Result<FlowState<T>, FlowError> {
    let dt = match config.direction {
        Direction::Forward => adaptive_dt(state, config)?,
        Direction::Backward => -adaptive_dt(state, config)?,
    };
    let surface = state.curve.surface();
    let moved = state
        .curve
        .vertices()
        .iter()
        .zip(&state.geometry.curvature)
        .map(|(p, k)| surface.project(*p + *k * dt))
        .collect::<Result<Vec<_>, _>>()?;
    let mut curve = DiscreteCurve::new(surface.clone(), moved)?;
    let step = state.step + 1;
    let resampled = config.direction == Direction::Forward && step.is_multiple_of(config.resample_every);
    if resampled {
        curve = curve.resample_uniform(config.vertices)?;
    }
    let geometry = curve.geometry()?;
    if config.direction == Direction::Forward {
        let before = state.geometry.length;
        let after = geometry.length;
        if after > before + before * T::lit(MONOTONICITY_SLACK) {
            return Err(FlowError::MonotonicityViolated { step, before: before.as_f64(), after: after.as_f64() });
        }
    }
    Ok(FlowState { curve, time: state.time + dt, step, geometry, resampled })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    ConvergedToGeodesic,
    ShrunkToPoint,
    EmbeddednessLost,
    MaxStepsReached,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::ConvergedToGeodesic => "ConvergedToGeodesic",
            Classification::ShrunkToPoint => "ShrunkToPoint",
            Classification::EmbeddednessLost => "EmbeddednessLost",
            Classification::MaxStepsReached => "MaxStepsReached",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct FlowResult<T: Real> {
    pub classification: Classification,
    pub state: FlowState<T>,
    pub trace: FlowTrace<T>,
    /// First step at which the embeddedness monitor fired without aborting
    /// (backward mode only reports).
    pub embeddedness_lost_at: Option<usize>,
}

/// A run that stopped on an error, with everything recorded up to it.
#[derive(Debug, Error)]
#[error("flow failed after {} records: {error}", trace.records.len())]
pub struct FlowFailure<T: Real> {
    #[source]
    pub error: FlowError,
    pub trace: FlowTrace<T>,
}

/// Terminal test with precedence ShrunkToPoint > ConvergedToGeodesic > EmbeddednessLost.
fn classify<T: Real>(state: &FlowState<T>, config: &FlowConfig<T>, lost: bool) -> Option<Classification> {
    if state.geometry.length <= config.tol_point {
        Some(Classification::ShrunkToPoint)
    } else if state.geometry.max_k <= config.tol_geodesic {
        Some(Classification::ConvergedToGeodesic)
    } else if lost {
        Some(Classification::EmbeddednessLost)
    } else {
        None
    }
}

/// Runs the flow until it shrinks to a point, reaches a geodesic, loses
/// embeddedness or hits `max_steps`.
///
/// Embeddedness is checked every `resample_every` steps. Plane curves that start
/// non-embedded are flowed without the monitor; on other surfaces a
/// non-embedded start is an error in forward mode.
pub fn run<T: Real>(initial: DiscreteCurve<T>, config: &FlowConfig<T>) -> Result<FlowResult<T>, FlowFailure<T>> {
    let mut trace = FlowTrace::new();
    let fail = |error: FlowError, trace: FlowTrace<T>| FlowFailure { error, trace };
    if let Err(e) = config.validate() {
        return Err(fail(e, trace));
    }
    let forward = config.direction == Direction::Forward;
    let embedded = !initial.self_intersects();
    if !embedded && forward && initial.surface().kind() != SurfaceKind::Plane {
        return Err(fail(FlowError::InitialNotEmbedded, trace));
    }
    let initial = if initial.len() == config.vertices {
        initial
    } else {
        match initial.resample_uniform(config.vertices) {
            Ok(c) => c,
            Err(e) => return Err(fail(e.into(), trace)),
        }
    };
    let mut state = match FlowState::new(initial) {
        Ok(s) => s,
        Err(e) => return Err(fail(e, trace)),
    };
    trace.record(&state, T::zero());
    trace.snapshot(&state);
    let mut lost_at = None;
    let mut lost = false;
    loop {
        let verdict = classify(&state, config, lost && forward)
            .or_else(|| (state.step >= config.max_steps).then_some(Classification::MaxStepsReached));
        if let Some(classification) = verdict {
            trace.snapshot(&state);
            return Ok(FlowResult { classification, state, trace, embeddedness_lost_at: lost_at });
        }
        let next = match step(&state, config) {
            Ok(s) => s,
            Err(e) => {
                trace.snapshot(&state);
                return Err(fail(e, trace));
            }
        };
        trace.record(&next, next.time - state.time);
        if embedded && next.step.is_multiple_of(config.resample_every) && next.curve.self_intersects() {
            lost = true;
            lost_at.get_or_insert(next.step);
        }
        if next.step.is_multiple_of(config.snapshot_every) {
            trace.snapshot(&next);
        }
        state = next;
    }
}

#[cfg(test)]
mod tests;
