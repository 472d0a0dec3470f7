use crate::scalar::Real;
use crate::vec3::Vec3;

use super::FlowState;

/// Metrics of one flow state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowRecord<T> {
    pub step: usize,
    pub time: T,
    /// Signed step that produced this state (zero for the initial record).
    pub dt: T,
    pub length: T,
    pub max_k: T,
    pub int_k2: T,
    /// The state was resampled at the end of its step.
    pub resampled: bool,
}

/// Curve vertices at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot<T> {
    pub index: usize,
    pub step: usize,
    pub time: T,
    pub vertices: Vec<Vec3<T>>,
}

/// Time series of a flow run: one record per step plus periodic snapshots.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FlowTrace<T> {
    pub records: Vec<FlowRecord<T>>,
    pub snapshots: Vec<Snapshot<T>>,
}

impl<T: Real> FlowTrace<T> {
    pub fn new() -> Self {
        Self { records: Vec::new(), snapshots: Vec::new() }
    }

    pub(crate) fn record(&mut self, state: &FlowState<T>, dt: T) {
        self.records.push(FlowRecord {
            step: state.step,
            time: state.time,
            dt,
            length: state.geometry.length,
            max_k: state.geometry.max_k,
            int_k2: state.geometry.int_k2,
            resampled: state.resampled,
        });
    }

    pub(crate) fn snapshot(&mut self, state: &FlowState<T>) {
        if self.snapshots.last().is_some_and(|s| s.step == state.step) {
            return;
        }
        self.snapshots.push(Snapshot {
            index: self.snapshots.len(),
            step: state.step,
            time: state.time,
            vertices: state.curve.vertices().to_vec(),
        });
    }

    pub fn lengths(&self) -> impl Iterator<Item = T> + '_ {
        self.records.iter().map(|r| r.length)
    }

    pub fn last(&self) -> Option<&FlowRecord<T>> {
        self.records.last()
    }

    /// Largest relative length increase between consecutive records
    /// (`≤ 0` for a monotone run).
    pub fn worst_length_increase(&self) -> T {
        self.records.windows(2).map(|w| (w[1].length - w[0].length) / w[0].length).fold(T::neg_infinity(), T::max)
    }
}

/// Relative mismatch of the energy identity `dL/dt = −∫ k² ds` per record.
///
/// For each interior record `j` returns
/// `|(L_{j+1} − L_{j−1}) / (t_{j+1} − t_{j−1}) + (∫k²)_j| / max((∫k²)_j, 1e−12)`.
/// Records with a resampling event among `j − 1, j, j + 1` are skipped, since
/// resampling changes the length outside the flow. Stationary records, where
/// both the length rate and `∫k²` are below `1e−10`, report zero.
pub fn energy_balance_residual<T: Real>(trace: &FlowTrace<T>) -> Vec<T> {
    let tiny = T::lit(1e-10);
    let floor = T::lit(1e-12);
    trace
        .records
        .windows(3)
        .filter(|w| !w.iter().any(|r| r.resampled))
        .map(|w| {
            let rate = (w[2].length - w[0].length) / (w[2].time - w[0].time);
            let k2 = w[1].int_k2;
            if rate.abs() < tiny && k2 < tiny {
                T::zero()
            } else {
                (rate + k2).abs() / k2.max(floor)
            }
        })
        .collect()
}

/// Median of a slice (mean of the middle pair for even counts).
pub fn median<T: Real>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { (v[m - 1] + v[m]) * T::lit(0.5) })
}
