//! On-disk formats: per-step metrics as JSON lines and curve snapshots as CSV.
//!
//! Metrics, one object per line:
//! `{"step":0,"time":0.0,"dt":0.0,"length":6.28,"max_k":1.0,"int_k2":6.28,"resampled":false}`.
//!
//! Snapshots: header `snapshot_index,time,vertex_index,x,y,z`, one row per
//! vertex, LF line endings; `z` is `0` on the plane and the flat torus.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::FlowTrace;
use crate::scalar::Real;

pub const SNAPSHOT_HEADER: &str = "snapshot_index,time,vertex_index,x,y,z";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricRecord {
    pub step: usize,
    pub time: f64,
    pub dt: f64,
    pub length: f64,
    pub max_k: f64,
    pub int_k2: f64,
    pub resampled: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SnapshotRow {
    pub snapshot_index: usize,
    pub time: f64,
    pub vertex_index: usize,
    pub position: [f64; 3],
}

pub fn write_metrics<T: Real, W: Write>(mut out: W, trace: &FlowTrace<T>) -> io::Result<()> {
    for r in &trace.records {
        let row = MetricRecord {
            step: r.step,
            time: r.time.as_f64(),
            dt: r.dt.as_f64(),
            length: r.length.as_f64(),
            max_k: r.max_k.as_f64(),
            int_k2: r.int_k2.as_f64(),
            resampled: r.resampled,
        };
        serde_json::to_writer(&mut out, &row)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn read_metrics<R: BufRead>(input: R) -> Result<Vec<MetricRecord>, FormatError> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let row =
            serde_json::from_str(&line).map_err(|e| FormatError::Malformed { line: i + 1, message: e.to_string() })?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_snapshots<T: Real, W: Write>(mut out: W, trace: &FlowTrace<T>) -> io::Result<()> {
    writeln!(out, "{SNAPSHOT_HEADER}")?;
    for s in &trace.snapshots {
        let time = s.time.as_f64();
        for (i, v) in s.vertices.iter().enumerate() {
            let [x, y, z] = v.to_f64_array();
            writeln!(out, "{},{:?},{},{:?},{:?},{:?}", s.index, time, i, x, y, z)?;
        }
    }
    out.flush()
}

pub fn read_snapshots<R: BufRead>(input: R) -> Result<Vec<SnapshotRow>, FormatError> {
    let mut lines = input.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header != SNAPSHOT_HEADER {
        return Err(FormatError::Malformed {
            line: 1,
            message: format!("expected header {SNAPSHOT_HEADER:?}, got {header:?}"),
        });
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let lineno = i + 2;
        let bad = |message: String| FormatError::Malformed { line: lineno, message };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(bad(format!("expected 6 fields, got {}", fields.len())));
        }
        let float = |s: &str| s.parse::<f64>().map_err(|e| bad(format!("{s:?}: {e}")));
        let int = |s: &str| s.parse::<usize>().map_err(|e| bad(format!("{s:?}: {e}")));
        rows.push(SnapshotRow {
            snapshot_index: int(fields[0])?,
            time: float(fields[1])?,
            vertex_index: int(fields[2])?,
            position: [float(fields[3])?, float(fields[4])?, float(fields[5])?],
        });
    }
    Ok(rows)
}
