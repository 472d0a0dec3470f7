//! Plateau detection over flow traces.
//!
//! A plateau is a stretch of steps where `∫k² ds` stays small: the flow is
//! passing close to a critical point of length. A flow that visits several
//! critical points on its way down shows several plateaus at decreasing
//! lengths, the numerical picture of a broken gradient flow line.

use serde::{Deserialize, Serialize};

use crate::flow::FlowTrace;
use crate::scalar::Real;

/// Exit threshold of a plateau as a multiple of the entry threshold.
pub const HYSTERESIS: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlateauEvent<T> {
    pub start_step: usize,
    pub end_step: usize,
    pub mean_length: T,
    pub min_int_k2: T,
}

/// Maximal intervals where `int_k2 < eps_k2` for at least `min_duration` steps.
///
/// Entry is at `int_k2 < eps_k2`, exit only once `int_k2 > 10 eps_k2`, so
/// noise around the entry threshold does not split a plateau. The reported
/// interval runs from the first to the last record below `eps_k2` inside the
/// band; every record in it stays below the exit threshold.
pub fn detect_plateaus<T: Real>(trace: &FlowTrace<T>, eps_k2: T, min_duration: usize) -> Vec<PlateauEvent<T>> {
    let exit = eps_k2 * T::lit(HYSTERESIS);
    let records = &trace.records;
    let mut events = Vec::new();
    let mut open: Option<(usize, usize)> = None;
    let close = |first: usize, last: usize, events: &mut Vec<PlateauEvent<T>>| {
        let span = &records[first..=last];
        let duration = span[span.len() - 1].step - span[0].step + 1;
        if duration < min_duration.max(1) {
            return;
        }
        let mean = span.iter().map(|r| r.length).sum::<T>() / T::from_usize_lossy(span.len());
        let min = span.iter().map(|r| r.int_k2).fold(T::infinity(), T::min);
        events.push(PlateauEvent {
            start_step: span[0].step,
            end_step: span[span.len() - 1].step,
            mean_length: mean,
            min_int_k2: min,
        });
    };
    for (j, r) in records.iter().enumerate() {
        match open {
            None if r.int_k2 < eps_k2 => open = Some((j, j)),
            Some((first, _)) if r.int_k2 < eps_k2 => open = Some((first, j)),
            Some((first, last)) if r.int_k2 > exit => {
                close(first, last, &mut events);
                open = None;
            }
            _ => {}
        }
    }
    if let Some((first, last)) = open {
        close(first, last, &mut events);
    }
    events
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::FlowRecord;

    fn synthetic(values: &[f64], lengths: &[f64]) -> FlowTrace<f64> {
        FlowTrace {
            records: values
                .iter()
                .zip(lengths)
                .enumerate()
                .map(|(i, (&k2, &length))| FlowRecord {
                    step: i,
                    time: i as f64,
                    dt: 1.0,
                    length,
                    max_k: k2.sqrt(),
                    int_k2: k2,
                    resampled: false,
                })
                .collect(),
            snapshots: Vec::new(),
        }
    }

    #[test]
    fn two_separated_plateaus() {
        let mut k2 = vec![1.0, 1.0];
        k2.extend(std::iter::repeat_n(0.001, 20));
        k2.extend([1.0, 1.0]);
        k2.extend(std::iter::repeat_n(0.001, 20));
        let lengths: Vec<f64> = (0..k2.len()).map(|i| 10.0 - 0.1 * i as f64).collect();
        let events = detect_plateaus(&synthetic(&k2, &lengths), 0.01, 10);
        assert_eq!(events.len(), 2);
        assert_eq!((events[0].start_step, events[0].end_step), (2, 21));
        assert_eq!((events[1].start_step, events[1].end_step), (24, 43));
        assert!(events[0].mean_length > events[1].mean_length);
        assert_eq!(events[0].min_int_k2, 0.001);
    }

    #[test]
    fn hysteresis_merges_chatter_and_short_dips_are_dropped() {
        // Wanders between the entry and exit thresholds: one plateau.
        let k2: Vec<f64> = (0..40).map(|i| if i % 3 == 0 { 0.05 } else { 0.005 }).collect();
        let lengths = vec![1.0; 40];
        let events = detect_plateaus(&synthetic(&k2, &lengths), 0.01, 10);
        assert_eq!(events.len(), 1);
        // A dip shorter than min_duration is ignored.
        let mut k2 = vec![1.0; 10];
        k2.extend([0.001; 5]);
        k2.extend([1.0; 10]);
        let events = detect_plateaus(&synthetic(&k2, &[1.0; 25]), 0.01, 10);
        assert!(events.is_empty());
    }

    #[test]
    fn empty_trace_has_no_plateaus() {
        assert!(detect_plateaus(&FlowTrace::<f64>::new(), 0.01, 1).is_empty());
    }
}
