use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use super::*;
use crate::geometry::Surface;
use crate::vec3::Vec3;

fn circle(n: usize, r: f64) -> DiscreteCurve<f64> {
    let pts = (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64;
            Vec3::planar(r * t.cos(), r * t.sin())
        })
        .collect();
    DiscreteCurve::new(Surface::Plane, pts).unwrap()
}

fn ellipse(n: usize, a: f64, b: f64) -> DiscreteCurve<f64> {
    let pts = (0..4096)
        .map(|i| {
            let t = TAU * i as f64 / 4096.0;
            Vec3::planar(a * t.cos(), b * t.sin())
        })
        .collect();
    DiscreteCurve::new(Surface::Plane, pts).unwrap().resample_uniform(n).unwrap()
}

fn great_circle(n: usize) -> DiscreteCurve<f64> {
    let (u, v) = (Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 0.6, 0.8));
    let pts = (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64;
            u * t.cos() + v * t.sin()
        })
        .collect();
    DiscreteCurve::new(Surface::sphere(), pts).unwrap()
}

fn config(n: usize) -> FlowConfig<f64> {
    FlowConfig { vertices: n, ..FlowConfig::default() }
}

#[test]
fn dt_follows_the_cfl_formula() {
    assert!((min_spacing_dt(0.1_f64, 0.2).unwrap() - 1e-3).abs() < 1e-18);
    assert!((min_spacing_dt(0.01_f64, 0.2).unwrap() - 1e-5).abs() < 1e-20);
    assert!(matches!(min_spacing_dt(0.0_f64, 0.2), Err(FlowError::ZeroEdge)));
    let state = FlowState::new(circle(64, 1.0)).unwrap();
    let h = 2.0 * (PI / 64.0).sin();
    assert!((adaptive_dt(&state, &config(64)).unwrap() - 0.1 * h * h).abs() < 1e-15);
}

#[test]
fn config_validation() {
    assert!(FlowConfig::<f64>::default().validate().is_ok());
    for bad in [
        FlowConfig { dt_safety: 0.0, ..FlowConfig::default() },
        FlowConfig { dt_safety: 1.5, ..FlowConfig::default() },
        FlowConfig { tol_point: -1.0, ..FlowConfig::default() },
        FlowConfig { max_steps: 0, ..FlowConfig::default() },
        FlowConfig { resample_every: 0, ..FlowConfig::default() },
        FlowConfig { vertices: 3, ..FlowConfig::default() },
    ] {
        assert!(matches!(bad.validate(), Err(FlowError::InvalidConfig(_))), "{bad:?}");
    }
}

#[test]
fn config_json_uses_capital_n_and_defaults() {
    let c: FlowConfig<f64> = serde_json::from_str(r#"{"N": 64, "direction": "backward"}"#).unwrap();
    assert_eq!(c.vertices, 64);
    assert_eq!(c.direction, Direction::Backward);
    assert_eq!(c.resample_every, 10);
    assert!(serde_json::from_str::<FlowConfig<f64>>(r#"{"n": 64}"#).is_err());
}

#[test]
fn great_circle_is_a_fixed_point() {
    let state = FlowState::new(great_circle(128)).unwrap();
    let next = step(&state, &config(128)).unwrap();
    for (p, q) in state.curve.vertices().iter().zip(next.curve.vertices()) {
        assert!((*p - *q).norm() < 1e-10);
    }
}

#[test]
fn one_circle_step_matches_the_radius_ode() {
    let state = FlowState::new(circle(256, 1.0)).unwrap();
    let cfg = config(256);
    let dt = adaptive_dt(&state, &cfg).unwrap();
    let next = step(&state, &cfg).unwrap();
    assert!((next.time - dt).abs() < 1e-18);
    assert_eq!(next.step, 1);
    let exact = (1.0 - 2.0 * dt).sqrt();
    for p in next.curve.vertices() {
        assert!((p.norm() - (1.0 - dt)).abs() < 1e-14);
        assert!((p.norm() - exact).abs() < dt * dt);
    }
}

#[test]
fn backward_step_lengthens_and_goes_back_in_time() {
    let state = FlowState::new(ellipse(128, 1.0, 0.5)).unwrap();
    let cfg = FlowConfig { direction: Direction::Backward, ..config(128) };
    let next = step(&state, &cfg).unwrap();
    assert!(next.length() > state.length());
    assert!(next.time < 0.0);
}

#[test]
fn backward_runs_are_never_resampled() {
    let cfg = FlowConfig { direction: Direction::Backward, max_steps: 30, ..config(64) };
    let r = run(ellipse(64, 1.0, 0.5), &cfg).unwrap();
    assert!(r.trace.records.iter().all(|r| !r.resampled));
    assert!(r.trace.records.windows(2).all(|w| w[1].length >= w[0].length && w[1].time < w[0].time));
}

#[test]
fn circle_stays_stable_and_monotone() {
    let cfg = FlowConfig { max_steps: 10_000, ..config(256) };
    let r = run(circle(256, 1.0), &cfg).unwrap();
    assert_eq!(r.classification, Classification::MaxStepsReached);
    assert_eq!(r.trace.records.len(), 10_001);
    assert!(r.trace.records.windows(2).all(|w| w[1].length < w[0].length));
    assert!(r.trace.records.windows(2).all(|w| w[1].time > w[0].time));
    assert!(r.trace.records.iter().enumerate().all(|(i, rec)| rec.step == i));
    // Snapshots at steps 0, 1000, ..., 10000.
    assert_eq!(r.trace.snapshots.len(), 11);
}

#[test]
fn geodesic_start_converges_immediately() {
    let r = run(great_circle(128), &config(128)).unwrap();
    assert_eq!(r.classification, Classification::ConvergedToGeodesic);
    assert_eq!(r.state.step, 0);
    assert!(r.state.max_k() <= 1e-3);
}

#[test]
fn run_resamples_to_the_configured_resolution() {
    let r = run(circle(100, 1.0), &FlowConfig { max_steps: 5, ..config(64) }).unwrap();
    assert_eq!(r.state.curve.len(), 64);
}

#[test]
fn shrink_to_point_wins_over_geodesic() {
    let state = FlowState::new(circle(64, 1.0)).unwrap();
    let cfg = FlowConfig { tol_point: 100.0, tol_geodesic: 100.0, ..config(64) };
    assert_eq!(classify(&state, &cfg, true), Some(Classification::ShrunkToPoint));
    let cfg = FlowConfig { tol_geodesic: 100.0, ..config(64) };
    assert_eq!(classify(&state, &cfg, true), Some(Classification::ConvergedToGeodesic));
    assert_eq!(classify(&state, &config(64), true), Some(Classification::EmbeddednessLost));
    assert_eq!(classify(&state, &config(64), false), None);
}

#[test]
fn non_embedded_surface_start_is_rejected() {
    // Figure-eight on the sphere: two small loops touching at the equator.
    let pts = (0..200)
        .map(|i| {
            let t = TAU * i as f64 / 200.0;
            let (x, y) = (0.5 * t.sin(), 0.25 * (2.0 * t).sin());
            Vec3::new(x, y, (1.0 - x * x - y * y).sqrt())
        })
        .collect();
    let curve = DiscreteCurve::new(Surface::sphere(), pts).unwrap();
    assert!(curve.self_intersects());
    let err = run(curve, &config(200)).unwrap_err();
    assert!(matches!(err.error, FlowError::InitialNotEmbedded));
}

#[test]
fn energy_residual_guards_stationary_records() {
    let rec = |step: usize, length: f64, int_k2: f64, resampled: bool| FlowRecord {
        step,
        time: step as f64,
        dt: 1.0,
        length,
        max_k: 0.0,
        int_k2,
        resampled,
    };
    let trace = FlowTrace { records: (0..5).map(|i| rec(i, 1.0, 0.0, false)).collect(), snapshots: vec![] };
    assert_eq!(energy_balance_residual(&trace), vec![0.0; 3]);
    // L = 10 − 2t with ∫k² = 2 balances exactly; the resampled record hides two windows.
    let records = (0..6).map(|i| rec(i, 10.0 - 2.0 * i as f64, 2.0, i == 3)).collect();
    let res = energy_balance_residual(&FlowTrace { records, snapshots: vec![] });
    assert_eq!(res, vec![0.0]);
    assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
    assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
    assert_eq!(median::<f64>(&[]), None);
}

#[test]
fn circle_energy_balances() {
    let cfg = FlowConfig { max_steps: 2000, ..config(128) };
    let r = run(circle(128, 1.0), &cfg).unwrap();
    let res = energy_balance_residual(&r.trace);
    assert!(median(&res).unwrap() < 1e-3);
}

#[test]
fn runs_are_bitwise_reproducible() {
    let cfg = FlowConfig { max_steps: 300, ..config(64) };
    let a = run(ellipse(64, 1.0, 0.6), &cfg).unwrap();
    let b = run(ellipse(64, 1.0, 0.6), &cfg).unwrap();
    assert_eq!(a.trace, b.trace);
}

#[test]
fn works_in_single_precision() {
    let pts = (0..64)
        .map(|i| {
            let t = std::f32::consts::TAU * i as f32 / 64.0;
            Vec3::planar(t.cos(), 0.5 * t.sin())
        })
        .collect();
    let curve = DiscreteCurve::<f32>::new(Surface::Plane, pts).unwrap();
    let cfg = FlowConfig::<f32> { vertices: 64, max_steps: 200, ..FlowConfig::default() };
    let r = run(curve, &cfg).unwrap();
    assert!(r.state.length() < r.trace.records[0].length);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn forward_steps_never_lengthen(a in 0.5..2.0f64, b in 0.5..2.0f64, wobble in 0.0..0.2f64, n in 32usize..96) {
        let pts = (0..2048)
            .map(|i| {
                let t = TAU * i as f64 / 2048.0;
                let r = 1.0 + wobble * (3.0 * t).sin();
                Vec3::planar(a * r * t.cos(), b * r * t.sin())
            })
            .collect();
        let curve = DiscreteCurve::new(Surface::Plane, pts).unwrap().resample_uniform(n).unwrap();
        let cfg = FlowConfig { max_steps: 200, ..config(n) };
        let r = run(curve, &cfg).unwrap();
        prop_assert!(r.trace.worst_length_increase() <= MONOTONICITY_SLACK);
    }

    #[test]
    fn sphere_flow_stays_on_the_sphere(tilt in 0.0..1.2f64, height in -0.6..0.6f64) {
        let normal = Vec3::new(tilt.sin(), 0.0, tilt.cos());
        let u = Vec3::new(tilt.cos(), 0.0, -tilt.sin());
        let v = Vec3::new(0.0, 1.0, 0.0);
        let r = (1.0 - height * height).sqrt();
        let pts = (0..64)
            .map(|i| {
                let t = TAU * i as f64 / 64.0;
                normal * height + (u * t.cos() + v * t.sin()) * r
            })
            .collect();
        let curve = DiscreteCurve::new(Surface::sphere(), pts).unwrap();
        let cfg = FlowConfig { max_steps: 100, ..config(64) };
        let out = run(curve, &cfg).unwrap();
        for p in out.state.curve.vertices() {
            prop_assert!((p.norm() - 1.0).abs() < 1e-9);
        }
    }
}
