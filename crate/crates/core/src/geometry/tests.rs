use std::f64::consts::{PI, TAU};

use super::*;

type S = Surface<f64>;

fn close(a: Vec3<f64>, b: Vec3<f64>, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Deterministic low-discrepancy samples in the unit square.
fn samples(n: usize) -> impl Iterator<Item = (f64, f64)> {
    let g1 = 0.754_877_666_246_692_7_f64;
    let g2 = 0.569_840_290_998_053_3_f64;
    (0..n).map(move |i| {
        let i = i as f64 + 0.5;
        ((i * g1).fract(), (i * g2).fract())
    })
}

/// Maps the unit square onto surface coordinates for a chart.
type ChartDomain = Box<dyn Fn(f64, f64) -> (f64, f64)>;

fn implicit_catalog() -> Vec<(S, ChartDomain)> {
    vec![
        (S::sphere(), Box::new(|s, t| (TAU * s, 0.05 + (PI - 0.1) * t))),
        (S::ellipsoid(4.0, 2.0, 1.0).unwrap(), Box::new(|s, t| (TAU * s, 0.05 + (PI - 0.1) * t))),
        (S::skewed_torus(2.0, 0.5, 0.1).unwrap(), Box::new(|s, t| (TAU * s, TAU * t))),
        (S::stepped_revolution(), Box::new(|s, t| (TAU * s, -12.0 + 24.0 * t))),
    ]
}

#[test]
fn normal_examples() {
    let sphere = S::sphere();
    assert!(close(sphere.normal(Vec3::new(1.0, 0.0, 0.0)).unwrap(), Vec3::new(1.0, 0.0, 0.0), 1e-15));
    let stretched = S::ellipsoid(4.0, 1.0, 1.0).unwrap();
    assert!(close(stretched.normal(Vec3::new(0.5, 0.0, 0.0)).unwrap(), Vec3::new(1.0, 0.0, 0.0), 1e-15));
    let rev = S::stepped_revolution();
    assert!(close(rev.normal(Vec3::new(1.0, 0.0, 0.0)).unwrap(), Vec3::new(1.0, 0.0, 0.0), 1e-15));
}

#[test]
fn degenerate_gradient_on_axis_and_centre() {
    let rev = S::stepped_revolution();
    assert!(matches!(rev.normal(Vec3::new(0.0, 0.0, 2.0)), Err(GeometryError::DegenerateGradient { .. })));
    assert!(matches!(rev.normal(Vec3::new(5e-5, 0.0, 0.0)), Err(GeometryError::DegenerateGradient { .. })));
    let sphere = S::sphere();
    assert!(matches!(sphere.normal(Vec3::zero()), Err(GeometryError::DegenerateGradient { .. })));
    let torus = S::skewed_torus(2.0, 0.5, 0.1).unwrap();
    assert!(torus.normal(Vec3::new(0.0, 0.0, 1.0)).is_err());
}

#[test]
fn projection_examples() {
    let sphere = S::sphere();
    assert!(close(sphere.project(Vec3::new(2.0, 0.0, 0.0)).unwrap(), Vec3::new(1.0, 0.0, 0.0), 1e-12));
    let torus = S::FlatTorus;
    let q = torus.project(Vec3::planar(1.25, -0.5)).unwrap();
    assert_eq!(q, Vec3::planar(0.25, 0.5));
    let stretched = S::ellipsoid(4.0, 1.0, 1.0).unwrap();
    let q = stretched.project(Vec3::new(1.0, 0.0, 0.0)).unwrap();
    // 1D Newton oracle on 4x² = 1 from x = 1.
    let mut x = 1.0_f64;
    for _ in 0..60 {
        x -= (4.0 * x * x - 1.0) / (8.0 * x);
    }
    assert!(close(q, Vec3::new(x, 0.0, 0.0), 1e-12));
    assert!((x - 0.5).abs() < 1e-15);
    assert_eq!(S::Plane.project(Vec3::new(0.3, 0.4, 0.0)).unwrap(), Vec3::planar(0.3, 0.4));
}

#[test]
fn projection_is_along_normal() {
    for (surface, param) in implicit_catalog() {
        for (s, t) in samples(500) {
            let (u, v) = param(s, t);
            let base = surface.chart(u, v);
            let n = surface.normal(base).unwrap();
            let p = base + n * 1e-3;
            let q = surface.project(p).unwrap();
            assert!(surface.level(q).abs() <= 1e-10);
            let nq = surface.normal(q).unwrap();
            let d = q - p;
            let off = d - nq * d.dot(nq);
            assert!(off.norm() <= 1e-6 * d.norm() + 1e-13, "{surface:?}: off-normal {}", off.norm());
        }
    }
}

#[test]
fn projection_diverges_from_far_away() {
    let rev = S::stepped_revolution();
    // The interior of the neck projects towards the axis.
    let r = rev.project(Vec3::new(1e-5, 0.0, 0.0));
    assert!(r.is_err());
}

#[test]
fn tangent_project_examples() {
    let sphere = S::sphere();
    let v = sphere.tangent_project(Vec3::new(1.0, 0.0, 0.0), Vec3::new(3.0, 2.0, 0.0)).unwrap();
    assert!(close(v, Vec3::new(0.0, 2.0, 0.0), 1e-15));
    let v = S::Plane.tangent_project(Vec3::planar(7.0, -1.0), Vec3::planar(0.3, -2.0)).unwrap();
    assert_eq!(v, Vec3::planar(0.3, -2.0));
    let rev = S::stepped_revolution();
    let v = rev.tangent_project(Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 0.0, 1.0)).unwrap();
    assert!(close(v, Vec3::new(0.0, 0.0, 1.0), 1e-15));
}

#[test]
fn chart_points_lie_on_surface() {
    for (surface, param) in implicit_catalog() {
        for (s, t) in samples(2000) {
            let (u, v) = param(s, t);
            let p = surface.chart(u, v);
            let scale = 1.0 + p.norm_squared();
            assert!(surface.level(p).abs() <= 1e-12 * scale, "{surface:?} at ({u}, {v}): {}", surface.level(p));
        }
    }
}

#[test]
fn invariants_on_ten_thousand_points() {
    for (surface, param) in implicit_catalog() {
        for (i, (s, t)) in samples(10_000).enumerate() {
            let (u, v) = param(s, t);
            let p = surface.chart(u, v);
            let n = surface.normal(p).unwrap();
            assert!((n.norm() - 1.0).abs() < 1e-12);

            // Tangent projection: orthogonal and idempotent.
            let w = Vec3::new((i as f64).sin(), (1.7 * i as f64).cos(), 0.3 - s);
            let tw = surface.tangent_project(p, w).unwrap();
            let ttw = surface.tangent_project(p, tw).unwrap();
            assert!((ttw - tw).norm() < 1e-12);
            assert!(tw.dot(n).abs() < 1e-12);

            // Projection fixed point from a perturbed ambient point.
            let off = p + Vec3::new(0.01 * (t - 0.5), 0.02 * (s - 0.5), 0.01);
            let q = surface.project(off).unwrap();
            let qq = surface.project(q).unwrap();
            assert!((qq - q).norm() <= 1e-10);
            assert!(surface.level(q).abs() <= 1e-10);
        }
    }
}

#[test]
fn wrapping_conventions() {
    assert_eq!(wrap_unit(1.25), 0.25);
    assert_eq!(wrap_unit(-0.5), 0.5);
    assert_eq!(wrap_unit(-1e-17), 0.0);
    assert_eq!(wrap_half(0.5), -0.5);
    assert_eq!(wrap_half(-0.5), -0.5);
    assert!((wrap_half(0.9_f64) + 0.1).abs() < 1e-15);
    assert!((wrap_half(-0.75_f64) - 0.25).abs() < 1e-15);
    let d = S::FlatTorus.displacement(Vec3::planar(0.95, 0.5), Vec3::planar(0.05, 0.5));
    assert!((d.x - 0.1).abs() < 1e-15 && d.y == 0.0);
}

#[test]
fn generic_over_f32() {
    let sphere = Surface::<f32>::sphere();
    let q = sphere.project(Vec3::new(2.0_f32, 0.0, 0.0)).unwrap();
    assert!((q.x - 1.0).abs() < 1e-6);
    let n = Surface::<f32>::stepped_revolution().normal(Vec3::new(1.0, 0.0, 0.0)).unwrap();
    assert!((n.x - 1.0).abs() < 1e-6);
}
