//! Deterministic initial curves for the scenario catalog.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::curve::DiscreteCurve;
use crate::geometry::{Implicit, Surface};
use crate::scalar::Real;
use crate::vec3::Vec3;

use super::ExperimentError;

/// Dense samples per output vertex before uniform resampling.
const OVERSAMPLE: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Generator {
    /// Plane circle.
    Circle {
        #[serde(default = "one")]
        radius: f64,
        #[serde(default)]
        center: [f64; 2],
    },
    /// Plane ellipse with semi-axes `a` (along x) and `b`.
    Ellipse { a: f64, b: f64 },
    /// Plane star `r(θ) = radius (1 + amplitude sin(lobes θ))`.
    Star {
        #[serde(default = "one")]
        radius: f64,
        amplitude: f64,
        lobes: u32,
    },
    /// Non-convex plane blob `r(θ) = 1 + 0.35 cos 3θ + 0.15 sin 2θ`, scaled.
    Blob {
        #[serde(default = "one")]
        scale: f64,
    },
    /// Section of an ellipsoid by the plane `normal · p = offset`.
    EllipsoidSection { normal: [f64; 3], offset: f64 },
    /// The `x = 0` principal ellipse with its plane rotated by `tilt` radians
    /// about the y-axis (towards the `z = 0` principal ellipse). Centrally
    /// symmetric, so it bisects the ellipsoid.
    EllipsoidBisecting { tilt: f64 },
    /// Closed loop in homotopy class `(p, q)` with a transverse sinusoidal
    /// wobble `amplitude · sin(2π mode t)`.
    ///
    /// Flat torus: `p`, `q` count turns in x and y and `offset` is the start
    /// point. Skewed torus: `p` counts turns around the tube, `q` turns around
    /// the z-axis, and `offset` holds the start angles (tube, axis).
    TorusLoop {
        p: i64,
        q: i64,
        #[serde(default)]
        offset: [f64; 2],
        #[serde(default)]
        amplitude: f64,
        #[serde(default = "one_u32")]
        mode: u32,
    },
    /// Latitude circle at height `z0` of a surface of revolution, with height
    /// wobble `amplitude · sin(mode θ)`.
    RevolutionCircle {
        z0: f64,
        #[serde(default)]
        amplitude: f64,
        #[serde(default = "two_u32")]
        mode: u32,
    },
}

fn one() -> f64 {
    1.0
}

fn one_u32() -> u32 {
    1
}

fn two_u32() -> u32 {
    2
}

impl Generator {
    pub fn kind(&self) -> &'static str {
        match self {
            Generator::Circle { .. } => "circle",
            Generator::Ellipse { .. } => "ellipse",
            Generator::Star { .. } => "star",
            Generator::Blob { .. } => "blob",
            Generator::EllipsoidSection { .. } => "ellipsoid_section",
            Generator::EllipsoidBisecting { .. } => "ellipsoid_bisecting",
            Generator::TorusLoop { .. } => "torus_loop",
            Generator::RevolutionCircle { .. } => "revolution_circle",
        }
    }

    /// Samples the curve densely on `surface`, resamples to `n` vertices at
    /// uniform arclength and checks embeddedness.
    pub fn build<T: Real>(&self, surface: &Surface<T>, n: usize) -> Result<DiscreteCurve<T>, ExperimentError> {
        let dense = n * OVERSAMPLE;
        let pts = (0..dense).map(|i| self.point(surface, i as f64 / dense as f64)).collect::<Result<Vec<_>, _>>()?;
        let curve = DiscreteCurve::from_points(surface.clone(), pts)?.resample_uniform(n)?;
        if curve.self_intersects() {
            return Err(ExperimentError::GeneratorSelfIntersects(self.kind().to_string()));
        }
        Ok(curve)
    }

    /// Point at curve parameter `t ∈ [0, 1)`.
    fn point<T: Real>(&self, surface: &Surface<T>, t: f64) -> Result<Vec3<T>, ExperimentError> {
        let mismatch = || ExperimentError::GeneratorSurfaceMismatch {
            generator: self.kind().to_string(),
            surface: format!("{surface:?}"),
        };
        let angle = TAU * t;
        let planar = |x: f64, y: f64| Vec3::planar(T::lit(x), T::lit(y));
        match *self {
            Generator::Circle { radius, center } => {
                require(matches!(surface, Surface::Plane), mismatch)?;
                Ok(planar(center[0] + radius * angle.cos(), center[1] + radius * angle.sin()))
            }
            Generator::Ellipse { a, b } => {
                require(matches!(surface, Surface::Plane), mismatch)?;
                Ok(planar(a * angle.cos(), b * angle.sin()))
            }
            Generator::Star { radius, amplitude, lobes } => {
                require(matches!(surface, Surface::Plane), mismatch)?;
                let r = radius * (1.0 + amplitude * (lobes as f64 * angle).sin());
                Ok(planar(r * angle.cos(), r * angle.sin()))
            }
            Generator::Blob { scale } => {
                require(matches!(surface, Surface::Plane), mismatch)?;
                let r = scale * (1.0 + 0.35 * (3.0 * angle).cos() + 0.15 * (2.0 * angle).sin());
                Ok(planar(r * angle.cos(), r * angle.sin()))
            }
            Generator::EllipsoidSection { normal, offset } => {
                ellipsoid_section(surface, normal, offset, angle).ok_or_else(mismatch)
            }
            Generator::EllipsoidBisecting { tilt } => {
                ellipsoid_section(surface, [tilt.cos(), 0.0, tilt.sin()], 0.0, angle).ok_or_else(mismatch)
            }
            Generator::TorusLoop { p, q, offset, amplitude, mode } => {
                let (pf, qf) = (p as f64, q as f64);
                let norm = (pf * pf + qf * qf).sqrt();
                if norm == 0.0 {
                    return Err(mismatch());
                }
                let wobble = amplitude * (TAU * mode as f64 * t).sin() / norm;
                match surface {
                    Surface::FlatTorus => {
                        let x = offset[0] + pf * t - qf * wobble;
                        let y = offset[1] + qf * t + pf * wobble;
                        Ok(Vec3::planar(T::lit(x), T::lit(y)))
                    }
                    Surface::Implicit(Implicit::SkewedTorus { .. }) => {
                        let tube = offset[0] + TAU * pf * t - qf * wobble;
                        let around = offset[1] + TAU * qf * t + pf * wobble;
                        Ok(surface.chart(T::lit(tube), T::lit(around)))
                    }
                    _ => Err(mismatch()),
                }
            }
            Generator::RevolutionCircle { z0, amplitude, mode } => {
                require(matches!(surface, Surface::Implicit(Implicit::Revolution(_))), mismatch)?;
                let z = z0 + amplitude * (mode as f64 * angle).sin();
                Ok(surface.chart(T::lit(angle), T::lit(z)))
            }
        }
    }
}

fn require(ok: bool, err: impl FnOnce() -> ExperimentError) -> Result<(), ExperimentError> {
    if ok {
        Ok(())
    } else {
        Err(err())
    }
}

/// Point at angle `angle` of the section of an ellipsoid by `normal · p = offset`,
/// found on the ray from the plane's foot point. `None` off ellipsoids or when
/// the plane misses the interior.
fn ellipsoid_section<T: Real>(surface: &Surface<T>, normal: [f64; 3], offset: f64, angle: f64) -> Option<Vec3<T>> {
    let Surface::Implicit(Implicit::Ellipsoid { a, b, c }) = surface else {
        return None;
    };
    let coeff = [a.as_f64(), b.as_f64(), c.as_f64()];
    let len = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
    if len == 0.0 {
        return None;
    }
    let n = normal.map(|x| x / len);
    let helper = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let dot = |u: [f64; 3], v: [f64; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let h = dot(helper, n);
    let mut u = [helper[0] - h * n[0], helper[1] - h * n[1], helper[2] - h * n[2]];
    let ul = dot(u, u).sqrt();
    u = u.map(|x| x / ul);
    let v = [n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]];
    let w = [0, 1, 2].map(|i| angle.cos() * u[i] + angle.sin() * v[i]);
    let foot = n.map(|x| x * offset);
    let quad = |x: [f64; 3], y: [f64; 3]| coeff[0] * x[0] * y[0] + coeff[1] * x[1] * y[1] + coeff[2] * x[2] * y[2];
    let qa = quad(w, w);
    let qb = quad(foot, w);
    let qc = quad(foot, foot) - 1.0;
    if qc >= 0.0 {
        return None;
    }
    let rho = (-qb + (qb * qb - qa * qc).sqrt()) / qa;
    let p = [0, 1, 2].map(|i| foot[i] + rho * w[i]);
    Some(Vec3::new(T::lit(p[0]), T::lit(p[1]), T::lit(p[2])))
}
