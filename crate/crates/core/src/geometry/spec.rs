use serde::{Deserialize, Serialize};

use super::{ConstantProfile, GeometryError, SteppedProfile, Surface};
use crate::scalar::Real;

/// Serializable description of a catalog surface, e.g.
/// `{"surface": "ellipsoid", "a": 4.0, "b": 2.0, "c": 1.0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "surface", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    Plane,
    FlatTorus,
    Ellipsoid {
        a: f64,
        b: f64,
        c: f64,
    },
    SkewedTorus {
        #[serde(rename = "R")]
        major: f64,
        #[serde(rename = "r")]
        minor: f64,
        a: f64,
    },
    Revolution {
        #[serde(default)]
        profile: ProfileSpec,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileSpec {
    /// `f(z) = β(z)z + sin(β(z)z) + 1`.
    #[default]
    Stepped,
    /// Constant radius.
    Cylinder(f64),
}

impl SurfaceSpec {
    pub fn build<T: Real>(&self) -> Result<Surface<T>, GeometryError> {
        match *self {
            SurfaceSpec::Plane => Ok(Surface::Plane),
            SurfaceSpec::FlatTorus => Ok(Surface::FlatTorus),
            SurfaceSpec::Ellipsoid { a, b, c } => Surface::ellipsoid(T::lit(a), T::lit(b), T::lit(c)),
            SurfaceSpec::SkewedTorus { major, minor, a } => {
                Surface::skewed_torus(T::lit(major), T::lit(minor), T::lit(a))
            }
            SurfaceSpec::Revolution { ref profile } => match *profile {
                ProfileSpec::Stepped => Ok(Surface::revolution(SteppedProfile)),
                ProfileSpec::Cylinder(r) if r > 0.0 => Ok(Surface::revolution(ConstantProfile(T::lit(r)))),
                ProfileSpec::Cylinder(r) => {
                    Err(GeometryError::InvalidParameters(format!("cylinder radius must be positive, got {r}")))
                }
            },
        }
    }

    /// Snake-case tag, as written in config documents.
    pub fn tag(&self) -> &'static str {
        match self {
            SurfaceSpec::Plane => "plane",
            SurfaceSpec::FlatTorus => "flat_torus",
            SurfaceSpec::Ellipsoid { .. } => "ellipsoid",
            SurfaceSpec::SkewedTorus { .. } => "skewed_torus",
            SurfaceSpec::Revolution { .. } => "revolution",
        }
    }

    /// One representative of each catalog entry with default parameters.
    pub fn catalog() -> Vec<SurfaceSpec> {
        vec![
            SurfaceSpec::Plane,
            SurfaceSpec::FlatTorus,
            SurfaceSpec::Ellipsoid { a: 1.0, b: 1.0, c: 1.0 },
            SurfaceSpec::Ellipsoid { a: 4.0, b: 2.0, c: 1.0 },
            SurfaceSpec::SkewedTorus { major: 2.0, minor: 0.5, a: 0.1 },
            SurfaceSpec::Revolution { profile: ProfileSpec::Stepped },
        ]
    }
}
