use std::f64::consts::PI;

use crate::flow::{Classification, FlowConfig};
use crate::geometry::{ProfileSpec, SurfaceSpec};

use super::{ExperimentError, Generator, PlateauParams, Scenario};

fn config(vertices: usize, tol_point: f64, max_steps: usize, snapshot_every: usize) -> FlowConfig<f64> {
    FlowConfig { vertices, tol_point, max_steps, snapshot_every, ..FlowConfig::default() }
}

fn scenario(
    name: &str,
    description: &str,
    surface: SurfaceSpec,
    generator: Generator,
    config: FlowConfig<f64>,
    expected: Classification,
) -> Scenario {
    Scenario {
        name: name.to_string(),
        description: description.to_string(),
        surface,
        generator,
        config,
        plateaus: PlateauParams::default(),
        expected: Some(expected),
    }
}

const SKEWED: SurfaceSpec = SurfaceSpec::SkewedTorus { major: 2.0, minor: 0.5, a: 0.1 };
const TRIAXIAL: SurfaceSpec = SurfaceSpec::Ellipsoid { a: 4.0, b: 2.0, c: 1.0 };
const SPHERE: SurfaceSpec = SurfaceSpec::Ellipsoid { a: 1.0, b: 1.0, c: 1.0 };

/// The built-in scenarios, one per figure class plus the self-checking basics.
pub fn builtin_scenarios() -> Vec<Scenario> {
    use Classification::*;
    let revolution = SurfaceSpec::Revolution { profile: ProfileSpec::Stepped };
    vec![
        scenario(
            "plane_circle",
            "unit circle in the plane; radius follows r(t) = sqrt(1 - 2t)",
            SurfaceSpec::Plane,
            Generator::Circle { radius: 1.0, center: [0.0, 0.0] },
            config(256, 0.05, 400_000, 4000),
            ShrunkToPoint,
        ),
        scenario(
            "plane_star",
            "five-lobed star becomes convex, then round, then vanishes",
            SurfaceSpec::Plane,
            Generator::Star { radius: 1.0, amplitude: 0.3, lobes: 5 },
            config(256, 0.05, 400_000, 4000),
            ShrunkToPoint,
        ),
        scenario(
            "plane_blob",
            "non-convex blob shrinks to a point",
            SurfaceSpec::Plane,
            Generator::Blob { scale: 1.0 },
            config(256, 0.05, 400_000, 4000),
            ShrunkToPoint,
        ),
        scenario(
            "plane_ellipse",
            "2:1 ellipse rounds up and shrinks",
            SurfaceSpec::Plane,
            Generator::Ellipse { a: 1.0, b: 0.5 },
            config(256, 0.05, 400_000, 4000),
            ShrunkToPoint,
        ),
        scenario(
            "sphere_great_circle",
            "great circle on the unit sphere is already a geodesic",
            SPHERE,
            Generator::EllipsoidSection { normal: [0.3, -0.5, 0.8], offset: 0.0 },
            config(128, 0.05, 10_000, 1000),
            ConvergedToGeodesic,
        ),
        scenario(
            "sphere_latitude",
            "latitude circle above the equator slides to the pole",
            SPHERE,
            Generator::EllipsoidSection { normal: [0.0, 0.0, 1.0], offset: 0.4 },
            config(128, 0.05, 400_000, 2000),
            ShrunkToPoint,
        ),
        scenario(
            "ellipsoid_bisecting",
            "tilted bisecting section near the longest principal ellipse flows to the shortest",
            TRIAXIAL,
            Generator::EllipsoidBisecting { tilt: 0.3 },
            config(128, 0.05, 400_000, 2000),
            ConvergedToGeodesic,
        ),
        scenario(
            "ellipsoid_above_geodesic",
            "section just above the shortest principal ellipse shrinks to the top",
            TRIAXIAL,
            Generator::EllipsoidSection { normal: [0.0, 0.0, 1.0], offset: 0.15 },
            config(128, 0.05, 400_000, 2000),
            ShrunkToPoint,
        ),
        scenario(
            "flat_torus_10_wiggle",
            "wiggled (1,0) loop straightens to a horizontal line of length 1",
            SurfaceSpec::FlatTorus,
            Generator::TorusLoop { p: 1, q: 0, offset: [0.0, 0.5], amplitude: 0.05, mode: 1 },
            config(128, 0.05, 400_000, 2000),
            ConvergedToGeodesic,
        ),
        scenario(
            "flat_torus_11_wiggle",
            "wiggled (1,1) loop straightens to a diagonal of length sqrt 2",
            SurfaceSpec::FlatTorus,
            Generator::TorusLoop { p: 1, q: 1, offset: [0.0, 0.2], amplitude: 0.04, mode: 2 },
            config(128, 0.05, 400_000, 2000),
            ConvergedToGeodesic,
        ),
        scenario(
            "skewed_torus_inner",
            "wobbled loop around the hole settles on the inner equator",
            SKEWED,
            Generator::TorusLoop { p: 0, q: 1, offset: [PI, 0.0], amplitude: 0.3, mode: 2 },
            config(128, 0.05, 400_000, 2000),
            ConvergedToGeodesic,
        ),
        scenario(
            "skewed_torus_meridian",
            "wobbled meridian slides to the thinnest section of the tube",
            SKEWED,
            Generator::TorusLoop { p: 1, q: 0, offset: [0.0, PI - 0.6], amplitude: 0.1, mode: 2 },
            config(64, 0.05, 400_000, 2000),
            ConvergedToGeodesic,
        ),
        scenario(
            "revolution_waist_wobble",
            "wobbled waist circle settles on the waist geodesic of length 2π",
            revolution.clone(),
            Generator::RevolutionCircle { z0: 0.0, amplitude: 0.1, mode: 2 },
            config(256, 0.05, 400_000, 2000),
            ConvergedToGeodesic,
        ),
        scenario(
            "revolution_broken_descent",
            "circle just below the degenerate neck at z = π lingers there, then drops to the waist",
            revolution,
            Generator::RevolutionCircle { z0: PI - 0.08, amplitude: 0.05, mode: 2 },
            FlowConfig { tol_geodesic: 1e-4, ..config(128, 0.05, 400_000, 2000) },
            ConvergedToGeodesic,
        ),
    ]
}

pub fn find_scenario(name: &str) -> Result<Scenario, ExperimentError> {
    builtin_scenarios()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| ExperimentError::UnknownScenario(name.to_string()))
}
