#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// Radius of a circle under curve-shortening flow: `dr/dt = −1/r`, so
/// `r(t) = sqrt(r0² − 2t)`.
pub fn circle_radius(r0: f64, t: f64) -> f64 {
    (r0 * r0 - 2.0 * t).sqrt()
}

/// Classical RK4 for `dr/dt = −1/r`, independent of the closed form.
pub fn circle_radius_rk4(r0: f64, t: f64, steps: usize) -> f64 {
    let h = t / steps as f64;
    let f = |r: f64| -1.0 / r;
    let mut r = r0;
    for _ in 0..steps {
        let k1 = f(r);
        let k2 = f(r + 0.5 * h * k1);
        let k3 = f(r + 0.5 * h * k2);
        let k4 = f(r + h * k3);
        r += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    r
}

fn simpson(
    f: &dyn Fn(f64) -> f64,
    (a, b): (f64, f64),
    (fa, fm, fb): (f64, f64, f64),
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        simpson(f, (a, m), (fa, flm, fm), left, tol / 2.0, depth - 1)
            + simpson(f, (m, b), (fm, frm, fb), right, tol / 2.0, depth - 1)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, (a, b), (fa, fm, fb), whole, tol, 50)
}

/// Perimeter of the ellipse with semi-axes `p`, `q`: `∫ sqrt(p² sin² + q² cos²)`
/// over a quarter turn, times four.
pub fn ellipse_perimeter(p: f64, q: f64) -> f64 {
    let speed = |t: f64| (p * p * t.sin().powi(2) + q * q * t.cos().powi(2)).sqrt();
    4.0 * integrate(&speed, 0.0, FRAC_PI_2, 1e-13)
}

/// Semi-axes of the principal sections of `a x² + b y² + c z² = 1`.
pub fn principal_semi_axes(a: f64, b: f64, c: f64) -> [(f64, f64); 3] {
    let (sx, sy, sz) = (1.0 / a.sqrt(), 1.0 / b.sqrt(), 1.0 / c.sqrt());
    [(sy, sz), (sx, sz), (sx, sy)]
}

/// Least-squares slope of `log2(error)` against `log2(N)`, negated.
pub fn observed_order(ns: &[usize], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).log2()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.log2()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    -sxy / sxx
}
