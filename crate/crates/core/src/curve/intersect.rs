//! Segment predicates behind the embeddedness monitor.

use crate::scalar::Real;
use crate::vec3::Vec3;

/// `(edge index, start, end)`.
pub(crate) type Segment<T> = (usize, Vec3<T>, Vec3<T>);

#[inline]
fn orient<T: Real>(a: Vec3<T>, b: Vec3<T>, c: Vec3<T>) -> T {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

#[inline]
fn within_box<T: Real>(p: Vec3<T>, q: Vec3<T>, r: Vec3<T>) -> bool {
    r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
}

/// Whether the closed planar segments `ab` and `cd` share a point (xy only).
pub fn segments_intersect_2d<T: Real>(a: Vec3<T>, b: Vec3<T>, c: Vec3<T>, d: Vec3<T>) -> bool {
    let zero = T::zero();
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > zero && d2 < zero) || (d1 < zero && d2 > zero)) && ((d3 > zero && d4 < zero) || (d3 < zero && d4 > zero))
    {
        return true;
    }
    (d1 == zero && within_box(c, d, a))
        || (d2 == zero && within_box(c, d, b))
        || (d3 == zero && within_box(a, b, c))
        || (d4 == zero && within_box(a, b, d))
}

/// Euclidean distance between segments `p1q1` and `p2q2` in R³.
pub fn segment_distance<T: Real>(p1: Vec3<T>, q1: Vec3<T>, p2: Vec3<T>, q2: Vec3<T>) -> T {
    let zero = T::zero();
    let one = T::one();
    let clamp = |x: T| x.max(zero).min(one);
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let r = p1 - p2;
    let a = d1.norm_squared();
    let e = d2.norm_squared();
    let f = d2.dot(r);
    let tiny = T::min_positive_value();
    let (s, t) = if a <= tiny && e <= tiny {
        (zero, zero)
    } else if a <= tiny {
        (zero, clamp(f / e))
    } else {
        let c = d1.dot(r);
        if e <= tiny {
            (clamp(-c / a), zero)
        } else {
            let b = d1.dot(d2);
            let denom = a * e - b * b;
            let mut s = if denom > zero { clamp((b * f - c * e) / denom) } else { zero };
            let mut t = (b * s + f) / e;
            if t < zero {
                t = zero;
                s = clamp(-c / a);
            } else if t > one {
                t = one;
                s = clamp((b - c) / a);
            }
            (s, t)
        }
    };
    ((p1 + d1 * s) - (p2 + d2 * t)).norm()
}

#[inline]
fn adjacent(n: usize, i: usize, j: usize) -> bool {
    i == j || (i + 1) % n == j || (j + 1) % n == i
}

/// Sorts by the smallest x and returns the widest x extent, for sweeping.
fn sweep_order<T: Real>(segs: &[Segment<T>]) -> (Vec<(T, usize)>, T) {
    let mut order: Vec<(T, usize)> = segs.iter().enumerate().map(|(k, s)| (s.1.x.min(s.2.x), k)).collect();
    order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal).then(a.1.cmp(&b.1)));
    let width = segs.iter().map(|s| (s.1.x - s.2.x).abs()).fold(T::zero(), T::max);
    (order, width)
}

/// Any non-adjacent pair `(l, r)` with `l` from `left`, `r` from `right` crossing in the plane.
pub(crate) fn any_planar_crossing<T: Real>(n: usize, left: &[Segment<T>], right: &[Segment<T>]) -> bool {
    let (order, width) = sweep_order(right);
    for &(i, a, b) in left {
        let lo = a.x.min(b.x);
        let hi = a.x.max(b.x);
        let from = order.partition_point(|&(x, _)| x < lo - width);
        let to = order.partition_point(|&(x, _)| x <= hi);
        for &(_, k) in &order[from..to] {
            let (j, c, d) = right[k];
            if adjacent(n, i, j) {
                continue;
            }
            if c.y.min(d.y) > a.y.max(b.y) || c.y.max(d.y) < a.y.min(b.y) {
                continue;
            }
            if segments_intersect_2d(a, b, c, d) {
                return true;
            }
        }
    }
    false
}

/// Any non-adjacent pair of segments closer than `eps` in R³.
pub(crate) fn any_close_pair<T: Real>(n: usize, segs: &[Segment<T>], eps: T) -> bool {
    let (order, width) = sweep_order(segs);
    for &(i, a, b) in segs {
        let lo = a.x.min(b.x) - eps;
        let hi = a.x.max(b.x) + eps;
        let from = order.partition_point(|&(x, _)| x < lo - width);
        let to = order.partition_point(|&(x, _)| x <= hi);
        for &(_, k) in &order[from..to] {
            let (j, c, d) = segs[k];
            if j <= i || adjacent(n, i, j) {
                continue;
            }
            let apart = |u: T, v: T, w: T, z: T| u.min(v) - eps > w.max(z) || w.min(z) - eps > u.max(v);
            if apart(a.y, b.y, c.y, d.y) || apart(a.z, b.z, c.z, d.z) {
                continue;
            }
            if segment_distance(a, b, c, d) < eps {
                return true;
            }
        }
    }
    false
}
