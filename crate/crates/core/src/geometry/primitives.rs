//! Segment and triangle distance kernels.

use super::Vec3;

const PARALLEL_EPS: f64 = 1e-300;

#[inline]
fn clamp01(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Closest points between segments `p1 q1` and `p2 q2`.
///
/// Returns `(s, t, dist²)` where `s, t ∈ [0, 1]` locate the closest points on each
/// segment. Minimizes the clamped quadratic `|p1 + s d1 - p2 - t d2|²`; when the
/// segments are parallel the first segment's parameter is pinned to an endpoint.
pub fn segment_closest_params(p1: &Vec3, q1: &Vec3, p2: &Vec3, q2: &Vec3) -> (f64, f64, f64) {
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let r = p1 - p2;
    let a = d1.dot(&d1);
    let e = d2.dot(&d2);
    let f = d2.dot(&r);

    let (s, t) = if a <= PARALLEL_EPS && e <= PARALLEL_EPS {
        (0.0, 0.0)
    } else if a <= PARALLEL_EPS {
        (0.0, clamp01(f / e))
    } else {
        let c = d1.dot(&r);
        if e <= PARALLEL_EPS {
            (clamp01(-c / a), 0.0)
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            let mut s = if denom > a * e * 1e-14 {
                clamp01((b * f - c * e) / denom)
            } else {
                0.0
            };
            let mut t = (b * s + f) / e;
            if t < 0.0 {
                t = 0.0;
                s = clamp01(-c / a);
            } else if t > 1.0 {
                t = 1.0;
                s = clamp01((b - c) / a);
            }
            (s, t)
        }
    };
    let diff = (p1 + d1 * s) - (p2 + d2 * t);
    (s, t, diff.norm_squared())
}

pub fn segment_distance(p1: &Vec3, q1: &Vec3, p2: &Vec3, q2: &Vec3) -> f64 {
    segment_closest_params(p1, q1, p2, q2).2.sqrt()
}

pub fn point_segment_distance(p: &Vec3, a: &Vec3, b: &Vec3) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = clamp01((p - a).dot(&ab) / len2);
    (p - (a + ab * t)).norm()
}

/// Closest point on triangle `abc` to `p` (Voronoi-region walk).
pub fn closest_point_on_triangle(p: &Vec3, a: &Vec3, b: &Vec3, c: &Vec3) -> Vec3 {
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return *a;
    }
    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return *b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return a + ab * v;
    }
    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return *c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return a + ac * w;
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return b + (c - b) * w;
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    a + ab * v + ac * w
}

/// True when the segment `pq` crosses the interior of triangle `abc` transversally.
fn segment_crosses_triangle(p: &Vec3, q: &Vec3, a: &Vec3, b: &Vec3, c: &Vec3) -> bool {
    let dir = q - p;
    let e1 = b - a;
    let e2 = c - a;
    let h = dir.cross(&e2);
    let det = e1.dot(&h);
    let scale = dir.norm() * e1.norm() * e2.norm();
    if det.abs() <= 1e-14 * scale {
        return false;
    }
    let inv = 1.0 / det;
    let s = p - a;
    let u = s.dot(&h) * inv;
    if !(0.0..=1.0).contains(&u) {
        return false;
    }
    let qv = s.cross(&e1);
    let v = dir.dot(&qv) * inv;
    if v < 0.0 || u + v > 1.0 {
        return false;
    }
    let t = e2.dot(&qv) * inv;
    (0.0..=1.0).contains(&t)
}

/// Distance between segment `pq` and the solid triangle `abc`.
pub fn segment_triangle_distance(p: &Vec3, q: &Vec3, a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    if segment_crosses_triangle(p, q, a, b, c) {
        return 0.0;
    }
    let mut best = (p - closest_point_on_triangle(p, a, b, c)).norm();
    best = best.min((q - closest_point_on_triangle(q, a, b, c)).norm());
    for (u, v) in [(a, b), (b, c), (c, a)] {
        best = best.min(segment_distance(p, q, u, v));
    }
    best
}

/// Exterior (turning) angle between consecutive directions `d_in` and `d_out`, in `[0, π]`.
pub fn turning_angle(d_in: &Vec3, d_out: &Vec3) -> f64 {
    let cross = d_in.cross(d_out).norm();
    let dot = d_in.dot(d_out);
    cross.atan2(dot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3::new(x, y, z)
    }

    #[test]
    fn skew_segments() {
        let d = segment_distance(
            &v(0.0, 0.0, 0.0),
            &v(1.0, 0.0, 0.0),
            &v(0.5, -1.0, 2.0),
            &v(0.5, 1.0, 2.0),
        );
        assert!((d - 2.0).abs() < 1e-15);
    }

    #[test]
    fn parallel_segments_use_endpoints() {
        let d = segment_distance(
            &v(0.0, 0.0, 0.0),
            &v(1.0, 0.0, 0.0),
            &v(2.0, 1.0, 0.0),
            &v(3.0, 1.0, 0.0),
        );
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        let d = segment_distance(
            &v(0.0, 0.0, 0.0),
            &v(1.0, 0.0, 0.0),
            &v(0.5, 1.0, 0.0),
            &v(3.0, 1.0, 0.0),
        );
        assert!((d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn crossing_segments_touch() {
        let d = segment_distance(
            &v(-1.0, 0.0, 0.0),
            &v(1.0, 0.0, 0.0),
            &v(0.0, -1.0, 0.0),
            &v(0.0, 1.0, 0.0),
        );
        assert_eq!(d, 0.0);
    }

    #[test]
    fn segment_piercing_triangle() {
        let (a, b, c) = (v(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0));
        assert_eq!(
            segment_triangle_distance(&v(0.2, 0.2, -1.0), &v(0.2, 0.2, 1.0), &a, &b, &c),
            0.0
        );
        let d = segment_triangle_distance(&v(2.0, 2.0, -1.0), &v(2.0, 2.0, 1.0), &a, &b, &c);
        assert!((d - 1.5 * 2f64.sqrt()).abs() < 1e-14);
        let d = segment_triangle_distance(&v(0.2, 0.2, 0.5), &v(0.3, 0.1, 0.5), &a, &b, &c);
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn turning_angles() {
        let x = v(1.0, 0.0, 0.0);
        assert_eq!(turning_angle(&x, &x), 0.0);
        assert!((turning_angle(&x, &v(0.0, 1.0, 0.0)) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
