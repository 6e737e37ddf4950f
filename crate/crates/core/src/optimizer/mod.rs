//! Length-decreasing moves, the constraint set `U_C`, annealing and the
//! saturation diagnostic.

mod anneal;
mod saturation;

pub use anneal::{
    anneal, anneal_observed, AnnealConfig, AnnealOutcome, AnnealTrace, MoveKind, MoveWeights, Objective, Schedule, Tolerances,
    TraceRecord,
};
pub use saturation::{saturation_report, SaturationReport, WindowReport, DEFAULT_KAPPA_MIN, DEFAULT_WINDOWS};

use serde::Serialize;

use crate::curvature::{closed_interval_curvature, curvature_measure, total_curvature, Interval};
use crate::distortion::{finite_or_inf, sup_search, thickness, DEFAULT_TOL_ARGMAX};
use crate::error::{Error, Result};
use crate::geometry::{
    apply_triangle_move, check_embedded, default_embed_tolerance, segment_distance, turning_angle, ChordPair,
    PolygonalCurve, TriangleMove,
};

/// Slack on the "no increase outside the interval" check, relative to dq.
const OUTSIDE_SLACK: f64 = 1e-9;
/// Uniform samples per region used by [`prop1_certificate`].
const CERT_SAMPLES_IN: usize = 96;
const CERT_SAMPLES_FULL: usize = 384;
const CERT_SAMPLES_OUT: usize = 160;

/// Membership diagnostics for `U_C`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UcReport {
    pub member: bool,
    pub closed: bool,
    pub embedded: bool,
    pub delta: f64,
    #[serde(serialize_with = "finite_or_inf")]
    pub thickness: f64,
    /// Why membership failed.
    pub reason: Option<String>,
}

/// `δ < C` and `τ_b ≥ τ_min` on a closed embedded curve.
pub fn in_uc(curve: &PolygonalCurve, c: f64, b: f64, tau_min: f64) -> Result<UcReport> {
    in_uc_tol(curve, c, b, tau_min, 0.0)
}

/// [`in_uc`] with absolute slack `tol` on both constraints.
pub fn in_uc_tol(curve: &PolygonalCurve, c: f64, b: f64, tau_min: f64, tol: f64) -> Result<UcReport> {
    let mut report = UcReport {
        member: false,
        closed: curve.is_closed(),
        embedded: false,
        delta: f64::NAN,
        thickness: f64::NAN,
        reason: None,
    };
    if !curve.is_closed() {
        report.reason = Some("open curves are not knots".into());
        return Ok(report);
    }
    let emb = check_embedded(curve, default_embed_tolerance(curve));
    report.embedded = emb.embedded;
    if let Some((i, j)) = emb.offending {
        report.reason = Some(format!("not embedded: edges {i} and {j}"));
        return Ok(report);
    }
    report.delta = sup_search(curve, DEFAULT_TOL_ARGMAX).delta;
    report.thickness = thickness(curve, b)?;
    if !(report.delta < c + tol) {
        report.reason = Some(format!("distortion {} is not below {c}", report.delta));
    } else if !(report.thickness >= tau_min - tol) {
        report.reason = Some(format!("thickness {} is below {tau_min}", report.thickness));
    } else {
        report.member = true;
    }
    Ok(report)
}

/// Largest corner angle `K₀(ε)` with `sec(K₀/2) = 1 + ε/2`: arcs of smaller
/// curvature change dq by less than `ε` under inscription.
pub fn case1_curvature_budget(eps: f64) -> f64 {
    2.0 * (1.0 / (1.0 + 0.5 * eps)).acos()
}

/// Vertex indices strictly inside `iv`, in curve order.
fn vertices_inside(curve: &PolygonalCurve, iv: &Interval) -> Vec<usize> {
    let n = curve.vertex_count();
    let len = curve.length();
    let mut hits: Vec<(f64, usize)> = (0..n)
        .filter_map(|k| {
            let p = curve.vertex_param(k);
            let rel = if curve.is_closed() { (p - iv.lo).rem_euclid(len) } else { p - iv.lo };
            (rel > 0.0 && rel < iv.len()).then_some((rel, k))
        })
        .collect();
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    hits.into_iter().map(|(_, k)| k).collect()
}

/// Arclength from vertex `a` forward to vertex `b`.
fn forward_arc(curve: &PolygonalCurve, a: usize, b: usize) -> f64 {
    let d = curve.vertex_param(b) - curve.vertex_param(a);
    if d < 0.0 {
        d + curve.length()
    } else {
        d
    }
}

fn exterior_angle_at(curve: &PolygonalCurve, k: usize) -> f64 {
    let n = curve.vertex_count();
    turning_angle(&curve.edge_direction((k + n - 1) % n), &curve.edge_direction(k))
}

/// Deviation budget `ε'` for inscribing inside `iv` so that dq rises by less
/// than `eps`.
///
/// Pairs reaching into the guard band `(lo − guard, hi + guard)` are covered
/// by the Denne–Sullivan bound as long as the band's curvature stays below
/// [`case1_curvature_budget`]; pairs reaching past it have chords of at least
/// `m`, so their dq grows by at most `δ ε' / (m − ε')`.
pub fn prop1_eps_prime(curve: &PolygonalCurve, iv: &Interval, guard: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) || !(guard >= 0.0) {
        return Err(Error::InvalidArgument(format!("ε = {eps} and guard = {guard} must be positive")));
    }
    let inside = vertices_inside(curve, iv);
    if inside.len() < 2 {
        return Err(Error::NoOp("fewer than two vertices inside the interval".into()));
    }
    let len = curve.length();
    let (c_hat, d_hat) = (inside[0], inside[inside.len() - 1]);
    let lo = curve.vertex_param(c_hat);
    let hi = lo + forward_arc(curve, c_hat, d_hat);
    let moved = curve.sub_arc(lo, hi)?;
    let (g_lo, g_hi) = (iv.lo - guard, iv.hi + guard);
    let mut outside = Vec::new();
    if curve.is_closed() {
        if g_hi - g_lo < len {
            outside.push(curve.sub_arc(g_hi, g_lo + len)?);
        }
    } else {
        if g_lo > 0.0 {
            outside.push(curve.sub_arc(0.0, g_lo)?);
        }
        if g_hi < len {
            outside.push(curve.sub_arc(g_hi, len)?);
        }
    }
    let mut m = len;
    for part in &outside {
        for i in 0..moved.edge_count() {
            let (a0, a1) = moved.edge(i);
            for j in 0..part.edge_count() {
                let (b0, b1) = part.edge(j);
                m = m.min(segment_distance(&a0, &a1, &b0, &b1));
            }
        }
    }
    let delta = sup_search(curve, DEFAULT_TOL_ARGMAX).delta;
    Ok(0.99 * (0.25 * m).min(eps * m / (4.0 * delta)))
}

/// Replaces the vertices strictly between the first and last vertex inside
/// `iv` by an inscribed sub-polygon that stays within `eps_prime` of the
/// original, removing vertices greedily.
pub fn inscribe_arc(curve: &PolygonalCurve, iv: &Interval, eps_prime: f64) -> Result<PolygonalCurve> {
    if !(eps_prime > 0.0) {
        return Err(Error::InvalidArgument(format!("ε' = {eps_prime} must be positive")));
    }
    let chain = vertices_inside(curve, iv);
    if chain.len() < 3 {
        return Err(Error::NoOp("interval holds a single segment".into()));
    }
    let bend: f64 = chain[1..chain.len() - 1]
        .iter()
        .map(|&k| exterior_angle_at(curve, k))
        .sum();
    if bend <= 0.0 {
        return Err(Error::NoOp("arc inside the interval is straight".into()));
    }

    // deviation of vertex m from the chord a→b under the proportional parametrization
    let fits = |a: usize, b: usize, between: &[usize]| -> bool {
        let (pa, pb) = (curve.vertex(a), curve.vertex(b));
        let total = forward_arc(curve, a, b);
        between.iter().all(|&m| {
            let f = forward_arc(curve, a, m) / total;
            (curve.vertex(m) - (pa + (pb - pa) * f)).norm() < eps_prime
        })
    };
    let mut removed = Vec::new();
    let mut anchor = 0;
    let mut p = 1;
    while p + 1 < chain.len() {
        if fits(chain[anchor], chain[p + 1], &chain[anchor + 1..=p]) {
            removed.push(chain[p]);
            p += 1;
        } else {
            anchor = p;
            p += 1;
        }
    }
    if removed.is_empty() {
        return Err(Error::NoOp(format!("no vertex can be dropped within ε' = {eps_prime}")));
    }

    let mut ids: Vec<usize> = (0..curve.vertex_count()).collect();
    let mut out = curve.clone();
    for id in removed {
        let at = ids.iter().position(|&x| x == id).expect("vertex present");
        out = apply_triangle_move(&out, &TriangleMove::Remove { vertex: at })?;
        ids.remove(at);
    }
    if !(out.length() < curve.length()) {
        return Err(Error::NoOp("inscription did not shorten the curve".into()));
    }
    let (k_before, k_after) = (total_curvature(curve), total_curvature(&out));
    if k_after > k_before + 1e-12 * k_before.max(1.0) {
        return Err(Error::MoveRejected(format!(
            "total curvature rose from {k_before} to {k_after}"
        )));
    }
    Ok(out)
}

/// Slides corner `vertex` along its longer edge by `eps_cut` times the
/// shorter edge's length, cutting the corner.
pub fn shorten_corner(curve: &PolygonalCurve, vertex: usize, eps_cut: f64) -> Result<PolygonalCurve> {
    let n = curve.vertex_count();
    if vertex >= n || (!curve.is_closed() && (vertex == 0 || vertex == n - 1)) {
        return Err(Error::InvalidArgument(format!("vertex {vertex} is not an interior corner")));
    }
    if !(0.0..1.0).contains(&eps_cut) {
        return Err(Error::InvalidArgument(format!(
            "ε_cut = {eps_cut} must lie in [0, 1); 1 collapses the corner onto an endpoint"
        )));
    }
    let phi = exterior_angle_at(curve, vertex);
    if phi <= 0.0 {
        return Err(Error::NoOp(format!("vertex {vertex} is not a corner")));
    }
    if phi >= std::f64::consts::PI {
        return Err(Error::InvalidArgument(format!("vertex {vertex} folds back on itself")));
    }
    if eps_cut == 0.0 {
        return Ok(curve.clone());
    }
    let v = curve.vertex(vertex);
    let prev = curve.vertex((vertex + n - 1) % n);
    let next = curve.vertex((vertex + 1) % n);
    let (short, long) = if (prev - v).norm() <= (next - v).norm() { (prev, next) } else { (next, prev) };
    let reach = (short - v).norm();
    let x = v + (long - v).normalize() * reach;
    let to = v + (x - v) * eps_cut;
    let out = apply_triangle_move(curve, &TriangleMove::Shift { vertex, to })?;
    if !(out.length() < curve.length()) || !(exterior_angle_at(&out, vertex) < phi) {
        return Err(Error::NoOp(format!("ε_cut = {eps_cut} is too small to change the corner")));
    }
    Ok(out)
}

/// Sampled check that `after` is a valid length-decreasing replacement of `before` on `iv`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop1Report {
    pub ok: bool,
    pub length_before: f64,
    pub length_after: f64,
    /// Largest `dq_after − dq_before` over pairs touching the interval.
    pub max_increase_inside: f64,
    /// Largest `dq_after − dq_before` over pairs with both points outside.
    pub max_increase_outside: f64,
    /// Pair (in `before` parameters) realizing the worst violation.
    pub offending: Option<ChordPair>,
    pub pairs_checked: usize,
}

/// Piecewise-linear map from `before` parameters to `after` parameters,
/// pinned at vertices the two curves share.
struct ParamMap {
    closed: bool,
    from: Vec<f64>,
    to: Vec<f64>,
    len_from: f64,
    len_to: f64,
}

impl ParamMap {
    fn new(before: &PolygonalCurve, after: &PolygonalCurve) -> Self {
        let mut from = Vec::new();
        let mut to = Vec::new();
        let mut next = 0;
        for (k, v) in before.vertices().iter().enumerate() {
            if let Some(off) = after.vertices()[next..].iter().position(|w| w == v) {
                next += off;
                from.push(before.vertex_param(k));
                to.push(after.vertex_param(next));
                next += 1;
                if next == after.vertex_count() {
                    break;
                }
            }
        }
        let (len_from, len_to) = (before.length(), after.length());
        if from.len() < 2 {
            from = vec![0.0, len_from];
            to = vec![0.0, len_to];
        } else if !before.is_closed() {
            // open curves keep their endpoints in correspondence
            if from[0] > 0.0 {
                from.insert(0, 0.0);
                to.insert(0, 0.0);
            }
            if *from.last().unwrap() < len_from {
                from.push(len_from);
                to.push(len_to);
            }
        }
        Self {
            closed: before.is_closed(),
            from,
            to,
            len_from,
            len_to,
        }
    }

    fn map(&self, s: f64) -> f64 {
        let (mut xs, mut ys) = (self.from.clone(), self.to.clone());
        let mut s = s;
        if self.closed {
            xs.push(self.from[0] + self.len_from);
            ys.push(self.to[0] + self.len_to);
            if s < xs[0] {
                s += self.len_from;
            }
        }
        let k = xs.partition_point(|&x| x <= s).clamp(1, xs.len() - 1);
        let (x0, x1, y0, y1) = (xs[k - 1], xs[k], ys[k - 1], ys[k]);
        let f = if x1 > x0 { (s - x0) / (x1 - x0) } else { 0.0 };
        let t = y0 + (y1 - y0) * f;
        if self.closed {
            t.rem_euclid(self.len_to).min(self.len_to)
        } else {
            t.clamp(0.0, self.len_to)
        }
    }
}

fn dq_at(curve: &PolygonalCurve, s: f64, t: f64) -> f64 {
    let p = ChordPair::new(s, t);
    let arc = curve.arc_distance(p).unwrap_or(f64::NAN);
    let chord = curve.chord_distance(p).unwrap_or(f64::NAN);
    if arc == 0.0 {
        1.0
    } else if chord == 0.0 {
        f64::INFINITY
    } else {
        arc / chord
    }
}

/// Checks `Len(after) ≤ Len(before)`, `dq_after − dq_before < eps` on sampled
/// pairs with a point in `iv`, and no dq increase on pairs outside `iv`.
pub fn prop1_certificate(before: &PolygonalCurve, after: &PolygonalCurve, iv: &Interval, eps: f64) -> Prop1Report {
    let len = before.length();
    let map = ParamMap::new(before, after);
    let wrap = |s: f64| if before.is_closed() { s.rem_euclid(len) } else { s.clamp(0.0, len) };
    let in_iv = |s: f64| {
        let rel = if before.is_closed() { (s - iv.lo).rem_euclid(len) } else { s - iv.lo };
        rel > 0.0 && rel < iv.len()
    };
    let vertex_params = (0..before.vertex_count()).map(|k| before.vertex_param(k));
    let mut inside: Vec<f64> = (1..CERT_SAMPLES_IN)
        .map(|k| wrap(iv.lo + iv.len() * k as f64 / CERT_SAMPLES_IN as f64))
        .chain(vertex_params.clone().filter(|&s| in_iv(s)))
        .collect();
    inside.sort_by(f64::total_cmp);
    let full: Vec<f64> = (0..CERT_SAMPLES_FULL)
        .map(|k| len * k as f64 / CERT_SAMPLES_FULL as f64)
        .chain(vertex_params)
        .collect();
    let outside: Vec<f64> = if before.is_closed() {
        let gap = len - iv.len();
        (0..=CERT_SAMPLES_OUT)
            .map(|k| wrap(iv.hi + gap * k as f64 / CERT_SAMPLES_OUT as f64))
            .collect()
    } else {
        (0..=CERT_SAMPLES_OUT)
            .map(|k| len * k as f64 / CERT_SAMPLES_OUT as f64)
            .filter(|&s| !in_iv(s))
            .collect()
    };

    let min_chord = 1e-9 * len;
    let increase = |s: f64, t: f64| -> Option<f64> {
        let p = ChordPair::new(s, t);
        if before.chord_distance(p).ok()? <= min_chord {
            return None;
        }
        Some(dq_at(after, map.map(s), map.map(t)) - dq_at(before, s, t))
    };

    let mut report = Prop1Report {
        ok: false,
        length_before: len,
        length_after: after.length(),
        max_increase_inside: 0.0,
        max_increase_outside: 0.0,
        offending: None,
        pairs_checked: 0,
    };
    let mut worst_in = (f64::NEG_INFINITY, None);
    for &s in &inside {
        for &t in &full {
            if let Some(d) = increase(s, t) {
                report.pairs_checked += 1;
                if !(d <= worst_in.0) {
                    worst_in = (d, Some(ChordPair::new(s, t)));
                }
            }
        }
    }
    let mut max_out = f64::NEG_INFINITY;
    let mut worst_out = (0.0, None);
    for (a, &s) in outside.iter().enumerate() {
        for &t in &outside[a + 1..] {
            if let Some(d) = increase(s, t) {
                report.pairs_checked += 1;
                max_out = max_out.max(d);
                let excess = d - OUTSIDE_SLACK * dq_at(before, s, t);
                if !(excess <= worst_out.0) {
                    worst_out = (excess, Some(ChordPair::new(s, t)));
                }
            }
        }
    }
    report.max_increase_inside = worst_in.0.max(0.0);
    report.max_increase_outside = max_out.max(0.0);
    let shorter = report.length_after <= report.length_before;
    let inside_ok = worst_in.0 < eps;
    let outside_ok = !(worst_out.0 > 0.0);
    report.ok = shorter && inside_ok && outside_ok;
    if !inside_ok {
        report.offending = worst_in.1;
    } else if !outside_ok {
        report.offending = worst_out.1;
    }
    report
}

/// `𝒦([c, d])` for the inscription precondition `𝒦 < K₀(ε)`.
pub fn interval_bend(curve: &PolygonalCurve, iv: &Interval) -> f64 {
    closed_interval_curvature(&curvature_measure(curve), iv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec3;
    use crate::distortion::normalize_thickness;
    use crate::generators::{make_comet, make_ngon};
    use std::f64::consts::PI;

    fn arc_polyline(samples: usize) -> PolygonalCurve {
        let v = (0..samples)
            .map(|k| {
                let a = PI * k as f64 / (samples - 1) as f64;
                Vec3::new(a.cos(), a.sin(), 0.0)
            })
            .collect();
        PolygonalCurve::new(v, false).unwrap()
    }

    fn corner(phi: f64) -> PolygonalCurve {
        // unit edges symmetric about the y axis, exterior angle φ at the origin
        let h = 0.5 * (PI - phi);
        PolygonalCurve::new(
            vec![Vec3::new(-h.sin(), h.cos(), 0.0), Vec3::zeros(), Vec3::new(h.sin(), h.cos(), 0.0)],
            false,
        )
        .unwrap()
    }

    #[test]
    fn uc_membership_of_the_circle() {
        let b = PI / 2.0 - 1e-3;
        let c = normalize_thickness(&make_ngon(128, 1.0).unwrap(), b).unwrap();
        let r = in_uc_tol(&c, 2.0, b, 1.0, 1e-9).unwrap();
        assert!(r.member, "{r:?}");
        let r = in_uc(&c, 1.5, b, 1.0).unwrap();
        assert!(!r.member);
        assert!(r.reason.unwrap().contains("distortion"));
    }

    #[test]
    fn open_curves_are_not_members() {
        let line = PolygonalCurve::new(vec![Vec3::zeros(), Vec3::x(), Vec3::x() * 2.0], false).unwrap();
        let r = in_uc(&line, 2.0, 2.0, 1.0).unwrap();
        assert!(!r.member && !r.closed);
    }

    #[test]
    fn semicircle_inscription() {
        let c = arc_polyline(65);
        let iv = Interval::new(0.0, c.length()).unwrap();
        let out = inscribe_arc(&c, &iv, 0.1).unwrap();
        assert!(out.vertex_count() < 65);
        assert!(out.length() < c.length());
        assert!(total_curvature(&out) <= total_curvature(&c) + 1e-12);
        let map = ParamMap::new(&c, &out);
        for k in 0..c.vertex_count() {
            let d = (out.point_at(map.map(c.vertex_param(k))).unwrap() - c.vertex(k)).norm();
            assert!(d < 0.1, "{d}");
        }
    }

    #[test]
    fn straight_arc_is_a_noop() {
        let c = PolygonalCurve::new((0..6).map(|k| Vec3::new(k as f64, 0.0, 0.0)).collect(), false).unwrap();
        let iv = Interval::new(0.5, 4.5).unwrap();
        assert!(matches!(inscribe_arc(&c, &iv, 0.1), Err(Error::NoOp(_))));
    }

    #[test]
    fn pinched_inscription_is_rejected() {
        // a bump over a rod: cutting the bump would pass through the rod
        let mut v: Vec<Vec3> = (0..=16)
            .map(|k| {
                let a = PI * k as f64 / 16.0;
                Vec3::new(-a.cos(), 0.0, a.sin())
            })
            .collect();
        v.push(Vec3::new(1.0, 0.0, -1.0));
        v.push(Vec3::new(0.0, -2.0, -1.0));
        v.push(Vec3::new(0.0, -2.0, 0.5));
        v.push(Vec3::new(0.0, 2.0, 0.5));
        v.push(Vec3::new(0.0, 2.0, -1.0));
        v.push(Vec3::new(-1.0, 0.0, -1.0));
        let c = PolygonalCurve::new(v, true).unwrap();
        let iv = Interval::new(0.01, c.vertex_param(16) - 0.01).unwrap();
        assert!(matches!(inscribe_arc(&c, &iv, 2.0), Err(Error::MoveRejected(_))));
    }

    #[test]
    fn symmetric_corner_cut() {
        let phi = 2.0 * PI / 3.0;
        let c = corner(phi);
        let out = shorten_corner(&c, 1, 0.1).unwrap();
        assert!(out.length() < c.length());
        // oracle: new corner at w = 0.1·(x, y), new angle from direct trigonometry
        let h = 0.5 * (PI - phi);
        let (x, y) = (h.sin(), h.cos());
        let w = Vec3::new(0.1 * x, 0.1 * y, 0.0);
        let d_in = (w - Vec3::new(-x, y, 0.0)).normalize();
        let d_out = (Vec3::new(x, y, 0.0) - w).normalize();
        let want = d_in.dot(&d_out).clamp(-1.0, 1.0).acos();
        let got = exterior_angle_at(&out, 1);
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        assert!(got < phi);
        assert!(1.0 / (0.5 * got).cos() < 2.0);
    }

    #[test]
    fn corner_cut_edge_cases() {
        let c = corner(2.0);
        assert_eq!(shorten_corner(&c, 1, 0.0).unwrap(), c);
        assert!(shorten_corner(&c, 1, 1.0).is_err());
        assert!(shorten_corner(&c, 0, 0.5).is_err());
        let flat = PolygonalCurve::new(vec![Vec3::zeros(), Vec3::x(), Vec3::x() * 2.0], false).unwrap();
        assert!(matches!(shorten_corner(&flat, 1, 0.5), Err(Error::NoOp(_))));
    }

    #[test]
    fn certificate_on_identical_curves() {
        let c = make_ngon(32, 1.0).unwrap();
        let iv = Interval::new(0.5, 1.5).unwrap();
        let r = prop1_certificate(&c, &c, &iv, 1e-6);
        assert!(r.ok, "{r:?}");
        assert_eq!(r.max_increase_inside, 0.0);
        assert_eq!(r.max_increase_outside, 0.0);
    }

    #[test]
    fn certificate_after_inscribing_the_comet_arc() {
        let c = make_comet(2.0 * PI / 3.0, 1.0, None, Some(200)).unwrap();
        // an interval well inside the cap
        let mid = c.vertex_param(100);
        let iv = Interval::new(mid - 0.1, mid + 0.1).unwrap();
        let band = Interval::new(mid - 0.2, mid + 0.2).unwrap();
        let eps = 2.02 * (1.0 / (0.5 * interval_bend(&c, &band)).cos() - 1.0) + 1e-6;
        assert!(interval_bend(&c, &band) < case1_curvature_budget(eps));
        let ep = prop1_eps_prime(&c, &iv, 0.1, eps).unwrap();
        let out = inscribe_arc(&c, &iv, ep).unwrap();
        let r = prop1_certificate(&c, &out, &iv, eps);
        assert!(r.ok, "{r:?}");
        assert!(r.length_after < r.length_before);
    }

    #[test]
    fn certificate_catches_a_drag_toward_another_strand() {
        // push a stretch of the 64-gon toward the opposite side
        let c = make_ngon(64, 1.0).unwrap();
        let mut v = c.vertices().to_vec();
        for p in &mut v[14..=18] {
            *p *= 0.1;
        }
        let after = c.with_vertices(v).unwrap();
        let iv = Interval::new(c.vertex_param(13), c.vertex_param(19)).unwrap();
        let r = prop1_certificate(&c, &after, &iv, 0.1);
        assert!(!r.ok);
        assert!(r.offending.is_some());
        assert!(r.max_increase_inside >= 0.1);
    }
}
