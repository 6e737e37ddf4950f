//! Example curves: regular polygons, the comet, the Dragon's tooth, torus
//! knots, and the hairpin twist.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{apply_triangle_move, check_embedded, default_embed_tolerance, PolygonalCurve, TriangleMove, Vec3};

/// Default angular step for discretized circular arcs (radians).
pub const DEFAULT_ARC_STEP: f64 = 0.01;
/// Comet cap radius as a multiple of the half-gap between the segment ends.
pub const DEFAULT_COMET_CAP: f64 = 1.2;
pub const DEFAULT_TORUS_RADII: (f64, f64) = (2.0, 1.0);

/// Parameters for every generator, tagged by kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Ngon {
        n: usize,
        radius: f64,
    },
    Comet {
        phi: f64,
        segment_len: f64,
        arc_radius: Option<f64>,
        arc_samples: Option<usize>,
    },
    DragonsTooth {
        phi: f64,
        r: f64,
        #[serde(rename = "R")]
        big_r: f64,
        arc_samples: Option<usize>,
    },
    TorusKnot {
        p: i64,
        q: i64,
        n: usize,
        radii: (f64, f64),
    },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<PolygonalCurve> {
        match *self {
            GeneratorSpec::Ngon { n, radius } => make_ngon(n, radius),
            GeneratorSpec::Comet {
                phi,
                segment_len,
                arc_radius,
                arc_samples,
            } => make_comet(phi, segment_len, arc_radius, arc_samples),
            GeneratorSpec::DragonsTooth { phi, r, big_r, arc_samples } => make_dragons_tooth(phi, r, big_r, arc_samples),
            GeneratorSpec::TorusKnot { p, q, n, radii } => make_torus_knot(p, q, n, radii),
        }
    }
}

fn check_phi(phi: f64) -> Result<()> {
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::InvalidArgument(format!("corner angle {phi} must lie in (0, π)")));
    }
    Ok(())
}

fn positive(name: &str, x: f64) -> Result<()> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::InvalidArgument(format!("{name} = {x} must be positive")));
    }
    Ok(())
}

fn finish(vertices: Vec<Vec3>, name: &str) -> Result<PolygonalCurve> {
    let c = PolygonalCurve::new(vertices, true)?.with_name(name);
    let chk = check_embedded(&c, default_embed_tolerance(&c));
    if let Some((i, j)) = chk.offending {
        return Err(Error::Construction(format!("{name}: edges {i} and {j} collide")));
    }
    Ok(c)
}

/// Planar regular `n`-gon inscribed in a circle of the given radius.
pub fn make_ngon(n: usize, radius: f64) -> Result<PolygonalCurve> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n-gon needs n >= 3, got {n}")));
    }
    positive("radius", radius)?;
    let v = (0..n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n as f64;
            Vec3::new(radius * a.cos(), radius * a.sin(), 0.0)
        })
        .collect();
    finish(v, &format!("ngon-{n}"))
}

/// Comet: a corner of exterior angle `phi` at the origin joining two
/// segments of length `segment_len`, closed by a circular cap through the
/// segment ends that bulges away from the corner.
///
/// `arc_radius` defaults to [`DEFAULT_COMET_CAP`] times the half-gap between
/// the segment ends and must exceed that half-gap. The cap is the minor arc,
/// split into `arc_samples` steps (default: steps of at most
/// [`DEFAULT_ARC_STEP`] radians).
pub fn make_comet(phi: f64, segment_len: f64, arc_radius: Option<f64>, arc_samples: Option<usize>) -> Result<PolygonalCurve> {
    check_phi(phi)?;
    positive("segment_len", segment_len)?;
    let alpha = 0.5 * (PI - phi);
    let half_gap = segment_len * alpha.sin();
    let rho = arc_radius.unwrap_or(DEFAULT_COMET_CAP * half_gap);
    if !(rho > half_gap) {
        return Err(Error::InvalidArgument(format!(
            "cap radius {rho} must exceed the half-gap {half_gap}"
        )));
    }
    let xc = segment_len * alpha.cos() - (rho * rho - half_gap * half_gap).sqrt();
    let theta0 = half_gap.atan2(segment_len * alpha.cos() - xc);
    let steps = arc_samples.unwrap_or_else(|| (2.0 * theta0 / DEFAULT_ARC_STEP).ceil() as usize).max(2);
    let mut v = Vec::with_capacity(steps + 2);
    v.push(Vec3::zeros());
    // upper segment end first, sweeping through the far side of the cap
    v.push(Vec3::new(segment_len * alpha.cos(), half_gap, 0.0));
    for k in 1..steps {
        let a = theta0 - 2.0 * theta0 * k as f64 / steps as f64;
        v.push(Vec3::new(xc + rho * a.cos(), rho * a.sin(), 0.0));
    }
    v.push(Vec3::new(segment_len * alpha.cos(), -half_gap, 0.0));
    finish(v, "comet")
}

/// Dragon's tooth: two large arcs of radius `big_r` meeting at a corner of
/// exterior angle `phi` and bending away from the tooth's axis, closed by a
/// small arc of radius `r` tangent to both.
///
/// Each large arc gets `arc_samples` steps (default: steps of at most
/// [`DEFAULT_ARC_STEP`] radians); the small arc uses the same angular step.
/// The first chord of each large arc is tilted by half a step against the
/// tangent, so the tip angle of the polygon is exactly `phi`.
pub fn make_dragons_tooth(phi: f64, r: f64, big_r: f64, arc_samples: Option<usize>) -> Result<PolygonalCurve> {
    check_phi(phi)?;
    positive("r", r)?;
    positive("R", big_r)?;
    if r >= big_r {
        return Err(Error::InvalidArgument(format!("small radius {r} must be below R = {big_r}")));
    }
    let alpha = 0.5 * (PI - phi);
    // fixed point: tangent half-angle alpha_s with alpha_s + h/2 = alpha
    let mut alpha_s = alpha;
    let mut steps = 1usize;
    let mut h = 0.0;
    for _ in 0..50 {
        let theta_j = (alpha_s.cos() * big_r / (big_r + r)).acos();
        let beta = theta_j - alpha_s;
        if !(beta > 0.0) {
            return Err(Error::Construction("large arcs cannot reach the small arc".into()));
        }
        steps = arc_samples.unwrap_or_else(|| (beta / DEFAULT_ARC_STEP).ceil() as usize).max(1);
        h = beta / steps as f64;
        let next = alpha - 0.5 * h;
        if (next - alpha_s).abs() <= 1e-15 {
            alpha_s = next;
            break;
        }
        alpha_s = next;
    }
    if !(alpha_s > 0.0) {
        return Err(Error::Construction("corner too sharp for the arc resolution".into()));
    }
    let theta_j = (alpha_s.cos() * big_r / (big_r + r)).acos();
    let beta = theta_j - alpha_s;
    let h_big = beta / steps as f64;
    let centre = Vec3::new(big_r * alpha_s.cos(), big_r * alpha_s.sin(), 0.0);
    let big = |a: f64| centre - Vec3::new((alpha_s + a).cos(), (alpha_s + a).sin(), 0.0) * big_r;
    let right: Vec<Vec3> = (0..=steps)
        .map(|k| if k == 0 { Vec3::zeros() } else { big(h_big * k as f64) })
        .collect();
    let junction = right[steps];
    let small_c = junction - Vec3::new(theta_j.cos(), theta_j.sin(), 0.0) * r;
    let a0 = (junction.y - small_c.y).atan2(junction.x - small_c.x);
    // clockwise from a0 down round the bottom to the mirror angle π − a0
    let sweep = a0 - (PI - a0 - 2.0 * PI);
    let small_steps = ((sweep / h.max(1e-12)).ceil() as usize).max(2);
    let mut v = right.clone();
    for k in 1..small_steps {
        let a = a0 - sweep * k as f64 / small_steps as f64;
        v.push(Vec3::new(0.0, small_c.y, 0.0) + Vec3::new(a.cos(), a.sin(), 0.0) * r);
    }
    for k in (1..=steps).rev() {
        let p = right[k];
        v.push(Vec3::new(-p.x, p.y, 0.0));
    }
    finish(v, "dragons-tooth")
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `(p, q)` torus-knot polygon with `n` vertices at uniform parameter steps of
/// `((R + r cos qθ) cos pθ, (R + r cos qθ) sin pθ, r sin qθ)`.
pub fn make_torus_knot(p: i64, q: i64, n: usize, radii: (f64, f64)) -> Result<PolygonalCurve> {
    let (big_r, r) = radii;
    positive("R", big_r)?;
    positive("r", r)?;
    if r >= big_r {
        return Err(Error::InvalidArgument(format!("tube radius {r} must be below R = {big_r}")));
    }
    if gcd(p, q) != 1 {
        return Err(Error::InvalidArgument(format!("p = {p} and q = {q} are not coprime")));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 vertices, got {n}")));
    }
    let (pf, qf) = (p as f64, q as f64);
    let v = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            let rad = big_r + r * (qf * t).cos();
            Vec3::new(rad * (pf * t).cos(), rad * (pf * t).sin(), r * (qf * t).sin())
        })
        .collect();
    finish(v, &format!("torus-{p}-{q}")).map_err(|e| match e {
        Error::Construction(m) => Error::Construction(format!("{m}; {n} vertices are too few to embed")),
        other => other,
    })
}

/// Hairpin geometry for [`apply_twist`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistSpec {
    /// Gap between the hairpin's feet.
    pub eps: f64,
    /// Arclength of the loop between the feet; default half the edge length.
    pub loop_len: Option<f64>,
    /// Direction to push the loop; default tries eight directions normal to the edge.
    pub direction: Option<Vec3>,
}

impl TwistSpec {
    pub fn new(eps: f64) -> Self {
        Self {
            eps,
            loop_len: None,
            direction: None,
        }
    }
}

/// Pulls a narrow hairpin out of the middle of edge `edge`: two feet `eps`
/// apart joined by a loop of arclength `loop_len`, built as a chain of
/// triangle moves so the knot type is unchanged. The feet then form a chord
/// with quotient `loop_len / eps`.
pub fn apply_twist(curve: &PolygonalCurve, edge: usize, spec: &TwistSpec) -> Result<PolygonalCurve> {
    if edge >= curve.edge_count() {
        return Err(Error::InvalidArgument(format!("edge {edge} out of range")));
    }
    positive("eps_twist", spec.eps)?;
    let len = curve.edge_length(edge);
    let loop_len = spec.loop_len.unwrap_or(0.5 * len);
    if !(spec.eps < len) {
        return Err(Error::InvalidArgument(format!("eps_twist {} must be shorter than the edge ({len})", spec.eps)));
    }
    if !(loop_len > spec.eps) {
        return Err(Error::InvalidArgument(format!("loop length {loop_len} must exceed eps_twist {}", spec.eps)));
    }
    let (a, b) = curve.edge(edge);
    let u = (b - a) / len;
    let mid = a + (b - a) * 0.5;
    let depth = 0.5 * (loop_len - spec.eps);
    let directions: Vec<Vec3> = match spec.direction {
        Some(d) => {
            let n = d - u * d.dot(&u);
            if n.norm() <= 1e-12 * d.norm() {
                return Err(Error::InvalidArgument("twist direction is parallel to the edge".into()));
            }
            vec![n.normalize()]
        }
        None => {
            let seed = if u.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
            let p1 = u.cross(&seed).normalize();
            let p2 = u.cross(&p1);
            (0..8)
                .map(|k| {
                    let t = PI * k as f64 / 4.0;
                    p1 * t.cos() + p2 * t.sin()
                })
                .collect()
        }
    };
    let m1 = mid - u * (0.5 * spec.eps);
    let m2 = mid + u * (0.5 * spec.eps);
    let mut last_err = None;
    for n in directions {
        let x = mid + n * depth;
        let y1 = m1 + n * depth;
        let y2 = m2 + n * depth;
        // vertices after the inserts: a, m1, [y1,] x, [y2,] m2, b
        let e = edge;
        let moves = [
            TriangleMove::Insert { edge: e, point: m1 },
            TriangleMove::Insert { edge: e + 1, point: m2 },
            TriangleMove::Insert { edge: e + 1, point: x },
            TriangleMove::Insert { edge: e + 1, point: y1 },
            TriangleMove::Insert { edge: e + 3, point: y2 },
            TriangleMove::Remove { vertex: e + 3 },
        ];
        let mut c = curve.clone();
        let mut ok = true;
        for mv in &moves {
            match apply_triangle_move(&c, mv) {
                Ok(next) => c = next,
                Err(err) => {
                    last_err = Some(err);
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(c);
        }
    }
    Err(Error::Construction(format!(
        "no twist fits on edge {edge}: {}",
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}
