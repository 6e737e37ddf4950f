//! Polygonal curve model, arclength parametrization and embedding predicates.
//!
//! A [`PolygonalCurve`] is an immutable vertex list with a precomputed
//! arclength table. Parameters are arclength: `[0, L]` on open curves and
//! the circle `[0, L)` on closed ones.

mod primitives;
mod triangle;

pub use primitives::{
    closest_point_on_triangle, point_segment_distance, segment_closest_params, segment_distance,
    segment_triangle_distance, turning_angle,
};
pub use triangle::{
    apply_triangle_move, triangle_move_valid, triangle_obstruction, TriangleCheck, TriangleMove,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec3 = nalgebra::Vector3<f64>;

/// Relative tolerance used when deciding whether an open-curve parameter is in range.
const PARAM_SLACK: f64 = 1e-12;

/// Default embedding tolerance, relative to total curve length.
pub const DEFAULT_EMBED_REL: f64 = 1e-9;

/// A pair of arclength parameters `(s, t)` naming the chord between `γ(s)` and `γ(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChordPair {
    pub s: f64,
    pub t: f64,
}

impl ChordPair {
    pub fn new(s: f64, t: f64) -> Self {
        Self { s, t }
    }

    pub fn swapped(self) -> Self {
        Self { s: self.t, t: self.s }
    }
}

/// Ordered vertex list in 3-space, open or closed.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonalCurve {
    vertices: Vec<Vec3>,
    closed: bool,
    name: Option<String>,
    /// `cum[k]` is the arclength at vertex `k`; one extra entry holds the total length.
    cum: Vec<f64>,
}

impl PolygonalCurve {
    /// Builds a curve, checking vertex count and that no edge has zero length.
    pub fn new(vertices: Vec<Vec3>, closed: bool) -> Result<Self> {
        let min = if closed { 3 } else { 2 };
        if vertices.len() < min {
            return Err(Error::InvalidCurve(format!(
                "{} curve needs at least {min} vertices, got {}",
                if closed { "closed" } else { "open" },
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.iter().all(|c| c.is_finite())) {
            return Err(Error::InvalidCurve("non-finite vertex coordinate".into()));
        }
        let n_edges = if closed { vertices.len() } else { vertices.len() - 1 };
        let mut cum = Vec::with_capacity(n_edges + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        for i in 0..n_edges {
            let a = vertices[i];
            let b = vertices[(i + 1) % vertices.len()];
            let len = (b - a).norm();
            if len == 0.0 {
                return Err(Error::InvalidCurve(format!(
                    "vertices {i} and {} coincide",
                    (i + 1) % vertices.len()
                )));
            }
            acc += len;
            cum.push(acc);
        }
        Ok(Self {
            vertices,
            closed,
            name: None,
            cum,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn vertex(&self, k: usize) -> Vec3 {
        self.vertices[k % self.vertices.len()]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn edge_count(&self) -> usize {
        self.cum.len() - 1
    }

    /// Total arclength `Len(γ)`.
    pub fn length(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    /// Endpoints of edge `i`.
    pub fn edge(&self, i: usize) -> (Vec3, Vec3) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        self.cum[i + 1] - self.cum[i]
    }

    /// Unit direction of edge `i`.
    pub fn edge_direction(&self, i: usize) -> Vec3 {
        let (a, b) = self.edge(i);
        (b - a) / (b - a).norm()
    }

    /// Arclength parameter of vertex `k` (`0` for the first vertex).
    pub fn vertex_param(&self, k: usize) -> f64 {
        self.cum[k]
    }

    /// Cumulative arclength table, one entry per vertex plus the total length.
    pub fn arclength_table(&self) -> &[f64] {
        &self.cum
    }

    /// Reduces a parameter to the canonical range: `[0, L)` for closed curves,
    /// `[0, L]` for open curves (error when outside).
    pub fn canonical_param(&self, s: f64) -> Result<f64> {
        let len = self.length();
        if !s.is_finite() {
            return Err(Error::ParamOutOfRange { s, length: len });
        }
        if self.closed {
            let r = s.rem_euclid(len);
            Ok(if r >= len { 0.0 } else { r })
        } else {
            let slack = PARAM_SLACK * len;
            if s < -slack || s > len + slack {
                Err(Error::ParamOutOfRange { s, length: len })
            } else {
                Ok(s.clamp(0.0, len))
            }
        }
    }

    /// Edge containing canonical parameter `s` and the offset along it.
    pub fn locate(&self, s: f64) -> (usize, f64) {
        let n = self.edge_count();
        // partition_point gives the first vertex with cum > s
        let k = self.cum[..n].partition_point(|&c| c <= s);
        let i = k.saturating_sub(1).min(n - 1);
        (i, (s - self.cum[i]).clamp(0.0, self.edge_length(i)))
    }

    /// `γ(s)` by linear interpolation on the containing edge.
    pub fn point_at(&self, s: f64) -> Result<Vec3> {
        let s = self.canonical_param(s)?;
        Ok(self.point_at_canonical(s))
    }

    pub(crate) fn point_at_canonical(&self, s: f64) -> Vec3 {
        let (i, off) = self.locate(s);
        let (a, b) = self.edge(i);
        let len = self.edge_length(i);
        if off >= len {
            b
        } else {
            a + (b - a) * (off / len)
        }
    }

    /// Intrinsic distance `d(γ(s), γ(t); γ)`.
    pub fn arc_distance(&self, p: ChordPair) -> Result<f64> {
        let s = self.canonical_param(p.s)?;
        let t = self.canonical_param(p.t)?;
        Ok(self.arc_distance_canonical(s, t))
    }

    pub(crate) fn arc_distance_canonical(&self, s: f64, t: f64) -> f64 {
        let d = (t - s).abs();
        if self.closed {
            d.min(self.length() - d)
        } else {
            d
        }
    }

    /// Euclidean distance `‖γ(s) − γ(t)‖`.
    pub fn chord_distance(&self, p: ChordPair) -> Result<f64> {
        Ok((self.point_at(p.s)? - self.point_at(p.t)?).norm())
    }

    /// Uniformly scaled copy `λγ` (scaling about the origin).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::InvalidArgument(format!("scale factor {factor} must be positive")));
        }
        let mut c = Self::new(self.vertices.iter().map(|v| v * factor).collect(), self.closed)?;
        c.name = self.name.clone();
        Ok(c)
    }

    /// Copy with new vertices, keeping closedness and name.
    pub fn with_vertices(&self, vertices: Vec<Vec3>) -> Result<Self> {
        let mut c = Self::new(vertices, self.closed)?;
        c.name = self.name.clone();
        Ok(c)
    }

    /// Edges `i, j` share a vertex.
    pub fn edges_adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.edge_count();
        if i == j {
            return false;
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        hi == lo + 1 || (self.closed && lo == 0 && hi == n - 1 && n > 2)
    }

    /// Open sub-polyline `γ([lo, hi])`.
    ///
    /// For closed curves `hi` may exceed `L` (the arc wraps through vertex 0),
    /// as long as `hi − lo ≤ L`.
    pub fn sub_arc(&self, lo: f64, hi: f64) -> Result<PolygonalCurve> {
        let len = self.length();
        if !(hi > lo) {
            return Err(Error::InvalidArgument(format!("empty arc [{lo}, {hi}]")));
        }
        if self.closed {
            if hi - lo > len * (1.0 + PARAM_SLACK) {
                return Err(Error::InvalidArgument("arc longer than the curve".into()));
            }
        } else {
            self.canonical_param(lo)?;
            self.canonical_param(hi)?;
        }
        let tiny = 1e-12 * len;
        let mut pts = vec![self.point_at(lo)?];
        let n = self.vertex_count();
        let laps: &[f64] = if self.closed { &[0.0, 1.0, 2.0] } else { &[0.0] };
        for &lap in laps {
            for k in 0..n {
                let s = self.cum[k] + lap * len;
                if s > lo + tiny && s < hi - tiny {
                    pts.push(self.vertices[k]);
                }
            }
        }
        if !self.closed {
            let last = self.vertices[n - 1];
            if len > lo + tiny && len < hi - tiny {
                pts.push(last);
            }
        }
        pts.push(self.point_at(hi)?);
        pts.dedup_by(|a, b| (*a - *b).norm() <= tiny);
        PolygonalCurve::new(pts, false)
    }
}

/// Result of an embedding scan.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingCheck {
    pub embedded: bool,
    /// First offending edge pair in scan order.
    pub offending: Option<(usize, usize)>,
    /// Smallest distance found between non-adjacent edges (∞ when there are none).
    pub min_distance: f64,
}

/// Default embedding tolerance for `curve`: `10⁻⁹ · Len(γ)`.
pub fn default_embed_tolerance(curve: &PolygonalCurve) -> f64 {
    DEFAULT_EMBED_REL * curve.length()
}

/// Exhaustive segment-pair check that non-adjacent edges stay at least `eps`
/// apart and adjacent edges meet only at their shared vertex.
pub fn check_embedded(curve: &PolygonalCurve, eps: f64) -> EmbeddingCheck {
    let n = curve.edge_count();
    let mut min_distance = f64::INFINITY;
    let mut offending = None;
    for i in 0..n {
        let (a0, a1) = curve.edge(i);
        for j in (i + 1)..n {
            let (b0, b1) = curve.edge(j);
            if curve.edges_adjacent(i, j) {
                // the far endpoint of each edge must stay off the other edge
                let (far_a, far_b) = if j == i + 1 { (a0, b1) } else { (a1, b0) };
                let d = point_segment_distance(&far_a, &b0, &b1)
                    .min(point_segment_distance(&far_b, &a0, &a1));
                if d < eps && offending.is_none() {
                    offending = Some((i, j));
                }
                continue;
            }
            let d = segment_distance(&a0, &a1, &b0, &b1);
            min_distance = min_distance.min(d);
            if d < eps && offending.is_none() {
                offending = Some((i, j));
            }
        }
    }
    EmbeddingCheck {
        embedded: offending.is_none(),
        offending,
        min_distance,
    }
}

/// Fails with [`Error::NotEmbedded`] unless the curve passes [`check_embedded`]
/// at the default tolerance.
pub fn require_embedded(curve: &PolygonalCurve) -> Result<()> {
    let check = check_embedded(curve, default_embed_tolerance(curve));
    match check.offending {
        None => Ok(()),
        Some((i, j)) => Err(Error::NotEmbedded(i, j)),
    }
}
