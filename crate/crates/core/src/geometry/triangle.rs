//! Elementary triangle moves and their isotopy criterion.
//!
//! A move replaces part of the polygon by the other sides of a triangle; it
//! preserves knot type when no edge outside the move meets the triangle.

use super::primitives::{segment_distance, segment_triangle_distance};
use super::{check_embedded, default_embed_tolerance, PolygonalCurve, Vec3};
use crate::error::{Error, Result};

/// Relative area below which a triangle counts as degenerate.
const DEGENERATE_REL: f64 = 1e-12;
const COPLANAR_REL: f64 = 1e-12;

/// One elementary move on a polygon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TriangleMove {
    /// Replace edge `edge` by two edges through `point`.
    Insert { edge: usize, point: Vec3 },
    /// Drop vertex `vertex`, joining its neighbours directly.
    Remove { vertex: usize },
    /// Move vertex `vertex` to `to`.
    Shift { vertex: usize, to: Vec3 },
}

/// Outcome of a triangle-move validity test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangleCheck {
    pub valid: bool,
    /// Some swept triangle had (numerically) zero area.
    pub degenerate: bool,
    /// First curve edge found meeting a swept triangle.
    pub blocking_edge: Option<usize>,
}

struct Tri {
    corners: [Vec3; 3],
    /// Curve vertex index behind each corner, if the corner is a curve vertex.
    anchors: [Option<usize>; 3],
}

impl Tri {
    fn is_degenerate(&self) -> bool {
        let [a, b, c] = self.corners;
        let scale = (b - a).norm_squared().max((c - a).norm_squared()).max((c - b).norm_squared());
        (b - a).cross(&(c - a)).norm() <= DEGENERATE_REL * scale
    }

    fn sides(&self) -> [(Vec3, Vec3); 3] {
        let [a, b, c] = self.corners;
        [(a, b), (b, c), (c, a)]
    }
}

/// True when the segment from corner `k` towards `w` runs into the triangle.
fn leaves_corner_inside(tri: &Tri, k: usize, w: &Vec3, degenerate: bool) -> bool {
    let v = tri.corners[k];
    let x = tri.corners[(k + 1) % 3];
    let y = tri.corners[(k + 2) % 3];
    let d = w - v;
    let (e1, e2) = (x - v, y - v);
    if degenerate {
        // the triangle is a segment; only overlap along a side counts
        return [e1, e2].iter().any(|e| {
            e.norm() > 0.0 && d.cross(e).norm() <= COPLANAR_REL * d.norm() * e.norm() && d.dot(e) > 0.0
        });
    }
    let n = e1.cross(&e2).normalize();
    if n.dot(&d).abs() > COPLANAR_REL * d.norm() {
        // the line through v leaves the triangle's plane at v
        return false;
    }
    // coordinates of d in the (e1, e2) frame
    let (g11, g12, g22) = (e1.dot(&e1), e1.dot(&e2), e2.dot(&e2));
    let (r1, r2) = (d.dot(&e1), d.dot(&e2));
    let det = g11 * g22 - g12 * g12;
    let alpha = (r1 * g22 - r2 * g12) / det;
    let beta = (r2 * g11 - r1 * g12) / det;
    let tol = COPLANAR_REL * d.norm() / e1.norm().min(e2.norm());
    alpha > -tol && beta > -tol
}

/// Returns the first edge (outside `skip`) that meets one of the triangles.
fn obstruction(curve: &PolygonalCurve, tris: &[Tri], skip: &[usize], eps: f64) -> Option<usize> {
    let n = curve.vertex_count();
    for e in 0..curve.edge_count() {
        if skip.contains(&e) {
            continue;
        }
        let (ia, ib) = (e, (e + 1) % n);
        let (a, b) = curve.edge(e);
        for tri in tris {
            let degenerate = tri.is_degenerate();
            let shared: Vec<usize> = (0..3)
                .filter(|&k| matches!(tri.anchors[k], Some(idx) if idx == ia || idx == ib))
                .collect();
            let blocked = match shared.len() {
                0 => {
                    let d = if degenerate {
                        tri.sides()
                            .iter()
                            .map(|(p, q)| segment_distance(&a, &b, p, q))
                            .fold(f64::INFINITY, f64::min)
                    } else {
                        let [p, q, r] = &tri.corners;
                        segment_triangle_distance(&a, &b, p, q, r)
                    };
                    d < eps
                }
                1 => {
                    let k = shared[0];
                    let far = if tri.anchors[k] == Some(ia) { b } else { a };
                    leaves_corner_inside(tri, k, &far, degenerate)
                }
                _ => true,
            };
            if blocked {
                return Some(e);
            }
        }
    }
    None
}

/// Triangles swept by `mv`, the edges it replaces, and the resulting vertex list.
fn plan(curve: &PolygonalCurve, mv: &TriangleMove) -> Result<(Vec<Tri>, Vec<usize>, Vec<Vec3>)> {
    let n = curve.vertex_count();
    let closed = curve.is_closed();
    let mut verts = curve.vertices().to_vec();
    match *mv {
        TriangleMove::Insert { edge, point } => {
            if edge >= curve.edge_count() {
                return Err(Error::InvalidArgument(format!("edge index {edge} out of range")));
            }
            let j = (edge + 1) % n;
            let tri = Tri {
                corners: [curve.vertex(edge), point, curve.vertex(j)],
                anchors: [Some(edge), None, Some(j)],
            };
            verts.insert(edge + 1, point);
            Ok((vec![tri], vec![edge], verts))
        }
        TriangleMove::Remove { vertex } => {
            let min = if closed { 3 } else { 2 };
            if vertex >= n || n <= min {
                return Err(Error::InvalidArgument(format!("cannot remove vertex {vertex}")));
            }
            if !closed && (vertex == 0 || vertex == n - 1) {
                return Err(Error::InvalidArgument("cannot remove an endpoint of an open curve".into()));
            }
            let prev = (vertex + n - 1) % n;
            let next = (vertex + 1) % n;
            let tri = Tri {
                corners: [curve.vertex(prev), curve.vertex(vertex), curve.vertex(next)],
                anchors: [Some(prev), Some(vertex), Some(next)],
            };
            verts.remove(vertex);
            Ok((vec![tri], vec![prev, vertex], verts))
        }
        TriangleMove::Shift { vertex, to } => {
            if vertex >= n {
                return Err(Error::InvalidArgument(format!("vertex index {vertex} out of range")));
            }
            let p = curve.vertex(vertex);
            let mut tris = Vec::new();
            let mut skip = Vec::new();
            if closed || vertex > 0 {
                let prev = (vertex + n - 1) % n;
                tris.push(Tri {
                    corners: [curve.vertex(prev), p, to],
                    anchors: [Some(prev), Some(vertex), None],
                });
                skip.push(prev);
            }
            if closed || vertex + 1 < n {
                let next = (vertex + 1) % n;
                tris.push(Tri {
                    corners: [p, to, curve.vertex(next)],
                    anchors: [Some(vertex), None, Some(next)],
                });
                skip.push(vertex);
            }
            verts[vertex] = to;
            Ok((tris, skip, verts))
        }
    }
}

/// Tests a move against the isotopy criterion without applying it.
///
/// Degenerate (zero-area) triangles are accepted only when the resulting
/// polygon is still embedded.
pub fn triangle_obstruction(curve: &PolygonalCurve, mv: &TriangleMove) -> Result<TriangleCheck> {
    let eps = default_embed_tolerance(curve);
    let (tris, skip, verts) = plan(curve, mv)?;
    let degenerate = tris.iter().any(Tri::is_degenerate);
    let blocking_edge = obstruction(curve, &tris, &skip, eps);
    let mut valid = blocking_edge.is_none();
    if valid && degenerate {
        valid = match PolygonalCurve::new(verts, curve.is_closed()) {
            Ok(c) => check_embedded(&c, eps).embedded,
            Err(_) => false,
        };
    }
    Ok(TriangleCheck {
        valid,
        degenerate,
        blocking_edge,
    })
}

/// Applies a move, failing with [`Error::MoveRejected`] if it is not isotopy-safe.
pub fn apply_triangle_move(curve: &PolygonalCurve, mv: &TriangleMove) -> Result<PolygonalCurve> {
    let check = triangle_obstruction(curve, mv)?;
    if !check.valid {
        return Err(Error::MoveRejected(match check.blocking_edge {
            Some(e) => format!("{mv:?} sweeps through edge {e}"),
            None => format!("{mv:?} leaves a non-embedded polygon"),
        }));
    }
    let (_, _, verts) = plan(curve, mv)?;
    curve.with_vertices(verts).map_err(|e| Error::MoveRejected(e.to_string()))
}

/// True iff replacing edge `i` by the two edges through `v` is a valid triangle move.
pub fn triangle_move_valid(curve: &PolygonalCurve, i: usize, v: Vec3) -> bool {
    triangle_obstruction(curve, &TriangleMove::Insert { edge: i, point: v })
        .map(|c| c.valid)
        .unwrap_or(false)
}
