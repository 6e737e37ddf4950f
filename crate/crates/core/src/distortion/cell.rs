//! Per edge-pair maximization of the distortion quotient.
//!
//! For a fixed point `P` and an edge `Q(v) = O + v·d`, the quotient is an
//! affine (or min-of-two-affine on closed curves) arclength over
//! `|w + v·d|`, `w = O − P`. Each affine branch has a single stationary
//! point in closed form, so the sup over `v` is a max over at most five
//! candidates. Over a whole cell the joint superlevel sets are convex, which
//! makes `u ↦ sup_v dq` quasiconcave and golden-section search sound.

use crate::geometry::{segment_distance, PolygonalCurve, Vec3};

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const COARSE: usize = 16;
const MAX_ITERS: usize = 200;

/// Arclength between `P` and `Q(v)`: `α + β v`, folded by `min(a, L − a)` on closed curves.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ArcForm {
    pub alpha: f64,
    pub beta: f64,
    pub period: Option<f64>,
}

impl ArcForm {
    #[inline]
    pub fn at(&self, v: f64) -> f64 {
        let a = self.alpha + self.beta * v;
        match self.period {
            Some(l) => a.min(l - a),
            None => a,
        }
    }
}

#[inline]
pub(crate) fn quotient(arc: f64, chord: f64) -> f64 {
    if chord > 0.0 {
        arc / chord
    } else if arc <= 0.0 {
        // diagonal limit
        1.0
    } else {
        f64::INFINITY
    }
}

/// Stationary point of `(α + βv)/sqrt(v² + Bv + C)`.
#[inline]
fn stationary(alpha: f64, beta: f64, b: f64, c: f64) -> Option<f64> {
    let den = beta * b - 2.0 * alpha;
    if den == 0.0 {
        return None;
    }
    let v = (alpha * b - 2.0 * beta * c) / den;
    v.is_finite().then_some(v)
}

/// `max_{v ∈ [0, len]} arc(v) / |w + v d|` for unit `d`; returns `(value, v)`.
pub(crate) fn edge_sup(w: &Vec3, d: &Vec3, len: f64, arc: ArcForm) -> (f64, f64) {
    let b = 2.0 * w.dot(d);
    let c = w.norm_squared();
    let eval = |v: f64| quotient(arc.at(v), (w + d * v).norm());
    let mut best = (eval(0.0), 0.0);
    let mut consider = |v: f64| {
        if v > 0.0 && v <= len {
            let q = eval(v);
            if q > best.0 {
                best = (q, v);
            }
        }
    };
    consider(len);
    if let Some(v) = stationary(arc.alpha, arc.beta, b, c) {
        consider(v);
    }
    if let Some(l) = arc.period {
        if let Some(v) = stationary(l - arc.alpha, -arc.beta, b, c) {
            consider(v);
        }
        if arc.beta != 0.0 {
            consider((0.5 * l - arc.alpha) / arc.beta);
        }
    }
    best
}

/// Golden-section maximization of a quasiconcave `f` on `[0, len]`, seeded by
/// a coarse scan. Returns `(value, argmax)`.
pub(crate) fn maximize_quasiconcave<F: Fn(f64) -> f64>(f: F, len: f64) -> (f64, f64) {
    maximize_on(f, 0.0, len)
}

/// [`maximize_quasiconcave`] on `[lo, hi]`.
pub(crate) fn maximize_on<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> (f64, f64) {
    let len = hi - lo;
    let mut best = (f64::NEG_INFINITY, 0.0);
    let mut k_best = 0;
    for k in 0..=COARSE {
        let u = if k == COARSE { hi } else { lo + len * k as f64 / COARSE as f64 };
        let val = f(u);
        if val > best.0 {
            best = (val, u);
            k_best = k;
        }
    }
    let mut a = lo + len * k_best.saturating_sub(1) as f64 / COARSE as f64;
    let mut b = lo + len * (k_best + 1).min(COARSE) as f64 / COARSE as f64;
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let tol = 1e-14 * len.max(lo.abs()).max(f64::MIN_POSITIVE);
    for _ in 0..MAX_ITERS {
        if b - a <= tol {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = f(x2);
        }
        for (val, u) in [(f1, x1), (f2, x2)] {
            if val > best.0 {
                best = (val, u);
            }
        }
    }
    best
}

/// One edge-pair cell. Points are `P(u) = o_i + u·d_i` and `Q(v) = o_j + v·d_j`.
///
/// Cells of edges sharing a vertex are expressed relative to that vertex
/// (`w0 = 0`, `u` measured backwards along the first edge) so quotients near
/// the corner keep full relative precision.
#[derive(Clone, Debug)]
pub(crate) struct Cell {
    pub first: usize,
    pub second: usize,
    pub adjacent: bool,
    w0: Vec3,
    di: Vec3,
    dj: Vec3,
    pub len_u: f64,
    pub len_v: f64,
    alpha0: f64,
    bu: f64,
    period: Option<f64>,
    /// `s = s0 + s_sign·u`, `t = t0 + v`.
    s0: f64,
    s_sign: f64,
    t0: f64,
}

impl Cell {
    /// Cell for edges `i < j` (or the closing corner `(n−1, 0)`, passed as `i = n−1, j = 0`).
    pub fn new(curve: &PolygonalCurve, i: usize, j: usize) -> Self {
        let period = curve.is_closed().then(|| curve.length());
        let n_edges = curve.edge_count();
        let corner = j == i + 1 || (curve.is_closed() && i == n_edges - 1 && j == 0);
        let (ai, _) = curve.edge(i);
        let (aj, _) = curve.edge(j);
        let ei = curve.edge_direction(i);
        let ej = curve.edge_direction(j);
        let (si, sj) = (curve.vertex_param(i), curve.vertex_param(j));
        if corner {
            let s0 = if j == 0 { curve.length() } else { sj };
            Cell {
                first: i,
                second: j,
                adjacent: true,
                w0: Vec3::zeros(),
                di: -ei,
                dj: ej,
                len_u: curve.edge_length(i),
                len_v: curve.edge_length(j),
                alpha0: 0.0,
                bu: 1.0,
                period,
                s0,
                s_sign: -1.0,
                t0: sj,
            }
        } else {
            Cell {
                first: i,
                second: j,
                adjacent: false,
                w0: aj - ai,
                di: ei,
                dj: ej,
                len_u: curve.edge_length(i),
                len_v: curve.edge_length(j),
                alpha0: sj - si,
                bu: -1.0,
                period,
                s0: si,
                s_sign: 1.0,
                t0: sj,
            }
        }
    }

    #[inline]
    pub fn arc_form(&self, u: f64) -> ArcForm {
        ArcForm {
            alpha: self.alpha0 + self.bu * u,
            beta: 1.0,
            period: self.period,
        }
    }

    #[inline]
    pub fn w(&self, u: f64) -> Vec3 {
        self.w0 - self.di * u
    }

    /// `sup_v dq(u, v)` and its maximizer.
    #[inline]
    pub fn inner(&self, u: f64) -> (f64, f64) {
        edge_sup(&self.w(u), &self.dj, self.len_v, self.arc_form(u))
    }

    pub fn dj(&self) -> Vec3 {
        self.dj
    }

    pub fn value(&self, u: f64, v: f64) -> f64 {
        quotient(self.arc_form(u).at(v), (self.w(u) + self.dj * v).norm())
    }

    pub fn chord(&self, u: f64, v: f64) -> f64 {
        (self.w(u) + self.dj * v).norm()
    }

    /// `(s, t)` arclength parameters for cell coordinates.
    pub fn params(&self, u: f64, v: f64, curve: &PolygonalCurve) -> (f64, f64) {
        let mut s = self.s0 + self.s_sign * u;
        if curve.is_closed() && s >= curve.length() {
            s -= curve.length();
        }
        (s.max(0.0), self.t0 + v)
    }

    /// Largest arclength attained in the cell.
    pub fn arc_upper(&self) -> f64 {
        let corners = [
            self.alpha0,
            self.alpha0 + self.bu * self.len_u,
            self.alpha0 + self.len_v,
            self.alpha0 + self.bu * self.len_u + self.len_v,
        ];
        let hi = corners.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        match self.period {
            Some(l) => {
                let lo = corners.iter().copied().fold(f64::INFINITY, f64::min);
                hi.min(l - lo).min(0.5 * l)
            }
            None => hi,
        }
    }

    pub fn segment_gap(&self, curve: &PolygonalCurve) -> f64 {
        if self.adjacent {
            return 0.0;
        }
        let (a0, a1) = curve.edge(self.first);
        let (b0, b1) = curve.edge(self.second);
        segment_distance(&a0, &a1, &b0, &b1)
    }

    /// `(value, u, v)` maximizing dq over the cell.
    pub fn maximize(&self) -> (f64, f64, f64) {
        let (val, u) = maximize_quasiconcave(|u| self.inner(u).0, self.len_u);
        let (_, v) = self.inner(u);
        (val, u, v)
    }
}

/// Curvature bookkeeping for Denne–Sullivan pruning.
pub(crate) struct CurvaturePrefix {
    /// `prefix[k]` = sum of exterior angles at vertices `0..k`.
    prefix: Vec<f64>,
    angles: Vec<f64>,
    total: f64,
    closed: bool,
}

impl CurvaturePrefix {
    pub fn new(curve: &PolygonalCurve) -> Self {
        let n = curve.vertex_count();
        let mut angles = vec![0.0; n];
        for (k, a) in crate::curvature::exterior_angles(curve) {
            angles[k] = a;
        }
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(0.0);
        for a in &angles {
            prefix.push(prefix.last().unwrap() + a);
        }
        let total = *prefix.last().unwrap();
        Self {
            prefix,
            angles,
            total,
            closed: curve.is_closed(),
        }
    }

    /// Upper bound on dq over the cell from the curvature of the two arcs joining its edges.
    pub fn ds_bound(&self, cell: &Cell) -> f64 {
        let sec_half = |k: f64| if k < std::f64::consts::PI { 1.0 / (0.5 * k).cos() } else { f64::INFINITY };
        if cell.adjacent {
            // the shared vertex is the start of the second edge
            return sec_half(self.angles[cell.second]);
        }
        let (i, j) = (cell.first, cell.second);
        let forward = (self.prefix[j + 1] - self.prefix[i + 1]).max(0.0);
        let mut bound = sec_half(forward);
        if self.closed {
            bound = bound.min(sec_half((self.total - forward).max(0.0)));
        }
        bound
    }
}
