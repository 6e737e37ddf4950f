//! Milnor total curvature and the curvature measure `𝒦` of a polygon.
//!
//! A polygon's measure is purely atomic: one atom per vertex carrying its
//! exterior angle. [`CurvatureMeasure`] also holds a piecewise-constant
//! density so the measure-level operations can be exercised on abstract
//! (atomless) measures.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::distortion;
use crate::error::{Error, Result};
use crate::geometry::{turning_angle, PolygonalCurve};

/// Relative slack used to decide whether a position sits on an interval endpoint.
const ENDPOINT_REL: f64 = 1e-12;

/// Constant of the subdivision lemma.
pub const SUBDIVISION_RATIO: f64 = 2.0 / 3.0;

/// Exterior angle at every vertex that has two incident edges.
pub fn exterior_angles(curve: &PolygonalCurve) -> Vec<(usize, f64)> {
    let n = curve.vertex_count();
    let range = if curve.is_closed() { 0..n } else { 1..n - 1 };
    range
        .map(|k| {
            let prev = curve.edge_direction((k + n - 1) % n);
            let next = curve.edge_direction(k);
            (k, turning_angle(&prev, &next))
        })
        .collect()
}

/// Sum of exterior angles.
pub fn total_curvature(curve: &PolygonalCurve) -> f64 {
    exterior_angles(curve).iter().map(|&(_, a)| a).sum()
}

/// Open parameter interval `(lo, hi)`. On closed curves `hi` may exceed the
/// period, in which case the interval wraps through parameter 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidArgument(format!("interval ({lo}, {hi}) is empty")));
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        !(self.hi > self.lo)
    }

    fn slack(&self) -> f64 {
        ENDPOINT_REL * self.lo.abs().max(self.hi.abs()).max(1.0)
    }
}

/// Atoms plus piecewise-constant density.
///
/// `period` is set for measures living on a closed curve; positions are then
/// read modulo the period.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CurvatureMeasure {
    /// `(position, mass)`, positions strictly increasing.
    pub atoms: Vec<(f64, f64)>,
    /// `(lo, hi, rate)` pieces, disjoint and sorted.
    #[serde(default)]
    pub density: Vec<(f64, f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<f64>,
}

impl CurvatureMeasure {
    /// Validates the invariants and builds a measure on a line (no period).
    pub fn new(atoms: Vec<(f64, f64)>, density: Vec<(f64, f64, f64)>) -> Result<Self> {
        let m = Self {
            atoms,
            density,
            period: None,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn with_period(mut self, period: f64) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidArgument(format!("period {period} must be positive")));
        }
        self.period = Some(period);
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        for w in self.atoms.windows(2) {
            if !(w[0].0 < w[1].0) {
                return Err(Error::InvalidArgument("atom positions must increase".into()));
            }
        }
        if self.atoms.iter().any(|&(p, m)| !p.is_finite() || !(m >= 0.0) || !m.is_finite()) {
            return Err(Error::InvalidArgument("atom masses must be finite and non-negative".into()));
        }
        for w in self.density.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::InvalidArgument("density pieces must be sorted and disjoint".into()));
            }
        }
        if self
            .density
            .iter()
            .any(|&(a, b, r)| !(a < b) || !(r >= 0.0) || !r.is_finite())
        {
            return Err(Error::InvalidArgument("density pieces need lo < hi and finite rate >= 0".into()));
        }
        Ok(())
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum::<f64>() + self.density.iter().map(|&(a, b, r)| (b - a) * r).sum::<f64>()
    }

    /// Images of position `p` under the period that may meet `[lo, hi]`.
    fn shifts(&self, p: f64, lo: f64, hi: f64) -> Vec<f64> {
        match self.period {
            None => vec![p],
            Some(per) => {
                let k0 = ((lo - p) / per).floor() - 1.0;
                let mut out = Vec::new();
                let mut k = k0;
                loop {
                    let q = p + k * per;
                    if q > hi + per {
                        break;
                    }
                    out.push(q);
                    k += 1.0;
                }
                out
            }
        }
    }

    /// Mass of the open interval `iv` (`closed = false`) or of its closure.
    fn mass(&self, iv: &Interval, closed: bool) -> f64 {
        let tol = iv.slack();
        let mut total = 0.0;
        for &(p, m) in &self.atoms {
            for q in self.shifts(p, iv.lo, iv.hi) {
                let inside = if closed {
                    q >= iv.lo - tol && q <= iv.hi + tol
                } else {
                    q > iv.lo + tol && q < iv.hi - tol
                };
                if inside {
                    total += m;
                }
            }
        }
        for &(a, b, r) in &self.density {
            for sa in self.shifts(a, iv.lo, iv.hi) {
                let sb = sa + (b - a);
                let overlap = sb.min(iv.hi) - sa.max(iv.lo);
                if overlap > 0.0 {
                    total += overlap * r;
                }
            }
        }
        total
    }

    /// Atoms and density pieces meeting the open interval, in its coordinates.
    fn restrict(&self, iv: &Interval) -> (Vec<(f64, f64)>, Vec<(f64, f64, f64)>) {
        let tol = iv.slack();
        let mut atoms = Vec::new();
        for &(p, m) in &self.atoms {
            for q in self.shifts(p, iv.lo, iv.hi) {
                if q > iv.lo + tol && q < iv.hi - tol && m > 0.0 {
                    atoms.push((q, m));
                }
            }
        }
        let mut pieces = Vec::new();
        for &(a, b, r) in &self.density {
            for sa in self.shifts(a, iv.lo, iv.hi) {
                let sb = sa + (b - a);
                let (lo, hi) = (sa.max(iv.lo), sb.min(iv.hi));
                if hi > lo && r > 0.0 {
                    pieces.push((lo, hi, r));
                }
            }
        }
        atoms.sort_by(|x, y| x.0.total_cmp(&y.0));
        pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
        (atoms, pieces)
    }
}

/// Atoms at vertex parameters with the exterior angles as masses; no density.
pub fn curvature_measure(curve: &PolygonalCurve) -> CurvatureMeasure {
    let atoms = exterior_angles(curve)
        .into_iter()
        .filter(|&(_, a)| a > 0.0)
        .map(|(k, a)| (curve.vertex_param(k), a))
        .collect();
    CurvatureMeasure {
        atoms,
        density: Vec::new(),
        period: curve.is_closed().then(|| curve.length()),
    }
}

/// `𝒦((lo, hi))`: atoms strictly inside plus the density integral.
pub fn interval_curvature(m: &CurvatureMeasure, iv: &Interval) -> f64 {
    m.mass(iv, false)
}

/// `𝒦([lo, hi])`: like [`interval_curvature`] but endpoint atoms count.
pub fn closed_interval_curvature(m: &CurvatureMeasure, iv: &Interval) -> f64 {
    m.mass(iv, true)
}

/// Outcome of checking `dq ≤ sec(κ/2)` on one arc.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum DsBoundCheck {
    Checked {
        kappa: f64,
        bound: f64,
        max_dq: f64,
        ok: bool,
    },
    /// The arc carries more than `π` of curvature, so the bound says nothing.
    NotApplicable { kappa: f64 },
}

impl DsBoundCheck {
    pub fn ok(&self) -> bool {
        matches!(self, DsBoundCheck::Checked { ok: true, .. })
    }
}

/// Absolute slack allowed over the bound.
pub const DS_BOUND_SLACK: f64 = 1e-9;

/// Compares the distortion of the arc `γ([lo, hi])` with `sec(κ/2)`, `κ` the
/// closed-interval curvature of the arc.
pub fn ds_bound_check(curve: &PolygonalCurve, iv: &Interval) -> Result<DsBoundCheck> {
    let m = curvature_measure(curve);
    let arc = curve.sub_arc(iv.lo, iv.hi)?;
    // the extracted arc is open, so its own interior angles give the closed-interval mass
    // except for atoms sitting exactly on the ends, which add curvature only to the bound
    let kappa = closed_interval_curvature(&m, iv).max(total_curvature(&arc));
    if kappa > PI {
        return Ok(DsBoundCheck::NotApplicable { kappa });
    }
    let bound = 1.0 / (kappa / 2.0).cos();
    let max_dq = distortion::max_dq(&arc)?;
    Ok(DsBoundCheck::Checked {
        kappa,
        bound,
        max_dq,
        ok: max_dq <= bound + DS_BOUND_SLACK * bound,
    })
}

/// `top` heaviest atoms (ties by ascending position) and the rest of the measure.
pub fn decompose(m: &CurvatureMeasure, top: usize) -> (Vec<(f64, f64)>, CurvatureMeasure) {
    let mut order: Vec<usize> = (0..m.atoms.len()).collect();
    order.sort_by(|&i, &j| {
        m.atoms[j]
            .1
            .total_cmp(&m.atoms[i].1)
            .then(m.atoms[i].0.total_cmp(&m.atoms[j].0))
    });
    let mut chosen: Vec<usize> = order.into_iter().take(top).collect();
    chosen.sort_unstable();
    let majors: Vec<(f64, f64)> = chosen.iter().map(|&i| m.atoms[i]).collect();
    let rest = CurvatureMeasure {
        atoms: m
            .atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| chosen.binary_search(i).is_err())
            .map(|(_, a)| *a)
            .collect(),
        density: m.density.clone(),
        period: m.period,
    };
    (majors, rest)
}

/// Largest mass of a window of length `len` inside `(a, b)`.
///
/// The window mass is piecewise linear in the window position with kinks
/// where an end crosses a breakpoint, so anchoring ends at breakpoints finds
/// the maximum. Atoms are counted with closed-window semantics.
fn max_window_mass(atoms: &[(f64, f64)], pieces: &[(f64, f64, f64)], a: f64, b: f64, len: f64) -> f64 {
    // cumulative density mass at breakpoints
    let mut knots = vec![a];
    for &(lo, hi, _) in pieces {
        knots.push(lo);
        knots.push(hi);
    }
    knots.push(b);
    let cum_density = |x: f64| -> f64 {
        pieces
            .iter()
            .map(|&(lo, hi, r)| ((x.min(hi) - lo).max(0.0)) * r)
            .sum::<f64>()
    };
    let atom_mass = |c: f64, d: f64| -> f64 {
        atoms
            .iter()
            .filter(|&&(p, _)| p >= c && p <= d)
            .map(|&(_, m)| m)
            .sum::<f64>()
    };
    let last = b - len;
    let mut anchors: Vec<f64> = Vec::with_capacity(2 * knots.len() + 2 * atoms.len());
    for &k in &knots {
        anchors.push(k);
        anchors.push(k - len);
    }
    for &(p, _) in atoms {
        anchors.push(p);
        anchors.push(p - len);
    }
    let mut best = 0.0f64;
    for c in anchors {
        let c = c.clamp(a, last.max(a));
        let d = (c + len).min(b);
        best = best.max(cum_density(d) - cum_density(c) + atom_mass(c, d));
    }
    best
}

/// Supremal `L` such that every subinterval of `iv` shorter than `L` carries
/// at most two thirds of `μ(iv)`, located by bisection to `10⁻⁹` relative.
///
/// With `require_atomless` any atom inside `iv` is an error; otherwise atoms
/// are allowed and an atom heavier than the two-thirds budget is the error.
pub fn subdivision_scale(m: &CurvatureMeasure, iv: &Interval, require_atomless: bool) -> Result<f64> {
    let (atoms, pieces) = m.restrict(iv);
    if require_atomless {
        if let Some(&(position, mass)) = atoms.first() {
            return Err(Error::AtomicMeasure { position, mass });
        }
    }
    let total: f64 = atoms.iter().map(|x| x.1).sum::<f64>() + pieces.iter().map(|&(a, b, r)| (b - a) * r).sum::<f64>();
    let width = iv.len();
    if total == 0.0 {
        return Ok(width);
    }
    let budget = SUBDIVISION_RATIO * total;
    if let Some(&(position, mass)) = atoms.iter().find(|x| x.1 > budget) {
        return Err(Error::AtomicMeasure { position, mass });
    }
    let fits = |len: f64| max_window_mass(&atoms, &pieces, iv.lo, iv.hi, len) <= budget;
    let (mut lo, mut hi) = (0.0, width);
    if fits(hi) {
        return Ok(hi);
    }
    while hi - lo > 1e-9 * width {
        let mid = 0.5 * (lo + hi);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo == 0.0 {
        return Err(Error::InvalidArgument("no positive subdivision scale found".into()));
    }
    Ok(lo)
}
