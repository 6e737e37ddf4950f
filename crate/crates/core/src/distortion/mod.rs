//! Distortion quotient, distortion, `D_γ`, the distortion shadow, k-drcs and
//! distortion thickness.
//!
//! The supremum over pairs is taken cell by cell: one cell per pair of edges.
//! A cell is skipped when both its gap bound (largest arclength over segment
//! distance) and the Denne–Sullivan bound `sec(κ/2)` fall below the best
//! quotient already seen; surviving cells are maximized exactly in the
//! second coordinate and by golden section in the first.

mod cell;
mod thickness;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{check_embedded, default_embed_tolerance, ChordPair, PolygonalCurve, Vec3};
use cell::{edge_sup, ArcForm, Cell, CurvaturePrefix};

pub use thickness::{normalize_thickness, normalize_thickness_to, thickness};

/// Relative window for reporting near-maximal pairs.
pub const DEFAULT_TOL_ARGMAX: f64 = 1e-4;
/// Shadow window half-width, in sample spacings.
pub const DEFAULT_SHADOW_WINDOW: usize = 3;
/// Default shadow samples per mean edge length.
pub const DEFAULT_SAMPLES_PER_EDGE: f64 = 4.0;

/// `dq_γ(s, t)`: arclength over chord length.
pub fn dq(curve: &PolygonalCurve, pair: ChordPair) -> Result<f64> {
    let chord = curve.chord_distance(pair)?;
    if chord == 0.0 {
        return Err(Error::UndefinedPair { s: pair.s, t: pair.t });
    }
    Ok(curve.arc_distance(pair)? / chord)
}

/// Default sampling density: four samples per mean edge length.
pub fn default_density(curve: &PolygonalCurve) -> f64 {
    DEFAULT_SAMPLES_PER_EDGE * curve.edge_count() as f64 / curve.length()
}

/// All cells of a curve, in deterministic order: `(i, j)` with `i < j`, the
/// closing corner of a closed curve last.
fn cells(curve: &PolygonalCurve) -> Vec<Cell> {
    let n = curve.edge_count();
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            if curve.is_closed() && i == 0 && j == n - 1 && n > 2 {
                continue;
            }
            out.push(Cell::new(curve, i, j));
        }
    }
    if curve.is_closed() && n > 2 {
        out.push(Cell::new(curve, n - 1, 0));
    }
    out
}

fn cell_bound(cell: &Cell, curve: &PolygonalCurve, curv: &CurvaturePrefix) -> f64 {
    let ds = curv.ds_bound(cell);
    if cell.adjacent {
        return ds;
    }
    let gap = cell.segment_gap(curve);
    let gap_bound = if gap > 0.0 { cell.arc_upper() / gap } else { f64::INFINITY };
    gap_bound.min(ds)
}

/// Result of the global supremum search.
#[derive(Clone, Debug)]
pub struct SupSearch {
    pub delta: f64,
    /// Best pair of every cell whose maximum is within the reporting window, with its quotient.
    pub argmax: Vec<(ChordPair, f64)>,
    pub cells_total: usize,
    pub cells_refined: usize,
}

/// Supremum of dq over all pairs, without the embedding check.
pub fn sup_search(curve: &PolygonalCurve, tol_argmax: f64) -> SupSearch {
    let all = cells(curve);
    let curv = CurvaturePrefix::new(curve);
    // bound and a midpoint lower bound in one pass
    let scored: Vec<(f64, f64)> = all
        .par_iter()
        .map(|c| (cell_bound(c, curve, &curv), c.inner(0.5 * c.len_u).0))
        .collect();
    let lower = scored.iter().map(|s| s.1).fold(1.0f64, f64::max);
    let cut = lower * (1.0 - tol_argmax);
    let survivors: Vec<usize> = (0..all.len()).filter(|&k| scored[k].0 >= cut).collect();
    let maxima: Vec<(usize, (f64, f64, f64))> = survivors
        .par_iter()
        .map(|&k| (k, all[k].maximize()))
        .collect();
    let delta = maxima.iter().map(|m| m.1 .0).fold(lower, f64::max);
    let mut argmax: Vec<(ChordPair, f64)> = maxima
        .iter()
        .filter(|m| m.1 .0 >= delta * (1.0 - tol_argmax))
        .map(|&(k, (val, u, v))| {
            let (s, t) = all[k].params(u, v, curve);
            (ChordPair::new(s, t), val)
        })
        .collect();
    if argmax.is_empty() {
        // only straight pieces: the whole curve (or one edge) realizes dq = 1
        let l = curve.length();
        argmax.push((ChordPair::new(0.0, if curve.is_closed() { 0.5 * l } else { l }), delta));
    }
    SupSearch {
        delta,
        argmax,
        cells_total: all.len(),
        cells_refined: survivors.len(),
    }
}

/// `δ(γ)` without the embedding check (used on extracted arcs).
pub fn max_dq(curve: &PolygonalCurve) -> Result<f64> {
    Ok(sup_search(curve, DEFAULT_TOL_ARGMAX).delta)
}

/// Largest dq over pairs with one point on edge `i` and the other on edge `j`.
pub fn edge_pair_max(curve: &PolygonalCurve, i: usize, j: usize) -> Result<(f64, ChordPair)> {
    let n = curve.edge_count();
    if i >= n || j >= n {
        return Err(Error::InvalidArgument(format!("edge pair ({i}, {j}) out of range")));
    }
    if i == j {
        let s = curve.vertex_param(i);
        return Ok((1.0, ChordPair::new(s, s + curve.edge_length(i))));
    }
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    let cell = if curve.is_closed() && a == 0 && b == n - 1 {
        Cell::new(curve, n - 1, 0)
    } else {
        Cell::new(curve, a, b)
    };
    let (val, u, v) = cell.maximize();
    let (s, t) = cell.params(u, v, curve);
    Ok((val, ChordPair::new(s, t)))
}

/// `D_γ(s) = sup_t dq(s, t)` and a maximizing `t`.
pub fn d_of_s_with_partner(curve: &PolygonalCurve, s: f64) -> Result<(f64, f64)> {
    let s = curve.canonical_param(s)?;
    Ok(point_sup(curve, s))
}

/// `D_γ(s) = sup_t dq(s, t)`; the diagonal contributes its limit value 1.
pub fn d_of_s(curve: &PolygonalCurve, s: f64) -> Result<f64> {
    Ok(d_of_s_with_partner(curve, s)?.0)
}

fn point_sup(curve: &PolygonalCurve, s: f64) -> (f64, f64) {
    let n = curve.edge_count();
    let nv = curve.vertex_count();
    let closed = curve.is_closed();
    let period = closed.then(|| curve.length());
    let (i, off) = curve.locate(s);
    let ei = curve.edge_direction(i);
    let len_i = curve.edge_length(i);
    let p = curve.point_at_canonical(s);
    let next = if i + 1 < n { Some(i + 1) } else if closed { Some(0) } else { None };
    let prev = if i > 0 { Some(i - 1) } else if closed { Some(n - 1) } else { None };
    let mut best = (1.0, s);
    for j in 0..n {
        if j == i {
            continue;
        }
        let ej = curve.edge_direction(j);
        let len_j = curve.edge_length(j);
        let (w, d, arc, t_of): (Vec3, Vec3, ArcForm, Box<dyn Fn(f64) -> f64>) = if Some(j) == next {
            let sj = curve.vertex_param(j);
            (
                ei * (len_i - off),
                ej,
                ArcForm { alpha: len_i - off, beta: 1.0, period },
                Box::new(move |v| sj + v),
            )
        } else if Some(j) == prev {
            // walk edge j backwards from the start of edge i
            let si = curve.vertex_param(i);
            let l = curve.length();
            (
                -ei * off,
                -ej,
                ArcForm { alpha: off, beta: 1.0, period },
                Box::new(move |v| if si - v < 0.0 { si - v + l } else { si - v }),
            )
        } else {
            let sj = curve.vertex_param(j);
            let aj = curve.vertex(j % nv);
            let arc = if closed {
                let mut alpha = sj - s;
                if alpha < 0.0 {
                    alpha += curve.length();
                }
                ArcForm { alpha, beta: 1.0, period }
            } else if j > i {
                ArcForm { alpha: sj - s, beta: 1.0, period: None }
            } else {
                ArcForm { alpha: s - sj, beta: -1.0, period: None }
            };
            (aj - p, ej, arc, Box::new(move |v| sj + v))
        };
        let (val, v) = edge_sup(&w, &d, len_j, arc);
        if val > best.0 {
            best = (val, t_of(v));
        }
    }
    best
}

/// Sampled distortion shadow.
#[derive(Clone, Debug, PartialEq)]
pub struct Shadow {
    pub s: Vec<f64>,
    /// `D_γ` at each sample.
    pub d: Vec<f64>,
    /// Maximizing partner `t` of each sample.
    pub partner: Vec<f64>,
    /// Upper envelope: max of `d` over the window around each sample.
    pub value: Vec<f64>,
    /// Index of the sample realizing `value`.
    pub source: Vec<usize>,
    pub window: usize,
}

impl Shadow {
    pub fn samples(&self) -> Vec<(f64, f64)> {
        self.s.iter().copied().zip(self.value.iter().copied()).collect()
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.value.iter().copied().fold(1.0, f64::max)
    }
}

/// Shadow with the default window.
pub fn shadow(curve: &PolygonalCurve, density: f64) -> Result<Shadow> {
    shadow_with_window(curve, density, DEFAULT_SHADOW_WINDOW)
}

/// Samples `D_γ` at `⌈L·density⌉` uniform parameters and takes the running
/// max over `window` spacings on each side (cyclically on closed curves).
pub fn shadow_with_window(curve: &PolygonalCurve, density: f64, window: usize) -> Result<Shadow> {
    if !(density.is_finite() && density > 0.0) {
        return Err(Error::InvalidArgument(format!("density {density} must be positive")));
    }
    let l = curve.length();
    let count = ((l * density).ceil() as usize).max(2);
    let s: Vec<f64> = if curve.is_closed() {
        (0..count).map(|k| l * k as f64 / count as f64).collect()
    } else {
        (0..=count).map(|k| if k == count { l } else { l * k as f64 / count as f64 }).collect()
    };
    let sup: Vec<(f64, f64)> = s.par_iter().map(|&x| point_sup(curve, x)).collect();
    let d: Vec<f64> = sup.iter().map(|x| x.0).collect();
    let partner: Vec<f64> = sup.iter().map(|x| x.1).collect();
    let m = s.len();
    let mut value = Vec::with_capacity(m);
    let mut source = Vec::with_capacity(m);
    for k in 0..m {
        let mut best = (d[k], k);
        for off in 1..=window {
            let cand: [Option<usize>; 2] = if curve.is_closed() {
                [Some((k + off) % m), Some((k + m - off % m) % m)]
            } else {
                [(k + off < m).then_some(k + off), k.checked_sub(off)]
            };
            for c in cand.into_iter().flatten() {
                if d[c] > best.0 {
                    best = (d[c], c);
                }
            }
        }
        value.push(best.0);
        source.push(best.1);
    }
    Ok(Shadow {
        s,
        d,
        partner,
        value,
        source,
        window,
    })
}

/// A k-distortion realizing chord with its (envelope) quotient.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Drc {
    pub s: f64,
    pub t: f64,
    pub dq: f64,
}

/// Chords read off a shadow: sample `s` yields a chord exactly when its
/// shadow value is at least `k − tol`. The partner and quotient come from the
/// sample in the window that realizes the envelope.
pub fn drcs_from_shadow(sh: &Shadow, k: f64, tol: f64) -> Vec<Drc> {
    (0..sh.len())
        .filter(|&i| sh.value[i] >= k - tol)
        .map(|i| {
            let src = sh.source[i];
            Drc {
                s: sh.s[i],
                t: sh.partner[src],
                dq: sh.d[src],
            }
        })
        .collect()
}

/// k-drcs at the default sampling density.
pub fn find_drcs(curve: &PolygonalCurve, k: f64, tol: f64) -> Result<Vec<Drc>> {
    if !(k > 1.0) {
        return Err(Error::InvalidArgument(format!("k = {k} must exceed 1")));
    }
    let sh = shadow(curve, default_density(curve))?;
    Ok(drcs_from_shadow(&sh, k, tol))
}

/// Knobs for [`analyze`].
#[derive(Clone, Debug, PartialEq)]
pub struct DistortionOptions {
    /// Shadow samples per unit length; `None` picks [`default_density`].
    pub density: Option<f64>,
    pub tol_argmax: f64,
    pub shadow_window: usize,
    /// Thickness threshold; `None` uses `δ − 10⁻³` when that exceeds 1.
    pub thickness_b: Option<f64>,
    /// drc threshold; `None` uses `δ·(1 − tol_argmax)`.
    pub drc_k: Option<f64>,
    pub drc_tol: f64,
}

impl Default for DistortionOptions {
    fn default() -> Self {
        Self {
            density: None,
            tol_argmax: DEFAULT_TOL_ARGMAX,
            shadow_window: DEFAULT_SHADOW_WINDOW,
            thickness_b: None,
            drc_k: None,
            drc_tol: 0.0,
        }
    }
}

fn pairs_as_arrays<S: Serializer>(pairs: &[ChordPair], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(pairs.iter().map(|p| [p.s, p.t]))
}

fn drcs_as_arrays<S: Serializer>(drcs: &[Drc], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(drcs.iter().map(|d| [d.s, d.t, d.dq]))
}

/// Serializes `+∞` as the string `"inf"`.
pub fn finite_or_inf<S: Serializer>(x: &f64, ser: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_infinite() {
        ser.serialize_str("inf")
    } else {
        ser.serialize_f64(*x)
    }
}

/// Everything [`analyze`] measures on one curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistortionReport {
    pub delta: f64,
    #[serde(serialize_with = "pairs_as_arrays")]
    pub argmax_pairs: Vec<ChordPair>,
    #[serde(serialize_with = "finite_or_inf")]
    pub thickness: f64,
    pub thickness_b: Option<f64>,
    pub shadow: Vec<(f64, f64)>,
    #[serde(serialize_with = "drcs_as_arrays")]
    pub drcs: Vec<Drc>,
    pub drc_k: Option<f64>,
    pub sample_density: f64,
}

/// Full report at the default options and the given density.
pub fn distortion(curve: &PolygonalCurve, density: Option<f64>) -> Result<DistortionReport> {
    analyze(
        curve,
        &DistortionOptions {
            density,
            ..DistortionOptions::default()
        },
    )
}

/// Rejects curves that fail the embedding check.
pub fn require_embedded(curve: &PolygonalCurve) -> Result<()> {
    let chk = check_embedded(curve, default_embed_tolerance(curve));
    match chk.offending {
        Some((i, j)) => Err(Error::NotEmbedded(i, j)),
        None => Ok(()),
    }
}

/// Distortion, maximizing pairs, shadow, drcs and thickness of an embedded curve.
pub fn analyze(curve: &PolygonalCurve, opts: &DistortionOptions) -> Result<DistortionReport> {
    require_embedded(curve)?;
    let density = opts.density.unwrap_or_else(|| default_density(curve));
    let search = sup_search(curve, opts.tol_argmax);
    let delta = search.delta;
    let sh = shadow_with_window(curve, density, opts.shadow_window)?;
    let thickness_b = opts.thickness_b.or_else(|| (delta - 1e-3 > 1.0).then_some(delta - 1e-3));
    let tau = match thickness_b {
        Some(b) => thickness(curve, b)?,
        None => f64::INFINITY,
    };
    let drc_k = opts
        .drc_k
        .or_else(|| (delta > 1.0).then_some(delta * (1.0 - opts.tol_argmax)))
        .filter(|&k| k > 1.0);
    let drcs = drc_k.map(|k| drcs_from_shadow(&sh, k, opts.drc_tol)).unwrap_or_default();
    Ok(DistortionReport {
        delta,
        argmax_pairs: search.argmax.into_iter().map(|(p, _)| p).collect(),
        thickness: tau,
        thickness_b,
        shadow: sh.samples(),
        drcs,
        drc_k,
        sample_density: density,
    })
}
