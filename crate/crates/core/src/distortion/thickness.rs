//! b-distortion thickness `τ_b`: the infimal chord length over pairs with `dq ≥ b`.
//!
//! Inside a cell `{dq ≥ b}` is convex and chord length is convex, so the
//! minimal chord is a convex program. We walk the slice structure: `u`
//! ranges over the interval where `sup_v dq ≥ b`, each `u` has a feasible
//! `v`-interval, and the per-`u` minimal chord is convex in `u`.

use rayon::prelude::*;

use super::cell::{maximize_on, Cell, CurvaturePrefix};
use super::{cell_bound, cells};
use crate::error::{Error, Result};
use crate::geometry::PolygonalCurve;

/// Batch size for the gap-ordered scan with early exit.
const BATCH: usize = 64;

/// Boundary of `{x : f(x) ≥ b}` between a failing `bad` and a passing `good` point.
fn bisect<F: Fn(f64) -> bool>(ok: F, mut bad: f64, mut good: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (bad + good);
        if mid == bad || mid == good {
            break;
        }
        if ok(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Smallest chord over the part of `cell` where `dq ≥ b`; `u_star` is a point with `sup_v dq ≥ b`.
fn cell_min_chord(cell: &Cell, b: f64, u_star: f64) -> f64 {
    let ok_u = |u: f64| cell.inner(u).0 >= b;
    let u_lo = if ok_u(0.0) { 0.0 } else { bisect(ok_u, 0.0, u_star) };
    let u_hi = if ok_u(cell.len_u) { cell.len_u } else { bisect(ok_u, cell.len_u, u_star) };
    let slice_min = |u: f64| -> f64 {
        let (best, v_star) = cell.inner(u);
        if best < b {
            return f64::INFINITY;
        }
        let ok_v = |v: f64| cell.value(u, v) >= b;
        let v_lo = if ok_v(0.0) { 0.0 } else { bisect(ok_v, 0.0, v_star) };
        let v_hi = if ok_v(cell.len_v) { cell.len_v } else { bisect(ok_v, cell.len_v, v_star) };
        // unconstrained minimizer of |w + v d| is v = −w·d
        let free = -cell.w(u).dot(&cell.dj());
        cell.chord(u, free.clamp(v_lo, v_hi))
    };
    let (neg, _) = maximize_on(|u| -slice_min(u), u_lo, u_hi);
    (-neg).min(slice_min(u_lo)).min(slice_min(u_hi))
}

/// `τ_b(γ)`; `+∞` when no pair reaches `b`, `0` when a corner alone does.
pub fn thickness(curve: &PolygonalCurve, b: f64) -> Result<f64> {
    if !(b > 1.0) || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("thickness threshold b = {b} must exceed 1")));
    }
    let curv = CurvaturePrefix::new(curve);
    let all = cells(curve);
    // a corner with sec(φ/2) ≥ b has qualifying pairs arbitrarily close to it
    if all
        .iter()
        .filter(|c| c.adjacent)
        .any(|c| curv.ds_bound(c) >= b)
    {
        return Ok(0.0);
    }
    let mut candidates: Vec<(f64, usize, f64)> = all
        .par_iter()
        .enumerate()
        .filter(|(_, c)| !c.adjacent)
        .filter_map(|(k, c)| {
            if cell_bound(c, curve, &curv) < b {
                return None;
            }
            let (val, u, _) = c.maximize();
            (val >= b).then(|| (c.segment_gap(curve), k, u))
        })
        .collect();
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let mut best = f64::INFINITY;
    for batch in candidates.chunks(BATCH) {
        if batch[0].0 >= best {
            break;
        }
        let found = batch
            .par_iter()
            .filter(|c| c.0 < best)
            .map(|&(_, k, u)| cell_min_chord(&all[k], b, u))
            .reduce(|| f64::INFINITY, f64::min);
        best = best.min(found);
    }
    Ok(best)
}

/// Scales `curve` about the origin so that `τ_b` becomes `target`.
pub fn normalize_thickness_to(curve: &PolygonalCurve, b: f64, target: f64) -> Result<PolygonalCurve> {
    let tau = thickness(curve, b)?;
    if tau.is_infinite() {
        return Err(Error::InfiniteThickness { b });
    }
    if tau <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "thickness at b = {b} is zero; a corner already reaches the threshold"
        )));
    }
    curve.scaled(target / tau)
}

/// Scales `curve` so that `τ_b = 1`.
pub fn normalize_thickness(curve: &PolygonalCurve, b: f64) -> Result<PolygonalCurve> {
    normalize_thickness_to(curve, b, 1.0)
}
