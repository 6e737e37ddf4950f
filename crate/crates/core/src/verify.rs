//! Randomized falsification suites: the Denne–Sullivan arc bound and the
//! subdivision lemma for curvature measures.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvature::{ds_bound_check, subdivision_scale, CurvatureMeasure, DsBoundCheck, Interval, SUBDIVISION_RATIO};
use crate::error::{Error, Result};
use crate::geometry::{PolygonalCurve, Vec3};

/// Default edge cap for random arcs.
pub const DEFAULT_MAX_EDGES: usize = 8;

/// Window starts per unit of interval length in the sliding scan.
const SCAN_STEPS: usize = 4000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DsCounterexample {
    pub trial: usize,
    pub vertices: Vec<[f64; 3]>,
    pub kappa: f64,
    pub bound: f64,
    pub max_dq: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DsSuiteReport {
    pub trials: usize,
    pub seed: u64,
    pub max_edges: usize,
    pub violations: usize,
    /// Largest `max_dq / bound` seen.
    pub worst_ratio: f64,
    pub counterexample: Option<DsCounterexample>,
}

impl DsSuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Open polyline with `edges` edges whose exterior angles sum to `kappa`.
pub fn random_arc<R: Rng>(rng: &mut R, edges: usize, kappa: f64) -> Result<PolygonalCurve> {
    if edges == 0 {
        return Err(Error::InvalidArgument("need at least one edge".into()));
    }
    let corners = edges - 1;
    // split κ among corners; one in four arcs puts it all on one corner
    let mut angles = vec![0.0; corners];
    if corners > 0 {
        if rng.gen_bool(0.25) {
            angles[rng.gen_range(0..corners)] = kappa;
        } else {
            let w: Vec<f64> = (0..corners).map(|_| rng.gen::<f64>() + 1e-3).collect();
            let sum: f64 = w.iter().sum();
            for (a, x) in angles.iter_mut().zip(w) {
                *a = kappa * x / sum;
            }
        }
    }
    let mut dir = random_unit(rng);
    let mut p = Vec3::zeros();
    let mut v = vec![p];
    for k in 0..edges {
        if k > 0 {
            dir = turn(rng, &dir, angles[k - 1]);
        }
        p += dir * rng.gen_range(0.1..1.0);
        v.push(p);
    }
    PolygonalCurve::new(v, false)
}

fn random_unit<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Rotates unit `d` by `angle` toward a random perpendicular direction.
fn turn<R: Rng>(rng: &mut R, d: &Vec3, angle: f64) -> Vec3 {
    let perp = loop {
        let r = random_unit(rng);
        let q = r - d * d.dot(&r);
        if q.norm() > 1e-3 {
            break q.normalize();
        }
    };
    (d * angle.cos() + perp * angle.sin()).normalize()
}

/// Checks `dq ≤ sec(κ/2)` on `trials` random open arcs with `κ < π`.
pub fn ds_bound_suite(trials: usize, seed: u64, max_edges: usize) -> Result<DsSuiteReport> {
    if max_edges < 1 {
        return Err(Error::InvalidArgument("max_edges must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DsSuiteReport {
        trials,
        seed,
        max_edges,
        violations: 0,
        worst_ratio: 0.0,
        counterexample: None,
    };
    for trial in 0..trials {
        let edges = rng.gen_range(1..=max_edges);
        let kappa = rng.gen_range(0.0..PI);
        let arc = random_arc(&mut rng, edges, kappa)?;
        let iv = Interval::new(0.0, arc.length())?;
        match ds_bound_check(&arc, &iv)? {
            DsBoundCheck::Checked { kappa, bound, max_dq, ok } => {
                report.worst_ratio = report.worst_ratio.max(max_dq / bound);
                if !ok {
                    report.violations += 1;
                    report.counterexample.get_or_insert(DsCounterexample {
                        trial,
                        vertices: arc.vertices().iter().map(|v| [v.x, v.y, v.z]).collect(),
                        kappa,
                        bound,
                        max_dq,
                    });
                }
            }
            DsBoundCheck::NotApplicable { kappa } => {
                return Err(Error::InvalidArgument(format!("generated arc has κ = {kappa} > π")));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureFailure {
    pub trial: usize,
    pub measure: CurvatureMeasure,
    pub scale: f64,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureSuiteReport {
    pub trials: usize,
    pub seed: u64,
    pub failures: usize,
    pub atomic_rejected: usize,
    pub first_failure: Option<MeasureFailure>,
}

impl MeasureSuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.atomic_rejected == self.trials
    }
}

/// Random atomless piecewise-constant measure on `(0, 1)`.
pub fn random_density_measure<R: Rng>(rng: &mut R) -> CurvatureMeasure {
    let pieces = rng.gen_range(1..=8);
    let mut cuts: Vec<f64> = (0..2 * pieces).map(|_| rng.gen::<f64>()).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let density = cuts
        .chunks_exact(2)
        .filter(|c| c[1] > c[0])
        .map(|c| (c[0], c[1], rng.gen_range(0.01..5.0)))
        .collect();
    CurvatureMeasure::new(Vec::new(), density).expect("sorted disjoint pieces")
}

/// Largest mass of a window of length `len` in `(0, 1)`, on a start grid
/// refined by the piece ends.
pub fn scan_window_mass(m: &CurvatureMeasure, len: f64) -> f64 {
    let cum = |x: f64| -> f64 {
        m.density
            .iter()
            .map(|&(a, b, r)| (x.min(b) - a).max(0.0) * r)
            .sum::<f64>()
    };
    let last = (1.0 - len).max(0.0);
    let grid = (0..=SCAN_STEPS).map(|k| last * k as f64 / SCAN_STEPS as f64);
    let ends = m
        .density
        .iter()
        .flat_map(|&(a, b, _)| [a, b, a - len, b - len])
        .map(|x| x.clamp(0.0, last));
    grid.chain(ends)
        .map(|c| cum((c + len).min(1.0)) - cum(c))
        .fold(0.0, f64::max)
}

/// Validates [`subdivision_scale`] on random atomless measures against a
/// sliding-window scan and checks that an added atom is rejected.
pub fn measure_lemma_suite(trials: usize, seed: u64) -> Result<MeasureSuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = Interval::new(0.0, 1.0)?;
    let mut report = MeasureSuiteReport {
        trials,
        seed,
        failures: 0,
        atomic_rejected: 0,
        first_failure: None,
    };
    for trial in 0..trials {
        let m = random_density_measure(&mut rng);
        let budget = SUBDIVISION_RATIO * m.total_mass();
        let scale = subdivision_scale(&m, &unit, true)?;
        let below = scan_window_mass(&m, scale * (1.0 - 1e-6));
        let mut problem = None;
        if below > budget * (1.0 + 1e-9) {
            problem = Some(format!("window shorter than the scale carries {below} > {budget}"));
        } else if scale < 1.0 && scan_window_mass(&m, (scale * (1.0 + 1e-4)).min(1.0)) <= budget {
            problem = Some("a longer window still fits the budget".to_string());
        }
        if let Some(message) = problem {
            report.failures += 1;
            report.first_failure.get_or_insert(MeasureFailure {
                trial,
                measure: m.clone(),
                scale,
                message,
            });
        }
        let pos = rng.gen_range(0.05..0.95);
        let mut atomic = m.clone();
        atomic.atoms.push((pos, rng.gen_range(0.01..1.0)));
        if matches!(subdivision_scale(&atomic, &unit, true), Err(Error::AtomicMeasure { .. })) {
            report.atomic_rejected += 1;
        }
    }
    Ok(report)
}
