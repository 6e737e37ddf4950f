//! Metropolis annealing over triangle-valid moves inside `U_C`.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, WeightedIndex};
use serde::{Deserialize, Serialize};

use super::{in_uc_tol, inscribe_arc, prop1_eps_prime, shorten_corner};
use crate::curvature::Interval;
use crate::distortion::{normalize_thickness_to, sup_search, thickness, DEFAULT_TOL_ARGMAX};
use crate::error::{Error, Result};
use crate::geometry::{apply_triangle_move, PolygonalCurve, TriangleMove, Vec3};
use crate::io::csv_err;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Length,
    Distortion,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub t0: f64,
    /// Multiplicative cooling per step.
    pub cooling: f64,
    pub steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveWeights {
    #[serde(default = "one")]
    pub inscribe: f64,
    #[serde(default = "one")]
    pub shorten_corner: f64,
    #[serde(default = "one")]
    pub perturb: f64,
}

impl Default for MoveWeights {
    fn default() -> Self {
        Self {
            inscribe: 1.0,
            shorten_corner: 1.0,
            perturb: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// dq-increase budget for inscriptions; default half the margin `C − δ`.
    #[serde(default)]
    pub eps_prop: Option<f64>,
    #[serde(default = "default_tol_constraint")]
    pub tol_constraint: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_prop: None,
            tol_constraint: default_tol_constraint(),
        }
    }
}

fn one() -> f64 {
    1.0
}

fn default_tol_constraint() -> f64 {
    1e-9
}

fn default_perturb_scale() -> f64 {
    0.05
}

fn default_max_cut() -> f64 {
    0.5
}

/// Annealing settings, read from TOML.
///
/// ```toml
/// objective = "length"
/// C = 2.0
/// b = 1.56
/// seed = 7
/// [schedule]
/// t0 = 0.01
/// cooling = 0.999
/// steps = 1000
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnealConfig {
    pub objective: Objective,
    /// Distortion cap.
    #[serde(rename = "C", alias = "c")]
    pub cap: f64,
    /// Thickness threshold.
    pub b: f64,
    #[serde(default = "one")]
    pub tau_min: f64,
    pub seed: u64,
    pub schedule: Schedule,
    #[serde(default)]
    pub weights: MoveWeights,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Perturbation standard deviation as a fraction of the mean edge length.
    #[serde(default = "default_perturb_scale")]
    pub perturb_scale: f64,
    /// Upper end of the uniform `ε_cut` draw for corner cuts.
    #[serde(default = "default_max_cut")]
    pub max_cut: f64,
}

impl AnnealConfig {
    pub fn new(objective: Objective, cap: f64, b: f64, seed: u64, schedule: Schedule) -> Self {
        Self {
            objective,
            cap,
            b,
            tau_min: 1.0,
            seed,
            schedule,
            weights: MoveWeights::default(),
            tolerances: Tolerances::default(),
            perturb_scale: default_perturb_scale(),
            max_cut: default_max_cut(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.cap > 1.0) {
            return bad(format!("C = {} must exceed 1", self.cap));
        }
        if !(self.b > 1.0) {
            return bad(format!("b = {} must exceed 1", self.b));
        }
        if !(self.tau_min > 0.0 && self.tau_min.is_finite()) {
            return bad(format!("tau_min = {} must be positive", self.tau_min));
        }
        if !(self.schedule.cooling > 0.0 && self.schedule.cooling < 1.0) {
            return bad(format!("cooling = {} must lie in (0, 1)", self.schedule.cooling));
        }
        if !(self.schedule.t0 >= 0.0 && self.schedule.t0.is_finite()) {
            return bad(format!("t0 = {} must be non-negative", self.schedule.t0));
        }
        let w = self.weights;
        let ws = [w.inscribe, w.shorten_corner, w.perturb];
        if ws.iter().any(|&x| !(x >= 0.0 && x.is_finite())) || !(ws.iter().sum::<f64>() > 0.0) {
            return bad("move weights must be non-negative with a positive sum".into());
        }
        if let Some(e) = self.tolerances.eps_prop {
            if !(e > 0.0) {
                return bad(format!("eps_prop = {e} must be positive"));
            }
        }
        if !(self.tolerances.tol_constraint >= 0.0) {
            return bad("tol_constraint must be non-negative".into());
        }
        if !(self.perturb_scale > 0.0) || !(self.max_cut > 0.0 && self.max_cut < 1.0) {
            return bad("perturb_scale must be positive and max_cut in (0, 1)".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Inscribe,
    ShortenCorner,
    Perturb,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::Inscribe => "inscribe",
            MoveKind::ShortenCorner => "shorten_corner",
            MoveKind::Perturb => "perturb",
        }
    }
}

/// One proposal. Infeasible proposals carry NaN measurements where none were taken.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRecord {
    pub step: usize,
    pub temp: f64,
    pub length: f64,
    pub delta: f64,
    pub tau: f64,
    #[serde(rename = "move")]
    pub move_kind: MoveKind,
    pub accepted: bool,
    pub feasible: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AnnealTrace {
    pub records: Vec<TraceRecord>,
}

impl AnnealTrace {
    pub fn accepted_count(&self) -> usize {
        self.records.iter().filter(|r| r.accepted).count()
    }

    pub fn accepted(&self) -> impl Iterator<Item = &TraceRecord> {
        self.records.iter().filter(|r| r.accepted)
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_csv_path(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}

#[derive(Clone, Debug)]
pub struct AnnealOutcome {
    pub best: PolygonalCurve,
    pub best_objective: f64,
    pub initial: PolygonalCurve,
    pub initial_objective: f64,
    pub trace: AnnealTrace,
}

struct State {
    curve: PolygonalCurve,
    delta: f64,
    tau: f64,
}

impl State {
    fn objective(&self, obj: Objective) -> f64 {
        match obj {
            Objective::Length => self.curve.length(),
            Objective::Distortion => self.delta,
        }
    }
}

/// Rescales a candidate to `τ_b = τ_min` and measures it; `None` when it
/// leaves the feasible set.
fn evaluate(cand: PolygonalCurve, cfg: &AnnealConfig) -> Option<State> {
    if crate::geometry::require_embedded(&cand).is_err() {
        return None;
    }
    let delta = sup_search(&cand, DEFAULT_TOL_ARGMAX).delta;
    if !(delta < cfg.cap) {
        return None;
    }
    let tau = thickness(&cand, cfg.b).ok()?;
    if !(tau.is_finite() && tau > 0.0) {
        return None;
    }
    let curve = cand.scaled(cfg.tau_min / tau).ok()?;
    Some(State {
        curve,
        delta,
        tau: cfg.tau_min,
    })
}

fn propose(state: &State, kind: MoveKind, cfg: &AnnealConfig, rng: &mut ChaCha8Rng) -> Result<PolygonalCurve> {
    let c = &state.curve;
    let n = c.vertex_count();
    match kind {
        MoveKind::Inscribe => {
            let start = rng.gen_range(0..n);
            let span = rng.gen_range(2..=6).min(n - 2);
            let end = (start + span) % n;
            let lo = c.vertex_param(start) - 0.25 * c.edge_length((start + n - 1) % n);
            let mut hi = c.vertex_param(end) + 0.25 * c.edge_length(end);
            if hi <= lo {
                hi += c.length();
            }
            let iv = Interval::new(lo, hi)?;
            let eps = cfg
                .tolerances
                .eps_prop
                .unwrap_or(0.5 * (cfg.cap - state.delta));
            let guard = c.length() / n as f64;
            let eps_prime = prop1_eps_prime(c, &iv, guard, eps)?;
            inscribe_arc(c, &iv, eps_prime)
        }
        MoveKind::ShortenCorner => {
            let k = rng.gen_range(0..n);
            let cut = rng.gen_range(0.0..cfg.max_cut);
            shorten_corner(c, k, cut)
        }
        MoveKind::Perturb => {
            let k = rng.gen_range(0..n);
            let sigma = cfg.perturb_scale * c.length() / c.edge_count() as f64;
            let normal = Normal::new(0.0, sigma).map_err(|e| Error::Config(e.to_string()))?;
            let d = Vec3::new(normal.sample(rng), normal.sample(rng), normal.sample(rng));
            apply_triangle_move(c, &TriangleMove::Shift { vertex: k, to: c.vertex(k) + d })
        }
    }
}

/// Simulated annealing from `seed`, which must lie in `U_C` once normalized.
pub fn anneal(seed: &PolygonalCurve, cfg: &AnnealConfig) -> Result<AnnealOutcome> {
    anneal_observed(seed, cfg, |_, _| {})
}

/// [`anneal`] that hands every accepted state to `on_accept` with its step.
pub fn anneal_observed<F>(seed: &PolygonalCurve, cfg: &AnnealConfig, mut on_accept: F) -> Result<AnnealOutcome>
where
    F: FnMut(usize, &PolygonalCurve),
{
    cfg.validate()?;
    let tol = cfg.tolerances.tol_constraint;
    let start = normalize_thickness_to(seed, cfg.b, cfg.tau_min)
        .map_err(|e| Error::Config(format!("seed curve cannot be normalized: {e}")))?;
    let check = in_uc_tol(&start, cfg.cap, cfg.b, cfg.tau_min, tol)?;
    if !check.member {
        return Err(Error::Config(format!(
            "seed curve is not in U_C: {}",
            check.reason.unwrap_or_default()
        )));
    }
    let mut state = State {
        curve: start.clone(),
        delta: check.delta,
        tau: check.thickness,
    };
    let initial_objective = state.objective(cfg.objective);
    let mut best = (state.curve.clone(), initial_objective);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let w = cfg.weights;
    let kinds = [MoveKind::Inscribe, MoveKind::ShortenCorner, MoveKind::Perturb];
    let pick = WeightedIndex::new([w.inscribe, w.shorten_corner, w.perturb])
        .map_err(|e| Error::Config(e.to_string()))?;
    let mut trace = AnnealTrace::default();
    let mut temp = cfg.schedule.t0;
    for step in 0..cfg.schedule.steps {
        let kind = kinds[pick.sample(&mut rng)];
        let cand = propose(&state, kind, cfg, &mut rng).ok().and_then(|c| evaluate(c, cfg));
        // drawn every step so the stream does not depend on feasibility
        let u: f64 = rng.gen();
        let mut rec = TraceRecord {
            step,
            temp,
            length: f64::NAN,
            delta: f64::NAN,
            tau: f64::NAN,
            move_kind: kind,
            accepted: false,
            feasible: cand.is_some(),
        };
        if let Some(cand) = cand {
            rec.length = cand.curve.length();
            rec.delta = cand.delta;
            rec.tau = cand.tau;
            let diff = cand.objective(cfg.objective) - state.objective(cfg.objective);
            let accept = diff <= 0.0 || (temp > 0.0 && u < (-diff / temp).exp());
            if accept {
                // full re-check of the renormalized state
                let re = in_uc_tol(&cand.curve, cfg.cap, cfg.b, cfg.tau_min, tol)?;
                if re.member {
                    rec.accepted = true;
                    rec.delta = re.delta;
                    rec.tau = re.thickness;
                    state = State {
                        curve: cand.curve,
                        delta: re.delta,
                        tau: re.thickness,
                    };
                    on_accept(step, &state.curve);
                    let obj = state.objective(cfg.objective);
                    if obj < best.1 {
                        best = (state.curve.clone(), obj);
                    }
                } else {
                    rec.feasible = false;
                }
            }
        }
        trace.records.push(rec);
        temp *= cfg.schedule.cooling;
    }
    debug_assert!(state.tau.is_finite());
    Ok(AnnealOutcome {
        best: best.0,
        best_objective: best.1,
        initial: start,
        initial_objective,
        trace,
    })
}
