//! Windowed check that every bent stretch of a curve carries a near-maximal
//! shadow value.

use serde::Serialize;

use crate::curvature::{curvature_measure, interval_curvature, Interval};
use crate::distortion::{default_density, require_embedded, shadow, sup_search, DEFAULT_TOL_ARGMAX};
use crate::error::{Error, Result};
use crate::geometry::PolygonalCurve;

/// Curvature below which a window counts as straight.
pub const DEFAULT_KAPPA_MIN: f64 = 1e-6;
/// Default window count; the default window length is `L / DEFAULT_WINDOWS`.
pub const DEFAULT_WINDOWS: usize = 64;
/// Shadow samples guaranteed per window.
const SAMPLES_PER_WINDOW: f64 = 4.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowReport {
    pub lo: f64,
    pub hi: f64,
    pub curvature: f64,
    /// Largest shadow sample in the window.
    pub shadow_max: f64,
    pub straight: bool,
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SaturationReport {
    pub fraction: f64,
    pub delta: f64,
    pub eta: f64,
    pub kappa_min: f64,
    /// Actual window length after rounding to a whole number of windows.
    pub window: f64,
    pub windows: Vec<WindowReport>,
}

/// Splits the parameter range into windows of about `window` length and
/// marks each one straight (curvature `< kappa_min`) or saturated (some
/// shadow sample `≥ δ − eta`).
pub fn saturation_report(
    curve: &PolygonalCurve,
    kappa_min: f64,
    eta: f64,
    window: Option<f64>,
) -> Result<SaturationReport> {
    require_embedded(curve)?;
    let len = curve.length();
    let window = window.unwrap_or(len / DEFAULT_WINDOWS as f64);
    if !(window > 0.0 && window.is_finite()) || !(eta >= 0.0) || !(kappa_min >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "window = {window}, eta = {eta}, kappa_min = {kappa_min} must be positive"
        )));
    }
    let count = ((len / window).round() as usize).max(1);
    let width = len / count as f64;
    let delta = sup_search(curve, DEFAULT_TOL_ARGMAX).delta;
    let density = default_density(curve).max(SAMPLES_PER_WINDOW / width);
    let sh = shadow(curve, density)?;
    let measure = curvature_measure(curve);
    let samples = sh.samples();

    let mut windows = Vec::with_capacity(count);
    let mut next = 0;
    for k in 0..count {
        let lo = width * k as f64;
        let hi = if k + 1 == count { len } else { width * (k + 1) as f64 };
        let curvature = interval_curvature(&measure, &Interval::new(lo, hi)?);
        let mut shadow_max = f64::NEG_INFINITY;
        while next < samples.len() && (samples[next].0 < hi || k + 1 == count) {
            shadow_max = shadow_max.max(samples[next].1);
            next += 1;
        }
        let straight = curvature < kappa_min;
        windows.push(WindowReport {
            lo,
            hi,
            curvature,
            shadow_max,
            straight,
            saturated: straight || shadow_max >= delta - eta,
        });
    }
    let fraction = windows.iter().filter(|w| w.saturated).count() as f64 / count as f64;
    Ok(SaturationReport {
        fraction,
        delta,
        eta,
        kappa_min,
        window: width,
        windows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_comet, make_ngon};
    use crate::geometry::Vec3;

    #[test]
    fn regular_polygon_is_saturated() {
        let r = saturation_report(&make_ngon(256, 1.0).unwrap(), DEFAULT_KAPPA_MIN, 1e-2, None).unwrap();
        assert_eq!(r.windows.len(), 64);
        assert_eq!(r.fraction, 1.0);
    }

    #[test]
    fn straight_segment_is_vacuously_saturated() {
        let c = PolygonalCurve::new(vec![Vec3::zeros(), Vec3::x()], false).unwrap();
        let r = saturation_report(&c, DEFAULT_KAPPA_MIN, 1e-2, Some(0.1)).unwrap();
        assert_eq!(r.windows.len(), 10);
        assert!(r.windows.iter().all(|w| w.straight));
        assert_eq!(r.fraction, 1.0);
    }

    #[test]
    fn comet_cap_is_not_saturated() {
        let c = make_comet(2.0 * std::f64::consts::PI / 3.0, 1.0, None, None).unwrap();
        let r = saturation_report(&c, DEFAULT_KAPPA_MIN, 1e-2, None).unwrap();
        assert!(r.fraction < 1.0);
        assert!(r.windows.iter().any(|w| !w.straight && !w.saturated));
    }
}
