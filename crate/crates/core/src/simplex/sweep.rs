//! Orbit diagram of the scalar map `x e^{b - a x}` over a range of `b`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Distance below which an orbit counts as settled.
pub const SETTLE_TOL: f64 = 1e-8;
pub const MAX_PERIOD: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitClass {
    Converges,
    Periodic,
    NonConvergent,
    Divergent,
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitClass::Converges => "converges",
            OrbitClass::Periodic => "periodic",
            OrbitClass::NonConvergent => "non_convergent",
            OrbitClass::Divergent => "divergent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub b: f64,
    pub class: OrbitClass,
    pub period: Option<usize>,
    /// `|x_last - b/a|`.
    pub distance: f64,
    /// The fixed point, one cycle, or the whole recorded orbit.
    pub points: Vec<f64>,
}

/// Iterates from `0.1 b / a`, drops `burn_in` iterates and classifies the
/// next `record`.
pub fn classify_orbit(a: f64, b: f64, burn_in: usize, record: usize) -> SweepRow {
    let fixed = b / a;
    let map = |x: f64| x * (b - a * x).exp();
    let mut x = 0.1 * fixed;
    for _ in 0..burn_in {
        x = map(x);
    }
    let mut orbit = Vec::with_capacity(record);
    for _ in 0..record.max(1) {
        x = map(x);
        orbit.push(x);
    }
    let last = *orbit.last().expect("at least one iterate");
    let distance = (last - fixed).abs();
    let row = |class, period, points| SweepRow { b, class, period, distance, points };
    if orbit.iter().any(|v| !v.is_finite()) {
        return row(OrbitClass::Divergent, None, Vec::new());
    }
    if distance < SETTLE_TOL {
        return row(OrbitClass::Converges, Some(1), vec![last]);
    }
    let r = orbit.len();
    for p in 1..=MAX_PERIOD.min(r.saturating_sub(1)) {
        let span = p.min(r - p);
        if (r - span..r).all(|i| (orbit[i] - orbit[i - p]).abs() < SETTLE_TOL) {
            return row(OrbitClass::Periodic, Some(p), orbit[r - p..].to_vec());
        }
    }
    row(OrbitClass::NonConvergent, None, orbit)
}

/// `steps` evenly spaced values of `b` from `b_min` to `b_max` inclusive.
pub fn sweep_1d(a: f64, b_min: f64, b_max: f64, steps: usize, burn_in: usize, record: usize) -> Result<Vec<SweepRow>> {
    let bad = |field: &str, reason: &str| Error::InvalidParameter { field: field.into(), reason: reason.into() };
    if !(a > 0.0 && a.is_finite()) {
        return Err(bad("a", "must be positive"));
    }
    if !(b_min > 0.0 && b_min < b_max && b_max.is_finite()) {
        return Err(bad("b", "need 0 < b_min < b_max"));
    }
    if steps == 0 || record == 0 {
        return Err(bad("steps", "need at least one value and one recorded iterate"));
    }
    let bs: Vec<f64> = (0..steps)
        .map(|k| if steps == 1 { b_min } else { b_min + (b_max - b_min) * k as f64 / (steps - 1) as f64 })
        .collect();
    Ok(bs.into_par_iter().map(|b| classify_orbit(a, b, burn_in, record)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        let r = classify_orbit(1.0, 0.5, 500, 100);
        assert_eq!(r.class, OrbitClass::Converges);
        assert!(r.distance < 1e-8);
        assert_eq!(classify_orbit(1.0, 1.5, 500, 100).class, OrbitClass::Converges);
        let r = classify_orbit(1.0, 2.5, 500, 200);
        assert_ne!(r.class, OrbitClass::Converges);
        // past the first flip bifurcation at b = 2 a 2-cycle is stable
        assert_eq!((r.class, r.period), (OrbitClass::Periodic, Some(2)));
    }

    #[test]
    fn chaotic_regime_is_non_convergent() {
        assert_eq!(classify_orbit(1.0, 3.0, 1000, 200).class, OrbitClass::NonConvergent);
    }

    #[test]
    fn sweep_grid_and_validation() {
        let rows = sweep_1d(1.0, 0.5, 2.5, 5, 500, 100).unwrap();
        let bs: Vec<f64> = rows.iter().map(|r| r.b).collect();
        assert_eq!(bs, vec![0.5, 1.0, 1.5, 2.0, 2.5]);
        assert!(sweep_1d(0.0, 0.5, 1.0, 3, 10, 10).is_err());
        assert!(sweep_1d(1.0, 1.0, 0.5, 3, 10, 10).is_err());
    }
}
