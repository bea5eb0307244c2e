//! A-posteriori checks on a computed surface: invariance under `T`, the
//! unordered property, attraction of orbits, and axial endpoints.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::CompetitionModel;
use crate::order::StateVector;

use super::surface::RadialSurface;

/// Uniform random point on the standard simplex.
pub fn random_direction<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.iter().map(|v| v / s).collect()
}

fn radial_gap(surface: &RadialSurface, y: &[f64]) -> Result<f64> {
    let norm: f64 = y.iter().sum();
    if !(norm > 0.0) {
        return Err(Error::ZeroVector);
    }
    let d: Vec<f64> = y.iter().map(|c| c / norm).collect();
    Ok((surface.radius_at(&d) - norm).abs())
}

/// Largest radial gap between `T(p)` and the surface, over all node points
/// and `samples` random surface points, divided by `|q|₁`.
pub fn invariance_residual<R: Rng>(
    surface: &RadialSurface,
    model: &dyn CompetitionModel,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let n = surface.dim();
    let mut points = surface.node_points();
    for _ in 0..samples {
        points.push(surface.point_at(&random_direction(n, rng)));
    }
    let q_norm = model.axial_fixed_points()?.l1_norm();
    let gaps: Vec<f64> = points
        .par_iter()
        .map(|p| radial_gap(surface, &model.eval_map(p)?))
        .collect::<Result<_>>()?;
    Ok(gaps.into_iter().fold(0.0, f64::max) / q_norm)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnorderedOutcome {
    pub passed: bool,
    /// `min(max_i (x_i - y_i), max_i (y_i - x_i))` over distinct pairs;
    /// positive exactly when every pair is incomparable.
    pub margin: f64,
    pub worst_pair: Option<(Vec<f64>, Vec<f64>)>,
    pub pairs: usize,
}

fn order_margin(x: &[f64], y: &[f64]) -> f64 {
    let (mut up, mut down) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (a, b) in x.iter().zip(y) {
        up = up.max(a - b);
        down = down.max(b - a);
    }
    up.min(down)
}

/// Exact pairwise comparison: passes iff no two distinct points are
/// ordered.
pub fn unordered_points(points: &[StateVector]) -> UnorderedOutcome {
    let k = points.len();
    let best = (0..k)
        .into_par_iter()
        .map(|i| {
            let mut best = (f64::INFINITY, i, i);
            for j in i + 1..k {
                if points[i] == points[j] {
                    continue;
                }
                let m = order_margin(&points[i], &points[j]);
                if m < best.0 {
                    best = (m, i, j);
                }
            }
            best
        })
        .reduce(
            || (f64::INFINITY, usize::MAX, usize::MAX),
            |a, b| if b.0 < a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) { b } else { a },
        );
    let worst_pair = (best.1 < k && best.2 < k).then(|| (points[best.1].to_vec(), points[best.2].to_vec()));
    UnorderedOutcome { passed: best.0 > 0.0, margin: best.0, worst_pair, pairs: k * k.saturating_sub(1) / 2 }
}

pub fn unordered_check(surface: &RadialSurface) -> UnorderedOutcome {
    unordered_points(&surface.node_points())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticStats {
    pub passed: bool,
    pub starts: usize,
    pub steps: usize,
    pub max_gap_mid: f64,
    pub max_gap_end: f64,
    pub threshold: f64,
    pub failures: usize,
    pub witness: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

/// Iterates each start `steps` times and compares the radial gap to the
/// surface at `steps / 2` and at `steps`. A start passes when the final gap
/// is below `10 · tol` and no larger than the midpoint gap (up to 1e-12 of
/// rounding). Leaving `[0, 10 q]` fails the start.
pub fn asymptotic_check(
    surface: &RadialSurface,
    model: &dyn CompetitionModel,
    initial_points: &[StateVector],
    steps: usize,
) -> Result<AsymptoticStats> {
    let tol = surface.metadata().tol;
    let threshold = 10.0 * tol;
    let bound: Vec<f64> = model.axial_fixed_points()?.iter().map(|q| 10.0 * q).collect();
    let mid_step = steps / 2;
    let outcomes: Vec<std::result::Result<(f64, f64), String>> = initial_points
        .par_iter()
        .map(|x0| {
            if x0.is_origin() {
                return Err("start at the origin".into());
            }
            let mut x = x0.clone();
            let mut mid = f64::NAN;
            for k in 1..=steps {
                x = model.eval_map(&x).map_err(|e| e.to_string())?;
                if x.iter().zip(&bound).any(|(c, b)| c > b) {
                    return Err(format!("escaped [0, 10q] at step {k}"));
                }
                if k == mid_step {
                    mid = radial_gap(surface, &x).map_err(|e| e.to_string())?;
                }
            }
            let end = radial_gap(surface, &x).map_err(|e| e.to_string())?;
            if steps < 2 {
                mid = end;
            }
            Ok((mid, end))
        })
        .collect();
    let mut stats = AsymptoticStats {
        passed: true,
        starts: initial_points.len(),
        steps,
        max_gap_mid: 0.0,
        max_gap_end: 0.0,
        threshold,
        failures: 0,
        witness: None,
        note: String::new(),
    };
    for (x0, out) in initial_points.iter().zip(outcomes) {
        let bad = match out {
            Ok((mid, end)) => {
                stats.max_gap_mid = stats.max_gap_mid.max(mid);
                stats.max_gap_end = stats.max_gap_end.max(end);
                !(end < threshold && end <= mid + 1e-12)
            }
            Err(e) => {
                if stats.note.is_empty() {
                    stats.note = e;
                }
                true
            }
        };
        if bad {
            stats.failures += 1;
            stats.witness.get_or_insert_with(|| x0.to_vec());
        }
    }
    stats.passed = stats.failures == 0;
    Ok(stats)
}

/// Random nonzero starts in `[0, scale · q]`.
pub fn random_starts<R: Rng>(q: &StateVector, scale: f64, count: usize, rng: &mut R) -> Vec<StateVector> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: Vec<f64> = q.iter().map(|qi| scale * qi * rng.random::<f64>()).collect();
        let x = StateVector::new(x).expect("box lies in the cone");
        if !x.is_origin() {
            out.push(x);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub starts: usize,
    pub steps: usize,
    pub seed: u64,
    /// Bound on the invariance residual and on the axial endpoint errors.
    /// Held apart from the surface tolerance: the surface is only finitely
    /// smooth at an interior attracting fixed point, so the interpolation
    /// error there decays slower than the grid spacing allows elsewhere.
    pub residual_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { samples: 1_000, starts: 100, steps: 400, seed: 42, residual_tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub invariance_residual: f64,
    pub unordered: UnorderedOutcome,
    pub asymptotic: AsymptoticStats,
    /// `|r(e_i) - q_i|` per axis.
    pub axial_errors: Vec<f64>,
    pub tol: f64,
    pub residual_tol: f64,
    pub seed: u64,
    pub passed: bool,
}

/// Runs every surface check. Invariance and axial endpoints are held to
/// `cfg.residual_tol`, attraction to `10 · tol`.
pub fn verify_surface(
    surface: &RadialSurface,
    model: &dyn CompetitionModel,
    cfg: &VerifyConfig,
) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let q = model.axial_fixed_points()?;
    let tol = surface.metadata().tol;
    let invariance_residual = invariance_residual(surface, model, cfg.samples, &mut rng)?;
    let unordered = unordered_check(surface);
    let starts = random_starts(&q, 1.5, cfg.starts, &mut rng);
    let asymptotic = asymptotic_check(surface, model, &starts, cfg.steps)?;
    let axial_errors: Vec<f64> = (0..q.dim()).map(|i| (surface.axis_radius(i) - q[i]).abs()).collect();
    let passed = invariance_residual < cfg.residual_tol
        && unordered.passed
        && asymptotic.passed
        && axial_errors.iter().all(|e| *e < cfg.residual_tol);
    Ok(VerificationReport {
        invariance_residual,
        unordered,
        asymptotic,
        axial_errors,
        tol,
        residual_tol: cfg.residual_tol,
        seed: cfg.seed,
        passed,
    })
}

/// Point-cloud stand-in for a surface in any dimension: `seeds` random
/// interior starts in `[0, 1.5 q]`, each iterated `steps` times.
/// Random starts below `1.5 q`, each pushed `steps` iterates forward. The
/// normal direction contracts faster than the tangential one, so a few dozen
/// steps land close to the surface while the points are still spread out;
/// hundreds of steps pile everything onto the attractor.
pub fn point_cloud<R: Rng>(
    model: &dyn CompetitionModel,
    seeds: usize,
    steps: usize,
    rng: &mut R,
) -> Result<Vec<StateVector>> {
    let q = model.axial_fixed_points()?;
    let starts = random_starts(&q, 1.5, seeds, rng);
    starts
        .into_par_iter()
        .map(|mut x| {
            for _ in 0..steps {
                x = model.eval_map(&x)?;
            }
            Ok(x)
        })
        .collect()
}
