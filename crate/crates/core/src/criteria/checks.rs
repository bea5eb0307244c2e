//! Numerical checks of the hypotheses behind uniqueness of the carrying
//! simplex. Conditions quantified over a continuum are checked on samples or
//! grids and labelled `pass_sampled`; only closed-form arithmetic earns a
//! plain `pass`.
//!
//! Random draws happen sequentially from one generator; evaluation fans out
//! with rayon and reduces in input order, so reports depend only on the seed.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::models::{CompetitionModel, Family, LeslieGower, MayOster, NeuralNet};
use crate::order::{compare, strictly_majorizes, support, OrderInterval, StateVector};

use super::matrix::competition_matrix;
use super::report::{ConditionRecord, CriteriaReport, Verdict, Witness};
use super::spectral::{max_col_sum, max_row_sum};

/// Margins below this are counted as near-ties.
pub const NEAR_TIE: f64 = 1e-12;
/// Sublinearity draws `λ` from `(0, 1 - LAMBDA_GAP]`.
pub const LAMBDA_GAP: f64 = 1e-6;
const AXIS_POINTS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    /// Grid points per axis over `(0, q]`.
    pub grid: usize,
    /// One extra pass at 4× density around the worst grid cell.
    pub refine: bool,
    pub samples: usize,
    pub seed: u64,
    /// Sampled checks run on `[0, region_scale · q]`.
    pub region_scale: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { grid: 16, refine: true, samples: 10_000, seed: 42, region_scale: 1.5 }
    }
}

pub fn default_region(model: &dyn CompetitionModel, scale: f64) -> Result<OrderInterval> {
    Ok(OrderInterval::from_origin(model.axial_fixed_points()?.scaled(scale)?))
}

fn sampled(ok: bool) -> Verdict {
    if ok {
        Verdict::PassSampled
    } else {
        Verdict::Fail
    }
}

fn random_facet<R: Rng>(n: usize, rng: &mut R) -> Vec<bool> {
    loop {
        let mask: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let k = mask.iter().filter(|&&b| b).count();
        if k > 0 && k < n {
            return mask;
        }
    }
}

fn uniform_in<R: Rng>(region: &OrderInterval, mask: &[bool], rng: &mut R) -> StateVector {
    let t: Vec<f64> = mask.iter().map(|&on| if on { rng.random::<f64>() } else { 0.0 }).collect();
    let mut p = region.lerp(&t);
    if mask.iter().any(|&on| !on) {
        // points off the facet sit exactly at zero
        let coords: Vec<f64> = p.iter().zip(mask).map(|(&c, &on)| if on { c } else { 0.0 }).collect();
        p = StateVector::new(coords).expect("region lies in the cone");
    }
    p
}

/// Uniform samples from `region`, every fourth restricted to a random proper
/// facet, followed by evenly spaced points on each axis segment and the
/// origin.
pub fn sample_region<R: Rng>(region: &OrderInterval, count: usize, rng: &mut R) -> Vec<StateVector> {
    let n = region.dim();
    let full = vec![true; n];
    let mut pts = Vec::with_capacity(count + n * AXIS_POINTS + 1);
    for k in 0..count {
        let mask = if n >= 2 && k % 4 == 3 { random_facet(n, rng) } else { full.clone() };
        pts.push(uniform_in(region, &mask, rng));
    }
    for i in 0..n {
        for j in 1..=AXIS_POINTS {
            let t = region.upper()[i] * j as f64 / AXIS_POINTS as f64;
            pts.push(StateVector::on_axis(n, i, t).expect("axis point in the cone"));
        }
    }
    pts.push(StateVector::zeros(n));
    pts
}

/// `G_i(0) > 1` for all `i`; `T'(0) = diag(G(0))` then has every eigenvalue
/// above 1.
pub fn check_c0(model: &dyn CompetitionModel) -> ConditionRecord {
    let g = match model.eval_growth(&StateVector::zeros(model.dim())) {
        Ok(g) => g,
        Err(e) => return ConditionRecord::new("C0", Verdict::Inconclusive).note(e.to_string()),
    };
    let (imin, gmin) = g
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    let ok = gmin > 1.0;
    let mut rec = ConditionRecord::new("C0", if ok { Verdict::Pass } else { Verdict::Fail })
        .worst(gmin)
        .note(format!("eigenvalues of T'(0) = diag(G(0)): {g:?}"));
    if !ok {
        rec = rec.witness(Witness::Index(imin + 1));
    }
    rec
}

/// Empirical boundedness: orbits from `2q` and random starts in `[0, 2q]`
/// settle into `[0, 1.1 q]`.
pub fn check_c1<R: Rng>(model: &dyn CompetitionModel, starts: usize, rng: &mut R) -> ConditionRecord {
    const MAX_STEPS: usize = 2_000;
    const SETTLE: usize = 100;
    let q = match model.axial_fixed_points() {
        Ok(q) => q,
        Err(e) => return ConditionRecord::new("C1", Verdict::Inconclusive).note(e.to_string()),
    };
    let n = model.dim();
    let outer = OrderInterval::from_origin(q.scaled(2.0).expect("q in cone"));
    let mut inits = vec![outer.upper().clone()];
    while inits.len() < starts.max(1) {
        let p = uniform_in(&outer, &vec![true; n], rng);
        if !p.is_origin() {
            inits.push(p);
        }
    }
    let inner: Vec<f64> = q.iter().map(|v| 1.1 * v).collect();
    let outcomes: Vec<std::result::Result<bool, String>> = inits
        .par_iter()
        .map(|x0| {
            let mut x = x0.clone();
            let mut inside = 0;
            for _ in 0..MAX_STEPS {
                x = model.eval_map(&x).map_err(|e| e.to_string())?;
                if x.iter().zip(&inner).all(|(c, b)| c <= b) {
                    inside += 1;
                    if inside >= SETTLE {
                        return Ok(true);
                    }
                } else {
                    inside = 0;
                }
            }
            Ok(false)
        })
        .collect();
    for (x0, out) in inits.iter().zip(&outcomes) {
        match out {
            Err(e) => {
                return ConditionRecord::new("C1", Verdict::Fail)
                    .witness(Witness::Point(x0.to_vec()))
                    .samples(inits.len())
                    .note(e.clone())
            }
            Ok(false) => {
                return ConditionRecord::new("C1", Verdict::Inconclusive)
                    .witness(Witness::Point(x0.to_vec()))
                    .samples(inits.len())
                    .note("orbit bounded but did not settle in [0, 1.1q]")
            }
            Ok(true) => {}
        }
    }
    ConditionRecord::new("C1", Verdict::PassSampled)
        .samples(inits.len())
        .note("empirical: orbits settle in [0, 1.1q]; attractor not certified")
}

/// Axial fixed points exist, are fixed to 1e-10, and attract starts spread
/// over `(0, 2 q_i]` on their axis.
pub fn check_c4(model: &dyn CompetitionModel) -> ConditionRecord {
    const MAX_STEPS: usize = 5_000;
    const STARTS: [f64; 5] = [0.05, 0.3, 0.7, 1.3, 2.0];
    let n = model.dim();
    let q = match model.axial_fixed_points() {
        Ok(q) => q,
        Err(e) => {
            let species = match e {
                crate::error::Error::NoAxialFixedPoint { species } => species,
                _ => 0,
            };
            return ConditionRecord::new("C4", Verdict::Fail)
                .witness(Witness::Index(species))
                .note(e.to_string());
        }
    };
    let jobs: Vec<(usize, f64)> = (0..n).flat_map(|i| STARTS.iter().map(move |&s| (i, s))).collect();
    let results: Vec<std::result::Result<(f64, bool), String>> = jobs
        .par_iter()
        .map(|&(i, frac)| {
            let qi = q[i];
            let scale = qi.max(1.0);
            let on_axis = |t: f64| StateVector::on_axis(n, i, t).map_err(|e| e.to_string());
            let fixed = model.eval_map(&on_axis(qi)?).map_err(|e| e.to_string())?[i];
            if (fixed - qi).abs() > 1e-10 * scale {
                return Ok((qi, false));
            }
            let mut x = frac * qi;
            for _ in 0..MAX_STEPS {
                x = model.eval_map(&on_axis(x)?).map_err(|e| e.to_string())?[i];
                if (x - qi).abs() < 1e-8 * scale {
                    return Ok((frac * qi, true));
                }
            }
            Ok((frac * qi, false))
        })
        .collect();
    for (&(i, _), r) in jobs.iter().zip(&results) {
        match r {
            Err(e) => return ConditionRecord::new("C4", Verdict::Inconclusive).note(e.clone()),
            Ok((start, false)) => {
                return ConditionRecord::new("C4", Verdict::Fail)
                    .witness(Witness::Point(StateVector::on_axis(n, i, *start).expect("axis").into_inner()))
                    .samples(jobs.len())
                    .note(format!("axis {} orbit does not converge to q_{} = {}", i + 1, i + 1, q[i]))
            }
            Ok(_) => {}
        }
    }
    ConditionRecord::new("C4", Verdict::PassSampled)
        .witness(Witness::Point(q.into_inner()))
        .samples(jobs.len())
}

enum Sample {
    Ok(f64),
    Violation,
    Error(String),
}

/// Strict sublinearity `λ T(x) ≺ T(λx)` on random `(x, λ)` pairs.
pub fn check_sublinearity<R: Rng>(
    model: &dyn CompetitionModel,
    region: &OrderInterval,
    samples: usize,
    rng: &mut R,
) -> ConditionRecord {
    let pts = sample_region(region, samples, rng);
    let pairs: Vec<(StateVector, f64)> = pts
        .into_iter()
        .filter(|x| !x.is_origin())
        .map(|x| (x, rng.random_range(f64::MIN_POSITIVE..=1.0 - LAMBDA_GAP)))
        .collect();
    let results: Vec<Sample> = pairs
        .par_iter()
        .map(|(x, lambda)| {
            let eval = || -> Result<Vec<f64>> {
                let tx = model.eval_map(x)?;
                let tlx = model.eval_map(&x.scaled(*lambda)?)?;
                Ok(tlx.iter().zip(tx.iter()).map(|(a, b)| a - lambda * b).collect())
            };
            match eval() {
                Err(e) => Sample::Error(e.to_string()),
                Ok(diff) => {
                    let margin = diff.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    if diff.iter().any(|&d| d < 0.0) || margin <= 0.0 {
                        Sample::Violation
                    } else {
                        Sample::Ok(margin)
                    }
                }
            }
        })
        .collect();
    let mut worst = f64::INFINITY;
    let mut ties = 0;
    for ((x, lambda), r) in pairs.iter().zip(&results) {
        match r {
            Sample::Ok(m) => {
                worst = worst.min(*m);
                ties += usize::from(*m < NEAR_TIE);
            }
            Sample::Violation => {
                return ConditionRecord::new("C2", Verdict::Fail)
                    .witness(Witness::Point(x.to_vec()))
                    .samples(pairs.len())
                    .note(format!("λ T(x) ⊀ T(λx) at λ = {lambda}"))
            }
            Sample::Error(e) => {
                return ConditionRecord::new("C2", Verdict::Inconclusive)
                    .witness(Witness::Point(x.to_vec()))
                    .note(e.clone())
            }
        }
    }
    ConditionRecord::new("C2", sampled(true))
        .worst(worst)
        .samples(pairs.len())
        .near_ties(ties)
        .note("worst = smallest max_i (T(λx) - λT(x))_i")
}

/// Strict retrotonicity: whenever `T(x) ≻ T(y)` for `x, y` in a common facet
/// closure, `x` strictly majorizes `y`. Pairs whose images are unordered are
/// rejected; half the pairs are independent draws, half local perturbations.
pub fn check_retrotone<R: Rng>(
    model: &dyn CompetitionModel,
    region: &OrderInterval,
    samples: usize,
    rng: &mut R,
) -> ConditionRecord {
    let n = region.dim();
    let full = vec![true; n];
    let mut pairs = Vec::with_capacity(samples);
    for k in 0..samples {
        let mask = if n >= 2 && k % 4 == 3 { random_facet(n, rng) } else { full.clone() };
        let x = uniform_in(region, &mask, rng);
        let y = if k % 2 == 0 {
            uniform_in(region, &mask, rng)
        } else {
            let coords = x
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let c = c * (1.0 + 0.05 * rng.random_range(-1.0..1.0));
                    c.clamp(region.lower()[i], region.upper()[i])
                })
                .collect();
            StateVector::new(coords).expect("clamped into the region")
        };
        pairs.push((x, y));
    }
    // Some((larger-image point, smaller-image point, majorizes, margin))
    type Outcome = std::result::Result<Option<(bool, f64, bool)>, String>;
    let results: Vec<Outcome> = pairs
        .par_iter()
        .map(|(x, y)| {
            let tx = model.eval_map(x).map_err(|e| e.to_string())?;
            let ty = model.eval_map(y).map_err(|e| e.to_string())?;
            let rel = compare(&tx, &ty).map_err(|e| e.to_string())?;
            let (hi, lo, x_is_hi) = if rel.is_above() {
                (x, y, true)
            } else if rel.is_below() {
                (y, x, false)
            } else {
                return Ok(None);
            };
            let ok = strictly_majorizes(hi, lo).map_err(|e| e.to_string())?;
            let margin = support(hi)
                .indices()
                .iter()
                .map(|&i| hi[i] - lo[i])
                .fold(f64::INFINITY, f64::min);
            Ok(Some((ok, margin, x_is_hi)))
        })
        .collect();
    let mut accepted = 0;
    let mut worst = f64::INFINITY;
    let mut ties = 0;
    for ((x, y), r) in pairs.iter().zip(&results) {
        match r {
            Err(e) => {
                return ConditionRecord::new("C3", Verdict::Inconclusive)
                    .witness(Witness::Pair(x.to_vec(), y.to_vec()))
                    .note(e.clone())
            }
            Ok(None) => {}
            Ok(Some((ok, margin, x_is_hi))) => {
                accepted += 1;
                if !ok {
                    let (hi, lo) = if *x_is_hi { (x, y) } else { (y, x) };
                    return ConditionRecord::new("C3", Verdict::Fail)
                        .witness(Witness::Pair(hi.to_vec(), lo.to_vec()))
                        .samples(accepted)
                        .note("T(first) ≻ T(second) but first does not strictly majorize second");
                }
                worst = worst.min(*margin);
                ties += usize::from(*margin < NEAR_TIE);
            }
        }
    }
    let min_accepted = (samples / 100).max(10);
    if accepted < min_accepted {
        return ConditionRecord::new("C3", Verdict::Inconclusive)
            .samples(accepted)
            .note(format!("only {accepted} of {samples} pairs had ordered images"));
    }
    ConditionRecord::new("C3", Verdict::PassSampled)
        .worst(worst)
        .samples(accepted)
        .near_ties(ties)
        .note("samples = accepted pairs; worst = smallest majorization margin")
}

/// Entries of `G'(x)` restricted to `I(x) × I(x)` are strictly negative.
pub fn check_c5<R: Rng>(
    model: &dyn CompetitionModel,
    region: &OrderInterval,
    samples: usize,
    rng: &mut R,
) -> ConditionRecord {
    let pts = sample_region(region, samples, rng);
    let results: Vec<std::result::Result<f64, String>> = pts
        .par_iter()
        .map(|x| {
            let jac = model.eval_growth_jacobian(x).map_err(|e| e.to_string())?;
            let sup = support(x);
            let mut worst = f64::NEG_INFINITY;
            for &i in sup.indices() {
                for &j in sup.indices() {
                    worst = worst.max(jac[(i, j)]);
                }
            }
            Ok(worst)
        })
        .collect();
    let mut worst = f64::NEG_INFINITY;
    let mut ties = 0;
    for (x, r) in pts.iter().zip(&results) {
        match r {
            Err(e) => {
                return ConditionRecord::new("C5", Verdict::Inconclusive)
                    .witness(Witness::Point(x.to_vec()))
                    .note(e.clone())
            }
            Ok(w) if *w >= 0.0 => {
                return ConditionRecord::new("C5", Verdict::Fail)
                    .worst(*w)
                    .witness(Witness::Point(x.to_vec()))
                    .samples(pts.len())
                    .note("nonnegative entry in [G'(x)] on the support of x")
            }
            Ok(w) => {
                worst = worst.max(*w);
                ties += usize::from(*w > -NEAR_TIE);
            }
        }
    }
    let mut rec = ConditionRecord::new("C5", Verdict::PassSampled).samples(pts.len()).near_ties(ties);
    if worst.is_finite() {
        rec = rec.worst(worst);
    }
    rec
}

/// Regular grid `q ⊙ (k_1/g, …, k_n/g)`, `k_i ∈ 1..=g`.
pub fn grid_points(q: &StateVector, g: usize) -> Vec<StateVector> {
    let n = q.dim();
    let total = g.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let coords = (0..n)
                .map(|i| {
                    let k = idx % g + 1;
                    idx /= g;
                    q[i] * k as f64 / g as f64
                })
                .collect();
            StateVector::new(coords).expect("grid inside the cone")
        })
        .collect()
}

/// 4×-density points in the grid cell around `center`, kept inside `(0, q]`.
fn refinement_points(center: &StateVector, q: &StateVector, g: usize) -> Vec<StateVector> {
    let n = q.dim();
    let total = 9usize.pow(n as u32);
    (0..total)
        .filter_map(|mut idx| {
            let mut coords = Vec::with_capacity(n);
            for i in 0..n {
                let j = (idx % 9) as f64 - 4.0;
                idx /= 9;
                let c = center[i] + j * q[i] / (4 * g) as f64;
                if c <= 0.0 || c > q[i] * (1.0 + 1e-12) {
                    return None;
                }
                coords.push(c.min(q[i]));
            }
            StateVector::new(coords).ok()
        })
        .collect()
}

struct GridValue {
    rho: std::result::Result<f64, String>,
    row: f64,
    col: f64,
}

fn evaluate_grid(model: &dyn CompetitionModel, pts: &[StateVector]) -> Vec<GridValue> {
    pts.par_iter()
        .map(|x| match competition_matrix(model, x) {
            Err(e) => GridValue { rho: Err(e.to_string()), row: f64::NAN, col: f64::NAN },
            Ok(m) => GridValue {
                rho: m.spectral_radius().map_err(|e| e.to_string()),
                row: max_row_sum(m.entries()),
                col: max_col_sum(m.entries()),
            },
        })
        .collect()
}

/// Grid resolution actually used: `grid` per axis, reduced so the grid
/// stays below about a million points.
pub fn effective_grid(n: usize, grid: usize) -> usize {
    let mut g = grid.max(1);
    while g > 2 && (g as f64).powi(n as i32) > 1.0e6 {
        g -= 1;
    }
    g
}

fn max_over(pts: &[StateVector], vals: impl Iterator<Item = f64>) -> (f64, usize) {
    let mut best = (f64::NEG_INFINITY, 0);
    for (k, v) in vals.enumerate().take(pts.len()) {
        if v > best.0 || v.is_nan() {
            best = (v, k);
            if v.is_nan() {
                break;
            }
        }
    }
    best
}

/// `ρ(M(x)) < 1` for `0 ≺ x ⪯ q`, on the regular grid with optional local
/// refinement around the worst point.
pub fn check_spectral_condition(model: &dyn CompetitionModel, grid: usize, refine: bool) -> ConditionRecord {
    grid_scan(model, grid, refine).map_or_else(
        |e| ConditionRecord::new("Eq4", Verdict::Inconclusive).note(e.to_string()),
        |scan| scan.spectral,
    )
}

struct GridScan {
    spectral: ConditionRecord,
    col_sums: ConditionRecord,
    row_sums: ConditionRecord,
}

fn grid_scan(model: &dyn CompetitionModel, grid: usize, refine: bool) -> Result<GridScan> {
    let q = model.axial_fixed_points()?;
    let g = effective_grid(q.dim(), grid);
    let mut pts = grid_points(&q, g);
    let mut vals = evaluate_grid(model, &pts);

    let gersh = |id: &str, which: fn(&GridValue) -> f64, what: &str| {
        let (worst, k) = max_over(&pts, vals.iter().map(which));
        ConditionRecord::new(id, sampled(worst < 1.0))
            .worst(worst)
            .witness(Witness::Point(pts[k].to_vec()))
            .samples(pts.len())
            .advisory()
            .note(format!("max {what} sum of M(x) over the grid; sufficient for Eq4"))
    };
    let col_sums = gersh("Eq3a", |v| v.col, "column");
    let row_sums = gersh("Eq3b", |v| v.row, "row");

    if let Some((k, e)) = vals.iter().enumerate().find_map(|(k, v)| v.rho.as_ref().err().map(|e| (k, e))) {
        let spectral = ConditionRecord::new("Eq4", Verdict::Inconclusive)
            .witness(Witness::Point(pts[k].to_vec()))
            .note(e.clone());
        return Ok(GridScan { spectral, col_sums, row_sums });
    }
    let rho_of = |v: &GridValue| *v.rho.as_ref().expect("checked above");
    let (_, mut arg) = max_over(&pts, vals.iter().map(rho_of));
    let mut note = format!("grid {g} per axis over (0, q]");
    if refine {
        let extra = refinement_points(&pts[arg], &q, g);
        let extra_vals = evaluate_grid(model, &extra);
        if let Some(e) = extra_vals.iter().find_map(|v| v.rho.as_ref().err()) {
            let spectral = ConditionRecord::new("Eq4", Verdict::Inconclusive).note(e.clone());
            return Ok(GridScan { spectral, col_sums, row_sums });
        }
        pts.extend(extra);
        vals.extend(extra_vals);
        arg = max_over(&pts, vals.iter().map(rho_of)).1;
        note.push_str(", refined 4x around the maximum");
    }
    let worst = rho_of(&vals[arg]);
    let spectral = ConditionRecord::new("Eq4", sampled(worst < 1.0))
        .worst(worst)
        .witness(Witness::Point(pts[arg].to_vec()))
        .samples(pts.len())
        .note(note);
    Ok(GridScan { spectral, col_sums, row_sums })
}

/// `[T'(x)_I]^{-1}` exists and is entrywise positive at each point, with
/// `I = I(x)`.
pub fn check_inverse_positivity(model: &dyn CompetitionModel, points: &[StateVector]) -> ConditionRecord {
    let results: Vec<std::result::Result<Option<f64>, String>> = points
        .par_iter()
        .map(|x| {
            let sup = support(x);
            if sup.is_empty() {
                return Ok(Some(f64::INFINITY));
            }
            let jac = model.map_jacobian(x).map_err(|e| e.to_string())?;
            let idx = sup.indices();
            let sub = DMatrix::from_fn(idx.len(), idx.len(), |a, b| jac[(idx[a], idx[b])]);
            Ok(sub.try_inverse().map(|inv| inv.min()))
        })
        .collect();
    let mut worst = f64::INFINITY;
    for (x, r) in points.iter().zip(&results) {
        match r {
            Err(e) => {
                return ConditionRecord::new("inverse_positivity", Verdict::Inconclusive)
                    .witness(Witness::Point(x.to_vec()))
                    .note(e.clone())
            }
            Ok(None) => {
                return ConditionRecord::new("inverse_positivity", Verdict::Fail)
                    .witness(Witness::Point(x.to_vec()))
                    .samples(points.len())
                    .note("singular principal submatrix of T'(x)")
            }
            Ok(Some(m)) if *m <= 0.0 => {
                return ConditionRecord::new("inverse_positivity", Verdict::Fail)
                    .worst(*m)
                    .witness(Witness::Point(x.to_vec()))
                    .samples(points.len())
                    .note("nonpositive entry in [T'(x)_I]^{-1}")
            }
            Ok(Some(m)) => worst = worst.min(*m),
        }
    }
    let mut rec = ConditionRecord::new("inverse_positivity", Verdict::PassSampled).samples(points.len());
    if worst.is_finite() {
        rec = rec.worst(worst);
    }
    rec
}

/// Row values `q_i Σ_j A_ij` and column values `Σ_i q_i A_ij` for the
/// exponential map, `q_i = B_i / A_ii`. Either family below 1 bounds the
/// row or column sums of `M(x) = diag(x) A` on `[0, q]`.
pub fn may_oster_bounds(model: &MayOster) -> (Vec<f64>, Vec<f64>) {
    let n = model.b().len();
    let a = model.a();
    let q: Vec<f64> = (0..n).map(|i| model.b()[i] / a[(i, i)]).collect();
    let rows = (0..n).map(|i| q[i] * a.row(i).sum()).collect();
    let cols = (0..n).map(|j| (0..n).map(|i| q[i] * a[(i, j)]).sum()).collect();
    (rows, cols)
}

/// Upper limits `1 + A_ii / Σ_j A_ij` on `C_i`.
pub fn leslie_gower_upper_bounds(model: &LeslieGower) -> Vec<f64> {
    let a = model.a();
    (0..a.nrows()).map(|i| 1.0 + a[(i, i)] / a.row(i).sum()).collect()
}

/// Largest admissible gain `[max_i (B_i / A_ii) Σ_j A_ij]^{-1}`.
pub fn neural_gain_bound(model: &NeuralNet) -> f64 {
    let a = model.a();
    let worst = (0..a.nrows())
        .map(|i| model.b()[i] / a[(i, i)] * a.row(i).sum())
        .fold(0.0, f64::max);
    1.0 / worst
}

/// Closed-form sufficient criterion of each family, evaluated exactly.
pub fn model_criterion(model: &dyn CompetitionModel) -> ConditionRecord {
    const ID: &str = "model_criterion";
    match model.family() {
        Family::MayOster(m) => {
            let (rows, cols) = may_oster_bounds(m);
            let row_max = rows.iter().copied().fold(0.0, f64::max);
            let col_max = cols.iter().copied().fold(0.0, f64::max);
            let detail = format!("max_i q_i Σ_j A_ij = {row_max}, max_j Σ_i q_i A_ij = {col_max}");
            if row_max < 1.0 || col_max < 1.0 {
                ConditionRecord::new(ID, Verdict::Pass)
                    .worst(row_max.min(col_max))
                    .note(format!("unique carrying simplex guaranteed; {detail}"))
            } else if let Some(i) = m.b().iter().position(|&b| b > 2.0) {
                ConditionRecord::new(ID, Verdict::Fail)
                    .worst(m.b()[i])
                    .witness(Witness::Index(i + 1))
                    .note(format!(
                        "no carrying simplex: axis {} reduces to x e^(b - a x) with b = {} > 2; {detail}",
                        i + 1,
                        m.b()[i]
                    ))
            } else {
                ConditionRecord::new(ID, Verdict::Inconclusive)
                    .worst(row_max.min(col_max))
                    .note(format!("indeterminate; {detail}"))
            }
        }
        Family::LeslieGower(m) => {
            let upper = leslie_gower_upper_bounds(m);
            if let Some(i) = m.c().iter().position(|&c| c <= 1.0) {
                return ConditionRecord::new(ID, Verdict::Fail)
                    .worst(m.c()[i])
                    .witness(Witness::Index(i + 1))
                    .note(format!("C_{} <= 1: axis orbits collapse to 0, no carrying simplex", i + 1));
            }
            match (0..upper.len()).find(|&i| m.c()[i] >= upper[i]) {
                None => ConditionRecord::new(ID, Verdict::Pass)
                    .witness(Witness::Point(upper))
                    .note("1 < C_i < 1 + A_ii / Σ_j A_ij for all i (witness: upper limits)"),
                Some(i) => ConditionRecord::new(ID, Verdict::Inconclusive)
                    .worst(m.c()[i])
                    .witness(Witness::Index(i + 1))
                    .note(format!("C_{} >= {}: sufficient bound not met", i + 1, upper[i])),
            }
        }
        Family::NeuralNet(m) => {
            let bound = neural_gain_bound(m);
            let gain = m.gain();
            ConditionRecord::new(ID, if gain < bound { Verdict::Pass } else { Verdict::Fail })
                .worst(bound)
                .note(format!("gain {gain} against bound {bound}"))
        }
        Family::Poincare(_) | Family::Other => ConditionRecord::new(ID, Verdict::Inconclusive)
            .note(format!("no closed-form criterion for {}", model.name())),
    }
}

/// Every check in a fixed order, all randomness from one seeded generator.
pub fn run_criteria(model: &dyn CompetitionModel, cfg: &CheckConfig) -> CriteriaReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut conditions = vec![check_c0(model), check_c1(model, 16, &mut rng).seed(cfg.seed)];

    match default_region(model, cfg.region_scale) {
        Ok(region) => {
            conditions.push(check_sublinearity(model, &region, cfg.samples, &mut rng).seed(cfg.seed));
            conditions.push(check_retrotone(model, &region, cfg.samples, &mut rng).seed(cfg.seed));
            conditions.push(check_c4(model));
            conditions.push(check_c5(model, &region, cfg.samples, &mut rng).seed(cfg.seed));
        }
        Err(e) => {
            for id in ["C2", "C3"] {
                conditions.push(
                    ConditionRecord::new(id, Verdict::Inconclusive)
                        .note(format!("region [0, {}q] unavailable: {e}", cfg.region_scale)),
                );
            }
            conditions.push(check_c4(model));
            conditions.push(
                ConditionRecord::new("C5", Verdict::Inconclusive).note(format!("region unavailable: {e}")),
            );
        }
    }
    match grid_scan(model, cfg.grid, cfg.refine) {
        Ok(scan) => {
            conditions.push(scan.col_sums);
            conditions.push(scan.row_sums);
            conditions.push(scan.spectral);
        }
        Err(e) => conditions.push(ConditionRecord::new("Eq4", Verdict::Inconclusive).note(e.to_string())),
    }
    // the closed-form criteria are only sufficient; when they cannot decide,
    // the grid checks above carry the verdict
    let closed_form = model_criterion(model);
    conditions.push(if closed_form.verdict == Verdict::Inconclusive { closed_form.advisory() } else { closed_form });
    CriteriaReport { model: model.name().to_string(), n: model.dim(), seed: cfg.seed, conditions }
}
