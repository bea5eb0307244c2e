//! The carrying simplex as a radial graph `d ↦ r(d) d` over the simplex of
//! directions, found by iterating the graph transform of `T` from a surface
//! lying above `[0, q]`.
//!
//! Each step computes the image surface `T(S_k)` on the fixed grid. The
//! default scheme pulls back: for every node direction `d` it solves
//! `dir T(r_k(e) e) = d` for the source direction `e`, then sets
//! `r_{k+1}(d) = |T(r_k(e) e)|₁`. Accuracy is then limited only by the
//! interpolant `r_k`, which is high order. The forward scheme pushes the
//! nodes and interpolates the scattered images linearly. It is cheaper per
//! step but only first order, and is kept as a baseline.
//!
//! Facets are invariant under `T`, so vertex and edge nodes are updated from
//! lower-dimensional problems on their own facet.

use rayon::prelude::*;
use roots::{find_root_brent, SimpleConvergency};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::CompetitionModel;
use crate::order::StateVector;

use super::grid::{barycentric, signed_area, SimplexGrid};
use super::interp::interpolate;

/// Radii may grow by this much per step before counting as a monotonicity
/// violation.
pub const DESCENT_SLACK: f64 = 1e-12;
/// Safety factor on the initial surface.
pub const INIT_FACTOR: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    PullBack,
    Forward,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceConfig {
    pub m: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub scheme: Scheme,
    /// Highest interpolation degree; 1 gives piecewise-linear radii.
    pub max_degree: usize,
}

impl SurfaceConfig {
    pub const DEFAULT_TOL: f64 = 1e-10;
    pub const DEFAULT_MAX_ITER: usize = 5_000;
    pub const DEFAULT_DEGREE: usize = 5;

    /// Curves: `m = 4096`, degree 5. Triangles: `m = 24`, degree 3.
    ///
    /// At an interior stable node `p` the simplex is only `C^α` with
    /// `α = ln λ_normal / ln λ_tangent`, which can be below 3 (2.47 for the
    /// two-species May instance, about 1.5 for some three-species ones). The
    /// error near `p` decays like `m^{-α}` whatever the degree, so curves
    /// need a fine grid to reach 1e-9. On triangles, degree 6 amplifies
    /// interpolation error faster than the map contracts it and the
    /// iteration oscillates; degree 3 is stable.
    pub fn for_dim(n: usize) -> Self {
        Self {
            m: if n >= 3 { 24 } else { 4096 },
            tol: Self::DEFAULT_TOL,
            max_iter: Self::DEFAULT_MAX_ITER,
            scheme: Scheme::PullBack,
            max_degree: if n >= 3 { 3 } else { Self::DEFAULT_DEGREE },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMetadata {
    pub iterations: usize,
    pub final_delta: f64,
    pub m: usize,
    pub tol: f64,
    pub converged: bool,
    pub scheme: Scheme,
    pub max_degree: usize,
    /// Node updates after the first step that raised a radius by more than
    /// [`DESCENT_SLACK`].
    pub monotone_violations: usize,
}

/// Radii at the nodes of a simplex grid, interpolated in between.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSurface {
    grid: SimplexGrid,
    radii: Vec<f64>,
    metadata: SurfaceMetadata,
}

impl RadialSurface {
    /// A surface with given node radii and no iteration history.
    pub fn from_radii(grid: SimplexGrid, radii: Vec<f64>, tol: f64) -> Result<Self> {
        if radii.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), got: radii.len() });
        }
        if let Some(i) = radii.iter().position(|r| !(*r > 0.0 && r.is_finite())) {
            return Err(Error::InvalidState { index: i + 1, value: radii[i] });
        }
        let metadata = SurfaceMetadata {
            iterations: 0,
            final_delta: f64::NAN,
            m: grid.m(),
            tol,
            converged: false,
            scheme: Scheme::PullBack,
            max_degree: SurfaceConfig::DEFAULT_DEGREE,
            monotone_violations: 0,
        };
        Ok(Self { grid, radii, metadata })
    }

    pub fn grid(&self) -> &SimplexGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.n()
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn metadata(&self) -> &SurfaceMetadata {
        &self.metadata
    }

    pub fn with_interpolation_degree(mut self, max_degree: usize) -> Self {
        self.metadata.max_degree = max_degree.max(1);
        self
    }

    /// Interpolated radius over direction `d` (on the simplex).
    pub fn radius_at(&self, d: &[f64]) -> f64 {
        interpolate(&self.grid, &self.radii, d, self.metadata.max_degree)
    }

    pub fn point_at(&self, d: &[f64]) -> StateVector {
        let r = self.radius_at(d);
        StateVector::new(d.iter().map(|c| r * c).collect()).expect("radii are positive")
    }

    pub fn node_points(&self) -> Vec<StateVector> {
        (0..self.grid.len())
            .map(|i| {
                let r = self.radii[i];
                StateVector::new(self.grid.direction(i).iter().map(|c| r * c).collect())
                    .expect("radii are positive")
            })
            .collect()
    }

    /// Radius at vertex `i`, the computed axial fixed point.
    pub fn axis_radius(&self, i: usize) -> f64 {
        self.radii[self.grid.vertex(i)]
    }
}

fn direction_of(y: &[f64]) -> Option<(Vec<f64>, f64)> {
    let s: f64 = y.iter().sum();
    if s > 0.0 && s.is_finite() {
        Some((y.iter().map(|c| c / s).collect(), s))
    } else {
        None
    }
}

struct Step<'a> {
    model: &'a dyn CompetitionModel,
    surface: &'a RadialSurface,
}

impl Step<'_> {
    fn image(&self, e: &[f64]) -> Result<(Vec<f64>, f64)> {
        let r = self.surface.radius_at(e);
        let x = StateVector::new(e.iter().map(|c| (r * c).max(0.0)).collect())?;
        let y = self.model.eval_map(&x)?;
        direction_of(&y).ok_or(Error::ZeroVector)
    }

    fn not_injective(&self) -> Error {
        Error::NotInjective { m: self.surface.grid.m() }
    }

    /// New radii along the edge from vertex `j` (s = 0) to vertex `i`
    /// (s = 1), for the interior edge nodes, in order of increasing `s`.
    fn edge(&self, i: usize, j: usize, scheme: Scheme) -> Result<Vec<(usize, f64)>> {
        let grid = &self.surface.grid;
        let m = grid.m();
        let n = grid.n();
        let at = |s: f64| {
            let mut e = vec![0.0; n];
            e[i] = s;
            e[j] = 1.0 - s;
            e
        };
        let node_at = |k: usize| {
            let mut idx = vec![0; n];
            idx[i] = k;
            idx[j] = m - k;
            grid.index(&idx)
        };
        let images: Vec<(f64, f64)> = (0..=m)
            .into_par_iter()
            .map(|k| {
                self.image(&at(k as f64 / m as f64)).map(|(dir, norm)| (dir[i] / (dir[i] + dir[j]), norm))
            })
            .collect::<Result<_>>()?;
        if images.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(self.not_injective());
        }
        (1..m)
            .into_par_iter()
            .map(|k| {
                let target = k as f64 / m as f64;
                let c = images.partition_point(|im| im.0 <= target).clamp(1, m);
                let (lo, hi) = (images[c - 1], images[c]);
                let r = match scheme {
                    Scheme::Forward => {
                        let w = (target - lo.0) / (hi.0 - lo.0);
                        lo.1 + w * (hi.1 - lo.1)
                    }
                    Scheme::PullBack if lo.0 == target => lo.1,
                    Scheme::PullBack => {
                        let mut failure = None;
                        let phi = |s: f64| match self.image(&at(s)) {
                            Ok((dir, _)) => dir[i] / (dir[i] + dir[j]) - target,
                            Err(e) => {
                                failure.get_or_insert(e);
                                f64::NAN
                            }
                        };
                        let mut conv = SimpleConvergency { eps: 1e-15, max_iter: 200 };
                        let s0 = (c - 1) as f64 / m as f64;
                        let s1 = c as f64 / m as f64;
                        let s = find_root_brent(s0, s1, phi, &mut conv);
                        if let Some(e) = failure {
                            return Err(e);
                        }
                        let s = s.map_err(|_| self.not_injective())?;
                        self.image(&at(s))?.1
                    }
                };
                Ok((node_at(k), r))
            })
            .collect()
    }

    /// Source direction mapped onto `target` by the piecewise-linear inverse
    /// of the pushed-forward lattice.
    fn locate(
        &self,
        target: &[f64],
        tris: &[([usize; 3], f64)],
        dirs: &[Vec<f64>],
        norms: &[f64],
    ) -> Result<(Vec<f64>, f64)> {
        let grid = &self.surface.grid;
        let p = [target[0], target[1]];
        let mut best: Option<(f64, [f64; 3], [usize; 3])> = None;
        for (t, _) in tris {
            let v = |a: usize| [dirs[t[a]][0], dirs[t[a]][1]];
            let Some(l) = barycentric(p, v(0), v(1), v(2)) else { return Err(self.not_injective()) };
            let worst = l.iter().copied().fold(f64::INFINITY, f64::min);
            if best.as_ref().is_none_or(|b| worst > b.0) {
                best = Some((worst, l, *t));
            }
        }
        let (_, l, t) = best.ok_or_else(|| self.not_injective())?;
        let mut e = vec![0.0; 3];
        let mut r = 0.0;
        for a in 0..3 {
            let src = grid.direction(t[a]);
            for c in 0..3 {
                e[c] += l[a] * src[c];
            }
            r += l[a] * norms[t[a]];
        }
        Ok((e, r))
    }

    /// Newton on `e ↦ dir T(r(e) e) - target` over the open triangle.
    fn solve_interior(&self, target: &[f64], guess: &[f64]) -> Result<(Vec<f64>, f64)> {
        let make = |u: [f64; 2]| vec![u[0], u[1], 1.0 - u[0] - u[1]];
        let inside = |u: [f64; 2]| u[0] > 0.0 && u[1] > 0.0 && u[0] + u[1] < 1.0;
        let resid = |u: [f64; 2]| -> Result<([f64; 2], f64)> {
            let (dir, norm) = self.image(&make(u))?;
            Ok(([dir[0] - target[0], dir[1] - target[1]], norm))
        };
        let mut u = [guess[0], guess[1]];
        if !inside(u) {
            u = [target[0], target[1]];
        }
        let (mut f, mut norm) = resid(u)?;
        for _ in 0..50 {
            let size = f[0].abs().max(f[1].abs());
            if size < 1e-15 {
                break;
            }
            let h = 1e-7;
            let mut jac = [[0.0; 2]; 2];
            for c in 0..2 {
                let mut v = u;
                v[c] += h;
                if !inside(v) {
                    v[c] = u[c] - h;
                }
                let step = v[c] - u[c];
                let (g, _) = resid(v)?;
                jac[0][c] = (g[0] - f[0]) / step;
                jac[1][c] = (g[1] - f[1]) / step;
            }
            let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
            if det == 0.0 || !det.is_finite() {
                return Err(self.not_injective());
            }
            let du = [
                -(jac[1][1] * f[0] - jac[0][1] * f[1]) / det,
                -(-jac[1][0] * f[0] + jac[0][0] * f[1]) / det,
            ];
            let mut lambda = 1.0;
            loop {
                let v = [u[0] + lambda * du[0], u[1] + lambda * du[1]];
                if inside(v) {
                    let (g, nv) = resid(v)?;
                    if g[0].abs().max(g[1].abs()) < size || lambda < 1e-6 {
                        u = v;
                        f = g;
                        norm = nv;
                        break;
                    }
                }
                lambda *= 0.5;
                if lambda < 1e-12 {
                    return Err(self.not_injective());
                }
            }
            if (lambda * du[0]).abs().max((lambda * du[1]).abs()) < 1e-16 {
                break;
            }
        }
        if f[0].abs().max(f[1].abs()) > 1e-11 {
            return Err(self.not_injective());
        }
        Ok((make(u), norm))
    }
}

/// One graph-transform step. `preimages` carries the interior source
/// directions between steps as warm starts.
fn transform(
    model: &dyn CompetitionModel,
    surface: &RadialSurface,
    scheme: Scheme,
    preimages: &mut Vec<Option<Vec<f64>>>,
) -> Result<Vec<f64>> {
    let grid = &surface.grid;
    let n = grid.n();
    let step = Step { model, surface };
    let mut next = surface.radii.clone();
    for i in 0..n {
        let v = grid.vertex(i);
        let x = StateVector::on_axis(n, i, surface.radii[v])?;
        next[v] = model.eval_map(&x)?[i];
    }
    if n == 1 {
        return Ok(next);
    }
    for i in 0..n {
        for j in 0..i {
            for (idx, r) in step.edge(i, j, scheme)? {
                next[idx] = r;
            }
        }
    }
    if n == 2 {
        return Ok(next);
    }

    let interior: Vec<usize> = (0..grid.len()).filter(|&k| grid.support_size(k) == 3).collect();
    let need_push = scheme == Scheme::Forward || preimages.iter().all(Option::is_none);
    let pushed = if need_push {
        let images: Vec<(Vec<f64>, f64)> = (0..grid.len())
            .into_par_iter()
            .map(|k| step.image(&grid.direction(k)))
            .collect::<Result<_>>()?;
        let tris = grid.triangles();
        for (t, sign) in &tris {
            let v = |a: usize| [images[t[a]].0[0], images[t[a]].0[1]];
            if signed_area(v(0), v(1), v(2)) * sign <= 0.0 {
                return Err(step.not_injective());
            }
        }
        let (dirs, norms): (Vec<_>, Vec<_>) = images.into_iter().unzip();
        Some((tris, dirs, norms))
    } else {
        None
    };

    let results: Vec<(Vec<f64>, f64)> = interior
        .par_iter()
        .map(|&k| {
            let target = grid.direction(k);
            let guess = match (&preimages[k], &pushed) {
                (Some(e), _) if scheme == Scheme::PullBack => e.clone(),
                (_, Some((tris, dirs, norms))) => {
                    let (e, r) = step.locate(&target, tris, dirs, norms)?;
                    if scheme == Scheme::Forward {
                        return Ok((e, r));
                    }
                    e
                }
                _ => target.clone(),
            };
            step.solve_interior(&target, &guess)
        })
        .collect::<Result<_>>()?;
    for (&k, (e, r)) in interior.iter().zip(results) {
        next[k] = r;
        preimages[k] = Some(e);
    }
    Ok(next)
}

/// Initial radii `INIT_FACTOR · min_{i ∈ supp d} q_i / d_i`: the ray through
/// `d` leaves `[0, q]` at the unscaled value.
pub fn initial_radii(grid: &SimplexGrid, q: &[f64]) -> Vec<f64> {
    (0..grid.len())
        .map(|k| {
            let d = grid.direction(k);
            INIT_FACTOR
                * d.iter()
                    .zip(q)
                    .filter(|(di, _)| **di > 0.0)
                    .map(|(di, qi)| qi / di)
                    .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// Iterates the graph transform until successive radii differ by less than
/// `cfg.tol` at every node. On non-convergence the last surface is returned
/// with `converged = false`.
pub fn compute_carrying_simplex_with(model: &dyn CompetitionModel, cfg: &SurfaceConfig) -> Result<RadialSurface> {
    let n = model.dim();
    if !(cfg.tol > 0.0) {
        return Err(Error::InvalidParameter { field: "tol".into(), reason: "must be positive".into() });
    }
    let g0 = model.eval_growth(&StateVector::zeros(n))?;
    if let Some(i) = g0.iter().position(|&g| g <= 1.0) {
        return Err(Error::Precondition(format!(
            "origin is not a repellor: G_{}(0) = {} <= 1",
            i + 1,
            g0[i]
        )));
    }
    let q = model.axial_fixed_points()?;
    let grid = SimplexGrid::new(n, if n == 1 { 1 } else { cfg.m })?;
    if n == 3 && cfg.m < 2 || n == 2 && cfg.m < 2 {
        return Err(Error::InvalidParameter { field: "m".into(), reason: "must be at least 2".into() });
    }
    let radii = initial_radii(&grid, &q);
    let mut surface = RadialSurface::from_radii(grid, radii, cfg.tol)?;
    surface.metadata.scheme = cfg.scheme;
    surface.metadata.max_degree = cfg.max_degree.max(1);
    surface.metadata.m = cfg.m;

    let mut preimages = vec![None; surface.grid.len()];
    let mut violations = 0;
    let mut delta = f64::INFINITY;
    let mut iterations = 0;
    while iterations < cfg.max_iter {
        let next = transform(model, &surface, cfg.scheme, &mut preimages)?;
        if let Some(i) = next.iter().position(|r| !(*r > 0.0 && r.is_finite())) {
            return Err(Error::InvalidState { index: i + 1, value: next[i] });
        }
        iterations += 1;
        delta = 0.0;
        for (new, old) in next.iter().zip(&surface.radii) {
            delta = f64::max(delta, (new - old).abs());
            if iterations > 1 && *new > old + DESCENT_SLACK {
                violations += 1;
            }
        }
        surface.radii = next;
        if delta < cfg.tol {
            break;
        }
    }
    surface.metadata.iterations = iterations;
    surface.metadata.final_delta = delta;
    surface.metadata.converged = delta < cfg.tol;
    surface.metadata.monotone_violations = violations;
    Ok(surface)
}

/// [`compute_carrying_simplex_with`] using the default scheme and degree.
pub fn compute_carrying_simplex(
    model: &dyn CompetitionModel,
    m: usize,
    tol: f64,
    max_iter: usize,
) -> Result<RadialSurface> {
    let cfg = SurfaceConfig { m, tol, max_iter, ..SurfaceConfig::for_dim(model.dim()) };
    compute_carrying_simplex_with(model, &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::MayOster;

    #[test]
    fn scalar_ricker_surface_is_fixed_point() {
        let m = MayOster::ricker(0.5, 1.0).unwrap();
        let s = compute_carrying_simplex(&m, 64, 1e-12, 5_000).unwrap();
        assert!(s.metadata().converged);
        assert!((s.radii()[0] - 0.5).abs() < 1e-11);
    }

    #[test]
    fn initialization_dominates_box() {
        let g = SimplexGrid::new(2, 4).unwrap();
        let r = initial_radii(&g, &[0.5, 0.4]);
        assert!((r[4] - 0.75).abs() < 1e-15);
        assert!((r[0] - 0.6).abs() < 1e-15);
        // d = (1/2, 1/2): min(1.0, 0.8) * 1.5
        assert!((r[2] - 1.2).abs() < 1e-15);
    }

    #[test]
    fn may_curve_contains_interior_fixed_point() {
        let model = MayOster::new(vec![0.5, 0.4], vec![vec![1.0, 0.2], vec![0.3, 1.0]]).unwrap();
        let s = compute_carrying_simplex(&model, 4096, 1e-10, 5_000).unwrap();
        assert!(s.metadata().converged, "{:?}", s.metadata());
        assert!((s.axis_radius(0) - 0.5).abs() < 1e-9 && (s.axis_radius(1) - 0.4).abs() < 1e-9);
        // A^{-1} B = (0.42/0.94, 0.25/0.94)
        let fixed = [0.42 / 0.94, 0.25 / 0.94];
        let r = fixed[0] + fixed[1];
        assert!((s.radius_at(&[fixed[0] / r, fixed[1] / r]) - r).abs() < 1e-9);
    }

    #[test]
    fn forward_scheme_converges_under_refinement() {
        let model = MayOster::new(vec![0.5, 0.4], vec![vec![1.0, 0.2], vec![0.3, 1.0]]).unwrap();
        let fixed = [0.42 / 0.94, 0.25 / 0.94];
        let r = fixed[0] + fixed[1];
        let d = [fixed[0] / r, fixed[1] / r];
        let err = |m| {
            let cfg = SurfaceConfig { m, scheme: Scheme::Forward, max_degree: 1, ..SurfaceConfig::for_dim(2) };
            let s = compute_carrying_simplex_with(&model, &cfg).unwrap();
            (s.radius_at(&d) - r).abs()
        };
        // the node at p limits the order to well below 2
        let (e1, e2) = (err(32), err(128));
        assert!(e1 < 1e-3 && e2 < e1 / 3.0, "{e1} {e2}");
    }

    #[test]
    fn rejects_non_repelling_origin() {
        let m = MayOster::ricker(0.0, 1.0);
        if let Ok(m) = m {
            assert!(matches!(compute_carrying_simplex(&m, 8, 1e-10, 10), Err(Error::Precondition(_))));
        }
    }
}
