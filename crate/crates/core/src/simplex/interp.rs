//! Interpolation of node radii over the simplex.
//!
//! On a segment: Lagrange through the `p + 1` nodes around the target, `p`
//! odd so the stencil is centred on the containing cell. Switching stencils
//! happens only at nodes, where every stencil is exact, so the interpolant
//! is continuous. On a triangle: degree-`p` Lagrange on the principal
//! lattice of a macro-triangle of side `p`, with `p | m`; again continuous
//! across macro edges. `p = 1` is the piecewise-linear case.

use super::grid::SimplexGrid;

/// Lattice coordinates within this distance of an integer are snapped to it
/// so that node values are reproduced exactly.
const SNAP: f64 = 1e-11;

fn snap(t: f64) -> f64 {
    let r = t.round();
    if (t - r).abs() < SNAP {
        r
    } else {
        t
    }
}

/// Degree used on a segment of `m` cells when at most `max_degree` is allowed.
pub fn segment_degree(m: usize, max_degree: usize) -> usize {
    let mut p = max_degree.min(m).max(1);
    if p % 2 == 0 {
        p -= 1;
    }
    p
}

/// Degree used on a triangle of side `m`: the largest divisor of `m` not
/// above `max_degree`.
pub fn triangle_degree(m: usize, max_degree: usize) -> usize {
    (1..=max_degree.max(1)).rev().find(|p| m % p == 0).unwrap_or(1)
}

/// Lagrange basis polynomial `∏_{l<i} (z - l) / (i - l)`, which is 1 at
/// `z = i` and vanishes at `0, …, i-1`.
fn ell(i: usize, z: f64) -> f64 {
    (0..i).map(|l| (z - l as f64) / (i - l) as f64).product()
}

fn interpolate_segment(grid: &SimplexGrid, radii: &[f64], d: &[f64], max_degree: usize) -> f64 {
    let m = grid.m();
    let t = snap(d[0] * m as f64).clamp(0.0, m as f64);
    let p = segment_degree(m, max_degree);
    let cell = (t.floor() as usize).min(m - 1);
    let start = cell.saturating_sub((p - 1) / 2).min(m - p);
    let mut acc = 0.0;
    for a in 0..=p {
        let ta = (start + a) as f64;
        let mut w = 1.0;
        for b in 0..=p {
            if b != a {
                w *= (t - (start + b) as f64) / (ta - (start + b) as f64);
            }
        }
        acc += w * radii[start + a];
    }
    acc
}

fn interpolate_triangle(grid: &SimplexGrid, radii: &[f64], d: &[f64], max_degree: usize) -> f64 {
    let m = grid.m();
    let p = triangle_degree(m, max_degree);
    let cells = m / p;
    let scale = m as f64 / p as f64;
    let t1 = snap(d[0] * m as f64).max(0.0);
    let t2 = snap(d[1] * m as f64).max(0.0);
    let (u1, u2) = (t1 / p as f64, t2 / p as f64);
    debug_assert!(u1 + u2 <= scale + 1e-9);

    let mut a = (u1.floor() as usize).min(cells - 1);
    let mut b = (u2.floor() as usize).min(cells - 1);
    if a + b > cells - 1 {
        if a > 0 {
            a -= 1;
        } else {
            b -= 1;
        }
    }
    let (fa, fb) = (u1 - a as f64, u2 - b as f64);
    // macro vertices in macro-lattice units and local barycentrics
    let (v, lam) = if fa + fb <= 1.0 || a + b + 2 > cells {
        ([(a, b), (a + 1, b), (a, b + 1)], [1.0 - fa - fb, fa, fb])
    } else {
        let (x, y) = (1.0 - fa, 1.0 - fb);
        ([(a + 1, b + 1), (a, b + 1), (a + 1, b)], [1.0 - x - y, x, y])
    };
    let mut acc = 0.0;
    for i in 0..=p {
        for j in 0..=p - i {
            let k = p - i - j;
            let w = ell(i, p as f64 * lam[0]) * ell(j, p as f64 * lam[1]) * ell(k, p as f64 * lam[2]);
            if w == 0.0 {
                continue;
            }
            let k1 = i * v[0].0 + j * v[1].0 + k * v[2].0;
            let k2 = i * v[0].1 + j * v[1].1 + k * v[2].1;
            acc += w * radii[grid.index(&[k1, k2])];
        }
    }
    acc
}

/// Value at direction `d` of the interpolant through `radii` on `grid`.
pub fn interpolate(grid: &SimplexGrid, radii: &[f64], d: &[f64], max_degree: usize) -> f64 {
    match grid.n() {
        1 => radii[0],
        2 => interpolate_segment(grid, radii, d, max_degree),
        _ => interpolate_triangle(grid, radii, d, max_degree),
    }
}
