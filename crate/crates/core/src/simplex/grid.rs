use crate::error::{Error, Result};

/// Regular lattice on the standard simplex `Δ^{n-1}`: directions `k / m` for
/// nonnegative integer `k` with `Σ k_i = m`. Supported for `n ≤ 3`.
///
/// Nodes are ordered lexicographically in `(k_1, …, k_{n-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexGrid {
    n: usize,
    m: usize,
    nodes: Vec<Vec<usize>>,
}

impl SimplexGrid {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::Precondition(format!("surface grids need 1 <= n <= 3, got n = {n}")));
        }
        if m == 0 {
            return Err(Error::InvalidParameter { field: "m".into(), reason: "must be at least 1".into() });
        }
        let nodes = match n {
            1 => vec![vec![m]],
            2 => (0..=m).map(|i| vec![i, m - i]).collect(),
            _ => (0..=m)
                .flat_map(|a| (0..=m - a).map(move |b| vec![a, b, m - a - b]))
                .collect(),
        };
        Ok(Self { n, m, nodes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &[usize] {
        &self.nodes[i]
    }

    pub fn direction(&self, i: usize) -> Vec<f64> {
        self.nodes[i].iter().map(|&k| k as f64 / self.m as f64).collect()
    }

    /// Index of the node with lattice coordinates `k`; only the first `n-1`
    /// entries are read.
    pub fn index(&self, k: &[usize]) -> usize {
        match self.n {
            1 => 0,
            2 => k[0],
            _ => {
                let (a, b) = (k[0], k[1]);
                a * (self.m + 1) - a * a.saturating_sub(1) / 2 + b
            }
        }
    }

    pub fn vertex(&self, i: usize) -> usize {
        let mut k = vec![0; self.n];
        k[i] = self.m;
        self.index(&k)
    }

    /// Number of nonzero lattice coordinates; 1 on vertices.
    pub fn support_size(&self, i: usize) -> usize {
        self.nodes[i].iter().filter(|&&k| k > 0).count()
    }

    /// Elementary lattice triangles (`n = 3` only) as node triples, with the
    /// orientation sign of each in `(k_1, k_2)` coordinates.
    pub fn triangles(&self) -> Vec<([usize; 3], f64)> {
        assert_eq!(self.n, 3, "triangles exist only on the 2-simplex");
        let m = self.m;
        let mut out = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m - a {
                let idx = |a: usize, b: usize| self.index(&[a, b]);
                out.push(([idx(a, b), idx(a + 1, b), idx(a, b + 1)], 1.0));
                if a + b + 2 <= m {
                    out.push(([idx(a + 1, b), idx(a, b + 1), idx(a + 1, b + 1)], -1.0));
                }
            }
        }
        out
    }
}

/// Barycentric coordinates of `p` in the planar triangle `(a, b, c)`, or
/// `None` when the triangle is degenerate.
pub(crate) fn barycentric(p: [f64; 2], a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Option<[f64; 3]> {
    let det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let l1 = ((p[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (p[1] - a[1])) / det;
    let l2 = ((b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1])) / det;
    Some([1.0 - l1 - l2, l1, l2])
}

pub(crate) fn signed_area(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
}
