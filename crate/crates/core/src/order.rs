//! Geometry of the closed positive cone `K = [0, ∞)^n`.
//!
//! Points of the cone are [`StateVector`]s. The cone carries the componentwise
//! vector order (`x ⪰ y` iff `x - y ∈ K`), every nonzero point lives in the
//! facet given by its [`Support`], and nonzero points have [`RadialCoords`]
//! over the unit simplex `Δ^{n-1}` under the L1 norm.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the closed positive cone. Every coordinate is finite and `>= 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct StateVector(Vec<f64>);

impl StateVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyState);
        }
        for (i, &c) in coords.iter().enumerate() {
            // `-0.0 >= 0.0` holds; normalize it away so supports stay exact
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::InvalidState { index: i + 1, value: c });
            }
        }
        Ok(Self(coords.into_iter().map(|c| c + 0.0).collect()))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    /// The point `t · e_i` on the i-th coordinate axis (0-based `axis`).
    pub fn on_axis(n: usize, axis: usize, t: f64) -> Result<Self> {
        let mut v = vec![0.0; n];
        v[axis] = t;
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn l1_norm(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    /// `λ · x` for `λ >= 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.0.iter().map(|c| c * lambda).collect())
    }

    /// Componentwise maximum of two points.
    pub fn max(&self, other: &Self) -> Result<Self> {
        same_dim(self, other)?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a.max(*b)).collect(),
        ))
    }
}

impl Deref for StateVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        StateVector::new(v).map_err(serde::de::Error::custom)
    }
}

fn same_dim(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    Ok(())
}

/// Index set `I(x) = {i : x_i > 0}`, stored 0-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Support(Vec<usize>);

impl Support {
    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_indices(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self::from_indices(v)
    }

    /// Indices shifted to 1-based, for reports and files.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Exact support: a coordinate counts only if it is strictly positive.
pub fn support(x: &[f64]) -> Support {
    Support(
        x.iter()
            .enumerate()
            .filter(|(_, &c)| c > 0.0)
            .map(|(i, _)| i)
            .collect(),
    )
}

/// Outcome of comparing two points in the vector order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// `x ≻ y` but some coordinate ties.
    Above,
    /// `x ≫ y`: strictly larger in every coordinate.
    StrictlyAbove,
    Below,
    StrictlyBelow,
    Incomparable,
}

impl Relation {
    /// `x ⪰ y`.
    pub fn is_at_least(self) -> bool {
        matches!(self, Relation::Equal | Relation::Above | Relation::StrictlyAbove)
    }

    /// `x ≻ y` (`x ⪰ y` and `x ≠ y`).
    pub fn is_above(self) -> bool {
        matches!(self, Relation::Above | Relation::StrictlyAbove)
    }

    pub fn is_below(self) -> bool {
        matches!(self, Relation::Below | Relation::StrictlyBelow)
    }

    /// The pair is comparable and distinct.
    pub fn is_ordered(self) -> bool {
        self.is_above() || self.is_below()
    }
}

pub fn compare(x: &[f64], y: &[f64]) -> Result<Relation> {
    same_dim(x, y)?;
    let (mut ge, mut le, mut all_gt, mut all_lt) = (true, true, true, true);
    for (a, b) in x.iter().zip(y) {
        ge &= a >= b;
        le &= a <= b;
        all_gt &= a > b;
        all_lt &= a < b;
    }
    Ok(match (ge, le) {
        (true, true) => Relation::Equal,
        (true, false) if all_gt => Relation::StrictlyAbove,
        (true, false) => Relation::Above,
        (false, true) if all_lt => Relation::StrictlyBelow,
        (false, true) => Relation::Below,
        (false, false) => Relation::Incomparable,
    })
}

/// `x` strictly majorizes `y`: `x ⪰ y` and `x_i > y_i` wherever `x_i > 0`.
pub fn strictly_majorizes(x: &[f64], y: &[f64]) -> Result<bool> {
    same_dim(x, y)?;
    Ok(x
        .iter()
        .zip(y)
        .all(|(&a, &b)| a >= b && (a == 0.0 || a > b)))
}

/// Closed order interval `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderInterval {
    lower: StateVector,
    upper: StateVector,
}

impl OrderInterval {
    pub fn new(lower: StateVector, upper: StateVector) -> Result<Self> {
        if !compare(&lower, &upper)?.is_below() && lower != upper {
            return Err(Error::Precondition(
                "order interval requires lower ⪯ upper".into(),
            ));
        }
        Ok(Self { lower, upper })
    }

    /// `[0, upper]`.
    pub fn from_origin(upper: StateVector) -> Self {
        Self { lower: StateVector::zeros(upper.dim()), upper }
    }

    pub fn lower(&self) -> &StateVector {
        &self.lower
    }

    pub fn upper(&self) -> &StateVector {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.upper.dim()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(self.upper.iter()))
                .all(|(c, (lo, hi))| lo <= c && c <= hi)
    }

    /// Point at fractional position `t ∈ [0,1]^n` inside the box.
    pub fn lerp(&self, t: &[f64]) -> StateVector {
        StateVector(
            t.iter()
                .zip(self.lower.iter().zip(self.upper.iter()))
                .map(|(s, (lo, hi))| lo + s * (hi - lo))
                .collect(),
        )
    }
}

/// Radial coordinates of a nonzero point: direction on `Δ^{n-1}` and L1 radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialCoords {
    pub direction: Vec<f64>,
    pub radius: f64,
}

impl RadialCoords {
    pub fn reconstruct(&self) -> StateVector {
        StateVector(self.direction.iter().map(|d| d * self.radius).collect())
    }
}

pub fn radial_project(x: &[f64]) -> Result<RadialCoords> {
    let radius: f64 = x.iter().sum();
    if radius <= 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(RadialCoords {
        direction: x.iter().map(|c| c / radius).collect(),
        radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sv(v: &[f64]) -> StateVector {
        StateVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn support_examples() {
        assert_eq!(support(&[0.0, 2.5, 0.0]).one_based(), vec![2]);
        assert!(support(&[0.0, 0.0, 0.0]).is_empty());
        assert_eq!(support(&[1.0, 0.5]).one_based(), vec![1, 2]);
        assert_eq!(support(&[0.0, 2.5, 0.0]).to_string(), "{2}");
    }

    #[test]
    fn rejects_negative_and_nan() {
        assert!(matches!(
            StateVector::new(vec![1.0, -0.1]),
            Err(Error::InvalidState { index: 2, .. })
        ));
        assert!(StateVector::new(vec![f64::NAN]).is_err());
        assert!(StateVector::new(vec![f64::INFINITY]).is_err());
        assert!(matches!(StateVector::new(vec![]), Err(Error::EmptyState)));
        // negative zero is accepted and normalized
        let z = sv(&[-0.0]);
        assert!(z[0].is_sign_positive());
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), Relation::Equal);
        assert_eq!(compare(&[2.0, 3.0], &[1.0, 2.0]).unwrap(), Relation::StrictlyAbove);
        assert_eq!(compare(&[2.0, 1.0], &[1.0, 2.0]).unwrap(), Relation::Incomparable);
        assert_eq!(compare(&[2.0, 2.0], &[1.0, 2.0]).unwrap(), Relation::Above);
        assert_eq!(compare(&[1.0, 2.0], &[2.0, 2.0]).unwrap(), Relation::Below);
        assert!(matches!(
            compare(&[1.0], &[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn strict_majorization_examples() {
        assert!(strictly_majorizes(&[1.0, 0.0], &[0.5, 0.0]).unwrap());
        assert!(!strictly_majorizes(&[1.0, 1.0], &[1.0, 0.0]).unwrap());
        assert!(strictly_majorizes(&[0.0, 0.0], &[0.0, 0.0]).unwrap());
        // y positive where x vanishes: x does not even majorize y
        assert!(!strictly_majorizes(&[1.0, 0.0], &[0.5, 0.1]).unwrap());
    }

    #[test]
    fn radial_examples() {
        let r = radial_project(&[2.0, 2.0]).unwrap();
        assert_eq!((r.direction.as_slice(), r.radius), (&[0.5, 0.5][..], 4.0));
        let r = radial_project(&[3.0, 0.0]).unwrap();
        assert_eq!((r.direction.as_slice(), r.radius), (&[1.0, 0.0][..], 3.0));
        let r = radial_project(&[1.0, 2.0, 1.0]).unwrap();
        assert_eq!((r.direction.as_slice(), r.radius), (&[0.25, 0.5, 0.25][..], 4.0));
        assert!(matches!(radial_project(&[0.0, 0.0]), Err(Error::ZeroVector)));
    }

    #[test]
    fn interval_checks_order() {
        assert!(OrderInterval::new(sv(&[1.0, 1.0]), sv(&[0.5, 2.0])).is_err());
        let box_ = OrderInterval::new(sv(&[0.0, 1.0]), sv(&[1.0, 2.0])).unwrap();
        assert!(box_.contains(&[0.5, 1.5]));
        assert!(!box_.contains(&[0.5, 0.5]));
        assert_eq!(box_.lerp(&[0.5, 0.5]).as_slice(), &[0.5, 1.5]);
    }

    fn point(n: usize) -> impl Strategy<Value = Vec<f64>> {
        // a third of the coordinates land exactly on zero
        proptest::collection::vec(
            prop_oneof![Just(0.0), 0.0..10.0f64, 0.0..10.0f64],
            n,
        )
    }

    proptest! {
        #[test]
        fn radial_roundtrip(x in point(4)) {
            prop_assume!(x.iter().any(|&c| c > 0.0));
            let r = radial_project(&x).unwrap();
            prop_assert!((r.direction.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            let back = r.reconstruct();
            for (a, b) in back.iter().zip(&x) {
                prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300));
            }
        }

        #[test]
        fn compare_is_partial_order(x in point(3), y in point(3), z in point(3)) {
            prop_assert_eq!(compare(&x, &x).unwrap(), Relation::Equal);
            let xy = compare(&x, &y).unwrap();
            let yx = compare(&y, &x).unwrap();
            if xy.is_at_least() && yx.is_at_least() {
                prop_assert_eq!(&x, &y);
            }
            if xy.is_at_least() && compare(&y, &z).unwrap().is_at_least() {
                prop_assert!(compare(&x, &z).unwrap().is_at_least());
            }
            // ordering the pair the other way round flips the relation
            prop_assert_eq!(xy.is_above(), yx.is_below());
        }

        #[test]
        fn support_of_max_is_union(x in point(5), y in point(5)) {
            let m = sv(&x).max(&sv(&y)).unwrap();
            prop_assert_eq!(support(&m), support(&x).union(&support(&y)));
        }

        #[test]
        fn strict_majorization_implies_above(x in point(3), y in point(3)) {
            if strictly_majorizes(&x, &y).unwrap() {
                let rel = compare(&x, &y).unwrap();
                let both_zero = x.iter().all(|&c| c == 0.0) && y.iter().all(|&c| c == 0.0);
                prop_assert!(rel.is_above() || (rel == Relation::Equal && both_zero));
            }
        }
    }
}
