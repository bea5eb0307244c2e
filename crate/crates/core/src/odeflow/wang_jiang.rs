use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::{compare, Relation, StateVector};

use super::{integrate, IntegrationConfig, PeriodicSystem};

/// Slopes above this count as increasing; it absorbs rounding in the ratio
/// differences.
pub const SLOPE_FLOOR: f64 = -1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct WangJiangOutcome {
    pub passed: bool,
    /// Smallest finite-difference slope of any ratio `u_i / v_i`; `None` when
    /// the ordering broke before the first step.
    pub min_slope: Option<f64>,
    /// End of the initial interval on which `u ≪ v` held.
    pub ordered_until: f64,
    pub steps_checked: usize,
}

/// While two solutions satisfy `u(t) ≪ v(t)` of a competitive system, each
/// ratio `u_i/v_i` increases. Integrates both and checks the ratios across
/// consecutive steps on the maximal initial interval where the ordering holds.
pub fn wang_jiang_check(
    system: &PeriodicSystem,
    u0: &StateVector,
    v0: &StateVector,
    t_span: (f64, f64),
    config: &IntegrationConfig,
) -> Result<WangJiangOutcome> {
    if u0.is_origin() || compare(u0, v0)? != Relation::StrictlyBelow {
        return Err(Error::Precondition(
            "wang-jiang check needs nonzero starts with u0 ≪ v0".into(),
        ));
    }
    let u = integrate(system, u0, t_span, config)?;
    let v = integrate(system, v0, t_span, config)?;

    let ordered = |k: usize| compare(&u.states[k], &v.states[k]).ok() == Some(Relation::StrictlyBelow);
    let ratios = |k: usize| -> Vec<f64> {
        u.states[k].iter().zip(v.states[k].iter()).map(|(a, b)| a / b).collect()
    };

    let mut min_slope: Option<f64> = None;
    let mut steps_checked = 0;
    let mut ordered_until = u.times[0];
    let mut prev = ratios(0);
    for k in 1..u.times.len() {
        if !ordered(k) {
            break;
        }
        let cur = ratios(k);
        let h = u.times[k] - u.times[k - 1];
        for (a, b) in prev.iter().zip(&cur) {
            let slope = (b - a) / h;
            min_slope = Some(min_slope.map_or(slope, |m: f64| m.min(slope)));
        }
        steps_checked += 1;
        ordered_until = u.times[k];
        prev = cur;
    }
    Ok(WangJiangOutcome {
        passed: min_slope.is_none_or(|m| m > SLOPE_FLOOR),
        min_slope,
        ordered_until,
        steps_checked,
    })
}
