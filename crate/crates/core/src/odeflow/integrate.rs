//! Fixed-step RK4 in per-capita (logarithmic) form.
//!
//! Solutions are written `u(t) = x0 ⊙ exp(L(t))` and RK4 advances the
//! accumulated log-growth `L' = G(t, x0 ⊙ exp(L))`, `L(t0) = 0`. Coordinates
//! that start at zero therefore stay exactly zero and the others stay
//! positive.

use crate::error::{Error, Result};
use crate::order::StateVector;

use super::PeriodicSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegrationConfig {
    steps_per_period: usize,
}

impl IntegrationConfig {
    pub const MIN_STEPS: usize = 64;

    pub fn new(steps_per_period: usize) -> Result<Self> {
        if steps_per_period < Self::MIN_STEPS {
            return Err(Error::InvalidParameter {
                field: "steps_per_period".into(),
                reason: format!("must be >= {}, got {steps_per_period}", Self::MIN_STEPS),
            });
        }
        Ok(Self { steps_per_period })
    }

    pub fn steps_per_period(&self) -> usize {
        self.steps_per_period
    }

    fn steps_for(&self, t0: f64, t1: f64) -> usize {
        (((t1 - t0) * self.steps_per_period as f64).round() as usize).max(1)
    }
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        Self { steps_per_period: 256 }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    /// Richardson estimate `|u_h - u_{h/2}| / 15` of the error in the final
    /// state, from a second pass at half the step.
    pub error_estimate: f64,
}

impl Trajectory {
    pub fn last(&self) -> &StateVector {
        self.states.last().expect("trajectories hold at least the initial state")
    }
}

/// Accumulated log-growth `L(t1)` from `L(t0) = 0`. `observe` sees every
/// step boundary including `t0`. On a non-finite value, returns the time.
pub(crate) fn log_growth<F>(
    system: &PeriodicSystem,
    x0: &[f64],
    t0: f64,
    t1: f64,
    steps: usize,
    mut observe: F,
) -> std::result::Result<Vec<f64>, f64>
where
    F: FnMut(f64, &[f64]),
{
    let n = x0.len();
    let h = (t1 - t0) / steps as f64;
    let rate = |t: f64, l: &[f64]| -> Vec<f64> {
        let u: Vec<f64> = x0.iter().zip(l).map(|(x, li)| x * li.exp()).collect();
        system.per_capita(t, &u)
    };
    let mut l = vec![0.0; n];
    let mut tmp = vec![0.0; n];
    observe(t0, &l);
    for k in 0..steps {
        let t = t0 + k as f64 * h;
        let k1 = rate(t, &l);
        for i in 0..n {
            tmp[i] = l[i] + 0.5 * h * k1[i];
        }
        let k2 = rate(t + 0.5 * h, &tmp);
        for i in 0..n {
            tmp[i] = l[i] + 0.5 * h * k2[i];
        }
        let k3 = rate(t + 0.5 * h, &tmp);
        for i in 0..n {
            tmp[i] = l[i] + h * k3[i];
        }
        let k4 = rate(t + h, &tmp);
        for i in 0..n {
            l[i] += h * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
        }
        let t_next = t0 + (k + 1) as f64 * h;
        if l.iter().any(|v| !v.is_finite()) {
            return Err(t_next);
        }
        observe(t_next, &l);
    }
    Ok(l)
}

fn to_state(x0: &[f64], l: &[f64], t: f64) -> Result<StateVector> {
    let u: Vec<f64> = x0.iter().zip(l).map(|(x, li)| x * li.exp()).collect();
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::Integration { time: t });
    }
    StateVector::new(u)
}

/// Solution from `x0` at `t_span.0`, sampled at every step boundary.
pub fn integrate(
    system: &PeriodicSystem,
    x0: &StateVector,
    t_span: (f64, f64),
    config: &IntegrationConfig,
) -> Result<Trajectory> {
    if x0.dim() != system.dim() {
        return Err(Error::DimensionMismatch { expected: system.dim(), got: x0.dim() });
    }
    let (t0, t1) = t_span;
    if !(t1 > t0) {
        return Err(Error::Precondition("integration span must have t1 > t0".into()));
    }
    let steps = config.steps_for(t0, t1);
    let mut times = Vec::with_capacity(steps + 1);
    let mut logs = Vec::with_capacity(steps + 1);
    let coarse = log_growth(system, x0, t0, t1, steps, |t, l| {
        times.push(t);
        logs.push(l.to_vec());
    })
    .map_err(|time| Error::Integration { time })?;
    let fine = log_growth(system, x0, t0, t1, 2 * steps, |_, _| {})
        .map_err(|time| Error::Integration { time })?;

    let states = times
        .iter()
        .zip(&logs)
        .map(|(&t, l)| to_state(x0, l, t))
        .collect::<Result<Vec<_>>>()?;
    let u_coarse = to_state(x0, &coarse, t1)?;
    let u_fine = to_state(x0, &fine, t1)?;
    let error_estimate = u_coarse
        .iter()
        .zip(u_fine.iter())
        .map(|(a, b)| (a - b).abs() / 15.0)
        .fold(0.0, f64::max);
    Ok(Trajectory { times, states, error_estimate })
}
