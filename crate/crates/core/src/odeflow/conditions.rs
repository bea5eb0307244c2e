use crate::criteria::{ConditionRecord, Verdict, Witness};

use super::PeriodicSystem;

pub const DEFAULT_TIME_GRID: usize = 1024;

fn grid(points: usize) -> impl Iterator<Item = f64> {
    (0..points).map(move |k| k as f64 / points as f64)
}

fn sampled(ok: bool) -> Verdict {
    if ok {
        Verdict::PassSampled
    } else {
        Verdict::Fail
    }
}

/// Checks of total competition (A1), strong self-competition (A2),
/// decrease of large populations (A3) and increase of small populations
/// (A4) for a periodic Lotka–Volterra system, on `time_grid` equally spaced
/// times in one period.
///
/// For this form `∂G_i/∂x_j = -A_ij(t)`, so (A1) is `A_ij(t) >= 0`; (A2) over
/// every nonempty support reduces to `A_kk(t) > 0`; (A3) holds beyond the
/// explicit threshold `max_t B_i / min_t A_ii`; (A4) is `B_i(t) > 0`.
pub fn check_a_conditions(system: &PeriodicSystem, time_grid: usize) -> Vec<ConditionRecord> {
    let n = system.dim();
    let points = time_grid.max(1);

    // (A1) and (A2): scan the interaction matrix once
    let mut min_entry = (f64::INFINITY, 0.0, 0, 0);
    let mut min_diag = (f64::INFINITY, 0.0, 0);
    let mut b_min = vec![(f64::INFINITY, 0.0); n];
    let mut b_max = vec![f64::NEG_INFINITY; n];
    let mut a_diag_min = vec![f64::INFINITY; n];
    for t in grid(points) {
        let a = system.a_at(t);
        let b = system.b_at(t);
        for i in 0..n {
            for j in 0..n {
                if a[(i, j)] < min_entry.0 {
                    min_entry = (a[(i, j)], t, i, j);
                }
            }
            if a[(i, i)] < min_diag.0 {
                min_diag = (a[(i, i)], t, i);
            }
            a_diag_min[i] = a_diag_min[i].min(a[(i, i)]);
            if b[i] < b_min[i].0 {
                b_min[i] = (b[i], t);
            }
            b_max[i] = b_max[i].max(b[i]);
        }
    }

    let a1 = ConditionRecord::new("A1", sampled(min_entry.0 >= 0.0))
        .worst(min_entry.0)
        .witness(Witness::Scalar(min_entry.1))
        .samples(points)
        .note(format!(
            "minimum interaction coefficient A[{}][{}](t) at t = {}",
            min_entry.2 + 1,
            min_entry.3 + 1,
            min_entry.1
        ));

    let a2 = ConditionRecord::new("A2", sampled(min_diag.0 > 0.0))
        .worst(min_diag.0)
        .witness(Witness::Scalar(min_diag.1))
        .samples(points)
        .note(format!("minimum self-competition A[{0}][{0}](t)", min_diag.2 + 1));

    let a3_ok = a_diag_min.iter().all(|&v| v > 0.0);
    let thresholds: Vec<f64> = (0..n)
        .map(|i| if a_diag_min[i] > 0.0 { b_max[i].max(0.0) / a_diag_min[i] } else { f64::INFINITY })
        .collect();
    let a3 = if a3_ok {
        ConditionRecord::new("A3", Verdict::PassSampled)
            .worst(thresholds.iter().copied().fold(0.0, f64::max))
            .witness(Witness::Point(thresholds))
            .note("G_i(t, x) < 0 once x_i exceeds the listed threshold")
    } else {
        let i = a_diag_min.iter().position(|&v| v <= 0.0).unwrap_or(0);
        ConditionRecord::new("A3", Verdict::Fail)
            .witness(Witness::Index(i + 1))
            .note("self-competition vanishes somewhere in the period; no finite threshold")
    }
    .samples(points);

    let (worst_i, &(worst_b, worst_t)) = b_min
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
        .expect("at least one species");
    let a4 = ConditionRecord::new("A4", sampled(worst_b > 0.0))
        .worst(worst_b)
        .witness(Witness::Scalar(worst_t))
        .samples(points)
        .note(format!("minimum of B_{}(t)", worst_i + 1));

    vec![a1, a2, a3, a4]
}

/// All four conditions pass.
pub fn is_competitive(system: &PeriodicSystem) -> bool {
    check_a_conditions(system, DEFAULT_TIME_GRID)
        .iter()
        .all(|r| r.verdict.is_pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odeflow::FourierSeries;

    fn c(v: f64) -> FourierSeries {
        FourierSeries::constant(v)
    }

    fn positive_system() -> PeriodicSystem {
        PeriodicSystem::new(
            vec![
                FourierSeries { constant: 1.0, cos: vec![0.3], sin: vec![] },
                FourierSeries { constant: 0.8, cos: vec![], sin: vec![0.2] },
            ],
            vec![
                vec![FourierSeries { constant: 1.0, cos: vec![0.1], sin: vec![] }, c(0.4)],
                vec![c(0.3), FourierSeries { constant: 1.2, cos: vec![], sin: vec![0.2] }],
            ],
        )
        .unwrap()
    }

    #[test]
    fn positive_system_passes_all() {
        let recs = check_a_conditions(&positive_system(), DEFAULT_TIME_GRID);
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.verdict == Verdict::PassSampled), "{recs:?}");
        assert!(is_competitive(&positive_system()));
        // A3 threshold for species 1: max B_1 / min A_11 = 1.3 / 0.9
        match &recs[2].witness {
            Some(Witness::Point(th)) => assert!((th[0] - 1.3 / 0.9).abs() < 1e-9),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn negative_interaction_fails_a1() {
        let sys = PeriodicSystem::new(
            vec![c(1.0), c(1.0)],
            vec![
                vec![c(1.0), FourierSeries { constant: 0.1, cos: vec![], sin: vec![0.3] }],
                vec![c(0.2), c(1.0)],
            ],
        )
        .unwrap();
        let recs = check_a_conditions(&sys, DEFAULT_TIME_GRID);
        assert_eq!(recs[0].verdict, Verdict::Fail);
        // 0.1 + 0.3 sin(2πt) is smallest at t = 3/4
        assert_eq!(recs[0].witness, Some(Witness::Scalar(0.75)));
        assert!(!is_competitive(&sys));
    }

    #[test]
    fn negative_intrinsic_rate_fails_a4() {
        let sys = PeriodicSystem::new(
            vec![FourierSeries { constant: 0.5, cos: vec![0.6], sin: vec![] }],
            vec![vec![c(1.0)]],
        )
        .unwrap();
        let recs = check_a_conditions(&sys, DEFAULT_TIME_GRID);
        assert_eq!(recs[3].verdict, Verdict::Fail);
        assert_eq!(recs[3].witness, Some(Witness::Scalar(0.5)));
        assert!((recs[3].worst.unwrap() + 0.1).abs() < 1e-12);
    }
}
