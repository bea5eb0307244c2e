use carrying_simplex::criteria::{Verdict, Witness};
use carrying_simplex::models::CompetitionModel;
use carrying_simplex::odeflow::{
    check_a_conditions, integrate, is_competitive, poincare_map, wang_jiang_check, FourierSeries, IntegrationConfig,
    PeriodicSystem, DEFAULT_TIME_GRID,
};
use carrying_simplex::order::StateVector;
use carrying_simplex::Error;

fn sv(v: &[f64]) -> StateVector {
    StateVector::new(v.to_vec()).unwrap()
}

fn fs(c: f64, cos: &[f64], sin: &[f64]) -> FourierSeries {
    FourierSeries { constant: c, cos: cos.to_vec(), sin: sin.to_vec() }
}

/// Seasonal forcing with every coefficient positive throughout the period.
fn forced() -> PeriodicSystem {
    PeriodicSystem::new(
        vec![fs(1.0, &[0.3], &[]), fs(0.8, &[], &[0.2])],
        vec![vec![fs(1.0, &[0.1], &[]), fs(0.4, &[], &[])], vec![fs(0.3, &[], &[0.1]), fs(1.0, &[], &[])]],
    )
    .unwrap()
}

#[test]
fn logistic_equilibrium_and_origin() {
    let sys = PeriodicSystem::logistic(2.0, 1.5).unwrap();
    let cfg = IntegrationConfig::default();
    let at_capacity = integrate(&sys, &sv(&[1.5]), (0.0, 3.0), &cfg).unwrap();
    assert!(at_capacity.states.iter().all(|s| (s[0] - 1.5).abs() < 1e-14));
    let origin = integrate(&sys, &sv(&[0.0]), (0.0, 3.0), &cfg).unwrap();
    assert!(origin.states.iter().all(|s| s[0] == 0.0));
}

#[test]
fn autonomous_period_map_is_the_time_one_flow() {
    let sys = PeriodicSystem::constant(vec![1.0, 0.8], vec![vec![1.0, 0.4], vec![0.3, 1.0]]).unwrap();
    let cfg = IntegrationConfig::default();
    let x0 = sv(&[0.2, 0.6]);
    let flow = integrate(&sys, &x0, (0.0, 1.0), &cfg).unwrap();
    let map = poincare_map(sys, cfg);
    assert_eq!(map.eval_map(&x0).unwrap().as_slice(), flow.last().as_slice());
}

#[test]
fn forced_system_satisfies_the_competition_conditions() {
    let recs = check_a_conditions(&forced(), DEFAULT_TIME_GRID);
    assert_eq!(recs.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["A1", "A2", "A3", "A4"]);
    assert!(recs.iter().all(|r| r.verdict == Verdict::PassSampled));
    assert!(is_competitive(&forced()));
}

#[test]
fn negative_interaction_breaks_competition() {
    let sys = PeriodicSystem::new(
        vec![fs(1.0, &[], &[]), fs(0.8, &[], &[])],
        vec![vec![fs(1.0, &[], &[]), fs(0.1, &[0.3], &[])], vec![fs(0.3, &[], &[]), fs(1.0, &[], &[])]],
    )
    .unwrap();
    let a1 = &check_a_conditions(&sys, DEFAULT_TIME_GRID)[0];
    assert_eq!(a1.verdict, Verdict::Fail);
    assert_eq!(a1.witness, Some(Witness::Scalar(0.5)));
}

#[test]
fn negative_intrinsic_growth_breaks_a4() {
    let sys = PeriodicSystem::new(vec![fs(0.5, &[0.6], &[])], vec![vec![fs(1.0, &[], &[])]]).unwrap();
    let a4 = &check_a_conditions(&sys, DEFAULT_TIME_GRID)[3];
    assert_eq!(a4.verdict, Verdict::Fail);
    let Some(Witness::Scalar(t)) = a4.witness else { panic!("{:?}", a4.witness) };
    assert!((t - 0.5).abs() < 1e-9);
    assert!((a4.worst.unwrap() + 0.1).abs() < 1e-12);
}

#[test]
fn ordered_pair_ratios_increase() {
    let out = wang_jiang_check(&forced(), &sv(&[0.1, 0.1]), &sv(&[0.2, 0.2]), (0.0, 3.0), &IntegrationConfig::default())
        .unwrap();
    assert!(out.passed);
    assert!(out.steps_checked > 0);
    assert!(out.min_slope.unwrap() > -1e-12);
}

#[test]
fn identical_starts_are_rejected() {
    let err = wang_jiang_check(&forced(), &sv(&[0.1, 0.1]), &sv(&[0.1, 0.1]), (0.0, 3.0), &IntegrationConfig::default());
    assert!(matches!(err, Err(Error::Precondition(_))));
}

#[test]
fn trajectories_stay_bounded_and_positive() {
    let traj = integrate(&forced(), &sv(&[0.1, 0.1]), (0.0, 20.0), &IntegrationConfig::default()).unwrap();
    assert!(traj.states.iter().all(|s| s.iter().all(|v| *v > 0.0 && *v < 3.0)));
    assert!(traj.error_estimate < 1e-9);
}
