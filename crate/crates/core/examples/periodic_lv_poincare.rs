//! A seasonally forced Lotka–Volterra system, its period map, and the
//! carrying simplex of that map.
//!
//!     cargo run --release --example periodic_lv_poincare

use carrying_simplex::models::CompetitionModel;
use carrying_simplex::odeflow::{check_a_conditions, integrate, poincare_map, FourierSeries, IntegrationConfig, PeriodicSystem, DEFAULT_TIME_GRID};
use carrying_simplex::order::StateVector;
use carrying_simplex::simplex::{compute_carrying_simplex_with, SurfaceConfig};

fn series(c: f64, cos: &[f64]) -> FourierSeries {
    FourierSeries { constant: c, cos: cos.to_vec(), sin: Vec::new() }
}

fn main() -> carrying_simplex::Result<()> {
    let system = PeriodicSystem::new(
        vec![series(1.0, &[0.3]), series(0.8, &[-0.2])],
        vec![vec![series(1.0, &[]), series(0.4, &[0.1])], vec![series(0.3, &[]), series(1.0, &[])]],
    )?;
    for c in check_a_conditions(&system, DEFAULT_TIME_GRID) {
        println!("{}: {:?}  {}", c.id, c.verdict, c.note);
    }

    let config = IntegrationConfig::new(256)?;
    let x0 = StateVector::new(vec![0.1, 0.1])?;
    let traj = integrate(&system, &x0, (0.0, 10.0), &config)?;
    println!("u(10) = {:?}, error estimate {:.1e}", traj.last().as_slice(), traj.error_estimate);

    let map = poincare_map(system, config);
    println!("axial fixed points of the period map: {:?}", map.axial_fixed_points()?.as_slice());
    let cfg = SurfaceConfig { m: 256, ..SurfaceConfig::for_dim(2) };
    let surface = compute_carrying_simplex_with(&map, &cfg)?;
    println!("carrying simplex: {} iterations, converged {}", surface.metadata().iterations, surface.metadata().converged);
    for t in [0.0, 0.5, 1.0] {
        println!("  d = ({:.1}, {:.1}) -> {:?}", 1.0 - t, t, surface.point_at(&[1.0 - t, t]).as_slice());
    }
    Ok(())
}
