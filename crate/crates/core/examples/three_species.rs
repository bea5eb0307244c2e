//! Three competing species: the carrying simplex is a triangle-shaped
//! surface. Near the interior fixed point it is only finitely smooth, which
//! shows up as slow convergence of the invariance residual under refinement.
//!
//!     cargo run --release --example three_species

use carrying_simplex::models::{CompetitionModel, MayOster};
use carrying_simplex::simplex::{compute_carrying_simplex_with, verify_surface, SurfaceConfig, VerifyConfig};

fn main() -> carrying_simplex::Result<()> {
    let model = MayOster::new(
        vec![0.5, 0.4, 0.45],
        vec![vec![1.0, 0.2, 0.1], vec![0.3, 1.0, 0.2], vec![0.1, 0.25, 1.0]],
    )?;
    // interior fixed point: A p = B
    let mut p = model.axial_fixed_points()?.to_vec();
    for _ in 0..2_000 {
        p = model.eval_map(&carrying_simplex::order::StateVector::new(p)?)?.to_vec();
    }
    println!("interior fixed point {p:?}");

    for m in [12, 24, 48] {
        let cfg = SurfaceConfig { m, ..SurfaceConfig::for_dim(3) };
        let surface = compute_carrying_simplex_with(&model, &cfg)?;
        let report = verify_surface(&surface, &model, &VerifyConfig::default())?;
        let s: f64 = p.iter().sum();
        let d: Vec<f64> = p.iter().map(|x| x / s).collect();
        println!(
            "m = {m:>2}: {} nodes, residual {:.2e}, unordered {}, radius error at p {:.2e}",
            surface.grid().len(),
            report.invariance_residual,
            report.unordered.passed,
            (surface.radius_at(&d) - s).abs()
        );
    }
    Ok(())
}
