//! Computes the carrying simplex of a Leslie–Gower map, verifies it and
//! prints a few points of the curve.
//!
//!     cargo run --release --example leslie_gower_simplex

use carrying_simplex::models::LeslieGower;
use carrying_simplex::simplex::{compute_carrying_simplex_with, verify_surface, SurfaceConfig, VerifyConfig};

fn main() -> carrying_simplex::Result<()> {
    let model = LeslieGower::new(vec![1.3, 1.2], vec![vec![1.0, 0.5], vec![0.4, 1.0]])?;
    let surface = compute_carrying_simplex_with(&model, &SurfaceConfig::for_dim(2))?;
    let meta = surface.metadata();
    println!("m = {}, {} iterations, last change {:.2e}", meta.m, meta.iterations, meta.final_delta);

    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let p = surface.point_at(&[1.0 - t, t]);
        println!("  d = ({:.2}, {:.2})  ->  x = ({:.10}, {:.10})", 1.0 - t, t, p[0], p[1]);
    }

    let report = verify_surface(&surface, &model, &VerifyConfig::default())?;
    println!("invariance residual {:.3e}", report.invariance_residual);
    println!("axial errors {:?}", report.axial_errors);
    println!("unordered: {} (margin {:.3e})", report.unordered.passed, report.unordered.margin);
    println!("attracting: {} (worst final gap {:.3e})", report.asymptotic.passed, report.asymptotic.max_gap_end);
    Ok(())
}
