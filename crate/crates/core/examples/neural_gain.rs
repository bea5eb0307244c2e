//! The neural-network map has a carrying simplex once the transfer gain is
//! below a bound set by `B` and `A`. Scans the gain across the bound.
//!
//!     cargo run --example neural_gain

use carrying_simplex::criteria::{check_spectral_condition, model_criterion, neural_gain_bound};
use carrying_simplex::models::NeuralNet;

fn main() -> carrying_simplex::Result<()> {
    let b = vec![0.5, 0.4];
    let a = vec![vec![1.0, 0.2], vec![0.3, 1.0]];
    let bound = neural_gain_bound(&NeuralNet::new(b.clone(), a.clone(), 1.0)?);
    println!("gain bound {bound:.12}");

    for gamma in [0.5, 1.0, 1.5, 1.7, 2.0] {
        let model = NeuralNet::new(b.clone(), a.clone(), gamma)?;
        let closed = model_criterion(&model);
        let grid = check_spectral_condition(&model, 16, true);
        println!(
            "gamma {gamma:.2}: closed form {:?}, max spectral radius on grid {:.4} ({:?})",
            closed.verdict,
            grid.worst.unwrap_or(f64::NAN),
            grid.verdict
        );
    }
    Ok(())
}
