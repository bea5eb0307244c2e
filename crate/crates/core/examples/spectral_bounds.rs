//! Spectral radius of nonnegative matrices against the row- and column-sum
//! bounds, and the competition matrix along the diagonal of `[0, q]`.
//!
//!     cargo run --example spectral_bounds

use carrying_simplex::criteria::spectral::{max_col_sum, max_row_sum};
use carrying_simplex::criteria::{competition_matrix, perron_root, spectral_radius};
use carrying_simplex::models::{CompetitionModel, LeslieGower};
use carrying_simplex::order::StateVector;
use nalgebra::DMatrix;

fn main() -> carrying_simplex::Result<()> {
    let m = DMatrix::from_row_slice(2, 2, &[0.5, 0.1, 0.2, 0.4]);
    println!("rho = {:.12}, power iteration {:.12}", spectral_radius(&m).unwrap(), perron_root(&m, 10_000, 1e-14).unwrap());

    let model = LeslieGower::new(vec![1.3, 1.2], vec![vec![1.0, 0.5], vec![0.4, 1.0]])?;
    let q = model.axial_fixed_points()?;
    println!("{:>6} {:>10} {:>10} {:>10}", "s", "rho", "row", "col");
    for k in 1..=8 {
        let s = k as f64 / 8.0;
        let x = StateVector::new(q.iter().map(|v| s * v).collect())?;
        let cm = competition_matrix(&model, &x)?;
        let rho = cm.spectral_radius().unwrap();
        println!("{s:>6.3} {rho:>10.6} {:>10.6} {:>10.6}", max_row_sum(cm.entries()), max_col_sum(cm.entries()));
    }
    Ok(())
}
