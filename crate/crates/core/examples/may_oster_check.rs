//! Checks every hypothesis for a two-species Ricker (May–Oster) map and
//! prints the report.
//!
//!     cargo run --example may_oster_check

use carrying_simplex::criteria::{competition_matrix, run_criteria, CheckConfig};
use carrying_simplex::models::{CompetitionModel, MayOster};

fn main() -> carrying_simplex::Result<()> {
    let model = MayOster::new(vec![0.5, 0.4], vec![vec![1.0, 0.2], vec![0.3, 1.0]])?;
    let q = model.axial_fixed_points()?;
    println!("axial fixed points q = {:?}", q.as_slice());

    let m = competition_matrix(&model, &q)?;
    println!("M(q) row sums {:?}, column sums {:?}", m.row_sums(), m.col_sums());

    let report = run_criteria(&model, &CheckConfig::default());
    for c in &report.conditions {
        let worst = c.worst.map(|w| format!("{w:.6}")).unwrap_or_default();
        println!("{:<16} {:<13} {:>10}  {}", c.id, format!("{:?}", c.verdict), worst, c.note);
    }
    println!("overall: {:?} (exit code {})", report.overall(), report.exit_code());
    Ok(())
}
