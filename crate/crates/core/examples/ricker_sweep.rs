//! Orbit diagram of `x e^(b - x)`: the fixed point `b` attracts until
//! `b = 2`, then period doubling sets in.
//!
//!     cargo run --release --example ricker_sweep > ricker.csv

use carrying_simplex::io::write_sweep_csv;
use carrying_simplex::simplex::{sweep_1d, OrbitClass};

fn main() -> carrying_simplex::Result<()> {
    let rows = sweep_1d(1.0, 0.1, 3.5, 341, 2_000, 128)?;

    let mut last = None;
    for r in &rows {
        let key = (r.class, r.period);
        if last != Some(key) {
            match r.class {
                OrbitClass::Periodic => eprintln!("b = {:.2}: period {}", r.b, r.period.unwrap_or(0)),
                c => eprintln!("b = {:.2}: {c}", r.b),
            }
            last = Some(key);
        }
    }
    write_sweep_csv(&rows, std::io::stdout().lock())
}
