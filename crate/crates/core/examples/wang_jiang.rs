//! While two solutions of a competitive system stay strictly ordered, every
//! ratio `u_i / v_i` increases. Checks this along random ordered pairs.
//!
//!     cargo run --release --example wang_jiang

use carrying_simplex::odeflow::{random_competitive_system, wang_jiang_check, IntegrationConfig};
use carrying_simplex::order::StateVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> carrying_simplex::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let config = IntegrationConfig::default();
    for k in 0..5 {
        let system = random_competitive_system(3, 2, &mut rng);
        let v: Vec<f64> = (0..3).map(|_| rng.random_range(0.2..1.5)).collect();
        let u: Vec<f64> = v.iter().map(|x| x * rng.random_range(0.2..0.8)).collect();
        let out = wang_jiang_check(&system, &StateVector::new(u)?, &StateVector::new(v)?, (0.0, 3.0), &config)?;
        println!(
            "system {k}: passed {}, min slope {:.3e}, ordered until t = {}",
            out.passed,
            out.min_slope.unwrap_or(f64::NAN),
            out.ordered_until
        );
    }
    Ok(())
}
