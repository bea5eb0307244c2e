//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;

use carrying_simplex::criteria::spectral::{max_col_sum, max_row_sum};
use carrying_simplex::criteria::{
    check_retrotone, check_spectral_condition, competition_matrix, default_region, model_criterion,
    neural_gain_bound, perron_root, spectral_radius, Verdict, Witness,
};
use carrying_simplex::models::{CompetitionModel, LeslieGower, MayOster, NeuralNet};
use carrying_simplex::odeflow::{integrate, random_competitive_system, wang_jiang_check, IntegrationConfig, PeriodicSystem};
use carrying_simplex::order::StateVector;
use carrying_simplex::simplex::{classify_orbit, compute_carrying_simplex, verify_surface, OrbitClass, VerifyConfig};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn sv(v: &[f64]) -> StateVector {
    StateVector::new(v.to_vec()).unwrap()
}

fn may2() -> MayOster {
    MayOster::new(vec![0.5, 0.4], vec![vec![1.0, 0.2], vec![0.3, 1.0]]).unwrap()
}

fn lg2() -> LeslieGower {
    LeslieGower::new(vec![1.3, 1.2], vec![vec![1.0, 0.5], vec![0.4, 1.0]]).unwrap()
}

fn neural(gamma: f64) -> NeuralNet {
    NeuralNet::new(vec![0.5, 0.4], vec![vec![1.0, 0.2], vec![0.3, 1.0]], gamma).unwrap()
}

fn rho2(m: [[f64; 2]; 2]) -> f64 {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    0.5 * (tr + (tr * tr - 4.0 * det).sqrt())
}

fn existence_threshold() -> Outcome {
    let low = classify_orbit(1.0, 0.5, 900, 100);
    ensure!(low.class == OrbitClass::Converges, "b = 0.5 classified {}", low.class);
    ensure!((low.points[0] - 0.5).abs() < 1e-8 && low.distance < 1e-8, "b = 0.5 distance {:e}", low.distance);
    let high = classify_orbit(1.0, 2.5, 900, 100);
    ensure!(high.class != OrbitClass::Converges, "b = 2.5 classified converges");
    Ok(format!("b=0.5 distance {:.1e} after 1000 iterates; b=2.5 {}", low.distance, high.class))
}

fn derivative_anchor() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let a = rng.random_range(0.1..5.0);
        let b = rng.random_range(0.05..3.0);
        let model = MayOster::ricker(b, a).unwrap();
        let d = model.map_jacobian(&[b / a]).unwrap()[(0, 0)];
        worst = worst.max((d - (1.0 - b)).abs());
    }
    ensure!(worst < 1e-12, "max |T'(b/a) - (1 - b)| = {worst:e}");
    Ok(format!("max deviation {worst:.1e} over 10 draws"))
}

fn may_oster_arithmetic() -> Outcome {
    let model = may2();
    let q = model.axial_fixed_points().unwrap();
    ensure!(q.as_slice() == [0.5, 0.4], "q = {:?}", q.as_slice());
    let rows = competition_matrix(&model, &q).unwrap().row_sums();
    ensure!((rows[0] - 0.6).abs() < 1e-12 && (rows[1] - 0.52).abs() < 1e-12, "row sums {rows:?}");
    let closed = model_criterion(&model);
    ensure!(closed.verdict == Verdict::Pass, "closed-form criterion {:?}", closed.verdict);

    // oracle: every grid point, M = diag(x) A, 2x2 closed-form eigenvalue
    let mut oracle: f64 = 0.0;
    for i in 1..=16 {
        for j in 1..=16 {
            let x = [0.5 * i as f64 / 16.0, 0.4 * j as f64 / 16.0];
            oracle = oracle.max(rho2([[x[0], 0.2 * x[0]], [0.3 * x[1], x[1]]]));
        }
    }
    let rec = check_spectral_condition(&model, 16, true);
    let worst = rec.worst.unwrap_or(f64::NAN);
    ensure!(rec.verdict.is_pass(), "spectral condition {:?}", rec.verdict);
    ensure!(worst <= 0.6 + 1e-9, "max rho {worst}");
    ensure!((worst - oracle).abs() < 1e-12, "max rho {worst} against grid oracle {oracle}");
    Ok(format!("row sums (0.6, 0.52), max rho {worst:.12}"))
}

fn surface_suite() -> Outcome {
    let mut notes = Vec::new();
    let models: [(&str, Box<dyn CompetitionModel>); 2] = [("may_oster", Box::new(may2())), ("leslie_gower", Box::new(lg2()))];
    for (name, model) in models {
        let model = model.as_ref();
        let surface = compute_carrying_simplex(model, 4096, 1e-10, 5_000).map_err(|e| format!("{name}: {e}"))?;
        ensure!(surface.metadata().converged, "{name}: surface did not converge");
        let rep = verify_surface(&surface, model, &VerifyConfig::default()).map_err(|e| e.to_string())?;
        let axial = rep.axial_errors.iter().copied().fold(0.0, f64::max);
        ensure!(axial < 1e-8, "{name}: axial error {axial:e}");
        ensure!(rep.unordered.passed, "{name}: ordered pair {:?}", rep.unordered.worst_pair);
        ensure!(rep.invariance_residual < 1e-8, "{name}: invariance residual {:e}", rep.invariance_residual);
        ensure!(rep.asymptotic.passed && rep.asymptotic.starts == 100, "{name}: attraction {:?}", rep.asymptotic);
        notes.push(format!("{name} residual {:.1e} axial {:.1e}", rep.invariance_residual, axial));
    }
    Ok(notes.join("; "))
}

fn jacobian_identity() -> Outcome {
    let models: [Box<dyn CompetitionModel>; 3] = [Box::new(may2()), Box::new(lg2()), Box::new(neural(1.0))];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for model in &models {
        let q = model.axial_fixed_points().unwrap();
        for _ in 0..100 {
            let x = StateVector::new(q.iter().map(|qi| qi * rng.random_range(0.01..1.5)).collect()).unwrap();
            let t = model.map_jacobian(&x).unwrap();
            let g = model.eval_growth(&x).unwrap();
            let m = competition_matrix(model.as_ref(), &x).unwrap();
            let rebuilt = DMatrix::from_diagonal(&g.clone().into()) * (DMatrix::identity(2, 2) - m.entries());
            let norm = |a: &DMatrix<f64>| a.row_iter().map(|r| r.abs().sum()).fold(0.0, f64::max);
            let rel = norm(&(&t - rebuilt)) / (1.0 + norm(&t));
            worst = worst.max(rel);
        }
    }
    ensure!(worst < 1e-10, "relative defect {worst:e}");
    Ok(format!("worst relative defect {worst:.1e} over 300 points"))
}

fn perron_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..100 {
        let n = 2 + k % 7;
        let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(0.01..1.0));
        let rho = spectral_radius(&m).map_err(|e| format!("{e:?}"))?;
        let bound = max_row_sum(&m).min(max_col_sum(&m));
        ensure!(rho <= bound + 1e-9, "rho {rho} above bound {bound} for\n{m}");
    }
    let m = DMatrix::from_row_slice(2, 2, &[0.5, 0.1, 0.2, 0.4]);
    let p = perron_root(&m, 10_000, 1e-15).map_err(|e| format!("{e:?}"))?;
    ensure!((p - 0.6).abs() < 1e-10, "power iteration {p}");
    Ok(format!("100 matrices within bounds; power iteration {p:.12}"))
}

fn retrotone_discriminator() -> Outcome {
    let model = may2();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let region = default_region(&model, 1.5).unwrap();
    let good = check_retrotone(&model, &region, 10_000, &mut rng);
    ensure!(good.verdict.is_pass(), "May 2-D: {:?} {}", good.verdict, good.note);

    let chaotic = MayOster::ricker(3.0, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let region = default_region(&chaotic, 1.5).unwrap();
    let bad = check_retrotone(&chaotic, &region, 10_000, &mut rng);
    ensure!(bad.verdict == Verdict::Fail, "b = 3: {:?}", bad.verdict);
    let Some(Witness::Pair(x, y)) = &bad.witness else {
        return Err(format!("b = 3 failed without a pair witness: {:?}", bad.witness));
    };
    // replay the witness
    let (tx, ty) = (chaotic.eval_map(x).unwrap(), chaotic.eval_map(y).unwrap());
    ensure!(tx[0] > ty[0] && x[0] <= y[0], "witness does not reproduce: x {x:?} y {y:?}");
    Ok(format!("May 2-D {:?} on {} pairs; b=3 witness x={:.6} y={:.6}", good.verdict, good.samples, x[0], y[0]))
}

fn neural_gain() -> Outcome {
    let bound = neural_gain_bound(&neural(1.0));
    ensure!((bound - 1.0 / 0.6).abs() < 1e-12, "bound {bound}");
    let v1 = model_criterion(&neural(1.0)).verdict;
    let v2 = model_criterion(&neural(2.0)).verdict;
    ensure!(v1 == Verdict::Pass && v2 == Verdict::Fail, "gamma 1: {v1:?}, gamma 2: {v2:?}");
    Ok(format!("bound {bound:.15}; gamma 1 pass, gamma 2 fail"))
}

fn ode_suite() -> Outcome {
    let logistic = PeriodicSystem::logistic(1.0, 1.0).unwrap();
    let exact = 1.0 / (1.0 + (-1.0f64).exp());
    let err = |steps| {
        let cfg = IntegrationConfig::new(steps).unwrap();
        (integrate(&logistic, &sv(&[0.5]), (0.0, 1.0), &cfg).unwrap().last()[0] - exact).abs()
    };
    let e256 = err(256);
    ensure!(e256 < 1e-8, "logistic error {e256:e} at 256 steps");
    let ratio = err(64) / err(128);
    ensure!((12.0..=20.0).contains(&ratio), "step-halving ratio {ratio}");

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cfg = IntegrationConfig::default();
    let mut min_slope = f64::INFINITY;
    for k in 0..50 {
        let n = 2 + k % 3;
        let system = random_competitive_system(n, 2, &mut rng);
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..2.0)).collect();
        let u: Vec<f64> = v.iter().map(|x| x * rng.random_range(0.1..0.9)).collect();
        let out = wang_jiang_check(&system, &sv(&u), &sv(&v), (0.0, 3.0), &cfg).map_err(|e| e.to_string())?;
        ensure!(out.passed, "system {k}: min slope {:?}", out.min_slope);
        min_slope = min_slope.min(out.min_slope.unwrap_or(f64::INFINITY));
    }
    ensure!(min_slope > -1e-12, "min slope {min_slope:e}");
    Ok(format!("logistic error {e256:.1e}, halving ratio {ratio:.2}, 50 systems min slope {min_slope:.2e}"))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_carsimplex");
    let model = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/may2.json");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |tag: &str| -> Result<Vec<Vec<u8>>, String> {
        let check = dir.path().join(format!("check_{tag}.json"));
        let surface = dir.path().join(format!("surface_{tag}.csv"));
        let mut outputs = Vec::new();
        for (args, files) in [
            (vec!["check", "--seed", "42", "--out", check.to_str().unwrap()], vec![check.clone()]),
            (
                vec!["simplex", "--seed", "42", "--out", surface.to_str().unwrap()],
                vec![surface.clone(), PathBuf::from(format!("{}.meta.json", surface.display()))],
            ),
        ] {
            let status = Command::new(bin)
                .args(&args)
                .arg("--model")
                .arg(&model)
                .status()
                .map_err(|e| e.to_string())?;
            ensure!(status.code() == Some(0), "{} exited with {status}", args[0]);
            for f in files {
                outputs.push(std::fs::read(&f).map_err(|e| format!("{}: {e}", f.display()))?);
            }
        }
        Ok(outputs)
    };
    let first = run("a")?;
    let second = run("b")?;
    ensure!(first == second, "outputs differ between runs");
    Ok(format!("{} files byte-identical", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1-D existence threshold", existence_threshold),
        ("derivative at the fixed point", derivative_anchor),
        ("May-Oster criterion arithmetic", may_oster_arithmetic),
        ("carrying simplex verification suite", surface_suite),
        ("Jacobian factorization identity", jacobian_identity),
        ("row/column sum bounds and power iteration", perron_soundness),
        ("retrotone discriminator", retrotone_discriminator),
        ("neural gain criterion", neural_gain),
        ("ODE integrator and ratio monotonicity", ode_suite),
        ("determinism of check and simplex", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
