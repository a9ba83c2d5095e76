//! Acceptance criteria 1–10, one PASS/FAIL line each.

use std::f64::consts::PI;
use std::process::Command;

use qhm_core::contour::residue_oracle_for;
use qhm_core::dynamics::transition_energy_components;
use qhm_core::invariance::catalog_entry;
use qhm_core::{
    action_integral, catalog, integrate_trajectory, integrate_transition, period_integral, verify_invariance,
    Complex64, ContourKind, Decomposition, Eigenstate, OrbitClass, TrajectoryTransform,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EIGENVALUE_TOL: f64 = 1e-12;
const ENERGY_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-9;
const RADIUS_DRIFT_TOL: f64 = 1e-8;
const GROUND_PERIOD_TOL: f64 = 1e-6;
const PERIOD_TOL: f64 = 1e-4;
const ACTION_TOL: f64 = 1e-6;
const RESIDUE_AGREEMENT_TOL: f64 = 1e-9;
const INVARIANCE_TOL: f64 = 1e-7;
const DECOMPOSITION_TOL: f64 = 1e-12;
const EQUILIBRIUM_TOL: f64 = 1e-9;
const TRANSITION_TOL: f64 = 1e-8;

const SWEEP_POINTS: usize = 200;
const SWEEP_RADIUS: f64 = 2.0;
const NODE_EXCLUSION: f64 = 0.05;
const INTEGRATOR_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

type Verdict = Result<String, String>;

fn within(label: &str, value: f64, bound: f64) -> Verdict {
    if value <= bound {
        Ok(format!("{label} {value:.3e} <= {bound:.0e}"))
    } else {
        Err(format!("{label} {value:.3e} > {bound:.0e}"))
    }
}

fn all(parts: Vec<Verdict>) -> Verdict {
    let mut notes = Vec::new();
    for p in parts {
        notes.push(p?);
    }
    Ok(notes.join("; "))
}

fn criterion_1() -> Verdict {
    let expected = [
        ("H1", c(0.5, 0.0)),
        ("H2", c(0.625, 0.0)),
        ("H3", c(0.5, 0.25)),
        ("H4", c(0.5, 0.0)),
        ("H5", c(1.0, 0.0)),
        ("H6", c(1.0, 0.0)),
    ];
    let mut worst = 0.0_f64;
    for (name, offset) in expected {
        let entry = catalog_entry(name).ok_or(format!("{name} missing"))?;
        for n in 0..=2 {
            let e = entry.state(n).eigenvalue().value;
            worst = worst.max((e - (offset + n as f64)).norm());
        }
    }
    within("max eigenvalue error", worst, EIGENVALUE_TOL)
}

/// Seeded points in the disc |x| ≤ 2 away from the nodes.
fn sweep_points(state: &Eigenstate, seed: u64) -> Result<Vec<Complex64>, String> {
    let nodes = state.nodes().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(SWEEP_POINTS);
    while points.len() < SWEEP_POINTS {
        let x = Complex64::from_polar(SWEEP_RADIUS * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI));
        if nodes.iter().all(|&z| (x - z).norm() > NODE_EXCLUSION) {
            points.push(x);
        }
    }
    Ok(points)
}

fn criterion_2_and_3() -> (Verdict, Verdict) {
    let mut worst_energy = 0.0_f64;
    let mut worst_residual = 0.0_f64;
    for (i, entry) in catalog().iter().enumerate() {
        for n in 0..=2 {
            let state = entry.state(n);
            let e = state.eigenvalue().value;
            let points = match sweep_points(&state, 100 + (3 * i + n) as u64) {
                Ok(p) => p,
                Err(msg) => return (Err(msg.clone()), Err(msg)),
            };
            for x in points {
                match state.intrinsic_energy(x) {
                    Ok(b) => worst_energy = worst_energy.max((b.total - e).norm()),
                    Err(err) => return (Err(format!("{} n={n} at {x}: {err}", entry.name)), Ok(String::new())),
                }
                let rel = state.schrodinger_residual(x).norm() / state.wavefunction(x).norm().max(1.0);
                worst_residual = worst_residual.max(rel);
            }
        }
    }
    (
        within("max |H - E| over 18 states x 200 points", worst_energy, ENERGY_TOL),
        within("max relative residual", worst_residual, RESIDUAL_TOL),
    )
}

fn criterion_4() -> Verdict {
    let orbit = integrate_trajectory(&Eigenstate::base(0), c(1.0, 0.0), 7.0, INTEGRATOR_TOL).map_err(|e| e.to_string())?;
    let period = orbit.period.ok_or("orbit did not close")?;
    all(vec![
        within("radius drift", orbit.max_radius_drift(c(0.0, 0.0)), RADIUS_DRIFT_TOL),
        within("|T - 2pi|", (period - 2.0 * PI).abs(), GROUND_PERIOD_TOL),
    ])
}

fn criterion_5() -> Verdict {
    let state = Eigenstate::base(1);
    let mut parts = Vec::new();
    for (x0, class, expected) in [(1.2, OrbitClass::Omega2, PI), (3.0, OrbitClass::Omega3, 2.0 * PI)] {
        let orbit = integrate_trajectory(&state, c(x0, 0.0), 8.0, INTEGRATOR_TOL).map_err(|e| e.to_string())?;
        if orbit.classification != Some(class) {
            return Err(format!("x0 = {x0}: class {:?}, expected {class}", orbit.classification));
        }
        let detected = orbit.period.ok_or(format!("x0 = {x0} did not close"))?;
        let contour = period_integral(&orbit, &state).map_err(|e| e.to_string())?.value;
        parts.push(within(&format!("x0={x0} ({class}) dynamic |T - {expected:.4}|"), (detected - expected).abs(), PERIOD_TOL));
        parts.push(within(&format!("x0={x0} contour |T - {expected:.4}|"), (contour - expected).norm(), PERIOD_TOL));
    }
    all(parts)
}

fn criterion_6() -> Verdict {
    let state = Eigenstate::base(1);
    let mut parts = Vec::new();
    for (x0, expected) in [(3.0, 2.0 * PI), (1.2, 0.0)] {
        let orbit = integrate_trajectory(&state, c(x0, 0.0), 8.0, INTEGRATOR_TOL).map_err(|e| e.to_string())?;
        let numeric = action_integral(&orbit, &state).map_err(|e| e.to_string())?.value;
        let residue = residue_oracle_for(&orbit, &state, ContourKind::Action).map_err(|e| e.to_string())?.value;
        parts.push(within(&format!("x0={x0} |J - {expected:.4}|"), (numeric - expected).norm(), ACTION_TOL));
        parts.push(within(&format!("x0={x0} |J - residue|"), (numeric - residue).norm(), RESIDUE_AGREEMENT_TOL));
    }
    all(parts)
}

fn criterion_7() -> Verdict {
    let mut worst = 0.0_f64;
    for entry in catalog() {
        for n in 0..=1 {
            let start = if n == 0 { c(1.0, 0.0) } else { c(3.0, 0.0) };
            let report = verify_invariance(&entry, n, start, 2.0 * PI, INTEGRATOR_TOL).map_err(|e| format!("{} n={n}: {e}", entry.name))?;
            worst = worst.max(report.max_trajectory_deviation);
        }
    }
    let transform = |name: &str| TrajectoryTransform::of(&catalog_entry(name).expect("catalog member").params);
    let decomposition = |name: &str| Decomposition::of(&catalog_entry(name).expect("catalog member").params);
    let close = |z: Complex64, w: Complex64| (z - w).norm() <= DECOMPOSITION_TOL;
    let near = |x: f64, y: f64| (x - y).abs() <= DECOMPOSITION_TOL;
    let described = [
        ("H2 shift -i/2", close(transform("H2").offset, c(0.0, -0.5)) && near(transform("H2").scale, 1.0)),
        ("H3 shift 1/2 - i/2", close(transform("H3").offset, c(0.5, -0.5)) && near(transform("H3").scale, 1.0)),
        ("H4 rotation pi/2", near(decomposition("H4").angle.abs(), PI / 2.0) && close(transform("H4").offset, c(0.0, 0.0))),
        (
            "H5 rotation pi/2 + left shift 1/2",
            near(decomposition("H5").angle.abs(), PI / 2.0) && close(transform("H5").offset, c(-0.5, 0.0)),
        ),
        ("H6 contraction 1/2 + left shift 1", near(transform("H6").scale, 0.5) && close(transform("H6").offset, c(-1.0, 0.0))),
    ];
    if let Some((label, _)) = described.iter().find(|(_, ok)| !ok) {
        return Err(format!("decomposition mismatch: {label}"));
    }
    within("max trajectory deviation over 12 orbits", worst, INVARIANCE_TOL).map(|s| format!("{s}; decompositions match"))
}

fn criterion_8() -> Verdict {
    let mut parts = Vec::new();
    for (name, expected) in [("H1", [c(-1.0, 0.0), c(1.0, 0.0)]), ("H5", [c(-0.5, -1.0), c(-0.5, 1.0)])] {
        let found = catalog_entry(name).expect("catalog member").state(1).equilibria().map_err(|e| e.to_string())?;
        if found.len() != 2 {
            return Err(format!("{name}: {} equilibria", found.len()));
        }
        let err = expected
            .iter()
            .map(|&e| found.iter().map(|&f| (f - e).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max);
        parts.push(within(&format!("{name} equilibrium error"), err, EQUILIBRIUM_TOL));
    }
    all(parts)
}

fn criterion_9() -> Verdict {
    let samples = integrate_transition(c(1.0, 0.0), -PI, 1.0 + PI, INTEGRATOR_TOL).map_err(|e| e.to_string())?;
    let half = c(0.5, 0.0);
    let three_halves = c(1.5, 0.0);
    let mut worst = 0.0_f64;
    let mut max_imag = 0.0_f64;
    for s in &samples {
        if s.t <= 0.0 && s.energy != half {
            return Err(format!("E({}) = {} for t <= 0", s.t, s.energy));
        }
        if s.t >= 1.0 && s.energy != three_halves {
            return Err(format!("E({}) = {} for t >= 1", s.t, s.energy));
        }
        if s.t > 0.0 && s.t < 1.0 {
            let recomputed = transition_energy_components(s.t, s.x).map_err(|e| e.to_string())?.total;
            worst = worst.max((recomputed - s.energy).norm());
            max_imag = max_imag.max(s.energy.im.abs());
        }
    }
    if max_imag <= 0.0 {
        return Err("no interior sample has complex energy".into());
    }
    within("closed form vs p^2/2 + x^2/2 + Q", worst, TRANSITION_TOL)
        .map(|s| format!("{} samples; endpoints exact; {s}; max |Im E| = {max_imag:.3}", samples.len()))
}

fn criterion_10() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 4] = [
        &["trajectory", "--member", "H1", "--n", "1", "--x0", "3,0", "--x0", "1.2,0", "--x0", "0.5,0.5"],
        &["verify", "--member", "H5", "--n", "1", "--x0", "1.5,0"],
        &["transition", "--x0", "1,0", "--format", "json"],
        &["contour", "--member", "H3", "--n", "1", "--x0", "1.5,0"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut bodies = Vec::new();
        for rep in 0..2 {
            let path = dir.path().join(format!("run{i}_{rep}.out"));
            let status = Command::new(env!("CARGO_BIN_EXE_qhm"))
                .args(*args)
                .arg("--output")
                .arg(&path)
                .output()
                .map_err(|e| e.to_string())?;
            if !status.status.success() {
                return Err(format!("{} exited with {}", args[0], status.status));
            }
            bodies.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if bodies[0] != bodies[1] {
            return Err(format!("{} output differs between runs", args[0]));
        }
    }
    Ok("trajectory, verify, transition and contour outputs byte-identical across two runs".into())
}

fn main() {
    let (c2, c3) = criterion_2_and_3();
    let results = [
        ("1 eigenvalue table", criterion_1()),
        ("2 energy conservation", c2),
        ("3 Schrodinger residual", c3),
        ("4 ground-state orbit", criterion_4()),
        ("5 period quantization", criterion_5()),
        ("6 action quantization", criterion_6()),
        ("7 invariance verification", criterion_7()),
        ("8 equilibria", criterion_8()),
        ("9 transition energy", criterion_9()),
        ("10 determinism", criterion_10()),
    ];
    let mut failed = 0;
    for (name, verdict) in &results {
        match verdict {
            Ok(note) => println!("PASS criterion {name}: {note}"),
            Err(note) => {
                failed += 1;
                println!("FAIL criterion {name}: {note}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
