use std::f64::consts::PI;

use anyhow::{anyhow, bail, Context, Result};
use qhm_core::contour::residue_oracle_for;
use qhm_core::invariance::verify_mapping;
use qhm_core::{
    action_integral, integrate_trajectory, integrate_transition, period_integral, Complex64, ContourKind,
    ContourResult, Eigenstate, InvarianceReport, Trajectory, Winding,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{echo, Command, Format, RunConfig};
use crate::output::{complex_cells, json, real, Check, Csv, RunInfo};

pub const TRAJECTORY_DEVIATION_BOUND: f64 = 1e-7;
pub const WAVEFUNCTION_DEVIATION_BOUND: f64 = 1e-12;
pub const EQUILIBRIUM_BOUND: f64 = 1e-9;
pub const ENERGY_FLATNESS_BOUND: f64 = 1e-9;
pub const RESIDUAL_BOUND: f64 = 1e-9;
pub const ACTION_BOUND: f64 = 1e-6;
pub const PERIOD_BOUND: f64 = 1e-4;
pub const PERIOD_IMAG_BOUND: f64 = 1e-8;
/// Sweep points closer than this to a node are skipped.
const NODE_EXCLUSION: f64 = 0.05;
const SWEEP_RADIUS: f64 = 2.0;
/// Horizon used to detect the base period when `verify` has no `t_end`.
const PERIOD_SEARCH: f64 = 50.0;

/// The data file produced by a command and whether its checks passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub body: String,
    pub passed: bool,
    /// Human-readable lines for the terminal.
    pub summary: Vec<String>,
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    match config.command {
        Command::Trajectory => trajectory(config),
        Command::Verify => verify(config),
        Command::Transition => transition(config),
        Command::Contour => contour(config),
    }
}

fn state_of(config: &RunConfig) -> Eigenstate {
    Eigenstate::new(config.member.params, config.n)
}

fn t_end_of(config: &RunConfig) -> f64 {
    config.t_end.expect("resolved for this command")
}

fn single_start(config: &RunConfig) -> Result<Complex64> {
    match config.initial_conditions.as_slice() {
        [x0] => Ok(*x0),
        many => bail!("{} takes exactly one x0, got {}", config.command.name(), many.len()),
    }
}

#[derive(Serialize)]
struct SeriesMeta {
    index: usize,
    x0: Complex64,
    closed: bool,
    period: Option<f64>,
    classification: Option<String>,
    windings: Vec<Winding>,
    samples: usize,
}

#[derive(Serialize)]
struct TrajectoryRow {
    series: usize,
    t: f64,
    x: Complex64,
    p: Complex64,
    energy: Complex64,
}

#[derive(Serialize)]
struct TrajectoryDoc<'a> {
    config: std::collections::BTreeMap<&'static str, serde_json::Value>,
    run: RunInfo,
    eigenvalue: Complex64,
    equilibria: Vec<Complex64>,
    metadata: Vec<SeriesMeta>,
    samples: &'a [TrajectoryRow],
}

fn trajectory(config: &RunConfig) -> Result<Outcome> {
    let state = state_of(config);
    let t_end = t_end_of(config);
    let orbits: Vec<Trajectory> = config
        .initial_conditions
        .par_iter()
        .enumerate()
        .map(|(i, &x0)| {
            integrate_trajectory(&state, x0, t_end, config.tolerance)
                .map_err(|e| anyhow!("series {i} (x0 = {x0}): {e}"))
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut meta = Vec::new();
    let mut summary = Vec::new();
    for (index, orbit) in orbits.iter().enumerate() {
        for s in &orbit.samples {
            let energy = state.intrinsic_energy(s.x).map_err(|e| anyhow!("series {index}: {e}"))?.total;
            let p = state.momentum(s.x).map_err(|e| anyhow!("series {index}: {e}"))?;
            rows.push(TrajectoryRow { series: index, t: s.t, x: s.x, p, energy });
        }
        let classification = orbit.classification.map(|c| c.to_string());
        summary.push(format!(
            "series {index}: x0 = {}, {} samples, closed = {}, period = {}, class = {}",
            orbit.start(),
            orbit.samples.len(),
            orbit.closed,
            orbit.period.map_or("-".into(), |p| format!("{p:.10}")),
            classification.as_deref().unwrap_or("-"),
        ));
        meta.push(SeriesMeta {
            index,
            x0: orbit.start(),
            closed: orbit.closed,
            period: orbit.period,
            classification,
            windings: orbit.windings.clone(),
            samples: orbit.samples.len(),
        });
    }

    let body = match config.format {
        Format::Csv => {
            let mut csv = Csv::new(&["series", "t", "re_x", "im_x", "re_p", "im_p", "re_E", "im_E"]);
            for r in &rows {
                let [xr, xi] = complex_cells(r.x);
                let [pr, pi] = complex_cells(r.p);
                let [er, ei] = complex_cells(r.energy);
                csv.row(&[r.series.to_string(), real(r.t), xr, xi, pr, pi, er, ei]);
            }
            csv.finish()
        }
        Format::Json => json(&TrajectoryDoc {
            config: echo(config),
            run: RunInfo::new(config.seed),
            eigenvalue: state.eigenvalue().value,
            equilibria: state.equilibria()?,
            metadata: meta,
            samples: &rows,
        }),
    };
    Ok(Outcome { body, passed: true, summary })
}

#[derive(Serialize)]
struct Sweep {
    points: usize,
    radius: f64,
    node_exclusion: f64,
    max_energy_deviation: f64,
    max_relative_residual: f64,
}

#[derive(Serialize)]
struct VerifyDoc {
    config: std::collections::BTreeMap<&'static str, serde_json::Value>,
    run: RunInfo,
    x1_start: Complex64,
    t_end: f64,
    report: InvarianceReport,
    sweep: Sweep,
    checks: Vec<Check>,
    passed: bool,
}

/// Energy flatness and Schrödinger residual over seeded random points.
fn sweep(state: &Eigenstate, points: usize, seed: u64) -> Result<Sweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = state.nodes()?;
    let e = state.eigenvalue().value;
    let (mut max_energy, mut max_residual) = (0.0_f64, 0.0_f64);
    let mut taken = 0;
    while taken < points {
        let x = Complex64::from_polar(SWEEP_RADIUS * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI));
        if nodes.iter().any(|&z| (x - z).norm() <= NODE_EXCLUSION) {
            continue;
        }
        taken += 1;
        let total = state.intrinsic_energy(x)?.total;
        max_energy = max_energy.max((total - e).norm());
        let r = state.schrodinger_residual(x).norm() / state.wavefunction(x).norm().max(1.0);
        max_residual = max_residual.max(r);
    }
    Ok(Sweep {
        points,
        radius: SWEEP_RADIUS,
        node_exclusion: NODE_EXCLUSION,
        max_energy_deviation: max_energy,
        max_relative_residual: max_residual,
    })
}

fn verify(config: &RunConfig) -> Result<Outcome> {
    let x1 = single_start(config)?;
    let state = state_of(config);
    let t_end = match config.t_end {
        Some(t) => t,
        None => integrate_trajectory(&state.base_state(), x1, PERIOD_SEARCH, config.tolerance)?
            .period
            .ok_or_else(|| anyhow!("base orbit from x1 = {x1} did not close within t = {PERIOD_SEARCH}"))?,
    };
    let report = verify_mapping(&config.member.name, &config.member.params, config.n, x1, t_end, config.tolerance)
        .context("invariance verification")?;
    let sweep = sweep(&state, config.sweep_points, config.seed)?;

    let checks = vec![
        Check::at_most("trajectory_deviation", report.max_trajectory_deviation, TRAJECTORY_DEVIATION_BOUND),
        Check::at_most("wavefunction_deviation", report.max_wavefunction_deviation, WAVEFUNCTION_DEVIATION_BOUND),
        Check::flag("eigenvalue_shift_equals_c", report.eigenvalue_shift_checked),
        Check::at_most("equilibrium_transport", report.max_equilibrium_deviation, EQUILIBRIUM_BOUND),
        Check::at_most("energy_flatness", sweep.max_energy_deviation, ENERGY_FLATNESS_BOUND),
        Check::at_most("schrodinger_residual", sweep.max_relative_residual, RESIDUAL_BOUND),
    ];
    let passed = checks.iter().all(|c| c.pass);
    let mut summary = vec![format!(
        "{} n={}: shift b = {}, eigenvalue shift = {}, rotation {:.6} rad, magnification {}",
        report.name,
        report.n,
        report.decomposition.shift,
        report.eigenvalue_shift,
        report.decomposition.angle,
        report.decomposition.magnification
    )];
    summary.push(format!("equilibria: {:?}", report.equilibria.iter().map(|z| z.to_string()).collect::<Vec<_>>()));
    summary.extend(checks.iter().map(Check::line));

    let doc = VerifyDoc { config: echo(config), run: RunInfo::new(config.seed), x1_start: x1, t_end, report, sweep, checks, passed };
    let body = match config.format {
        Format::Json => json(&doc),
        Format::Csv => {
            let mut csv = Csv::new(&["check", "value", "bound", "pass"]);
            for c in &doc.checks {
                csv.row(&[c.name.clone(), real(c.value), real(c.bound), c.pass.to_string()]);
            }
            csv.finish()
        }
    };
    Ok(Outcome { body, passed, summary })
}

#[derive(Serialize)]
struct TransitionMeta {
    x0: Complex64,
    samples: usize,
    energy_start: Complex64,
    energy_end: Complex64,
    max_abs_imag_energy: f64,
}

#[derive(Serialize)]
struct TransitionRow {
    t: f64,
    x: Complex64,
    energy: Complex64,
}

#[derive(Serialize)]
struct TransitionDoc {
    config: std::collections::BTreeMap<&'static str, serde_json::Value>,
    run: RunInfo,
    metadata: TransitionMeta,
    samples: Vec<TransitionRow>,
}

fn transition(config: &RunConfig) -> Result<Outcome> {
    let x0 = single_start(config)?;
    let samples = integrate_transition(x0, config.t_start, t_end_of(config), config.tolerance)?;
    let first = samples.first().ok_or_else(|| anyhow!("empty transition path"))?;
    let last = samples.last().expect("non-empty");
    let meta = TransitionMeta {
        x0,
        samples: samples.len(),
        energy_start: first.energy,
        energy_end: last.energy,
        max_abs_imag_energy: samples.iter().map(|s| s.energy.im.abs()).fold(0.0, f64::max),
    };
    let summary = vec![format!(
        "{} samples, E({}) = {}, E({}) = {}, max |Im E| = {:.6e}",
        meta.samples, first.t, first.energy, last.t, last.energy, meta.max_abs_imag_energy
    )];
    let body = match config.format {
        Format::Csv => {
            let mut csv = Csv::new(&["t", "re_x", "im_x", "re_E", "im_E"]);
            for s in &samples {
                let [xr, xi] = complex_cells(s.x);
                let [er, ei] = complex_cells(s.energy);
                csv.row(&[real(s.t), xr, xi, er, ei]);
            }
            csv.finish()
        }
        Format::Json => json(&TransitionDoc {
            config: echo(config),
            run: RunInfo::new(config.seed),
            metadata: meta,
            samples: samples.iter().map(|s| TransitionRow { t: s.t, x: s.x, energy: s.energy }).collect(),
        }),
    };
    Ok(Outcome { body, passed: true, summary })
}

#[derive(Serialize)]
struct Pair {
    numeric: ContourResult,
    residue: ContourResult,
}

#[derive(Serialize)]
struct ContourDoc {
    config: std::collections::BTreeMap<&'static str, serde_json::Value>,
    run: RunInfo,
    metadata: SeriesMeta,
    action: Pair,
    period: Pair,
    action_quanta: f64,
    checks: Vec<Check>,
    passed: bool,
}

fn contour(config: &RunConfig) -> Result<Outcome> {
    let x0 = single_start(config)?;
    let state = state_of(config);
    let t_end = t_end_of(config);
    let orbit = integrate_trajectory(&state, x0, t_end, config.tolerance)?;
    if !orbit.closed {
        bail!("orbit from x0 = {x0} did not close within t = {t_end}");
    }
    let action = Pair {
        numeric: action_integral(&orbit, &state)?,
        residue: residue_oracle_for(&orbit, &state, ContourKind::Action)?,
    };
    let period = Pair {
        numeric: period_integral(&orbit, &state)?,
        residue: residue_oracle_for(&orbit, &state, ContourKind::Period)?,
    };
    let detected = orbit.period.expect("closed orbit has a period");
    let quanta = action.numeric.value.re / (2.0 * PI);
    let checks = vec![
        Check::at_most("action_vs_residue", (action.numeric.value - action.residue.value).norm(), ACTION_BOUND),
        Check::at_most("action_quantization", (quanta - quanta.round()).abs() + action.numeric.value.im.abs(), ACTION_BOUND),
        Check::at_most("period_vs_residue", (period.numeric.value - period.residue.value).norm(), PERIOD_BOUND),
        Check::at_most("period_vs_dynamics", (period.numeric.value.re - detected).abs(), PERIOD_BOUND),
        Check::at_most("period_imaginary_part", period.numeric.value.im.abs(), PERIOD_IMAG_BOUND),
    ];
    let passed = checks.iter().all(|c| c.pass);
    let mut summary = vec![format!(
        "J = {} (residue {}), T = {} (residue {}, detected {detected:.10})",
        action.numeric.value, action.residue.value, period.numeric.value, period.residue.value
    )];
    summary.extend(checks.iter().map(Check::line));

    let body = match config.format {
        Format::Csv => {
            let mut csv = Csv::new(&["quantity", "method", "re", "im", "error_estimate"]);
            for (name, pair) in [("action", &action), ("period", &period)] {
                for r in [&pair.numeric, &pair.residue] {
                    let method = serde_json::to_value(r.method).expect("serializes");
                    let [re, im] = complex_cells(r.value);
                    csv.row(&[name.into(), method.as_str().unwrap_or_default().into(), re, im, real(r.error_estimate)]);
                }
            }
            csv.finish()
        }
        Format::Json => json(&ContourDoc {
            config: echo(config),
            run: RunInfo::new(config.seed),
            metadata: SeriesMeta {
                index: 0,
                x0,
                closed: orbit.closed,
                period: orbit.period,
                classification: orbit.classification.map(|c| c.to_string()),
                windings: orbit.windings.clone(),
                samples: orbit.samples.len(),
            },
            action,
            period,
            action_quanta: quanta,
            checks,
            passed,
        }),
    };
    Ok(Outcome { body, passed, summary })
}
