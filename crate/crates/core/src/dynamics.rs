//! Complex-plane trajectories: eigen-trajectories with closed-orbit detection
//! and winding bookkeeping, and the n = 0 → n = 1 transition process.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigensystem::{base_potential, Eigenstate, EnergyBreakdown};
use crate::error::{Error, Result};
use crate::ode::{self, Failure, Options, Sample};
use crate::special_functions::hermite;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Fields are not integrated closer than this to a pole.
pub const POLE_GUARD: f64 = 1e-8;
/// Distance from an equilibrium below which a start point is rejected.
pub const EQUILIBRIUM_START: f64 = 1e-10;
/// Tolerance the closure thresholds are calibrated against.
const REFERENCE_TOLERANCE: f64 = 1e-10;
// Orbits grazing a node return with gaps of a few 1e-8 at the reference
// tolerance; every non-separatrix orbit of these fields is periodic.
const CLOSURE_DISTANCE: f64 = 1e-6;
const CLOSURE_ANGLE: f64 = 1e-4;
/// Largest admissible distance of the total turning from an integer.
const WINDING_SLACK: f64 = 0.01;

pub type TrajectorySample = Sample;

/// Orbit families of the first excited state, by enclosed equilibria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitClass {
    /// encircles the equilibrium at −1 only
    Omega1,
    /// encircles the equilibrium at +1 only
    Omega2,
    /// encircles both
    Omega3,
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitClass::Omega1 => "Ω₁",
            OrbitClass::Omega2 => "Ω₂",
            OrbitClass::Omega3 => "Ω₃",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Winding {
    pub point: Complex64,
    pub winding: i32,
}

/// Where a closed orbit returns to its start.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Closure {
    /// Last stored sample before the return.
    pub index: usize,
    pub t: f64,
    pub point: Complex64,
    pub velocity: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub closed: bool,
    pub period: Option<f64>,
    /// Winding about each equilibrium of the generating state.
    pub windings: Vec<Winding>,
    pub classification: Option<OrbitClass>,
    pub closure: Option<Closure>,
}

impl Trajectory {
    pub fn start(&self) -> Complex64 {
        self.samples[0].x
    }

    /// Samples covering exactly one period, ending on the interpolated return point.
    pub fn one_period(&self) -> Option<Vec<Sample>> {
        let closure = self.closure?;
        let mut lap: Vec<Sample> = self.samples[..=closure.index].to_vec();
        if closure.t > lap[lap.len() - 1].t {
            lap.push(Sample { t: closure.t, x: closure.point, v: closure.velocity });
        }
        Some(lap)
    }

    /// Total turning of `x(t) − z` over one period, in revolutions.
    pub fn turning_about(&self, z: Complex64) -> Result<f64> {
        let lap = self.one_period().ok_or(Error::NotClosed)?;
        let mut total = 0.0;
        for w in lap.windows(2) {
            total += segment_turning(&w[0], &w[1], z, 0)?;
        }
        // the return point sits within the closure tolerance of x₀
        let tail = ((lap[0].x - z) / (lap[lap.len() - 1].x - z)).arg();
        total += tail;
        Ok(total / (2.0 * PI))
    }

    /// Signed number of revolutions about `z` over one period.
    pub fn winding_about(&self, z: Complex64) -> Result<i32> {
        let turns = self.turning_about(z)?;
        let rounded = turns.round();
        if (turns - rounded).abs() > WINDING_SLACK {
            return Err(Error::Classification { point: z, turns });
        }
        Ok(rounded as i32)
    }

    /// Largest distance of the sampled points from `center`.
    pub fn max_radius_drift(&self, center: Complex64) -> f64 {
        let r0 = (self.start() - center).norm();
        self.samples.iter().map(|s| ((s.x - center).norm() - r0).abs()).fold(0.0, f64::max)
    }
}

fn segment_turning(s0: &Sample, s1: &Sample, z: Complex64, depth: u32) -> Result<f64> {
    let d0 = s0.x - z;
    let d1 = s1.x - z;
    if d0.norm() == 0.0 || d1.norm() == 0.0 {
        return Err(Error::Classification { point: z, turns: f64::NAN });
    }
    let step = (d1 / d0).arg();
    if step.abs() <= 0.5 || depth >= 24 {
        return Ok(step);
    }
    let tm = 0.5 * (s0.t + s1.t);
    let (xm, vm) = ode::interpolate(s0, s1, tm);
    let mid = Sample { t: tm, x: xm, v: vm };
    Ok(segment_turning(s0, &mid, z, depth + 1)? + segment_turning(&mid, s1, z, depth + 1)?)
}

fn tolerance_scale(tolerance: f64) -> f64 {
    (tolerance / REFERENCE_TOLERANCE).max(1.0)
}

/// Finds the first return of the orbit to its start: a crossing of the line
/// through `x₀` perpendicular to the initial velocity, close to `x₀` and with
/// matching direction of motion. `field` gives the velocity at the refined
/// return point.
pub fn detect_closure<F>(samples: &[Sample], tolerance: f64, field: F) -> Option<Closure>
where
    F: Fn(Complex64) -> Option<Complex64>,
{
    let first = samples.first()?;
    let x0 = first.x;
    if first.v.norm() == 0.0 {
        return None;
    }
    let dir = first.v / first.v.norm();
    let g = |x: Complex64| ((x - x0) * dir.conj()).re;
    let distance_tol = CLOSURE_DISTANCE * tolerance_scale(tolerance) * x0.norm().max(1.0);
    let angle_tol = CLOSURE_ANGLE * tolerance_scale(tolerance);
    let accept = |x: Complex64, v: Complex64| {
        (x - x0).norm() <= distance_tol && v.norm() > 0.0 && (v / first.v).arg().abs() <= angle_tol
    };

    let mut departed = false;
    for k in 1..samples.len() {
        let (s0, s1) = (&samples[k - 1], &samples[k]);
        if !departed {
            departed = (s1.x - x0).norm() > 100.0 * distance_tol;
            continue;
        }
        let (g0, g1) = (g(s0.x), g(s1.x));
        if g0 < 0.0 && g1 >= 0.0 {
            let t = crossing_time(s0, s1, &g);
            let x = ode::interpolate(s0, s1, t).0;
            let Some(v) = field(x) else { continue };
            if accept(x, v) {
                let index = if t >= s1.t { k } else { k - 1 };
                return Some(Closure { index, t, point: x, velocity: v });
            }
        }
    }

    // the integration may end a hair before the return
    let last = samples.last()?;
    let gl = g(last.x);
    let rate = (last.v * dir.conj()).re;
    if departed && gl < 0.0 && rate > 0.0 {
        let dt = -gl / rate;
        let x = last.x + last.v * dt;
        let v = field(x)?;
        if dt <= 1e-6 * (last.t - first.t) && accept(x, v) {
            return Some(Closure { index: samples.len() - 1, t: last.t + dt, point: x, velocity: v });
        }
    }
    None
}

// root of g(x(t)) on [s0.t, s1.t] by bracketed secant (Illinois) on the Hermite interpolant
fn crossing_time(s0: &Sample, s1: &Sample, g: &impl Fn(Complex64) -> f64) -> f64 {
    let (mut ta, mut tb) = (s0.t, s1.t);
    let (mut ga, mut gb) = (g(s0.x), g(s1.x));
    if gb == 0.0 {
        return tb;
    }
    let mut side = 0;
    let mut t_prev = f64::NAN;
    for _ in 0..100 {
        let t = (ta * gb - tb * ga) / (gb - ga);
        let gt = g(ode::interpolate(s0, s1, t).0);
        if gt == 0.0 || (t - t_prev).abs() <= 1e-15 * t.abs().max(1.0) {
            return t;
        }
        t_prev = t;
        if (gt < 0.0) == (ga < 0.0) {
            ta = t;
            ga = gt;
            if side == -1 {
                gb *= 0.5;
            }
            side = -1;
        } else {
            tb = t;
            gb = gt;
            if side == 1 {
                ga *= 0.5;
            }
            side = 1;
        }
    }
    t_prev
}

fn guarded_velocity(state: &Eigenstate, t: f64, x: Complex64) -> Result<Complex64> {
    let u = state.params.to_base(x);
    if hermite(state.n, u).norm() < POLE_GUARD * u.norm().powi(state.n as i32).max(1.0) {
        return Err(Error::NodeApproach { t, x, step: 0.0 });
    }
    state.velocity(x)
}

fn map_failure(failure: Failure) -> Error {
    match failure {
        Failure::Start(e) => e,
        Failure::StepCollapse { cause: Some(e @ Error::TransitionPole { .. }), .. } => e,
        Failure::StepCollapse { t, x, step, .. } => Error::NodeApproach { t, x, step },
        Failure::TooManySteps { t } => Error::StepLimit { t },
    }
}

fn check_run(t_end: f64, tolerance: f64) -> Result<()> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter(format!("t_end must be positive, got {t_end}")));
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tolerance}")));
    }
    Ok(())
}

/// Integrates `dx/dt = velocity(state, x)` from `x0` over `[0, t_end]` and
/// annotates the result with closure, period, windings and (for n = 1) the
/// orbit family.
pub fn integrate_trajectory(state: &Eigenstate, x0: Complex64, t_end: f64, tolerance: f64) -> Result<Trajectory> {
    check_run(t_end, tolerance)?;
    if !x0.is_finite() {
        return Err(Error::InvalidParameter("x0 must be finite".into()));
    }
    let equilibria = state.equilibria()?;
    if equilibria.iter().any(|&e| (x0 - e).norm() <= EQUILIBRIUM_START) {
        return Err(Error::EquilibriumStart { x0 });
    }
    state.velocity(x0)?;

    let opts = Options::with_tolerance(tolerance);
    let samples = ode::integrate(|t, x| guarded_velocity(state, t, x), 0.0, x0, t_end, &opts).map_err(map_failure)?;

    let mut trajectory = Trajectory {
        samples,
        closed: false,
        period: None,
        windings: Vec::new(),
        classification: None,
        closure: None,
    };
    if let Some(closure) = detect_closure(&trajectory.samples, tolerance, |x| state.velocity(x).ok()) {
        trajectory.closed = true;
        trajectory.period = Some(closure.t - trajectory.samples[0].t);
        trajectory.closure = Some(closure);
        trajectory.windings = equilibria
            .iter()
            .map(|&point| Ok(Winding { point, winding: trajectory.winding_about(point)? }))
            .collect::<Result<_>>()?;
        if state.n == 1 {
            let minus = trajectory.winding_about(state.params.from_base(Complex64::new(-1.0, 0.0)))?;
            let plus = trajectory.winding_about(state.params.from_base(Complex64::new(1.0, 0.0)))?;
            trajectory.classification = classify(minus, plus);
        }
    }
    Ok(trajectory)
}

fn classify(minus: i32, plus: i32) -> Option<OrbitClass> {
    match (minus, plus) {
        (m, 0) if m.abs() == 1 => Some(OrbitClass::Omega1),
        (0, p) if p.abs() == 1 => Some(OrbitClass::Omega2),
        (m, p) if m != 0 && m.signum() == p.signum() => Some(OrbitClass::Omega3),
        _ => None,
    }
}

/// Total energy for an arbitrary initial velocity: `(m_eq/2)·v0² + V(a·x0 + b) + c + Q(x0)`.
pub fn energy_from_initial_conditions(x0: Complex64, v0: Complex64, state: &Eigenstate) -> Result<EnergyBreakdown> {
    let q = state.quantum_potential(x0)?;
    let mass = state.params.equivalent_mass();
    Ok(EnergyBreakdown::new(0.5 * mass * v0 * v0, state.applied_potential(x0), q))
}

/// One point of the n = 0 → n = 1 transition history.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionSample {
    pub t: f64,
    pub x: Complex64,
    pub energy: Complex64,
}

/// Denominators below this are treated as the pole itself.
const POLE_EXACT: f64 = 1e-14;

fn transition_velocity_guarded(t: f64, x: Complex64, guard: f64) -> Result<Complex64> {
    if t <= 0.0 {
        Ok(I * x)
    } else if t < 1.0 {
        let d = 2.0 * t * x - t + 1.0;
        if d.norm() < guard {
            return Err(Error::TransitionPole { t, x });
        }
        Ok(I * x - I * 2.0 * t / d)
    } else {
        if x.norm() < guard {
            return Err(Error::TransitionPole { t, x });
        }
        Ok(I * (x * x - 1.0) / x)
    }
}

/// Piecewise guidance field of the transition: ground state for `t ≤ 0`,
/// the superposition `(1 − t + 2t·x)·e^(−x²/2)` for `0 < t < 1`, first
/// excited state for `t ≥ 1`.
pub fn transition_velocity(t: f64, x: Complex64) -> Result<Complex64> {
    transition_velocity_guarded(t, x, POLE_EXACT)
}

/// Total complex energy `p²/2 + x²/2 + Q` of the transition state at `(t, x)`.
pub fn transition_energy(t: f64, x: Complex64) -> Result<Complex64> {
    if t <= 0.0 {
        Ok(Complex64::new(0.5, 0.0))
    } else if t < 1.0 {
        let d = 2.0 * t * x - t + 1.0;
        if d.norm() < POLE_EXACT {
            return Err(Error::TransitionPole { t, x });
        }
        Ok(0.5 * (6.0 * t * x - t + 1.0) / d)
    } else {
        if x.norm() < POLE_EXACT {
            return Err(Error::TransitionPole { t, x });
        }
        Ok(Complex64::new(1.5, 0.0))
    }
}

/// Integrates the transition field over `[t_start, t_end]`, restarting at the
/// branch boundaries `t = 0` and `t = 1`, and attaches the energy to each sample.
pub fn integrate_transition(x0: Complex64, t_start: f64, t_end: f64, tolerance: f64) -> Result<Vec<TransitionSample>> {
    if !t_start.is_finite() || !t_end.is_finite() || t_start >= t_end {
        return Err(Error::InvalidParameter(format!("need t_start < t_end, got [{t_start}, {t_end}]")));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tolerance}")));
    }
    transition_velocity(t_start, x0)?;

    let mut cuts = vec![t_start];
    cuts.extend([0.0, 1.0].into_iter().filter(|&b| b > t_start && b < t_end));
    cuts.push(t_end);

    let opts = Options::with_tolerance(tolerance);
    let mut out: Vec<TransitionSample> = Vec::new();
    let mut x = x0;
    for span in cuts.windows(2) {
        let (a, b) = (span[0], span[1]);
        // the segment starting at a boundary belongs to the branch on its right
        let branch_t = |t: f64| if t == a && a == 0.0 { f64::MIN_POSITIVE } else { t };
        let samples = ode::integrate(
            |t, x| transition_velocity_guarded(branch_t(t), x, POLE_GUARD),
            a,
            x,
            b,
            &opts,
        )
        .map_err(map_failure)?;
        let skip = usize::from(!out.is_empty());
        for s in &samples[skip..] {
            out.push(TransitionSample { t: s.t, x: s.x, energy: transition_energy(s.t, s.x)? });
        }
        x = samples.last().map(|s| s.x).unwrap_or(x);
    }
    Ok(out)
}

/// `p²/2 + x²/2 + Q` for the transition state, with `Q` from the second
/// log-derivative of the superposed wavefunction.
pub fn transition_energy_components(t: f64, x: Complex64) -> Result<EnergyBreakdown> {
    let p = transition_velocity(t, x)?;
    let q = if t <= 0.0 {
        Complex64::new(0.5, 0.0)
    } else if t < 1.0 {
        let d = 2.0 * t * x - t + 1.0;
        0.5 + 2.0 * t * t / (d * d)
    } else {
        0.5 * (1.0 / (x * x) + 1.0)
    };
    Ok(EnergyBreakdown::new(0.5 * p * p, base_potential(x), q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensystem::FamilyParams;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ground_state_circle() {
        let tr = integrate_trajectory(&Eigenstate::base(0), c(1.0, 0.0), 2.0 * PI, 1e-10).unwrap();
        assert!(tr.closed);
        assert!((tr.period.unwrap() - 2.0 * PI).abs() <= 1e-6, "{:?}", tr.period);
        assert!(tr.max_radius_drift(c(0.0, 0.0)) <= 1e-8);
        assert_eq!(tr.windings, vec![Winding { point: c(0.0, 0.0), winding: 1 }]);
        assert_eq!(tr.classification, None);
    }

    #[test]
    fn first_excited_orbit_families() {
        let s = Eigenstate::base(1);
        let inner = integrate_trajectory(&s, c(1.2, 0.0), 10.0, 1e-10).unwrap();
        assert_eq!(inner.classification, Some(OrbitClass::Omega2));
        assert!((inner.period.unwrap() - PI).abs() <= 1e-4);

        let left = integrate_trajectory(&s, c(-1.2, 0.0), 10.0, 1e-10).unwrap();
        assert_eq!(left.classification, Some(OrbitClass::Omega1));
        assert!((left.period.unwrap() - PI).abs() <= 1e-4);

        let outer = integrate_trajectory(&s, c(3.0, 0.0), 10.0, 1e-10).unwrap();
        assert_eq!(outer.classification, Some(OrbitClass::Omega3));
        assert!((outer.period.unwrap() - 2.0 * PI).abs() <= 1e-4);
        assert_eq!(outer.winding_about(c(0.0, 0.0)).unwrap(), 1);
    }

    #[test]
    fn orbits_are_cassini_ovals() {
        // |x² − 1| is conserved along n = 1 orbits
        let tr = integrate_trajectory(&Eigenstate::base(1), c(0.4, 0.9), 8.0, 1e-10).unwrap();
        let level = (tr.start() * tr.start() - 1.0).norm();
        for s in &tr.samples {
            assert!(((s.x * s.x - 1.0).norm() - level).abs() < 1e-8);
        }
    }

    #[test]
    fn orbit_grazing_nodes_closes_on_first_lap() {
        // second excited state: outer orbit through 1.5i passes near the nodes ±1/√2
        let tr = integrate_trajectory(&Eigenstate::base(2), c(0.0, 1.5), 20.0, 1e-10).unwrap();
        assert!((tr.period.unwrap() - 2.0 * PI).abs() <= 1e-6);
        assert!(tr.windings.iter().all(|w| w.winding == 1));
    }

    #[test]
    fn open_when_too_short() {
        let tr = integrate_trajectory(&Eigenstate::base(0), c(1.0, 0.0), 3.0, 1e-10).unwrap();
        assert!(!tr.closed);
        assert!(tr.period.is_none() && tr.windings.is_empty());
        assert_eq!(tr.turning_about(c(0.0, 0.0)), Err(Error::NotClosed));
    }

    #[test]
    fn start_errors() {
        let s = Eigenstate::base(1);
        assert!(matches!(integrate_trajectory(&s, c(1.0, 0.0), 5.0, 1e-10), Err(Error::EquilibriumStart { .. })));
        assert!(matches!(integrate_trajectory(&s, c(0.0, 0.0), 5.0, 1e-10), Err(Error::NodeSingularity { .. })));
        assert!(integrate_trajectory(&s, c(2.0, 0.0), -1.0, 1e-10).is_err());
        assert!(integrate_trajectory(&s, c(2.0, 0.0), 1.0, 0.0).is_err());
    }

    #[test]
    fn start_inside_pole_guard() {
        // outside the node threshold but inside the integration guard
        let err = integrate_trajectory(&Eigenstate::base(1), c(1e-10, 0.0), 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::NodeApproach { .. }), "{err:?}");
    }

    #[test]
    fn closure_error_tracks_tolerance() {
        let err = |tol: f64| {
            let tr = integrate_trajectory(&Eigenstate::base(0), c(1.0, 0.0), 2.0 * PI, tol).unwrap();
            (tr.samples.last().unwrap().x - c(1.0, 0.0)).norm()
        };
        let (e6, e8) = (err(1e-6), err(1e-8));
        assert!(e8 < e6 / 10.0, "{e6:e} {e8:e}");
    }

    #[test]
    fn member_orbit_classification() {
        let h5 = Eigenstate::new(FamilyParams::new(c(0.0, 1.0), c(0.0, 0.5), c(0.5, 0.0)).unwrap(), 1);
        // base x₁ = 3 maps to (3 − i/2)/i
        let x0 = h5.params.from_base(c(3.0, 0.0));
        let tr = integrate_trajectory(&h5, x0, 10.0, 1e-10).unwrap();
        assert_eq!(tr.classification, Some(OrbitClass::Omega3));
        assert!((tr.period.unwrap() - 2.0 * PI).abs() <= 1e-4);
    }

    #[test]
    fn transition_velocity_examples() {
        assert_eq!(transition_velocity(-1.0, c(2.0, 1.0)).unwrap(), c(-1.0, 2.0));
        assert!((transition_velocity(0.5, c(1.0, 0.0)).unwrap() - c(0.0, 1.0 / 3.0)).norm() < 1e-15);
        assert_eq!(transition_velocity(2.0, c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        // 2tx − t + 1 = 0 at t = 0.5, x = −0.5
        assert!(matches!(transition_velocity(0.5, c(-0.5, 0.0)), Err(Error::TransitionPole { .. })));
        assert!(matches!(transition_velocity(1.5, c(0.0, 0.0)), Err(Error::TransitionPole { .. })));
    }

    #[test]
    fn transition_energy_examples() {
        assert_eq!(transition_energy(0.0, c(3.0, 1.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(transition_energy(1.0, c(0.3, 1.0)).unwrap(), c(1.5, 0.0));
        assert!((transition_energy(0.5, c(1.0, 0.0)).unwrap() - c(7.0 / 6.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn transition_field_is_continuous_in_time() {
        let x = c(0.7, -0.4);
        let eps = 1e-12;
        assert!((transition_velocity(eps, x).unwrap() - transition_velocity(0.0, x).unwrap()).norm() < 1e-10);
        assert!((transition_velocity(1.0 - eps, x).unwrap() - transition_velocity(1.0, x).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn transition_segments() {
        let before = integrate_transition(c(1.0, 0.0), -2.0 * PI, 0.0, 1e-10).unwrap();
        assert!(before.iter().all(|s| s.energy == c(0.5, 0.0)));
        assert!(before.iter().all(|s| (s.x.norm() - 1.0).abs() < 1e-8));

        let during = integrate_transition(c(1.0, 0.0), 0.0, 1.0, 1e-10).unwrap();
        assert_eq!(during.first().unwrap().energy, c(0.5, 0.0));
        assert_eq!(during.last().unwrap().energy, c(1.5, 0.0));
        assert!(during.windows(2).all(|w| w[1].t > w[0].t));

        let x1 = during.last().unwrap().x;
        let after = integrate_transition(x1, 1.0, 1.0 + 2.0 * PI, 1e-10).unwrap();
        assert!(after.iter().all(|s| s.energy == c(1.5, 0.0)));
        let level = (x1 * x1 - 1.0).norm();
        assert!(after.iter().all(|s| ((s.x * s.x - 1.0).norm() - level).abs() < 1e-7));
    }

    #[test]
    fn transition_energy_matches_components() {
        let path = integrate_transition(c(0.5, 0.5), -0.5, 1.5, 1e-10).unwrap();
        for s in path {
            let e = transition_energy_components(s.t, s.x).unwrap();
            assert!((e.total - s.energy).norm() < 1e-10, "t={} {} vs {}", s.t, e.total, s.energy);
        }
    }

    #[test]
    fn energy_from_initial_condition_examples() {
        let s = Eigenstate::base(0);
        let e = |x0, v0| energy_from_initial_conditions(x0, v0, &s).unwrap().total;
        assert!((e(c(1.0, 0.0), c(0.0, 1.0)) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((e(c(1.0, 0.0), c(0.0, 2.0)) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((e(c(1.0, 1.0), c(0.0, 0.0)) - c(0.5, 1.0)).norm() < 1e-15);
        assert!(energy_from_initial_conditions(c(0.0, 0.0), c(1.0, 0.0), &Eigenstate::base(1)).is_err());
    }
}
