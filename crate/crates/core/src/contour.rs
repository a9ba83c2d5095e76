//! Closed-orbit contour integrals: the period `∮ dx / ẋ` and the action
//! `J = ∮ p dx`, evaluated numerically along sampled orbits and, independently,
//! by residues at the enclosed poles.
//!
//! Along an eigen-trajectory `J / 2π` counts the enclosed wavefunction nodes
//! (with winding), so `J` is quantized in units of `h = 2π`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::Trajectory;
use crate::eigensystem::Eigenstate;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Radius of the small circles used to extract residues.
pub const RESIDUE_RADIUS: f64 = 1e-3;
pub const RESIDUE_POINTS: usize = 256;
/// Agreement required between radius `r` and `r/2` residue integrals.
/// Trapezoid panels per chord at the coarse level; the fine level doubles it.
const CHORD_PANELS: usize = 4;
pub const RESIDUE_AGREEMENT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContourMethod {
    Numeric,
    Residue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContourKind {
    Action,
    Period,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnclosedPole {
    pub location: Complex64,
    pub winding: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourResult {
    pub value: Complex64,
    pub method: ContourMethod,
    pub enclosed_poles: Vec<EnclosedPole>,
    /// Estimated absolute error of `value`.
    pub error_estimate: f64,
}

/// `J = ∮ p dx` over one period of a closed orbit.
pub fn action_integral(trajectory: &Trajectory, state: &Eigenstate) -> Result<ContourResult> {
    let (value, error_estimate) = orbit_integral(trajectory, |x| state.momentum(x))?;
    Ok(ContourResult {
        value,
        method: ContourMethod::Numeric,
        enclosed_poles: enclosed(trajectory, &state.nodes()?)?,
        error_estimate,
    })
}

/// `T = ∮ dx / velocity(x)` over one period of a closed orbit.
pub fn period_integral(trajectory: &Trajectory, state: &Eigenstate) -> Result<ContourResult> {
    let (value, error_estimate) = orbit_integral(trajectory, |x| {
        let v = state.velocity(x).map_err(|_| Error::NodeApproach { t: f64::NAN, x, step: 0.0 })?;
        if v.norm() == 0.0 {
            return Err(Error::EquilibriumStart { x0: x });
        }
        Ok(v.inv())
    })?;
    Ok(ContourResult {
        value,
        method: ContourMethod::Numeric,
        enclosed_poles: enclosed(trajectory, &state.equilibria()?)?,
        error_estimate,
    })
}

/// Poles the orbit winds around, in the order given.
fn enclosed(trajectory: &Trajectory, poles: &[Complex64]) -> Result<Vec<EnclosedPole>> {
    let mut out = Vec::new();
    for &location in poles {
        let winding = trajectory.winding_about(location)?;
        if winding != 0 {
            out.push(EnclosedPole { location, winding });
        }
    }
    Ok(out)
}

/// Trapezoidal sums over the sample polygon and over the polygon with
/// interpolated midpoints, combined by one Richardson step.
fn orbit_integral<F>(trajectory: &Trajectory, f: F) -> Result<(Complex64, f64)>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let lap = trajectory.one_period().ok_or(Error::NotClosed)?;
    // The sample polygon is itself a closed contour homotopic to the orbit,
    // so only the quadrature along each chord contributes error.
    let mut vertices: Vec<Complex64> = lap.iter().map(|s| s.x).collect();
    vertices.push(lap[0].x);

    let mut coarse = Complex64::new(0.0, 0.0);
    let mut fine = Complex64::new(0.0, 0.0);
    let mut f_prev = f(vertices[0])?;
    for w in vertices.windows(2) {
        let (z0, z1) = (w[0], w[1]);
        let dz = (z1 - z0) / (2 * CHORD_PANELS) as f64;
        let f1 = f(z1)?;
        let mut even = Complex64::new(0.0, 0.0);
        let mut odd = Complex64::new(0.0, 0.0);
        for k in 1..2 * CHORD_PANELS {
            let fk = f(z0 + dz * k as f64)?;
            if k % 2 == 0 {
                even += fk;
            } else {
                odd += fk;
            }
        }
        let ends = 0.5 * (f_prev + f1);
        coarse += (ends + even) * dz * 2.0;
        fine += (ends + even + odd) * dz;
        f_prev = f1;
    }

    let extrapolated = (4.0 * fine - coarse) / 3.0;
    Ok((extrapolated, (extrapolated - fine).norm()))
}

/// Residue evaluation of an action or period integral for prescribed windings
/// about the poles of `p` (nodes) or `1/ẋ` (equilibria).
pub fn residue_oracle(state: &Eigenstate, windings: &[(Complex64, i32)], kind: ContourKind) -> Result<ContourResult> {
    let field = |x: Complex64| -> Result<Complex64> {
        match kind {
            ContourKind::Action => state.momentum(x),
            ContourKind::Period => Ok(state.velocity(x)?.inv()),
        }
    };
    let mut value = Complex64::new(0.0, 0.0);
    let mut error_estimate = 0.0;
    let mut enclosed_poles = Vec::new();
    for &(location, winding) in windings {
        if winding == 0 {
            continue;
        }
        let loop_r = circle_integral(&field, location, RESIDUE_RADIUS)?;
        let loop_half = circle_integral(&field, location, 0.5 * RESIDUE_RADIUS)?;
        let gap = (loop_r - loop_half).norm();
        if gap.is_nan() || gap > RESIDUE_AGREEMENT * loop_r.norm().max(1.0) {
            return Err(Error::UnsupportedField(format!(
                "residue at {location} not resolved (radius-halving gap {gap:e})"
            )));
        }
        // 2πi·Res equals the small-loop integral itself
        value += f64::from(winding) * loop_r;
        error_estimate += f64::from(winding.abs()) * gap;
        enclosed_poles.push(EnclosedPole { location, winding });
    }
    Ok(ContourResult { value, method: ContourMethod::Residue, enclosed_poles, error_estimate })
}

/// Residue oracle with windings read off a closed orbit: nodes for the
/// action, equilibria for the period.
pub fn residue_oracle_for(trajectory: &Trajectory, state: &Eigenstate, kind: ContourKind) -> Result<ContourResult> {
    let poles = match kind {
        ContourKind::Action => state.nodes()?,
        ContourKind::Period => state.equilibria()?,
    };
    let windings = poles
        .into_iter()
        .map(|p| Ok((p, trajectory.winding_about(p)?)))
        .collect::<Result<Vec<_>>>()?;
    residue_oracle(state, &windings, kind)
}

/// `∮ f dz` counter-clockwise on a circle, by the periodic trapezoidal rule.
fn circle_integral<F>(f: &F, center: Complex64, radius: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let step = 2.0 * PI / RESIDUE_POINTS as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..RESIDUE_POINTS {
        let e = Complex64::from_polar(radius, k as f64 * step);
        sum += f(center + e)? * I * e;
    }
    Ok(sum * step)
}
