//! Browser bindings: flat `f64` arrays for a canvas page.

use qhm_core::invariance::catalog_entry;
use qhm_core::{action_integral, integrate_trajectory, integrate_transition, Complex64, Eigenstate, OrbitClass};
use wasm_bindgen::prelude::*;

const TOLERANCE: f64 = 1e-10;
/// Cap on the horizon a page can request.
const MAX_TIME: f64 = 100.0;

fn state(member: &str, n: usize) -> Result<Eigenstate, String> {
    if n > 8 {
        return Err(format!("n = {n} is above the demo limit of 8"));
    }
    let entry = catalog_entry(member).ok_or_else(|| format!("unknown member {member}"))?;
    Ok(entry.state(n))
}

fn horizon(t: f64) -> Result<f64, String> {
    if t.is_finite() && t > 0.0 && t <= MAX_TIME {
        Ok(t)
    } else {
        Err(format!("time must lie in (0, {MAX_TIME}]"))
    }
}

/// `[t, re x, im x]` per sample.
pub fn trajectory(member: &str, n: usize, re: f64, im: f64, t_end: f64) -> Result<Vec<f64>, String> {
    let state = state(member, n)?;
    let orbit = integrate_trajectory(&state, Complex64::new(re, im), horizon(t_end)?, TOLERANCE).map_err(|e| e.to_string())?;
    Ok(orbit.samples.iter().flat_map(|s| [s.t, s.x.re, s.x.im]).collect())
}

/// `[closed, period, re J, im J, class, k, (re, im) × k equilibria, m, (re, im) × m nodes]`.
///
/// `period` and `J` are NaN for open orbits; `class` is 1, 2, 3 or 0 when
/// unclassified.
pub fn orbit_summary(member: &str, n: usize, re: f64, im: f64, t_end: f64) -> Result<Vec<f64>, String> {
    let state = state(member, n)?;
    let orbit = integrate_trajectory(&state, Complex64::new(re, im), horizon(t_end)?, TOLERANCE).map_err(|e| e.to_string())?;
    let action = if orbit.closed {
        action_integral(&orbit, &state).map_err(|e| e.to_string())?.value
    } else {
        Complex64::new(f64::NAN, f64::NAN)
    };
    let class = match orbit.classification {
        Some(OrbitClass::Omega1) => 1.0,
        Some(OrbitClass::Omega2) => 2.0,
        Some(OrbitClass::Omega3) => 3.0,
        None => 0.0,
    };
    let mut out = vec![
        f64::from(u8::from(orbit.closed)),
        orbit.period.unwrap_or(f64::NAN),
        action.re,
        action.im,
        class,
    ];
    for points in [state.equilibria(), state.nodes()] {
        let points = points.map_err(|e| e.to_string())?;
        out.push(points.len() as f64);
        out.extend(points.iter().flat_map(|z| [z.re, z.im]));
    }
    Ok(out)
}

/// `[t, re x, im x, re E, im E]` per sample of the n=0 → n=1 transition.
pub fn transition(re: f64, im: f64, t_start: f64, t_end: f64) -> Result<Vec<f64>, String> {
    if !(t_start.is_finite() && t_end.is_finite() && t_start < t_end && t_end - t_start <= MAX_TIME) {
        return Err("need t_start < t_end within the demo range".into());
    }
    let samples = integrate_transition(Complex64::new(re, im), t_start, t_end, TOLERANCE).map_err(|e| e.to_string())?;
    Ok(samples.iter().flat_map(|s| [s.t, s.x.re, s.x.im, s.energy.re, s.energy.im]).collect())
}

#[wasm_bindgen(js_name = trajectory)]
pub fn trajectory_js(member: &str, n: usize, re: f64, im: f64, t_end: f64) -> Result<Vec<f64>, JsError> {
    trajectory(member, n, re, im, t_end).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = orbitSummary)]
pub fn orbit_summary_js(member: &str, n: usize, re: f64, im: f64, t_end: f64) -> Result<Vec<f64>, JsError> {
    orbit_summary(member, n, re, im, t_end).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = transition)]
pub fn transition_js(re: f64, im: f64, t_start: f64, t_end: f64) -> Result<Vec<f64>, JsError> {
    transition(re, im, t_start, t_end).map_err(|e| JsError::new(&e))
}
