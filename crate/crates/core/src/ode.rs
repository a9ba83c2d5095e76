//! Adaptive Dormand–Prince 5(4) integration of a scalar complex ODE
//! `dx/dt = f(t, x)`, with PI step-size control.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A point on a solution together with the field value there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub x: Complex64,
    /// `dx/dt` at `(t, x)`.
    pub v: Complex64,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub rtol: f64,
    pub atol: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-10, min_step: 1e-14, max_step: f64::INFINITY, max_steps: 5_000_000 }
    }
}

impl Options {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self { rtol: tolerance, atol: tolerance, ..Self::default() }
    }
}

/// Why an integration stopped early.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// The first field evaluation failed.
    Start(Error),
    /// Steps kept being rejected until the step size fell below the floor.
    /// Carries the last field error seen, if a field evaluation caused it.
    StepCollapse { t: f64, x: Complex64, step: f64, cause: Option<Error> },
    TooManySteps { t: f64 },
}

// Dormand–Prince tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const EXPO: f64 = 0.2 - BETA * 0.75;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

/// Integrates from `t0` to `t_end` (`t_end > t0`) and returns every accepted
/// step, starting with the initial point and ending exactly at `t_end`.
pub fn integrate<F>(mut field: F, t0: f64, x0: Complex64, t_end: f64, opts: &Options) -> Result<Vec<Sample>, Failure>
where
    F: FnMut(f64, Complex64) -> Result<Complex64, Error>,
{
    let v0 = field(t0, x0).map_err(Failure::Start)?;
    let mut samples = vec![Sample { t: t0, x: x0, v: v0 }];
    if t_end <= t0 {
        return Ok(samples);
    }

    let span = t_end - t0;
    let mut h = initial_step(&mut field, t0, x0, v0, span, opts).min(opts.max_step);
    let mut t = t0;
    let mut x = x0;
    let mut k1 = v0;
    let mut err_old = 1e-4_f64;
    let mut last_reject = false;
    let mut last_cause: Option<Error> = None;

    for _ in 0..opts.max_steps {
        if h < opts.min_step {
            return Err(Failure::StepCollapse { t, x, step: h, cause: last_cause });
        }
        let last = t + h >= t_end - 1e-12 * span.max(1.0);
        if last {
            h = t_end - t;
        }

        let stages = (|| -> Result<_, Error> {
            let k2 = field(t + C2 * h, x + h * A21 * k1)?;
            let k3 = field(t + C3 * h, x + h * (A31 * k1 + A32 * k2))?;
            let k4 = field(t + C4 * h, x + h * (A41 * k1 + A42 * k2 + A43 * k3))?;
            let k5 = field(t + C5 * h, x + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))?;
            let k6 = field(t + h, x + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))?;
            let x_new = x + h * (A71 * k1 + A73 * k3 + A74 * k4 + A75 * k5 + A76 * k6);
            let k7 = field(t + h, x_new)?;
            let err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
            Ok((x_new, k7, err))
        })();

        let (x_new, k7, err_vec) = match stages {
            Ok(s) => s,
            Err(e) => {
                // a stage landed inside a pole guard; retreat
                last_cause = Some(e);
                h *= 0.25;
                last_reject = true;
                continue;
            }
        };

        let scale = opts.atol + opts.rtol * x.norm().max(x_new.norm());
        let err = err_vec.norm() / scale;
        if !err.is_finite() {
            h *= 0.25;
            last_reject = true;
            continue;
        }

        if err <= 1.0 {
            let tn = if last { t_end } else { t + h };
            t = tn;
            x = x_new;
            k1 = k7;
            samples.push(Sample { t, x, v: k1 });
            if last {
                return Ok(samples);
            }
            last_cause = None;
            let err_c = err.max(1e-10);
            let mut fac = SAFETY * err_c.powf(-EXPO) * err_old.powf(BETA);
            fac = fac.clamp(FAC_MIN, FAC_MAX);
            if last_reject {
                fac = fac.min(1.0);
            }
            err_old = err_c;
            h = (h * fac).min(opts.max_step);
            last_reject = false;
        } else {
            let fac = (SAFETY * err.powf(-EXPO)).clamp(FAC_MIN, 1.0);
            h *= fac;
            last_reject = true;
        }
    }
    Err(Failure::TooManySteps { t })
}

fn initial_step<F>(field: &mut F, t0: f64, x0: Complex64, v0: Complex64, span: f64, opts: &Options) -> f64
where
    F: FnMut(f64, Complex64) -> Result<Complex64, Error>,
{
    let sc = opts.atol + opts.rtol * x0.norm();
    let d0 = x0.norm() / sc;
    let d1 = v0.norm() / sc;
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(span);
    let d2 = match field(t0 + h0, x0 + h0 * v0) {
        Ok(v1) => (v1 - v0).norm() / sc / h0,
        Err(_) => return (h0 * 1e-3).max(opts.min_step),
    };
    let dmax = d1.max(d2);
    let h1 = if dmax <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / dmax).powf(0.2) };
    (100.0 * h0).min(h1).min(span)
}

/// Cubic Hermite interpolation between two samples; returns position and velocity at `t`.
pub fn interpolate(s0: &Sample, s1: &Sample, t: f64) -> (Complex64, Complex64) {
    let h = s1.t - s0.t;
    let s = (t - s0.t) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    let x = h00 * s0.x + h10 * h * s0.v + h01 * s1.x + h11 * h * s1.v;
    let d00 = (6.0 * s2 - 6.0 * s) / h;
    let d10 = 3.0 * s2 - 4.0 * s + 1.0;
    let d01 = (-6.0 * s2 + 6.0 * s) / h;
    let d11 = 3.0 * s2 - 2.0 * s;
    let v = d00 * s0.x + d10 * s0.v + d01 * s1.x + d11 * s1.v;
    (x, v)
}

/// Position at time `t` from a sorted sample sequence, or `None` outside its span.
pub fn position_at(samples: &[Sample], t: f64) -> Option<Complex64> {
    let first = samples.first()?;
    let last = samples.last()?;
    if t < first.t || t > last.t {
        return None;
    }
    let idx = samples.partition_point(|s| s.t <= t);
    if idx == 0 {
        return Some(first.x);
    }
    if idx >= samples.len() {
        return Some(last.x);
    }
    Some(interpolate(&samples[idx - 1], &samples[idx], t).0)
}
