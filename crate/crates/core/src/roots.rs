//! Simultaneous polynomial root finding (Aberth–Ehrlich iteration).

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ITERATIONS: usize = 100;

/// Evaluates `p(z)` and `p′(z)` by Horner's scheme. Coefficients are ascending.
pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of the polynomial with ascending coefficients `coeffs`, with
/// multiplicity. Trailing zero coefficients are dropped first.
///
/// Iterates until every correction is below `tolerance` relative to the root
/// magnitude (absolute below 1).
pub fn aberth(coeffs: &[Complex64], tolerance: f64, max_iterations: usize) -> Result<Vec<Complex64>> {
    let mut len = coeffs.len();
    while len > 0 && coeffs[len - 1] == Complex64::new(0.0, 0.0) {
        len -= 1;
    }
    if len == 0 {
        return Err(Error::InvalidParameter("zero polynomial has no finite root set".into()));
    }
    let coeffs = &coeffs[..len];
    let degree = len - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }

    // Leading zero coefficients are exact roots at the origin; peel them off
    // so the iteration never divides by a vanishing derivative there.
    let zeros_at_origin = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros_at_origin..];
    let mut roots = initial_guesses(reduced);
    let m = roots.len();

    let mut converged = m == 0;
    for _ in 0..max_iterations {
        if converged {
            break;
        }
        let mut max_step = 0.0_f64;
        for i in 0..m {
            let z = roots[i];
            let (p, dp) = eval_with_derivative(reduced, z);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..m)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z - roots[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            let step = if step.is_finite() { step } else { ratio };
            roots[i] = z - step;
            max_step = max_step.max(step.norm() / z.norm().max(1.0));
        }
        converged = max_step <= tolerance;
    }
    if !converged {
        return Err(Error::RootFindingFailure { iterations: max_iterations });
    }
    roots.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zeros_at_origin));
    Ok(roots)
}

// Points spread on a circle whose radius is the Cauchy-style mean bound
// |c₀/cₙ|^(1/n), rotated off the real axis so symmetric roots separate.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    let lead = coeffs[degree];
    let radius = (coeffs[0] / lead).norm().powf(1.0 / degree as f64).max(1e-3);
    let center = -coeffs[degree - 1] / (lead * degree as f64);
    (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            center + Complex64::from_polar(radius, theta)
        })
        .collect()
}
