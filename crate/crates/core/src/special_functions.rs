//! Physicists' Hermite polynomials at complex arguments.
//!
//! Evaluation uses the forward three-term recurrence
//! `H₀ = 1`, `H₁ = 2z`, `Hₖ₊₁ = 2z·Hₖ − 2k·Hₖ₋₁`, which is stable over the
//! orders (n ≤ 32) and radii (|z| ≤ 5) this crate works with.

use num_complex::Complex64;

/// Highest order covered by the numerical contract.
pub const MAX_ORDER: usize = 32;

/// `Hₙ(z)`.
pub fn hermite(n: usize, z: Complex64) -> Complex64 {
    hermite_pair(n, z).1
}

/// `Hₙ′(z) = 2n·Hₙ₋₁(z)`.
pub fn hermite_derivative(n: usize, z: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    hermite(n - 1, z) * (2.0 * n as f64)
}

/// Returns `(Hₙ₋₁(z), Hₙ(z))`, with `H₋₁ := 0`.
///
/// Most callers need both values (the derivative is `2n·Hₙ₋₁`), so the
/// recurrence is run once.
pub fn hermite_pair(n: usize, z: Complex64) -> (Complex64, Complex64) {
    let mut prev = Complex64::new(0.0, 0.0);
    let mut curr = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let next = 2.0 * z * curr - 2.0 * k as f64 * prev;
        prev = curr;
        curr = next;
    }
    (prev, curr)
}

/// Coefficients of `Hₙ` in ascending powers, `[c₀, c₁, …, cₙ]`.
pub fn hermite_coefficients(n: usize) -> Vec<f64> {
    let mut prev: Vec<f64> = Vec::new();
    let mut curr = vec![1.0];
    for k in 0..n {
        let mut next = vec![0.0; curr.len() + 1];
        for (i, c) in curr.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= 2.0 * k as f64 * c;
        }
        prev = curr;
        curr = next;
    }
    curr
}
