//! Eigenstates of the linear-mapping family `H = p²/(2a²) + V(a·x + b) + c`
//! over the oscillator potential `V(x) = x²/2`.
//!
//! Every field here is a log-derivative of `ψ(x) = Hₙ(u)·exp(−u²/2)` with
//! `u = a·x + b`, evaluated analytically from Hermite ratios.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots;
use crate::special_functions::{hermite, hermite_coefficients, hermite_pair};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative magnitude of `Hₙ(u)` below which `u` is treated as a node.
pub const NODE_THRESHOLD: f64 = 1e-12;

/// The base potential of the family.
pub fn base_potential(u: Complex64) -> Complex64 {
    0.5 * u * u
}

/// `(a, b, c)` of `H = p²/(2a²) + V(a·x + b) + c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl FamilyParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParameter("family parameters must be finite".into()));
        }
        if a.norm() == 0.0 {
            return Err(Error::InvalidParameter("a must be nonzero".into()));
        }
        Ok(Self { a, b, c })
    }

    /// The base oscillator `H₁ = (p² + x²)/2`.
    pub fn base() -> Self {
        Self { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0), c: Complex64::new(0.0, 0.0) }
    }

    /// `m·a²` with `m = 1`. Negative for purely imaginary `a`.
    pub fn equivalent_mass(&self) -> Complex64 {
        self.a * self.a
    }

    /// `x₁ = a·x + b`.
    pub fn to_base(&self, x: Complex64) -> Complex64 {
        self.a * x + self.b
    }

    /// `x = (x₁ − b)/a`.
    pub fn from_base(&self, x1: Complex64) -> Complex64 {
        (x1 - self.b) / self.a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: Complex64,
}

/// Components of the intrinsic complex Hamiltonian at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    /// `p²/(2·m_eq)`
    pub kinetic: Complex64,
    /// `V(a·x + b) + c`
    pub applied: Complex64,
    /// quantum potential `Q`
    pub quantum: Complex64,
    pub total: Complex64,
}

impl EnergyBreakdown {
    pub fn new(kinetic: Complex64, applied: Complex64, quantum: Complex64) -> Self {
        Self { kinetic, applied, quantum, total: kinetic + applied + quantum }
    }
}

/// A family member at quantum number `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenstate {
    pub params: FamilyParams,
    pub n: usize,
    /// Overall constant `Cₙ` of the wavefunction. Only `wavefunction` sees it.
    #[serde(default = "unit")]
    pub normalization: Complex64,
}

fn unit() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl Eigenstate {
    pub fn new(params: FamilyParams, n: usize) -> Self {
        Self { params, n, normalization: unit() }
    }

    pub fn base(n: usize) -> Self {
        Self::new(FamilyParams::base(), n)
    }

    pub fn with_normalization(mut self, normalization: Complex64) -> Self {
        self.normalization = normalization;
        self
    }

    /// The same quantum number on the base oscillator.
    pub fn base_state(&self) -> Self {
        Self::base(self.n)
    }

    pub fn wavefunction(&self, x: Complex64) -> Complex64 {
        let u = self.params.to_base(x);
        self.normalization * hermite(self.n, u) * (-0.5 * u * u).exp()
    }

    /// `ψ″(x)`, from the explicit second derivative of `Hₙ(u)·exp(−u²/2)`.
    pub fn wavefunction_second_derivative(&self, x: Complex64) -> Complex64 {
        let a = self.params.a;
        let u = self.params.to_base(x);
        let n = self.n;
        let (h_prev, h) = hermite_pair(n, u);
        let dh = h_prev * (2.0 * n as f64);
        let ddh = if n >= 2 { hermite(n - 2, u) * (4.0 * (n * (n - 1)) as f64) } else { Complex64::new(0.0, 0.0) };
        let d2 = ddh - 2.0 * u * dh + (u * u - 1.0) * h;
        self.normalization * a * a * d2 * (-0.5 * u * u).exp()
    }

    /// First and second derivatives of `ln ψ` with respect to `x`.
    pub fn log_derivatives(&self, x: Complex64) -> Result<(Complex64, Complex64)> {
        let a = self.params.a;
        let u = self.params.to_base(x);
        let (h_prev, h) = hermite_pair(self.n, u);
        if h.norm() <= NODE_THRESHOLD * u.norm().powi(self.n as i32).max(1.0) {
            return Err(Error::NodeSingularity { x });
        }
        let ratio = h_prev * (2.0 * self.n as f64) / h;
        let first = a * (ratio - u);
        // Hₙ″/Hₙ = 2u·r − 2n by the Hermite equation
        let second = a * a * (2.0 * u * ratio - 2.0 * self.n as f64 - ratio * ratio - 1.0);
        Ok((first, second))
    }

    /// Canonical momentum `p = (1/i)·d ln ψ/dx`.
    pub fn momentum(&self, x: Complex64) -> Result<Complex64> {
        let (first, _) = self.log_derivatives(x)?;
        Ok(-I * first)
    }

    /// `dx/dt = p / m_eq`.
    pub fn velocity(&self, x: Complex64) -> Result<Complex64> {
        Ok(self.momentum(x)? / self.params.equivalent_mass())
    }

    /// `Q = −(1/(2·m_eq))·d² ln ψ/dx²`.
    pub fn quantum_potential(&self, x: Complex64) -> Result<Complex64> {
        let (_, second) = self.log_derivatives(x)?;
        Ok(-second / (2.0 * self.params.equivalent_mass()))
    }

    pub fn intrinsic_energy(&self, x: Complex64) -> Result<EnergyBreakdown> {
        let (first, second) = self.log_derivatives(x)?;
        let mass = self.params.equivalent_mass();
        let p = -I * first;
        Ok(EnergyBreakdown::new(
            p * p / (2.0 * mass),
            self.applied_potential(x),
            -second / (2.0 * mass),
        ))
    }

    /// `V(a·x + b) + c`.
    pub fn applied_potential(&self, x: Complex64) -> Complex64 {
        base_potential(self.params.to_base(x)) + self.params.c
    }

    /// `E = n + 1/2 + c`.
    pub fn eigenvalue(&self) -> Eigenvalue {
        Eigenvalue { value: Complex64::new(self.n as f64 + 0.5, 0.0) + self.params.c }
    }

    /// `ψ″/(2a²) + (E − V(a·x + b) − c)·ψ`, which vanishes for an eigenstate.
    pub fn schrodinger_residual(&self, x: Complex64) -> Complex64 {
        let kinetic = self.wavefunction_second_derivative(x) / (2.0 * self.params.equivalent_mass());
        kinetic + (self.eigenvalue().value - self.applied_potential(x)) * self.wavefunction(x)
    }

    /// Zeros of the velocity field: roots of `2n·Hₙ₋₁(u) − u·Hₙ(u)` mapped back to `x`.
    pub fn equilibria(&self) -> Result<Vec<Complex64>> {
        let n = self.n;
        let mut coeffs = vec![0.0; n + 2];
        if n > 0 {
            for (k, c) in hermite_coefficients(n - 1).into_iter().enumerate() {
                coeffs[k] += 2.0 * n as f64 * c;
            }
        }
        for (k, c) in hermite_coefficients(n).into_iter().enumerate() {
            coeffs[k + 1] -= c;
        }
        self.roots_in_x(&coeffs)
    }

    /// Zeros of the wavefunction (poles of the velocity field).
    pub fn nodes(&self) -> Result<Vec<Complex64>> {
        self.roots_in_x(&hermite_coefficients(self.n))
    }

    fn roots_in_x(&self, coeffs: &[f64]) -> Result<Vec<Complex64>> {
        let coeffs: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
        let u_roots = roots::aberth(&coeffs, roots::DEFAULT_TOLERANCE, roots::DEFAULT_MAX_ITERATIONS)?;
        let mut xs: Vec<Complex64> = u_roots.into_iter().map(|u| self.params.from_base(u)).collect();
        xs.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
        Ok(xs)
    }
}
