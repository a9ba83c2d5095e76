//! The six-member oscillator catalog, the linear mapping `x₁ = a·x + b`
//! between a member and the base oscillator, and a verifier that checks
//! eigen-structure invariance under that mapping.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::integrate_trajectory;
use crate::eigensystem::{Eigenstate, FamilyParams};
use crate::error::{Error, Result};
use crate::ode;

/// Tolerance for the exact eigenvalue-shift identity `E − E₁ = c`.
const EIGENVALUE_SHIFT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryClass {
    Hermitian,
    PtSymmetric,
    NonPtSymmetric,
    NegativeMass,
    RotationShift,
    Stretch,
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryClass::Hermitian => "Hermitian",
            SymmetryClass::PtSymmetric => "PT-symmetric",
            SymmetryClass::NonPtSymmetric => "non-PT-symmetric",
            SymmetryClass::NegativeMass => "negative-mass",
            SymmetryClass::RotationShift => "rotation-shift",
            SymmetryClass::Stretch => "stretch",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: FamilyParams,
    pub symmetry_class: SymmetryClass,
}

impl CatalogEntry {
    /// True when `m_eq = a²` is real and negative.
    pub fn negative_mass(&self) -> bool {
        let m = self.params.equivalent_mass();
        m.im.abs() <= 1e-15 * m.norm() && m.re < 0.0
    }

    pub fn state(&self, n: usize) -> Eigenstate {
        Eigenstate::new(self.params, n)
    }
}

/// H1…H6.
pub fn catalog() -> Vec<CatalogEntry> {
    let c = Complex64::new;
    let entry = |name: &str, a, b, cc, symmetry_class| CatalogEntry {
        name: name.to_string(),
        params: FamilyParams { a, b, c: cc },
        symmetry_class,
    };
    vec![
        entry("H1", c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), SymmetryClass::Hermitian),
        entry("H2", c(1.0, 0.0), c(0.0, 0.5), c(0.125, 0.0), SymmetryClass::PtSymmetric),
        entry("H3", c(1.0, 0.0), c(-0.5, 0.5), c(0.0, 0.25), SymmetryClass::NonPtSymmetric),
        entry("H4", c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), SymmetryClass::NegativeMass),
        entry("H5", c(0.0, 1.0), c(0.0, 0.5), c(0.5, 0.0), SymmetryClass::RotationShift),
        entry("H6", c(2.0, 0.0), c(2.0, 0.0), c(0.5, 0.0), SymmetryClass::Stretch),
    ]
}

/// Catalog lookup by name, case-insensitive.
pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

pub fn map_to_base(x: Complex64, params: &FamilyParams) -> Complex64 {
    params.a * x + params.b
}

pub fn map_from_base(x1: Complex64, params: &FamilyParams) -> Complex64 {
    (x1 - params.b) / params.a
}

/// `a = magnification·e^(i·angle)`, `shift = b`; angle in (−π, π].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub angle: f64,
    pub magnification: f64,
    pub shift: Complex64,
}

impl Decomposition {
    pub fn of(params: &FamilyParams) -> Self {
        Self { angle: principal_angle(params.a.arg()), magnification: params.a.norm(), shift: params.b }
    }
}

/// How trajectories move: `x(t) = scale·e^(i·rotation)·x₁(t) + offset`.
///
/// A negative rotation is clockwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryTransform {
    pub rotation: f64,
    pub scale: f64,
    pub offset: Complex64,
}

impl TrajectoryTransform {
    pub fn of(params: &FamilyParams) -> Self {
        let inv = params.a.inv();
        Self { rotation: principal_angle(inv.arg()), scale: inv.norm(), offset: -params.b * inv }
    }

    pub fn apply(&self, x1: Complex64) -> Complex64 {
        Complex64::from_polar(self.scale, self.rotation) * x1 + self.offset
    }
}

fn principal_angle(theta: f64) -> f64 {
    if theta <= -PI {
        theta + 2.0 * PI
    } else {
        theta
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub name: String,
    pub n: usize,
    /// Relative mismatch between `ψ_member(x)` and `ψ₁(a·x + b)` over the member orbit.
    pub max_wavefunction_deviation: f64,
    pub eigenvalue_shift: Complex64,
    pub eigenvalue_shift_checked: bool,
    /// Largest `|x(t) − (x₁(t) − b)/a|` over common times.
    pub max_trajectory_deviation: f64,
    pub base_period: Option<f64>,
    pub member_period: Option<f64>,
    pub equilibria: Vec<Complex64>,
    /// Largest distance between member equilibria and the transported base ones.
    pub max_equilibrium_deviation: f64,
    pub decomposition: Decomposition,
    pub transform: TrajectoryTransform,
}

pub fn verify_invariance(
    entry: &CatalogEntry,
    n: usize,
    x1_start: Complex64,
    t_end: f64,
    tolerance: f64,
) -> Result<InvarianceReport> {
    verify_mapping(&entry.name, &entry.params, n, x1_start, t_end, tolerance)
}

/// Integrates the base orbit from `x1_start` and, separately, the member orbit
/// from its mapped start under the member's own field, then compares them.
pub fn verify_mapping(
    name: &str,
    params: &FamilyParams,
    n: usize,
    x1_start: Complex64,
    t_end: f64,
    tolerance: f64,
) -> Result<InvarianceReport> {
    let member = Eigenstate::new(*params, n);
    let base = member.base_state();

    let base_orbit = integrate_trajectory(&base, x1_start, t_end, tolerance)?;
    let member_orbit = integrate_trajectory(&member, map_from_base(x1_start, params), t_end, tolerance)?;

    let mut max_trajectory_deviation = 0.0_f64;
    let (dense, sparse, dense_is_base) = if base_orbit.samples.len() >= member_orbit.samples.len() {
        (&base_orbit.samples, &member_orbit.samples, true)
    } else {
        (&member_orbit.samples, &base_orbit.samples, false)
    };
    for s in sparse {
        let Some(x_dense) = ode::position_at(dense, s.t) else { continue };
        let (x_member, x_base) = if dense_is_base { (s.x, x_dense) } else { (x_dense, s.x) };
        max_trajectory_deviation = max_trajectory_deviation.max((x_member - map_from_base(x_base, params)).norm());
    }

    let mut max_wavefunction_deviation = 0.0_f64;
    for s in &member_orbit.samples {
        let direct = member.wavefunction(s.x);
        let via_base = base.wavefunction(map_to_base(s.x, params));
        let scale = via_base.norm().max(f64::MIN_POSITIVE);
        max_wavefunction_deviation = max_wavefunction_deviation.max((direct - via_base).norm() / scale);
    }

    let eigenvalue_shift = member.eigenvalue().value - base.eigenvalue().value;
    let eigenvalue_shift_checked = (eigenvalue_shift - params.c).norm() <= EIGENVALUE_SHIFT_TOLERANCE;

    let equilibria = member.equilibria()?;
    let transported: Vec<Complex64> = base.equilibria()?.into_iter().map(|e| map_from_base(e, params)).collect();
    let max_equilibrium_deviation = matched_distance(&equilibria, &transported)?;

    Ok(InvarianceReport {
        name: name.to_string(),
        n,
        max_wavefunction_deviation,
        eigenvalue_shift,
        eigenvalue_shift_checked,
        max_trajectory_deviation,
        base_period: base_orbit.period,
        member_period: member_orbit.period,
        equilibria,
        max_equilibrium_deviation,
        decomposition: Decomposition::of(params),
        transform: TrajectoryTransform::of(params),
    })
}

/// Greedy nearest matching of two equally sized point sets; returns the largest matched distance.
pub fn matched_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!("point sets differ in size: {} vs {}", a.len(), b.len())));
    }
    let mut remaining: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0_f64;
    for &p in a {
        let (idx, d) = remaining
            .iter()
            .enumerate()
            .map(|(i, &q)| (i, (p - q).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("sizes checked");
        worst = worst.max(d);
        remaining.swap_remove(idx);
    }
    Ok(worst)
}
