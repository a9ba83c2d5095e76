//! Complex-valued quantum Hamilton mechanics for the harmonic-oscillator family.
//!
//! Positions, momenta and energies live in the complex plane. An eigenstate of
//! any member of the linear-mapping family
//!
//! ```text
//! H = p² / (2a²) + V(a·x + b) + c,    V(x) = x² / 2
//! ```
//!
//! induces a velocity field `dx/dt = (1/i)·(1/a²)·d ln ψ / dx` whose orbits are
//! closed curves around the equilibria. The crate integrates those orbits,
//! evaluates the intrinsic complex energy along them, computes period and
//! action contour integrals, and checks that every family member is an affine
//! image of the base oscillator.
//!
//! Natural units throughout: ħ = m = 1, so h = 2π.

pub mod contour;
pub mod dynamics;
pub mod eigensystem;
pub mod error;
pub mod invariance;
pub mod ode;
pub mod roots;
pub mod special_functions;

pub use num_complex::Complex64;

pub use contour::{
    action_integral, period_integral, residue_oracle, ContourKind, ContourMethod, ContourResult,
    EnclosedPole,
};
pub use dynamics::{
    energy_from_initial_conditions, integrate_trajectory, integrate_transition,
    transition_energy, transition_velocity, OrbitClass, Trajectory, TrajectorySample,
    TransitionSample, Winding,
};
pub use eigensystem::{Eigenstate, Eigenvalue, EnergyBreakdown, FamilyParams};
pub use error::{Error, Result};
pub use invariance::{
    catalog, map_from_base, map_to_base, verify_invariance, CatalogEntry, Decomposition,
    InvarianceReport, SymmetryClass, TrajectoryTransform,
};
pub use special_functions::{hermite, hermite_derivative};
