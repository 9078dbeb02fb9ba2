//! Numerical laboratory for the Hamilton operator that emerges when a
//! "timeless" classical system is read against a discrete physical clock.
//!
//! The crate builds finite matrix regularizations of that operator, validates
//! their spectra against the closed forms they must reproduce, realizes the
//! spin-representation regularization with its exact operator identities, and
//! simulates the clock-averaged discrete-time evolution.
//!
//! Modules:
//! - [`classical`]: phase space, symplectic structure, constraint, and
//!   trajectory propagation (integrator and exponential flow).
//! - [`clock`]: stationary physical-time/proper-time distributions and their
//!   quadrature rules.
//! - [`lattice`]: angular-grid and hypercubic discretizations, the generic
//!   grid builder for the evolution generator, observables, and the
//!   constraint projector.
//! - [`su2`]: spin-representation regularization and the coupled-oscillator
//!   Hamiltonian.
//! - [`evolution`]: evolution matrices, the discrete time step, stationary
//!   states, expectation values.
//! - [`spectral`]: eigensolvers, the twisted-circulant fast path, and
//!   convergence studies.

pub mod classical;
pub mod clock;
pub mod error;
pub mod evolution;
pub mod lattice;
pub mod spectral;
pub mod su2;
pub mod types;

pub use classical::{
    constraint_residual, eom_rhs, free_particle, harmonic_oscillator, integrate_trajectory,
    liouville_propagate, relativistic_particle, ClassicalSystem, PhasePoint, SymplecticForm,
};
pub use clock::{density, quadrature, ClockDistribution, QuadratureRule};
pub use error::{Error, Result};
pub use evolution::{
    compose_residual, constrained_expectation, discrete_step, evolution_matrix, evolve,
    expectation, stationary_residual, EvolutionResult,
};
pub use spectral::{
    circulant_eig, convergence_study, eig, ConvergenceReport, FitOutcome, SpectrumReport,
};
pub use types::{BasisTag, OperatorMatrix, PhasePolynomial, PolyTerm, StateVector};
