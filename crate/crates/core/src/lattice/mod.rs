//! Finite matrix representations of the physical-time evolution generator,
//! phase-space observable operators, the constraint projector, and the two
//! worked discretizations: the twisted angular grid and the hypercubic
//! free-particle lattice.

pub mod angular;
pub mod pi_grid;
pub mod projector;
pub mod relativistic;

pub use angular::{
    centered_eigenvalues, centered_first_row, centered_generator, continuum_eigenvalue,
    forward_eigenvalues, forward_first_row, forward_generator, AngularGrid,
};
pub use pi_grid::{
    apply_observable, effective_hamiltonian, observable_operator, plane_wave_symbol,
    EffectiveHamiltonian, PiAxis, PiGrid, DENSE_DIM_CAP,
};
pub use projector::{constraint_projector, default_window, ConstraintProjector};
pub use relativistic::{
    for_each_mode, free_particle_spectrum, mode_energy, onshell_select, EnergyModel,
    HypercubicLattice, LatticeMode, ENUMERATION_CAP,
};
