//! Exact entanglement toolkit for the AKLT valence-bond-solid spin chain.
//!
//! The crate builds the chain of N bulk spin-1 sites with a spin-1/2 at
//! each end, constructs its unique ground state by two independent routes,
//! and evaluates every reduction and entanglement measure of that state in
//! closed form:
//!
//! - [`linalg`]: dense complex matrices, Kronecker products, partial trace
//!   and transpose, Hermitian spectra, entropy and purity;
//! - [`state`]: Pauli and spin-1 primitives, the Hamiltonian, and the two
//!   ground-state constructions;
//! - [`reduced`]: closed-form reduced density matrices plus the
//!   brute-force partial-trace oracle they are checked against;
//! - [`measures`]: entropies, the generalized concurrence, PPT verdicts,
//!   and spin-spin correlators.
//!
//! Every closed form is validated against the oracle in the test suites,
//! and the `acceptance` integration test pins the regression values.

pub mod error;
pub mod linalg;
pub mod measures;
pub mod reduced;
pub mod state;

pub use error::{Error, Result};
pub use linalg::{
    hermitian_spectrum, kron, partial_trace, partial_transpose, purity, von_neumann_entropy,
    ComplexMatrix, DensityMatrix, Spectrum, SubsystemSpec, C64, EIGENVALUE_CLAMP,
    HERMITICITY_TOL,
};
pub use measures::{
    concurrence, entropy_block, entropy_block_closed_form, entropy_boundary_bulk,
    entropy_boundary_bulk_closed_form, entropy_two_bulk, entropy_two_bulk_closed_form, ppt_test,
    spin_correlator, SeparabilityVerdict, Verdict,
};
pub use reduced::{
    boundary_bulk_spectrum, brute_force_reduce, decay_factor, end_pair_spectrum, rho_block_closed,
    rho_boundary_bulk, rho_end_pair, rho_one_site, rho_single_boundary, rho_two_bulk,
    two_bulk_spectrum, DecayFactor, MAX_CLOSED_BLOCK, MAX_ORACLE_KEPT_DIM,
};
pub use state::{
    alpha_state, boundary_projector_end, boundary_projector_start, bulk_bond_operator,
    ground_state_pauli, ground_state_projection, hamiltonian, max_abs_diff_up_to_phase, pauli,
    phase_alignment, phi_plus, singlet, spin1_operator, symmetric_projector, sz_change_of_basis,
    PauliString, SiteLayout, StateVector, MAX_BULK_SITES, MAX_HAMILTONIAN_SITES,
};
