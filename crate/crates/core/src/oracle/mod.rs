//! Brute-force Fock-space ground truth.
//!
//! States are dense vectors over the `2^L` occupation bitstrings, with site
//! `l` stored in bit `l − 1`. Fermionic operators carry the Jordan–Wigner
//! parity sign, so the same vector read as an `L`-qubit state gives the
//! qubit images used for reduced density matrices and concurrence.
//! Nothing here uses the closed-form correlators; the only inputs are the
//! operator algebra, the site-picture Hamiltonians and linear algebra.

pub mod density;
pub mod fock;
pub mod gibbs;
pub mod pairing;

pub use density::{wootters_concurrence, DensityMatrix4};
pub use fock::{dicke_state, eta_number_state, ring_hamiltonian_matrix, FockState};
pub use gibbs::{build_gibbs, partition_function_product, rdm_from_dense, GibbsState};
pub use pairing::{pairing_gibbs_state, pairing_hamiltonian};

/// Largest lattice for dense Gibbs states and Hamiltonian matrices.
pub const DENSE_CAP: usize = 12;
/// Largest lattice for pure-state vectors.
pub const PURE_STATE_CAP: usize = 14;
