//! Pairwise entanglement between local fermionic modes.
//!
//! A lattice of `L` fermionic modes is identified with `L` qubits through the
//! occupation-number basis (Jordan–Wigner). Under that identification the
//! two-site reduced density matrix of any particle-number-conserving state has
//! only one coherence, and its concurrence reduces to `2·max{0, |z| − √(uv)}`.
//!
//! Model families with closed forms:
//!
//! - [`free_fermion`]: spinless fermions hopping on a ring, for momentum
//!   eigenstates, the infinite-lattice ground state and grand-canonical Gibbs
//!   states.
//! - [`bcs`]: a two-mode BCS-like pairing Hamiltonian with a self-consistent
//!   order parameter.
//! - [`eta`]: η-pairing number states, which carry off-diagonal long-range
//!   order but vanishing pairwise entanglement in the thermodynamic limit.
//!
//! Every closed form is checked against [`oracle`], a dense `2^L` Fock-space
//! implementation with explicit fermionic sign bookkeeping, partial traces and
//! the general two-qubit (Wootters) concurrence.

pub mod bcs;
pub mod error;
pub mod eta;
pub mod figures;
pub mod free_fermion;
pub mod oracle;
pub mod rdm;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
pub use rdm::{concurrence_from_rdm, entanglement_window, Concurrence, TwoSiteRdm};
