//! Two-qubit density-matrix toolkit: Pauli/Bloch decomposition, correlation
//! geometry, PPT separability, local disentangling channels, the dephasing
//! ideal disentangler and cloning-based disentanglement bounds.
//!
//! Two-qubit matrices use the basis order |00⟩, |01⟩, |10⟩, |11⟩.

pub mod channels;
pub mod cloning;
pub mod error;
pub mod factory;
pub mod geometry;
pub mod ideal;
mod linalg;
pub mod matrix;
pub mod separability;
pub mod state;
pub mod sweep;

pub use error::{Error, Result};
pub use linalg::singular_values3;
pub use matrix::{eig_hermitian, sqrt_psd, ComplexMatrix};
pub use state::{
    fidelity, partial_trace, partial_transpose, tensor_product, validate_state, QubitState, State, Subsystem,
    TwoQubitState,
};
