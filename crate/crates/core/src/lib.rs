//! Deterministic permutation dynamics of classical Ising bits and the exact
//! qubit Hamiltonians they generate.
//!
//! A chain of N classical spins evolves by spin exchanges — permutations of
//! the 2^N configurations, never superpositions. This crate represents that
//! evolution exactly ([`permops::GeneralizedPermutation`]), extracts the
//! equivalent Hermitian generators two independent ways ([`spectral`]),
//! rewrites everything in Pauli-string language ([`pauli`]), verifies the
//! terminating Baker-Campbell-Hausdorff identities behind the closed-form
//! three-spin Hamiltonian ([`bch`]), and quantifies how perturbed couplings
//! leak probability into superpositions ([`ontology`]).
//!
//! All operations are pure functions over immutable values and safe to call
//! concurrently.

pub mod bch;
pub mod bitspace;
pub mod dense;
pub mod eigen;
pub mod emit;
pub mod error;
pub mod ontology;
pub mod pauli;
pub mod permops;
pub mod registry;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
