//! Exact simulation and bound checking for noisy layered quantum devices.
//!
//! A device is a chain, grid or all-to-all register of `n` qubits starting in
//! `|0…0⟩`. Each layer applies disjoint two-qubit unitaries and is followed by
//! independent single-qubit depolarizing noise of strength `p`; the register
//! is measured in the computational basis at the end.
//!
//! The crate evolves such devices exactly as dense `2^n × 2^n` density
//! matrices and checks the information-theoretic consequences:
//!
//! - [`dmsim`]: circuits, noise, evolution, measurement statistics.
//! - [`infotheory`]: von Neumann and Shannon entropies, relative entropy,
//!   mutual information, Pinsker-style distances.
//! - [`shearer`]: audits of the subset-entropy inequality
//!   `Σ_F S(ρ_F) ≥ t·S(ρ)`.
//! - [`entanglement`]: certified upper bounds on the relative entropy of
//!   entanglement.
//! - [`lightcone`]: backward light-cone support of a bipartition cut.
//! - [`bounds`]: closed-form decay, entanglement and depth-threshold bounds.
//! - [`hybrid`]: exact transcript laws of adaptive classical controllers that
//!   query noisy devices, and the random-coin replacement.
//!
//! The `book/` directory at the repository root walks through each concept;
//! its Rust snippets are compiled and run as doctests of this crate.

pub mod bounds;
pub mod dmsim;
pub mod entanglement;
pub mod error;
pub mod hybrid;
pub mod infotheory;
pub mod lightcone;
pub mod linalg;
pub mod random;
pub mod shearer;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/device-model.md")]
    mod device_model {}
    #[doc = include_str!("../../../book/src/information-decay.md")]
    mod information_decay {}
    #[doc = include_str!("../../../book/src/subset-entropy.md")]
    mod subset_entropy {}
    #[doc = include_str!("../../../book/src/hybrid-algorithms.md")]
    mod hybrid_algorithms {}
    #[doc = include_str!("../../../book/src/light-cones.md")]
    mod light_cones {}
    #[doc = include_str!("../../../book/src/entanglement.md")]
    mod entanglement {}
    #[doc = include_str!("../../../book/src/closed-form-bounds.md")]
    mod closed_form_bounds {}
}
