//! Ground-state entanglement of the spin-1/2 XXZ chain across the
//! ferromagnetic transition at Δ = −1.
//!
//! The library evaluates the Bethe-ansatz energy density, the
//! nearest-neighbor correlators derived from it, two-spin and one-site
//! reduced density matrices, concurrence (with and without spontaneous
//! symmetry breaking) and one-site entropy, plus an exact-diagonalization
//! oracle for finite chains and a sweep/scanner layer that detects and
//! classifies non-analyticities in any of these signals.

pub mod bethe;
pub mod correlations;
pub mod entanglement;
pub mod error;
pub mod oracle;
pub mod par;
pub mod quad;
pub mod rdm;
pub mod scanner;

pub use error::{Error, Result};
