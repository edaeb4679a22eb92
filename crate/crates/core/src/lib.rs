//! Few-mode second quantization with executable Heisenberg-picture descriptors.
//!
//! The crate realizes bosonic and fermionic ladder operators as dense matrices
//! on a truncated Fock space ([`fock`]), tracks the per-mode descriptors of a
//! passive circuit as Bogoliubov coefficient matrices ([`descriptors`]),
//! enforces the fermionic parity superselection rule ([`superselection`]), and
//! assembles the Mach-Zehnder, signalling and locality experiments on top
//! ([`scenarios`]).
//!
//! Every symbolic result is paired with a brute-force numeric route (unitary
//! conjugation `U† O U` on the full Fock space) so the two can be checked
//! against each other.

pub mod config;
pub mod descriptors;
pub mod error;
pub mod fock;
pub mod scenarios;
pub mod superselection;

pub use config::{Config, Tolerances};
pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix used for operators and coefficient matrices.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;
