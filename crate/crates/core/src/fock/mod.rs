//! Truncated Fock spaces and dense realizations of ladder operators.
//!
//! Basis convention: the occupation tuple `(n_1, ..., n_k)` maps to the index
//! `sum_i n_i * stride_i` with the first mode slowest-varying. Fermionic modes
//! carry a Jordan-Wigner sign string over every earlier fermionic mode in this
//! same order, across species.

pub(crate) mod expm;
mod mode;
mod operator;
mod space;
mod state;

#[cfg(test)]
pub(crate) use expm::expm;
pub use expm::matrix_exponential;
pub use mode::{ModeId, ModeSpec, Site, Species, Statistics};
pub use operator::{
    annihilation_op, anticommutator, commutator, create_op, expectation, identity_op, number_op,
    MatrixOperator,
};
pub use space::{build_space, build_space_with_bound, FockSpace};
pub use state::{basis_state, superpose, StateVector};

/// Largest absolute entry of a complex matrix.
pub fn max_abs(m: &crate::CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}
