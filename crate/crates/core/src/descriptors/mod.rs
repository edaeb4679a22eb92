//! Heisenberg-picture descriptors for passive circuits.
//!
//! A [`DescriptorFrame`] stores, per species, the unitary coefficient matrix
//! `M(t)` with `ladder_i(t) = sum_j M(t)[i][j] * ladder_j(0)`. Advancing by a
//! gate with coefficient matrix `G` gives `M(t+1) = G * M(t)`: the new gate
//! acts on the operators as they stood at time zero, after all earlier gates.
//!
//! The numeric counterpart lives in [`synthesize_gate_unitary`] and
//! [`heisenberg_conjugate`], which realize the same evolution as `U† O U` on
//! the full Fock space.

mod circuit;
mod frame;
mod gate;
mod quadratic;
mod synth;

pub use circuit::{run_frame, Circuit};
pub use frame::{
    advance, frame_distance_mod_phase, normalize_global_phase, realize_field_observable,
    realize_ladder, DescriptorFrame, Sector,
};
pub use gate::{gate_coefficient_matrix, GateSpec, LocalBlock, SectorMatrices};
pub use quadratic::{
    annihilator_expansion, creator_expansion, Ladder, QuadraticForm, QuadraticTerm,
};
pub use synth::{
    circuit_unitary, conjugation_residual, heisenberg_conjugate, synthesize_gate_unitary,
};
