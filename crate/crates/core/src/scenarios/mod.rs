//! End-to-end experiments: Mach-Zehnder fringes for photons and for the Dirac
//! field, phase concealment at the intermediate stage, gate-by-gate locality
//! audits, and Schrödinger/Heisenberg picture equivalence.

mod audit;
mod concealment;
mod equivalence;
mod fringe;
pub mod random;

pub use audit::{locality_audit, AuditReport, GateAudit};
pub use concealment::{
    phase_concealment_check, BosonConcealment, ConcealmentReport, FermionConcealment,
};
pub use equivalence::{
    equivalence_trials, picture_equivalence, EquivalenceEntry, EquivalenceReport,
    EquivalenceSummary,
};
pub use fringe::{
    boson_mz_circuit, bosonic_mz, dirac_space, fermion_mz_circuit, fermion_mz_state, fermionic_mz,
    fermionic_mz_from_source, phi_grid, photon_pair_space, sweep, BosonFringe, BosonicRun,
    FermionFringe, FermionicRun, FringeRecord, ScenarioKind,
};
