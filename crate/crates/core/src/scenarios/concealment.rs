use super::fringe::{dirac_space, fermion_mz_state, photon_pair_space};
use crate::descriptors::{
    circuit_unitary, frame_distance_mod_phase, heisenberg_conjugate, run_frame, Circuit,
    DescriptorFrame, GateSpec, Ladder,
};
use crate::error::{Error, Result};
use crate::fock::{basis_state, expectation, number_op, ModeId, Site, Species};
use crate::superselection::{charge_density_descriptor, charge_density_op};
use crate::{Config, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BosonConcealment {
    pub phi: f64,
    /// `<N_L(t2)>` after the phase and before the second splitter.
    pub n_left: f64,
    /// Frame distance from the `phi = 0` frame at `t2`, modulo one global phase.
    pub frame_distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FermionConcealment {
    pub phi: f64,
    /// `<j0(L)>` right after the charge rotation.
    pub j0_left: f64,
    /// Coefficient of `b_L d_L` in the descriptor-level density `j0(L)`.
    pub pair_coefficient: C64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcealmentReport {
    pub boson: Vec<BosonConcealment>,
    pub fermion: Vec<FermionConcealment>,
    /// `max |<N_L(t2)> - 1/2|`
    pub max_boson_deviation: f64,
    /// `max |<j0(L)> + e/2|`
    pub max_fermion_deviation: f64,
    /// Every grid point with `phi != 0 mod 2 pi` has a frame distinct from `phi = 0`.
    pub phase_in_boson_descriptors: bool,
    /// The `b_L d_L` coefficient equals `e * exp(2 i phi)` at every grid point.
    pub phase_in_fermion_descriptors: bool,
    pub pass: bool,
}

fn wraps_to_zero(phi: f64) -> bool {
    let r = phi.rem_euclid(TAU);
    r < 1e-12 || TAU - r < 1e-12
}

/// Shows the phase is present in the descriptors yet invisible to local
/// observables at the intermediate stage, for photons and for the Dirac field.
pub fn phase_concealment_check(grid: &[f64], cfg: &Config) -> Result<ConcealmentReport> {
    if grid.is_empty() {
        return Err(Error::BadGrid("empty phase grid".into()));
    }
    let tol = cfg.tol.expectation;

    let photons = photon_pair_space(2)?;
    let psi = basis_state(&photons, &[1, 0])?;
    let n_l = number_op(&photons, &ModeId::photon("L"))?;
    let t2_frame = |phi: f64| -> Result<(Circuit, DescriptorFrame)> {
        let c = Circuit::new(
            &photons,
            vec![
                GateSpec::beam_splitter("L", "R", &[Species::Photon]),
                GateSpec::phase_shift("L", phi, &[Species::Photon]),
            ],
        )?;
        let frame = run_frame(&c)?.pop().expect("frames");
        Ok((c, frame))
    };
    let (_, reference) = t2_frame(0.0)?;
    let mut boson = Vec::with_capacity(grid.len());
    for &phi in grid {
        let (c, frame) = t2_frame(phi)?;
        let u = circuit_unitary(&c)?;
        let n_left = expectation(&psi, &heisenberg_conjugate(&u, &n_l)?)?.re;
        boson.push(BosonConcealment {
            phi,
            n_left,
            frame_distance: frame_distance_mod_phase(&frame, &reference)?,
        });
    }

    let dirac = dirac_space();
    let psi_e = fermion_mz_state(&dirac)?;
    let left = Site::new("L");
    let j0 = charge_density_op(&dirac, &left, cfg.charge)?;
    let b = Ladder::Annihilate(ModeId::electron("L"));
    let d = Ladder::Annihilate(ModeId::positron("L"));
    let mut fermion = Vec::with_capacity(grid.len());
    for &phi in grid {
        let c = Circuit::new(&dirac, vec![GateSpec::charge_rotation("L", phi)])?;
        let u = circuit_unitary(&c)?;
        let j0_left = expectation(&psi_e, &heisenberg_conjugate(&u, &j0)?)?.re;
        let frame = run_frame(&c)?.pop().expect("frames");
        let form = charge_density_descriptor(&frame, &left, cfg.charge)?;
        fermion.push(FermionConcealment {
            phi,
            j0_left,
            pair_coefficient: form.coefficient(&b, &d),
        });
    }

    let max_boson_deviation = boson
        .iter()
        .map(|p| (p.n_left - 0.5).abs())
        .fold(0.0, f64::max);
    let max_fermion_deviation = fermion
        .iter()
        .map(|p| (p.j0_left + cfg.charge / 2.0).abs())
        .fold(0.0, f64::max);
    let phase_in_boson_descriptors = boson
        .iter()
        .filter(|p| !wraps_to_zero(p.phi))
        .all(|p| p.frame_distance > tol);
    let phase_in_fermion_descriptors = fermion.iter().all(|p| {
        (p.pair_coefficient - C64::from_polar(cfg.charge, 2.0 * p.phi)).norm() < cfg.tol.operator
    });
    let pass = max_boson_deviation < tol
        && max_fermion_deviation < tol
        && phase_in_boson_descriptors
        && phase_in_fermion_descriptors;

    Ok(ConcealmentReport {
        boson,
        fermion,
        max_boson_deviation,
        max_fermion_deviation,
        phase_in_boson_descriptors,
        phase_in_fermion_descriptors,
        pass,
    })
}
