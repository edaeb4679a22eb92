use crate::descriptors::{
    circuit_unitary, heisenberg_conjugate, realize_field_observable, realize_ladder, run_frame,
    Circuit, DescriptorFrame, GateSpec,
};
use crate::error::{Error, Result};
use crate::fock::{
    annihilation_op, basis_state, create_op, expectation, number_op, superpose, FockSpace,
    MatrixOperator, ModeId, ModeSpec, Site, Species, StateVector,
};
use crate::superselection::{charge_density_descriptor, charge_density_op, coherence_op};
use crate::{Config, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BosonFringe {
    pub phi: f64,
    pub n_left: f64,
    pub n_right: f64,
    /// `<A_L(t3)^2>` with `A_L = a_L + a_L†`.
    pub a_squared_left: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FermionFringe {
    pub phi: f64,
    /// Electron number in each output arm.
    pub n_left: f64,
    pub n_right: f64,
    pub j0_left: f64,
    pub j0_right: f64,
    /// `<b_L† b_R + b_R† b_L>` right after the charge rotation, where the phase
    /// sits in the cross terms; equals `cos(phi)` for the standard input.
    pub coherence: f64,
    /// `-e/2 <b_L†b_L + b_R†b_R + e^{-i phi} b_L†b_R + e^{i phi} b_R†b_L>` on the
    /// time-zero state.
    pub surviving_terms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scenario", rename_all = "lowercase")]
pub enum FringeRecord {
    Boson(BosonFringe),
    Fermion(FermionFringe),
}

impl FringeRecord {
    pub fn phi(&self) -> f64 {
        match self {
            FringeRecord::Boson(r) => r.phi,
            FringeRecord::Fermion(r) => r.phi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Boson,
    Fermion,
}

#[derive(Debug, Clone)]
pub struct BosonicRun {
    pub record: BosonFringe,
    pub frames: Vec<DescriptorFrame>,
}

#[derive(Debug, Clone)]
pub struct FermionicRun {
    pub record: FermionFringe,
    pub frames: Vec<DescriptorFrame>,
}

pub fn photon_pair_space(cutoff: usize) -> Result<FockSpace> {
    crate::fock::build_space(&[ModeSpec::photon("L", cutoff), ModeSpec::photon("R", cutoff)])
}

/// Electron and positron modes in both arms, ordered `e_L, e_R, p_L, p_R`.
pub fn dirac_space() -> FockSpace {
    crate::fock::build_space(&[
        ModeSpec::electron("L"),
        ModeSpec::electron("R"),
        ModeSpec::positron("L"),
        ModeSpec::positron("R"),
    ])
    .expect("four-mode Dirac space")
}

/// `[BS(L,R), Phase(L, phi), BS(L,R)]` on photons.
pub fn boson_mz_circuit(space: &FockSpace, phi: f64) -> Result<Circuit> {
    let bs = GateSpec::beam_splitter("L", "R", &[Species::Photon]);
    Circuit::new(
        space,
        vec![
            bs.clone(),
            GateSpec::phase_shift("L", phi, &[Species::Photon]),
            bs,
        ],
    )
}

/// `[ChargeRotation(L, phi), BS(L,R) on electrons and positrons]`.
pub fn fermion_mz_circuit(space: &FockSpace, phi: f64) -> Result<Circuit> {
    Circuit::new(
        space,
        vec![
            GateSpec::charge_rotation("L", phi),
            GateSpec::beam_splitter("L", "R", &[Species::Electron, Species::Positron]),
        ],
    )
}

/// One electron shared by both arms just after the first splitter, no positrons.
pub fn fermion_mz_state(space: &FockSpace) -> Result<StateVector> {
    let mut rl = vec![0; space.modes().len()];
    let mut lr = rl.clone();
    rl[space.mode(&ModeId::electron("R"))?.0] = 1;
    lr[space.mode(&ModeId::electron("L"))?.0] = 1;
    let one = C64::new(1.0, 0.0);
    superpose(&[
        (one, &basis_state(space, &rl)?),
        (one, &basis_state(space, &lr)?),
    ])
}

fn check_agree(what: &str, a: f64, b: f64, tol: f64) -> Result<()> {
    if (a - b).abs() < tol {
        Ok(())
    } else {
        Err(Error::Consistency(format!(
            "{what}: descriptor route {a:.15} vs oracle route {b:.15}"
        )))
    }
}

fn real_expectation(state: &StateVector, op: &MatrixOperator) -> Result<f64> {
    Ok(expectation(state, op)?.re)
}

/// Single photon through the bosonic interferometer, from `|1_L 0_R>`.
///
/// The fringe is computed twice: from the final descriptor frame and from the
/// conjugated observables `U† O U`; a disagreement is an error.
pub fn bosonic_mz(phi: f64, cutoff: usize, cfg: &Config) -> Result<BosonicRun> {
    if !phi.is_finite() {
        return Err(Error::NonFinite);
    }
    if cutoff < 2 {
        return Err(Error::InvalidArgument(format!(
            "cutoff {cutoff} cannot represent A^2 on a one-photon state; need >= 2"
        )));
    }
    let space = photon_pair_space(cutoff)?;
    let l = ModeId::photon("L");
    let r = ModeId::photon("R");
    let psi = basis_state(&space, &[1, 0])?;
    let circuit = boson_mz_circuit(&space, phi)?;
    let frames = run_frame(&circuit)?;
    let last = frames.last().expect("frames");

    let a_l = realize_ladder(last, &space, &l)?;
    let a_r = realize_ladder(last, &space, &r)?;
    let n_left = real_expectation(&psi, &a_l.adjoint().mul(&a_l)?)?;
    let n_right = real_expectation(&psi, &a_r.adjoint().mul(&a_r)?)?;
    let field = realize_field_observable(last, &space, &l)?;
    let a_squared_left = real_expectation(&psi, &field.mul(&field)?)?;

    let u = circuit_unitary(&circuit)?;
    let tol = cfg.tol.expectation;
    let oracle = |op: MatrixOperator| -> Result<f64> {
        real_expectation(&psi, &heisenberg_conjugate(&u, &op)?)
    };
    check_agree("N_L", n_left, oracle(number_op(&space, &l)?)?, tol)?;
    check_agree("N_R", n_right, oracle(number_op(&space, &r)?)?, tol)?;
    let a0 = annihilation_op(&space, &l)?.add(&create_op(&space, &l)?)?;
    check_agree("A_L^2", a_squared_left, oracle(a0.mul(&a0)?)?, tol)?;

    Ok(BosonicRun {
        record: BosonFringe {
            phi,
            n_left,
            n_right,
            a_squared_left,
        },
        frames,
    })
}

/// Single electron in the Dirac-field interferometer, starting after the
/// first splitter.
pub fn fermionic_mz(phi: f64, cfg: &Config) -> Result<FermionicRun> {
    let space = dirac_space();
    let psi = fermion_mz_state(&space)?;
    let circuit = fermion_mz_circuit(&space, phi)?;
    run_fermionic(&space, &psi, circuit, 1, phi, cfg)
}

/// Same experiment started from `|1_L 0_R>` with an explicit first splitter.
pub fn fermionic_mz_from_source(phi: f64, cfg: &Config) -> Result<FermionicRun> {
    let space = dirac_space();
    let psi = basis_state(&space, &[1, 0, 0, 0])?;
    let mut gates = vec![GateSpec::beam_splitter(
        "L",
        "R",
        &[Species::Electron, Species::Positron],
    )];
    gates.extend(fermion_mz_circuit(&space, phi)?.gates().iter().cloned());
    let circuit = Circuit::new(&space, gates)?;
    run_fermionic(&space, &psi, circuit, 2, phi, cfg)
}

fn run_fermionic(
    space: &FockSpace,
    psi: &StateVector,
    circuit: Circuit,
    phase_step: usize,
    phi: f64,
    cfg: &Config,
) -> Result<FermionicRun> {
    if !phi.is_finite() {
        return Err(Error::NonFinite);
    }
    let tol = cfg.tol.expectation;
    let (left, right) = (Site::new("L"), Site::new("R"));
    let frames = run_frame(&circuit)?;
    let u = circuit_unitary(&circuit)?;

    let j0 = |site: &Site| -> Result<f64> {
        let op = charge_density_op(space, site, cfg.charge)?;
        real_expectation(psi, &heisenberg_conjugate(&u, &op)?)
    };
    let j0_left = j0(&left)?;
    let j0_right = j0(&right)?;

    // descriptor route: the density expanded through the final frame
    let last = frames.last().expect("frames");
    for (site, numeric) in [(&left, j0_left), (&right, j0_right)] {
        let form = charge_density_descriptor(last, site, cfg.charge)?;
        let symbolic = real_expectation(psi, &form.realize(space)?)?;
        check_agree(&format!("j0({site})"), symbolic, numeric, tol)?;
    }

    let n = |m: &ModeId| -> Result<f64> {
        real_expectation(psi, &heisenberg_conjugate(&u, &number_op(space, m)?)?)
    };
    let n_left = n(&ModeId::electron("L"))?;
    let n_right = n(&ModeId::electron("R"))?;

    let prefix = Circuit::new(space, circuit.gates()[..phase_step].to_vec())?;
    let u_phase = circuit_unitary(&prefix)?;
    let coherence = real_expectation(
        psi,
        &heisenberg_conjugate(&u_phase, &coherence_op(space, &left, &right)?)?,
    )?;

    // the four terms that survive on a positron-free state with one electron
    // shared after the first splitter
    let state_after_splitter = match phase_step {
        1 => psi.clone(),
        _ => {
            let first = Circuit::new(space, circuit.gates()[..phase_step - 1].to_vec())?;
            psi.evolve(&circuit_unitary(&first)?)?
        }
    };
    let bl = ModeId::electron("L");
    let br = ModeId::electron("R");
    let hop_lr = create_op(space, &bl)?.mul(&annihilation_op(space, &br)?)?;
    let surviving = number_op(space, &bl)?
        .add(&number_op(space, &br)?)?
        .add(&hop_lr.scale(C64::from_polar(1.0, -phi)))?
        .add(&hop_lr.adjoint().scale(C64::from_polar(1.0, phi)))?
        .scale(C64::new(-cfg.charge / 2.0, 0.0));
    let surviving_terms = real_expectation(&state_after_splitter, &surviving)?;

    Ok(FermionicRun {
        record: FermionFringe {
            phi,
            n_left,
            n_right,
            j0_left,
            j0_right,
            coherence,
            surviving_terms,
        },
        frames,
    })
}

/// `steps` points from `phi_min` to `phi_max`, both endpoints included.
pub fn phi_grid(phi_min: f64, phi_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::BadGrid(format!("steps must be >= 2, got {steps}")));
    }
    if !phi_min.is_finite() || !phi_max.is_finite() {
        return Err(Error::BadGrid("non-finite endpoint".into()));
    }
    if phi_min >= phi_max {
        return Err(Error::BadGrid(format!(
            "phi_min {phi_min} must be below phi_max {phi_max}"
        )));
    }
    let span = phi_max - phi_min;
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            if k == steps - 1 {
                phi_max
            } else {
                phi_min + span * k as f64 / last
            }
        })
        .collect())
}

/// Fringe records over a uniform grid, in grid order.
pub fn sweep(
    kind: ScenarioKind,
    phi_min: f64,
    phi_max: f64,
    steps: usize,
    cutoff: usize,
    cfg: &Config,
) -> Result<Vec<FringeRecord>> {
    phi_grid(phi_min, phi_max, steps)?
        .into_iter()
        .map(|phi| match kind {
            ScenarioKind::Boson => {
                bosonic_mz(phi, cutoff, cfg).map(|r| FringeRecord::Boson(r.record))
            }
            ScenarioKind::Fermion => {
                fermionic_mz(phi, cfg).map(|r| FringeRecord::Fermion(r.record))
            }
        })
        .collect()
}
