//! Fermion-parity superselection: which operators count as observables, the
//! Dirac-field quadratic observables, and the signalling argument that rules
//! out odd operators such as `f + f†`.

use crate::descriptors::{
    annihilator_expansion, creator_expansion, heisenberg_conjugate, DescriptorFrame, QuadraticForm,
};
use crate::error::{Error, Result};
use crate::fock::{
    annihilation_op, basis_state, commutator, create_op, expectation, matrix_exponential,
    number_op, superpose, FockSpace, MatrixOperator, ModeId, ModeSpec, Site, Species, StateVector,
};
use crate::{CMatrix, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `exp(-i pi sum_x n_x)` over the given fermionic modes, built directly as the
/// diagonal `(-1)^(sum n_x)`.
pub fn parity_op(space: &FockSpace, modes: &[ModeId]) -> Result<MatrixOperator> {
    let mut positions = Vec::with_capacity(modes.len());
    for m in modes {
        let (pos, spec) = space.mode(m)?;
        if !spec.statistics.is_fermi() {
            return Err(Error::BosonicMode(
                m.clone(),
                "parity is defined for fermionic modes",
            ));
        }
        positions.push(pos);
    }
    let d = space.dim();
    let mut p = CMatrix::zeros(d, d);
    for idx in 0..d {
        let n: usize = positions
            .iter()
            .map(|&pos| space.occupation(idx, pos))
            .sum();
        p[(idx, idx)] = C64::new(if n.is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0);
    }
    MatrixOperator::new(space, p)
}

/// Parity over every fermionic mode of the space.
pub fn global_parity(space: &FockSpace) -> MatrixOperator {
    parity_op(space, &space.fermionic_modes()).expect("fermionic modes of the space")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityVerdict {
    pub hermitian: bool,
    /// `max |O - O†|`
    pub hermitian_residual: f64,
    pub parity_commuting: bool,
    /// `max |[O, P]|`
    pub parity_residual: f64,
    pub admissible: bool,
}

impl AdmissibilityVerdict {
    fn from_residuals(hermitian_residual: f64, parity_residual: f64, tol: f64) -> Self {
        let hermitian = hermitian_residual < tol;
        let parity_commuting = parity_residual < tol;
        Self {
            hermitian,
            hermitian_residual,
            parity_commuting,
            parity_residual,
            admissible: hermitian && parity_commuting,
        }
    }
}

/// Admissible iff Hermitian and commuting with the global fermion parity.
pub fn check_admissible(op: &MatrixOperator, tol: f64) -> AdmissibilityVerdict {
    let p = global_parity(op.space());
    verdict_against(op, &p, tol)
}

/// Same check against the parity of a chosen set of modes.
pub fn check_admissible_local(
    op: &MatrixOperator,
    modes: &[ModeId],
    tol: f64,
) -> Result<AdmissibilityVerdict> {
    let p = parity_op(op.space(), modes)?;
    Ok(verdict_against(op, &p, tol))
}

fn verdict_against(op: &MatrixOperator, parity: &MatrixOperator, tol: f64) -> AdmissibilityVerdict {
    let parity_residual = commutator(op, parity)
        .expect("parity built on the operator's space")
        .norm_max();
    AdmissibilityVerdict::from_residuals(op.hermiticity_residual(), parity_residual, tol)
}

fn dirac_pair(space: &FockSpace, site: &Site) -> Result<(ModeId, ModeId)> {
    let b = ModeId::new(Species::Electron, site.clone());
    let d = ModeId::new(Species::Positron, site.clone());
    if !space.contains(&b) {
        return Err(Error::MissingSpecies {
            site: site.to_string(),
            species: "electron",
        });
    }
    if !space.contains(&d) {
        return Err(Error::MissingSpecies {
            site: site.to_string(),
            species: "positron",
        });
    }
    Ok((b, d))
}

/// Normal-ordered charge density `-e (b†b - b d + b† d† - d† d)` at `site`.
pub fn charge_density_op(space: &FockSpace, site: &Site, charge: f64) -> Result<MatrixOperator> {
    let (bm, dm) = dirac_pair(space, site)?;
    let b = annihilation_op(space, &bm)?;
    let bd = create_op(space, &bm)?;
    let d = annihilation_op(space, &dm)?;
    let dd = create_op(space, &dm)?;
    let inner = bd
        .mul(&b)?
        .sub(&b.mul(&d)?)?
        .add(&bd.mul(&dd)?)?
        .sub(&dd.mul(&d)?)?;
    Ok(inner.scale(C64::new(-charge, 0.0)))
}

/// `b_a† b_b + b_b† b_a` between the electron modes at two sites.
pub fn coherence_op(space: &FockSpace, site_a: &Site, site_b: &Site) -> Result<MatrixOperator> {
    let a = ModeId::new(Species::Electron, site_a.clone());
    let b = ModeId::new(Species::Electron, site_b.clone());
    for m in [&a, &b] {
        if !space.contains(m) {
            return Err(Error::MissingSpecies {
                site: m.site.to_string(),
                species: "electron",
            });
        }
    }
    let hop = create_op(space, &a)?.mul(&annihilation_op(space, &b)?)?;
    hop.add(&hop.adjoint())
}

/// Charge density at `site` expressed through the frame's descriptors, as a
/// quadratic form over time-zero ladders. Terms are kept exactly as
/// `-e (b†b - b d + b† d† - d† d)` expands, before any expectation is taken.
pub fn charge_density_descriptor(
    frame: &DescriptorFrame,
    site: &Site,
    charge: f64,
) -> Result<QuadraticForm> {
    let bm = ModeId::new(Species::Electron, site.clone());
    let dm = ModeId::new(Species::Positron, site.clone());
    let b = annihilator_expansion(frame, &bm)?;
    let bd = creator_expansion(frame, &bm)?;
    let d = annihilator_expansion(frame, &dm)?;
    let dd = creator_expansion(frame, &dm)?;
    let e = C64::new(charge, 0.0);
    let mut form = QuadraticForm::default();
    form.push_product(-e, &bd, &b);
    form.push_product(e, &b, &d);
    form.push_product(-e, &bd, &dd);
    form.push_product(e, &dd, &d);
    Ok(form)
}

/// `exp((pi/2)(f† - f))`, which fills an empty mode. Odd under parity.
pub fn parity_violating_unitary(space: &FockSpace, mode: &ModeId) -> Result<MatrixOperator> {
    let (_, spec) = space.mode(mode)?;
    if !spec.statistics.is_fermi() {
        return Err(Error::BosonicMode(
            mode.clone(),
            "parity-violating rotation needs a fermion",
        ));
    }
    let f = annihilation_op(space, mode)?;
    matrix_exponential(&f.adjoint().sub(&f)?, C64::new(PI / 2.0, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WignerReport {
    /// `<f_B + f_B†>` when nothing is done at A.
    pub expectation_without: f64,
    /// `<f_B + f_B†>` after the unitary at A (Schrödinger route).
    pub expectation_with: f64,
    /// The same quantity from `<psi| U† (f_B + f_B†) U |psi>`.
    pub expectation_with_heisenberg: f64,
    /// `max |U† X_B U + X_B|` with `X_B = f_B + f_B†`.
    pub descriptor_flip_residual: f64,
    pub signalling_detected: bool,
}

/// Two fermionic modes `A`, `B` (electrons at sites "A" and "B").
pub fn wigner_space() -> FockSpace {
    crate::fock::build_space(&[ModeSpec::electron("A"), ModeSpec::electron("B")])
        .expect("two-mode space")
}

/// Heisenberg state `|0>_A (|0> + |1>)_B / sqrt(2)`, every other mode empty.
pub fn wigner_state(space: &FockSpace, mode_b: &ModeId) -> Result<StateVector> {
    let (pos_b, _) = space.mode(mode_b)?;
    let mut occ = vec![0; space.modes().len()];
    let empty = basis_state(space, &occ)?;
    occ[pos_b] = 1;
    let filled = basis_state(space, &occ)?;
    superpose(&[(C64::new(1.0, 0.0), &empty), (C64::new(1.0, 0.0), &filled)])
}

/// Runs the signalling protocol with an arbitrary unitary applied at A.
pub fn wigner_protocol(
    space: &FockSpace,
    mode_a: &ModeId,
    mode_b: &ModeId,
    unitary_a: &MatrixOperator,
    tol: f64,
) -> Result<WignerReport> {
    for m in [mode_a, mode_b] {
        let (_, spec) = space.mode(m)?;
        if !spec.statistics.is_fermi() {
            return Err(Error::BosonicMode(
                m.clone(),
                "signalling protocol needs fermions",
            ));
        }
    }
    let psi = wigner_state(space, mode_b)?;
    let f_b = annihilation_op(space, mode_b)?;
    let x_b = f_b.add(&f_b.adjoint())?;

    let without = expectation(&psi, &x_b)?.re;
    let with = expectation(&psi.evolve(unitary_a)?, &x_b)?.re;
    let conjugated = heisenberg_conjugate(unitary_a, &x_b)?;
    let with_heisenberg = expectation(&psi, &conjugated)?.re;
    let flip = conjugated.add(&x_b)?.norm_max();
    Ok(WignerReport {
        expectation_without: without,
        expectation_with: with,
        expectation_with_heisenberg: with_heisenberg,
        descriptor_flip_residual: flip,
        signalling_detected: (with - without).abs() > tol,
    })
}

/// The protocol with `U_A = exp((pi/2)(f_A† - f_A))`.
pub fn wigner_demo(
    space: &FockSpace,
    mode_a: &ModeId,
    mode_b: &ModeId,
    tol: f64,
) -> Result<WignerReport> {
    let u = parity_violating_unitary(space, mode_a)?;
    wigner_protocol(space, mode_a, mode_b, &u, tol)
}

/// Local quadratic observables of a mode: its number operator, plus the charge
/// density when the mode belongs to a site carrying both electron and positron.
pub fn local_quadratics(
    space: &FockSpace,
    mode: &ModeId,
    charge: f64,
) -> Result<Vec<(String, MatrixOperator)>> {
    let mut out = vec![(format!("N[{mode}]"), number_op(space, mode)?)];
    if mode.species == Species::Electron {
        if let Ok(j0) = charge_density_op(space, &mode.site, charge) {
            out.push((format!("j0[{}]", mode.site), j0));
        }
    }
    Ok(out)
}
