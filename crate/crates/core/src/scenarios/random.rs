//! Seeded generators for library-gate circuits, admissible observables and
//! superselection-respecting states.

use crate::descriptors::{Circuit, GateSpec};
use crate::error::Result;
use crate::fock::{
    annihilation_op, create_op, FockSpace, MatrixOperator, ModeId, Site, Species, StateVector,
};
use crate::{CMatrix, CVector, C64};
use rand::Rng;
use std::f64::consts::{PI, TAU};

/// Haar-like 2x2 unitary from Euler angles and a global phase.
pub fn random_unitary2<R: Rng + ?Sized>(rng: &mut R) -> CMatrix {
    let theta = rng.random_range(0.0..PI / 2.0);
    let (alpha, beta, gamma) = (
        rng.random_range(0.0..TAU),
        rng.random_range(0.0..TAU),
        rng.random_range(0.0..TAU),
    );
    let g = C64::from_polar(1.0, alpha);
    let (c, s) = (theta.cos(), theta.sin());
    CMatrix::from_row_slice(
        2,
        2,
        &[
            g * C64::from_polar(c, beta),
            g * C64::from_polar(s, gamma),
            g * C64::from_polar(-s, -gamma),
            g * C64::from_polar(c, -beta),
        ],
    )
}

fn sites_of(space: &FockSpace, species: Species) -> Vec<Site> {
    space
        .species_modes(species)
        .into_iter()
        .map(|m| m.site)
        .collect()
}

fn pick<'a, T, R: Rng + ?Sized>(rng: &mut R, items: &'a [T]) -> &'a T {
    &items[rng.random_range(0..items.len())]
}

fn pick_pair<R: Rng + ?Sized>(rng: &mut R, sites: &[Site]) -> (Site, Site) {
    let i = rng.random_range(0..sites.len());
    let mut j = rng.random_range(0..sites.len() - 1);
    if j >= i {
        j += 1;
    }
    (sites[i].clone(), sites[j].clone())
}

/// A random gate from the passive library that is valid on `space`.
pub fn random_library_gate<R: Rng + ?Sized>(rng: &mut R, space: &FockSpace) -> Result<GateSpec> {
    let present: Vec<Species> = Species::ALL
        .into_iter()
        .filter(|s| !space.species_modes(*s).is_empty())
        .collect();
    let multi: Vec<Species> = present
        .iter()
        .copied()
        .filter(|s| space.species_modes(*s).len() >= 2)
        .collect();
    let dirac_sites: Vec<Site> = sites_of(space, Species::Electron)
        .into_iter()
        .filter(|site| space.contains(&ModeId::new(Species::Positron, site.clone())))
        .collect();

    let mut kinds = vec![0u8];
    if !multi.is_empty() {
        kinds.extend([1, 2]);
    }
    if !dirac_sites.is_empty() {
        kinds.push(3);
    }
    let phi = rng.random_range(-PI..PI);
    Ok(match *pick(rng, &kinds) {
        0 => {
            let species = *pick(rng, &present);
            let site = pick(rng, &sites_of(space, species)).clone();
            GateSpec::PhaseShift {
                site,
                phi,
                species: vec![species],
            }
        }
        1 => {
            let species = *pick(rng, &multi);
            let (a, b) = pick_pair(rng, &sites_of(space, species));
            // splitters may act on electron and positron together when both exist at the sites
            let partner = match species {
                Species::Electron => Some(Species::Positron),
                Species::Positron => Some(Species::Electron),
                Species::Photon => None,
            };
            let mut species_set = vec![species];
            if let Some(p) = partner {
                let both = [&a, &b]
                    .iter()
                    .all(|s| space.contains(&ModeId::new(p, (*s).clone())));
                if both && rng.random_bool(0.5) {
                    species_set.push(p);
                }
            }
            GateSpec::BeamSplitter {
                site_a: a,
                site_b: b,
                species: species_set,
            }
        }
        2 => {
            let species = *pick(rng, &multi);
            let (a, b) = pick_pair(rng, &sites_of(space, species));
            GateSpec::custom(species, &[a.as_str(), b.as_str()], random_unitary2(rng))?
        }
        _ => GateSpec::ChargeRotation {
            site: pick(rng, &dirac_sites).clone(),
            phi,
        },
    })
}

/// Between 1 and `max_gates` random library gates (empty if `max_gates == 0`).
pub fn random_circuit<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FockSpace,
    max_gates: usize,
) -> Result<Circuit> {
    let n = if max_gates == 0 {
        0
    } else {
        rng.random_range(1..=max_gates)
    };
    let gates = (0..n)
        .map(|_| random_library_gate(rng, space))
        .collect::<Result<Vec<_>>>()?;
    Circuit::new(space, gates)
}

fn unit_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Random Hermitian, parity-even quadratic form: `sum h_jk c_j† c_k` on each
/// species sector plus `z b_x d_x + h.c.` pair terms at sites hosting both
/// electron and positron.
pub fn random_admissible_quadratic<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FockSpace,
) -> Result<MatrixOperator> {
    let mut acc = MatrixOperator::zeros(space);
    for species in Species::ALL {
        let modes = space.species_modes(species);
        for (j, mj) in modes.iter().enumerate() {
            for mk in &modes[j..] {
                let hop = create_op(space, mj)?.mul(&annihilation_op(space, mk)?)?;
                let term = if mj == mk {
                    hop.scale(C64::new(rng.random_range(-1.0..1.0), 0.0))
                } else {
                    let z = unit_complex(rng);
                    hop.scale(z).add(&hop.adjoint().scale(z.conj()))?
                };
                acc = acc.add(&term)?;
            }
        }
    }
    for b in space.species_modes(Species::Electron) {
        let d = ModeId::new(Species::Positron, b.site.clone());
        if space.contains(&d) {
            let pair = annihilation_op(space, &b)?.mul(&annihilation_op(space, &d)?)?;
            let z = unit_complex(rng);
            acc = acc.add(&pair.scale(z).add(&pair.adjoint().scale(z.conj()))?)?;
        }
    }
    Ok(acc)
}

/// Random state within one global fermion-parity sector (chosen at random).
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, space: &FockSpace) -> Result<StateVector> {
    let fermi: Vec<usize> = space
        .modes()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.statistics.is_fermi())
        .map(|(i, _)| i)
        .collect();
    let parity = rng.random_range(0..2usize);
    let amplitudes = CVector::from_iterator(
        space.dim(),
        (0..space.dim()).map(|idx| {
            let n: usize = fermi.iter().map(|&p| space.occupation(idx, p)).sum();
            if fermi.is_empty() || n % 2 == parity {
                unit_complex(rng)
            } else {
                C64::new(0.0, 0.0)
            }
        }),
    );
    StateVector::from_amplitudes(space, amplitudes)
}
