use super::gate::{embed_block, GateSpec};
use crate::error::{Error, Result};
use crate::fock::{annihilation_op, FockSpace, MatrixOperator, ModeId, Species};
use crate::{CMatrix, C64};

/// Coefficient matrix of one species sector.
#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    pub species: Species,
    /// Sector modes in space order; row/column `i` refers to `modes[i]`.
    pub modes: Vec<ModeId>,
    pub matrix: CMatrix,
}

/// Heisenberg-picture descriptors of every mode at gate count `time`.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorFrame {
    pub time: usize,
    pub sectors: Vec<Sector>,
}

impl DescriptorFrame {
    /// `M_s(0) = I` for every species present in `space`.
    pub fn identity(space: &FockSpace) -> Self {
        let sectors = Species::ALL
            .into_iter()
            .filter_map(|species| {
                let modes = space.species_modes(species);
                (!modes.is_empty()).then(|| {
                    let n = modes.len();
                    Sector {
                        species,
                        modes,
                        matrix: CMatrix::identity(n, n),
                    }
                })
            })
            .collect();
        Self { time: 0, sectors }
    }

    pub fn sector(&self, species: Species) -> Option<&Sector> {
        self.sectors.iter().find(|s| s.species == species)
    }

    fn locate(&self, mode: &ModeId) -> Result<(&Sector, usize)> {
        let sector = self
            .sector(mode.species)
            .ok_or_else(|| Error::UnknownMode(mode.clone()))?;
        let i = sector
            .modes
            .iter()
            .position(|m| m == mode)
            .ok_or_else(|| Error::UnknownMode(mode.clone()))?;
        Ok((sector, i))
    }

    /// Coefficients of `mode`'s ladder operator over its sector's initial ladders.
    pub fn row(&self, mode: &ModeId) -> Result<Vec<C64>> {
        let (sector, i) = self.locate(mode)?;
        Ok(sector.matrix.row(i).iter().copied().collect())
    }

    pub fn coefficient(&self, mode: &ModeId, initial: &ModeId) -> Result<C64> {
        let (sector, i) = self.locate(mode)?;
        let j = sector
            .modes
            .iter()
            .position(|m| m == initial)
            .ok_or_else(|| Error::UnknownMode(initial.clone()))?;
        Ok(sector.matrix[(i, j)])
    }

    /// Largest `|M†M - I|` entry over all sectors.
    pub fn unitarity_residual(&self) -> f64 {
        self.sectors
            .iter()
            .map(|s| {
                let n = s.modes.len();
                crate::fock::max_abs(&(s.matrix.adjoint() * &s.matrix - CMatrix::identity(n, n)))
            })
            .fold(0.0, f64::max)
    }

    fn conforms_to(&self, space: &FockSpace) -> Result<()> {
        for s in &self.sectors {
            if space.species_modes(s.species) != s.modes {
                return Err(Error::SpaceMismatch);
            }
        }
        Ok(())
    }
}

/// `M_s(t+1) = G_s * M_s(t)` on every sector the gate touches.
///
/// Only rows of modes in the gate block are recomputed; every other row is
/// copied, so descriptors outside the gate's support stay bitwise identical.
pub fn advance(frame: &DescriptorFrame, gate: &GateSpec) -> Result<DescriptorFrame> {
    let mut next = frame.clone();
    next.time += 1;
    for block in gate.local_blocks()? {
        let sector = next
            .sectors
            .iter_mut()
            .find(|s| s.species == block.species)
            .ok_or_else(|| {
                Error::InvalidGate(format!("frame has no {} sector for {gate}", block.species))
            })?;
        let g = embed_block(&block, &sector.modes)?;
        let old = sector.matrix.clone();
        let n = sector.modes.len();
        let rows: Vec<usize> = block
            .sites
            .iter()
            .filter_map(|site| sector.modes.iter().position(|m| &m.site == site))
            .collect();
        for &i in &rows {
            for col in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..n {
                    acc += g[(i, j)] * old[(j, col)];
                }
                sector.matrix[(i, col)] = acc;
            }
        }
    }
    Ok(next)
}

/// `sum_j M_ij * a_j` as a Fock-space matrix.
pub fn realize_ladder(
    frame: &DescriptorFrame,
    space: &FockSpace,
    mode: &ModeId,
) -> Result<MatrixOperator> {
    frame.conforms_to(space)?;
    let (sector, i) = frame.locate(mode)?;
    let mut acc = MatrixOperator::zeros(space);
    for (j, initial) in sector.modes.iter().enumerate() {
        let c = sector.matrix[(i, j)];
        if c != C64::new(0.0, 0.0) {
            acc = acc.add(&annihilation_op(space, initial)?.scale(c))?;
        }
    }
    Ok(acc)
}

/// Field quadrature `a(t) + a(t)†` of a bosonic mode.
///
/// Fermionic modes are refused: `f + f†` is odd under fermion parity and is
/// not an observable.
pub fn realize_field_observable(
    frame: &DescriptorFrame,
    space: &FockSpace,
    mode: &ModeId,
) -> Result<MatrixOperator> {
    let (_, spec) = space.mode(mode)?;
    if spec.statistics.is_fermi() {
        return Err(Error::FermionicMode(
            mode.clone(),
            "f + f† violates parity superselection; use quadratic observables",
        ));
    }
    let a = realize_ladder(frame, space, mode)?;
    a.add(&a.adjoint())
}

/// Rescales `row` by a unit phase so its first non-negligible entry is real positive.
pub fn normalize_global_phase(row: &[C64]) -> Vec<C64> {
    match row.iter().find(|z| z.norm() > 1e-12) {
        Some(lead) => {
            let unphase = lead.conj() / lead.norm();
            row.iter().map(|z| z * unphase).collect()
        }
        None => row.to_vec(),
    }
}

/// Max-abs distance between two frames after quotienting one global phase
/// shared by all sectors (not one per row).
pub fn frame_distance_mod_phase(a: &DescriptorFrame, b: &DescriptorFrame) -> Result<f64> {
    let flatten = |f: &DescriptorFrame| -> Vec<C64> {
        f.sectors
            .iter()
            .flat_map(|s| s.matrix.transpose().iter().copied().collect::<Vec<_>>())
            .collect()
    };
    if a.sectors.len() != b.sectors.len()
        || a.sectors
            .iter()
            .zip(&b.sectors)
            .any(|(x, y)| x.modes != y.modes)
    {
        return Err(Error::SpaceMismatch);
    }
    let fa = normalize_global_phase(&flatten(a));
    let fb = normalize_global_phase(&flatten(b));
    Ok(fa
        .iter()
        .zip(&fb)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{basis_state, build_space, create_op, ModeSpec};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn photons() -> FockSpace {
        build_space(&[ModeSpec::photon("L", 2), ModeSpec::photon("R", 2)]).unwrap()
    }

    fn close(a: &[C64], b: &[C64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
    }

    #[test]
    fn staged_descriptors_follow_the_interferometer() {
        let s = photons();
        let l = ModeId::photon("L");
        let r = ModeId::photon("R");
        let phi = 0.9;
        let bs = GateSpec::beam_splitter("L", "R", &[Species::Photon]);
        let f0 = DescriptorFrame::identity(&s);
        let f1 = advance(&f0, &bs).unwrap();
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        assert!(close(&f1.row(&l).unwrap(), &[h, h], 1e-15));
        assert!(close(&f1.row(&r).unwrap(), &[h, -h], 1e-15));

        let f2 = advance(&f1, &GateSpec::phase_shift("L", phi, &[Species::Photon])).unwrap();
        let e = C64::from_polar(1.0, phi);
        assert!(close(&f2.row(&l).unwrap(), &[e * h, e * h], 1e-15));
        assert_eq!(f2.row(&r).unwrap(), f1.row(&r).unwrap());

        let f3 = advance(&f2, &bs).unwrap();
        let one = C64::new(1.0, 0.0);
        let expected = [(e + one) / 2.0, (e - one) / 2.0];
        assert!(close(&f3.row(&l).unwrap(), &expected, 1e-15));
        let quotient = normalize_global_phase(&f3.row(&l).unwrap());
        let shape = [
            C64::new((phi / 2.0).cos(), 0.0),
            C64::new(0.0, (phi / 2.0).sin()),
        ];
        assert!(close(&quotient, &shape, 1e-12));
        assert_eq!(f3.time, 3);
    }

    #[test]
    fn realized_ladder_matches_linear_combination() {
        let s = photons();
        let l = ModeId::photon("L");
        let r = ModeId::photon("R");
        let f0 = DescriptorFrame::identity(&s);
        assert_eq!(
            realize_ladder(&f0, &s, &l).unwrap(),
            annihilation_op(&s, &l).unwrap()
        );
        let f1 = advance(&f0, &GateSpec::beam_splitter("L", "R", &[Species::Photon])).unwrap();
        let al = realize_ladder(&f1, &s, &l).unwrap();
        let expected = annihilation_op(&s, &l)
            .unwrap()
            .add(&annihilation_op(&s, &r).unwrap())
            .unwrap()
            .scale(C64::new(FRAC_1_SQRT_2, 0.0));
        assert!(al.distance(&expected).unwrap() < 1e-15);
        let vac = basis_state(&s, &[0, 0]).unwrap();
        assert!(al.apply(&vac).unwrap().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn field_observable_is_hermitian_and_refuses_fermions() {
        let s = build_space(&[ModeSpec::photon("L", 2), ModeSpec::electron("L")]).unwrap();
        let f0 = DescriptorFrame::identity(&s);
        let a = realize_field_observable(&f0, &s, &ModeId::photon("L")).unwrap();
        let expected = annihilation_op(&s, &ModeId::photon("L"))
            .unwrap()
            .add(&create_op(&s, &ModeId::photon("L")).unwrap())
            .unwrap();
        assert_eq!(a, expected);
        assert!(a.is_hermitian(1e-14));
        assert!(matches!(
            realize_field_observable(&f0, &s, &ModeId::electron("L")),
            Err(Error::FermionicMode(..))
        ));
    }

    #[test]
    fn frame_phase_quotient_is_global_not_per_row() {
        let s = photons();
        let bs = GateSpec::beam_splitter("L", "R", &[Species::Photon]);
        let make = |phi: f64| {
            let f = advance(&DescriptorFrame::identity(&s), &bs).unwrap();
            advance(&f, &GateSpec::phase_shift("L", phi, &[Species::Photon])).unwrap()
        };
        let l = ModeId::photon("L");
        // per row, the phase is invisible
        assert!(close(
            &normalize_global_phase(&make(0.0).row(&l).unwrap()),
            &normalize_global_phase(&make(PI / 2.0).row(&l).unwrap()),
            1e-15
        ));
        // jointly, it is not
        assert!(frame_distance_mod_phase(&make(0.0), &make(PI / 2.0)).unwrap() > 0.5);
        // a global phase on every sector is quotiented out
        let mut shifted = make(0.3);
        shifted.sectors[0].matrix *= C64::from_polar(1.0, 1.1);
        assert!(frame_distance_mod_phase(&make(0.3), &shifted).unwrap() < 1e-15);
    }

    #[test]
    fn advance_rejects_opaque_and_foreign_sectors() {
        let s = photons();
        let f0 = DescriptorFrame::identity(&s);
        assert!(advance(&f0, &GateSpec::charge_rotation("L", 0.1)).is_err());
        let u = crate::fock::identity_op(&s);
        let opaque = GateSpec::opaque("id", vec![ModeId::photon("L")], u).unwrap();
        assert!(matches!(advance(&f0, &opaque), Err(Error::NotPassive(_))));
    }
}
