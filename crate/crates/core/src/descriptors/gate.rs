use crate::error::{Error, Result};
use crate::fock::{FockSpace, MatrixOperator, ModeId, Site, Species};
use crate::{CMatrix, C64};
use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

/// Full-sector coefficient matrices of a gate, keyed by species.
pub type SectorMatrices = BTreeMap<Species, CMatrix>;

const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    /// Hadamard-type splitter `((1, 1), (1, -1)) / sqrt(2)` on `(site_a, site_b)`.
    BeamSplitter {
        site_a: Site,
        site_b: Site,
        species: Vec<Species>,
    },
    /// `a_site -> e^{i phi} a_site`.
    PhaseShift {
        site: Site,
        phi: f64,
        species: Vec<Species>,
    },
    /// Both `b_site` and `d_site` pick up `e^{i phi}`, so `d_site†` carries `e^{-i phi}`.
    ChargeRotation { site: Site, phi: f64 },
    /// Explicit passive coefficient matrix over the listed sites of one species.
    Custom {
        species: Species,
        sites: Vec<Site>,
        matrix: CMatrix,
    },
    /// A gate known only through its Fock-space unitary. It has no descriptor
    /// coefficient matrix; `support` is the set of modes it claims to act on.
    Opaque {
        label: String,
        support: Vec<ModeId>,
        unitary: MatrixOperator,
    },
}

/// A gate's coefficient matrix restricted to the sites it names.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalBlock {
    pub species: Species,
    pub sites: Vec<Site>,
    pub matrix: CMatrix,
}

impl GateSpec {
    pub fn beam_splitter(site_a: &str, site_b: &str, species: &[Species]) -> Self {
        GateSpec::BeamSplitter {
            site_a: site_a.into(),
            site_b: site_b.into(),
            species: species.to_vec(),
        }
    }

    pub fn phase_shift(site: &str, phi: f64, species: &[Species]) -> Self {
        GateSpec::PhaseShift {
            site: site.into(),
            phi,
            species: species.to_vec(),
        }
    }

    pub fn charge_rotation(site: &str, phi: f64) -> Self {
        GateSpec::ChargeRotation {
            site: site.into(),
            phi,
        }
    }

    /// Validated passive gate; `matrix` must be unitary and match `sites`.
    pub fn custom(species: Species, sites: &[&str], matrix: CMatrix) -> Result<Self> {
        let gate = GateSpec::Custom {
            species,
            sites: sites.iter().map(|&s| s.into()).collect(),
            matrix,
        };
        gate.local_blocks()?;
        Ok(gate)
    }

    pub fn opaque(label: &str, support: Vec<ModeId>, unitary: MatrixOperator) -> Result<Self> {
        for m in &support {
            unitary.space().mode(m)?;
        }
        let residual = unitary.unitarity_residual();
        if residual > 1e-10 {
            return Err(Error::NotUnitary(residual));
        }
        Ok(GateSpec::Opaque {
            label: label.to_owned(),
            support,
            unitary,
        })
    }

    pub fn is_passive(&self) -> bool {
        !matches!(self, GateSpec::Opaque { .. })
    }

    /// Coefficient blocks over the gate's own sites.
    pub fn local_blocks(&self) -> Result<Vec<LocalBlock>> {
        match self {
            GateSpec::BeamSplitter {
                site_a,
                site_b,
                species,
            } => {
                if site_a == site_b {
                    return Err(Error::InvalidGate(format!(
                        "beam splitter needs two distinct sites, got {site_a} twice"
                    )));
                }
                let h = C64::new(FRAC_1_SQRT_2, 0.0);
                let m = CMatrix::from_row_slice(2, 2, &[h, h, h, -h]);
                Ok(dedup(species)?
                    .into_iter()
                    .map(|s| LocalBlock {
                        species: s,
                        sites: vec![site_a.clone(), site_b.clone()],
                        matrix: m.clone(),
                    })
                    .collect())
            }
            GateSpec::PhaseShift { site, phi, species } => {
                let m = CMatrix::from_element(1, 1, phase(*phi)?);
                Ok(dedup(species)?
                    .into_iter()
                    .map(|s| LocalBlock {
                        species: s,
                        sites: vec![site.clone()],
                        matrix: m.clone(),
                    })
                    .collect())
            }
            GateSpec::ChargeRotation { site, phi } => {
                let m = CMatrix::from_element(1, 1, phase(*phi)?);
                Ok([Species::Electron, Species::Positron]
                    .into_iter()
                    .map(|s| LocalBlock {
                        species: s,
                        sites: vec![site.clone()],
                        matrix: m.clone(),
                    })
                    .collect())
            }
            GateSpec::Custom {
                species,
                sites,
                matrix,
            } => {
                let k = sites.len();
                if k == 0 || matrix.nrows() != k || matrix.ncols() != k {
                    return Err(Error::InvalidGate(format!(
                        "custom matrix is {}x{} for {k} sites",
                        matrix.nrows(),
                        matrix.ncols()
                    )));
                }
                for (i, s) in sites.iter().enumerate() {
                    if sites[..i].contains(s) {
                        return Err(Error::InvalidGate(format!("site {s} repeated")));
                    }
                }
                if matrix
                    .iter()
                    .any(|z| !z.re.is_finite() || !z.im.is_finite())
                {
                    return Err(Error::NonFinite);
                }
                let residual =
                    crate::fock::max_abs(&(matrix.adjoint() * matrix - CMatrix::identity(k, k)));
                if residual > UNITARY_TOL {
                    return Err(Error::NotUnitary(residual));
                }
                Ok(vec![LocalBlock {
                    species: *species,
                    sites: sites.clone(),
                    matrix: matrix.clone(),
                }])
            }
            GateSpec::Opaque { label, .. } => Err(Error::NotPassive(label.clone())),
        }
    }

    /// Modes the gate acts on: rows or columns of its sector matrices that
    /// differ from the identity, or the declared support of an opaque gate.
    pub fn support(&self, space: &FockSpace) -> Result<Vec<ModeId>> {
        if let GateSpec::Opaque { support, .. } = self {
            return Ok(support.clone());
        }
        let sectors = gate_coefficient_matrix(self, space)?;
        let mut out = Vec::new();
        for (species, g) in &sectors {
            let modes = space.species_modes(*species);
            for (i, m) in modes.iter().enumerate() {
                let touched = (0..g.ncols()).any(|j| {
                    let id = if i == j {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    };
                    g[(i, j)] != id || g[(j, i)] != id
                });
                if touched {
                    out.push(m.clone());
                }
            }
        }
        Ok(out)
    }

    /// Checks that every mode the gate names exists in `space`.
    pub fn validate(&self, space: &FockSpace) -> Result<()> {
        match self {
            GateSpec::Opaque {
                support, unitary, ..
            } => {
                if unitary.space() != space {
                    return Err(Error::SpaceMismatch);
                }
                for m in support {
                    space.mode(m)?;
                }
                Ok(())
            }
            _ => gate_coefficient_matrix(self, space).map(|_| ()),
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |s: &[Species]| s.iter().map(|x| x.name()).collect::<Vec<_>>().join("+");
        match self {
            GateSpec::BeamSplitter {
                site_a,
                site_b,
                species,
            } => write!(f, "BS({site_a},{site_b})[{}]", names(species)),
            GateSpec::PhaseShift { site, phi, species } => {
                write!(f, "Phase({site},{phi:.6})[{}]", names(species))
            }
            GateSpec::ChargeRotation { site, phi } => write!(f, "ChargeRot({site},{phi:.6})"),
            GateSpec::Custom { species, sites, .. } => {
                let s: Vec<_> = sites.iter().map(|s| s.as_str()).collect();
                write!(f, "Custom({})[{species}]", s.join(","))
            }
            GateSpec::Opaque { label, .. } => write!(f, "Opaque({label})"),
        }
    }
}

fn phase(phi: f64) -> Result<C64> {
    if !phi.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(C64::from_polar(1.0, phi))
}

fn dedup(species: &[Species]) -> Result<Vec<Species>> {
    if species.is_empty() {
        return Err(Error::InvalidGate("gate acts on no species".into()));
    }
    let mut out = species.to_vec();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Embeds a local block into the identity on a sector whose modes are `sector`.
pub(crate) fn embed_block(block: &LocalBlock, sector: &[ModeId]) -> Result<CMatrix> {
    let n = sector.len();
    let positions = block
        .sites
        .iter()
        .map(|site| {
            sector.iter().position(|m| &m.site == site).ok_or_else(|| {
                Error::InvalidGate(format!("no {} mode at site {site}", block.species))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut g = CMatrix::identity(n, n);
    for (a, &pa) in positions.iter().enumerate() {
        for (b, &pb) in positions.iter().enumerate() {
            g[(pa, pb)] = block.matrix[(a, b)];
        }
    }
    Ok(g)
}

/// The gate's coefficient matrix on each affected species sector of `space`,
/// sized to the whole sector with identity rows for untouched modes.
pub fn gate_coefficient_matrix(gate: &GateSpec, space: &FockSpace) -> Result<SectorMatrices> {
    let mut out = SectorMatrices::new();
    for block in gate.local_blocks()? {
        let sector = space.species_modes(block.species);
        let g = embed_block(&block, &sector)?;
        out.insert(block.species, g);
    }
    Ok(out)
}
