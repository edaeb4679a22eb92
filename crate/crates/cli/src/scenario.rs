//! Circuit files: JSON description of modes, an initial basis state and a gate list.

use heisenfield::descriptors::{Circuit, GateSpec};
use heisenfield::fock::{
    basis_state, build_space_with_bound, FockSpace, ModeId, ModeSpec, Site, Species, StateVector,
};
use heisenfield::superselection::parity_violating_unitary;
use heisenfield::{CMatrix, Config, C64};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed scenario: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("invalid scenario: {0}")]
    Model(#[from] heisenfield::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub modes: Vec<ModeEntry>,
    #[serde(default)]
    pub state: Option<StateEntry>,
    #[serde(default)]
    pub gates: Vec<GateEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeEntry {
    pub species: Species,
    pub site: String,
    /// Required for photons, forbidden for fermions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateEntry {
    /// One occupation number per mode, in `modes` order.
    pub occupations: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GateEntry {
    BeamSplitter {
        sites: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        species: Option<Vec<Species>>,
    },
    PhaseShift {
        sites: Vec<String>,
        phi: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        species: Option<Vec<Species>>,
    },
    ChargeRotation {
        sites: Vec<String>,
        phi: f64,
    },
    Custom {
        sites: Vec<String>,
        species: Species,
        /// Row-major `[re, im]` pairs.
        matrix: Vec<Vec<[f64; 2]>>,
    },
    ParityViolating {
        sites: Vec<String>,
        #[serde(default = "default_fermion")]
        species: Species,
    },
}

fn default_fermion() -> Species {
    Species::Electron
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub circuit: Circuit,
    pub state: StateVector,
}

pub fn load_scenario(path: &Path, cfg: &Config) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: ScenarioFile = serde_json::from_str(&text)?;
    build_scenario(&file, cfg)
}

pub fn build_scenario(file: &ScenarioFile, cfg: &Config) -> Result<Scenario, ScenarioError> {
    let specs = file
        .modes
        .iter()
        .map(|m| match (m.species.is_fermionic(), m.cutoff) {
            (false, Some(cutoff)) => Ok(ModeSpec::photon(&m.site, cutoff)),
            (false, None) => Err(ScenarioError::Invalid(format!(
                "photon mode at {} needs a cutoff",
                m.site
            ))),
            (true, Some(_)) => Err(ScenarioError::Invalid(format!(
                "{} mode at {} takes no cutoff",
                m.species, m.site
            ))),
            (true, None) => Ok(ModeSpec {
                id: ModeId::new(m.species, m.site.as_str()),
                statistics: heisenfield::fock::Statistics::Fermi,
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let space = build_space_with_bound(&specs, cfg.max_dim)?;

    let gates = file
        .gates
        .iter()
        .enumerate()
        .map(|(i, g)| {
            build_gate(g, &space).map_err(|e| ScenarioError::Invalid(format!("gate {i}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let circuit = Circuit::new(&space, gates)?;

    let occupations = match &file.state {
        Some(s) => s.occupations.clone(),
        None => vec![0; space.modes().len()],
    };
    let state = basis_state(&space, &occupations)?;
    Ok(Scenario { circuit, state })
}

fn one_site<'a>(sites: &'a [String], gate: &str) -> Result<&'a str, ScenarioError> {
    match sites {
        [s] => Ok(s),
        _ => Err(ScenarioError::Invalid(format!(
            "{gate} takes exactly one site, got {}",
            sites.len()
        ))),
    }
}

/// Species that have a mode at every listed site.
fn species_at(space: &FockSpace, sites: &[String]) -> Vec<Species> {
    Species::ALL
        .into_iter()
        .filter(|&s| {
            sites
                .iter()
                .all(|site| space.contains(&ModeId::new(s, site.as_str())))
        })
        .collect()
}

fn require_sites(
    space: &FockSpace,
    species: &[Species],
    sites: &[String],
) -> Result<(), ScenarioError> {
    if species.is_empty() {
        return Err(ScenarioError::Invalid(format!(
            "no species has modes at all of {sites:?}"
        )));
    }
    for &s in species {
        for site in sites {
            let id = ModeId::new(s, site.as_str());
            if !space.contains(&id) {
                return Err(ScenarioError::Invalid(format!("no mode {id} in scenario")));
            }
        }
    }
    Ok(())
}

fn build_gate(entry: &GateEntry, space: &FockSpace) -> Result<GateSpec, ScenarioError> {
    let gate = match entry {
        GateEntry::BeamSplitter { sites, species } => {
            let [a, b] = sites.as_slice() else {
                return Err(ScenarioError::Invalid(format!(
                    "beam_splitter takes two sites, got {}",
                    sites.len()
                )));
            };
            let species = species.clone().unwrap_or_else(|| species_at(space, sites));
            require_sites(space, &species, sites)?;
            GateSpec::beam_splitter(a, b, &species)
        }
        GateEntry::PhaseShift {
            sites,
            phi,
            species,
        } => {
            let site = one_site(sites, "phase_shift")?;
            let species = species.clone().unwrap_or_else(|| species_at(space, sites));
            require_sites(space, &species, sites)?;
            GateSpec::phase_shift(site, *phi, &species)
        }
        GateEntry::ChargeRotation { sites, phi } => {
            GateSpec::charge_rotation(one_site(sites, "charge_rotation")?, *phi)
        }
        GateEntry::Custom {
            sites,
            species,
            matrix,
        } => {
            require_sites(space, &[*species], sites)?;
            let n = matrix.len();
            if matrix.iter().any(|row| row.len() != n) {
                return Err(ScenarioError::Invalid(
                    "custom matrix must be square".into(),
                ));
            }
            let m = CMatrix::from_fn(n, n, |i, j| C64::new(matrix[i][j][0], matrix[i][j][1]));
            let names: Vec<&str> = sites.iter().map(String::as_str).collect();
            GateSpec::custom(*species, &names, m)?
        }
        GateEntry::ParityViolating { sites, species } => {
            let id = ModeId::new(*species, Site::new(one_site(sites, "parity_violating")?));
            let u = parity_violating_unitary(space, &id)?;
            GateSpec::opaque(&format!("PV({id})"), vec![id], u)?
        }
    };
    gate.validate(space)?;
    Ok(gate)
}
