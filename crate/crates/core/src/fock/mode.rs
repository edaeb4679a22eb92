use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Species {
    Photon,
    Electron,
    Positron,
}

impl Species {
    pub const ALL: [Species; 3] = [Species::Photon, Species::Electron, Species::Positron];

    pub fn is_fermionic(self) -> bool {
        !matches!(self, Species::Photon)
    }

    pub fn name(self) -> &'static str {
        match self {
            Species::Photon => "photon",
            Species::Electron => "electron",
            Species::Positron => "positron",
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Spatial label of a mode, e.g. an interferometer arm `L` or `R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Site(pub String);

impl Site {
    pub fn new(label: impl Into<String>) -> Self {
        Site(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Site {
    fn from(s: &str) -> Self {
        Site(s.to_owned())
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeId {
    pub species: Species,
    pub site: Site,
}

impl ModeId {
    pub fn new(species: Species, site: impl Into<Site>) -> Self {
        Self {
            species,
            site: site.into(),
        }
    }

    pub fn photon(site: &str) -> Self {
        Self::new(Species::Photon, site)
    }

    pub fn electron(site: &str) -> Self {
        Self::new(Species::Electron, site)
    }

    pub fn positron(site: &str) -> Self {
        Self::new(Species::Positron, site)
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.species, self.site)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Statistics {
    /// Bosonic mode holding at most `cutoff` quanta.
    Bose {
        cutoff: usize,
    },
    Fermi,
}

impl Statistics {
    pub fn local_dim(self) -> usize {
        match self {
            Statistics::Bose { cutoff } => cutoff + 1,
            Statistics::Fermi => 2,
        }
    }

    pub fn max_occupation(self) -> usize {
        self.local_dim() - 1
    }

    pub fn is_fermi(self) -> bool {
        matches!(self, Statistics::Fermi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeSpec {
    pub id: ModeId,
    pub statistics: Statistics,
}

impl ModeSpec {
    pub fn photon(site: &str, cutoff: usize) -> Self {
        Self {
            id: ModeId::photon(site),
            statistics: Statistics::Bose { cutoff },
        }
    }

    pub fn electron(site: &str) -> Self {
        Self {
            id: ModeId::electron(site),
            statistics: Statistics::Fermi,
        }
    }

    pub fn positron(site: &str) -> Self {
        Self {
            id: ModeId::positron(site),
            statistics: Statistics::Fermi,
        }
    }
}
