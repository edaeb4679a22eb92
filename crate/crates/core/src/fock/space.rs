use super::mode::{ModeId, ModeSpec, Species, Statistics};
use crate::error::{Error, Result};
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

const DEFAULT_MAX_DIM: usize = 4096;

#[derive(Debug)]
struct SpaceInner {
    modes: Vec<ModeSpec>,
    local_dims: Vec<usize>,
    strides: Vec<usize>,
    dim: usize,
}

/// Ordered registry of modes defining a tensor-product occupation basis.
///
/// Cloning is cheap; clones share the same registry.
#[derive(Clone)]
pub struct FockSpace {
    inner: Arc<SpaceInner>,
}

impl fmt::Debug for FockSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FockSpace")
            .field("modes", &self.inner.modes)
            .field("dim", &self.inner.dim)
            .finish()
    }
}

impl PartialEq for FockSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.modes == other.inner.modes
    }
}

impl Eq for FockSpace {}

pub fn build_space(specs: &[ModeSpec]) -> Result<FockSpace> {
    build_space_with_bound(specs, DEFAULT_MAX_DIM)
}

pub fn build_space_with_bound(specs: &[ModeSpec], max_dim: usize) -> Result<FockSpace> {
    if specs.is_empty() {
        return Err(Error::EmptySpace);
    }
    let mut seen = HashSet::new();
    for spec in specs {
        if !seen.insert(&spec.id) {
            return Err(Error::DuplicateMode(spec.id.clone()));
        }
        match (spec.id.species.is_fermionic(), spec.statistics) {
            (false, Statistics::Bose { cutoff: 0 }) => {
                return Err(Error::ZeroCutoff(spec.id.clone()))
            }
            (false, Statistics::Fermi) => {
                return Err(Error::WrongStatistics {
                    mode: spec.id.clone(),
                    expected: "Bose",
                })
            }
            (true, Statistics::Bose { .. }) => {
                return Err(Error::WrongStatistics {
                    mode: spec.id.clone(),
                    expected: "Fermi",
                })
            }
            _ => {}
        }
    }

    let local_dims: Vec<usize> = specs.iter().map(|s| s.statistics.local_dim()).collect();
    let mut dim: usize = 1;
    for &d in &local_dims {
        dim = dim.saturating_mul(d);
    }
    if dim > max_dim {
        return Err(Error::DimensionTooLarge {
            dim,
            bound: max_dim,
        });
    }

    let mut strides = vec![1; specs.len()];
    for i in (0..specs.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * local_dims[i + 1];
    }

    Ok(FockSpace {
        inner: Arc::new(SpaceInner {
            modes: specs.to_vec(),
            local_dims,
            strides,
            dim,
        }),
    })
}

impl FockSpace {
    pub fn modes(&self) -> &[ModeSpec] {
        &self.inner.modes
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn strides(&self) -> &[usize] {
        &self.inner.strides
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.inner.local_dims
    }

    pub fn position(&self, id: &ModeId) -> Option<usize> {
        self.inner.modes.iter().position(|m| &m.id == id)
    }

    pub fn contains(&self, id: &ModeId) -> bool {
        self.position(id).is_some()
    }

    /// Position and spec of a mode, or `UnknownMode`.
    pub fn mode(&self, id: &ModeId) -> Result<(usize, &ModeSpec)> {
        self.position(id)
            .map(|i| (i, &self.inner.modes[i]))
            .ok_or_else(|| Error::UnknownMode(id.clone()))
    }

    /// Basis index of an occupation tuple.
    pub fn index_of(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.inner.modes.len() {
            return Err(Error::OccupationLength {
                expected: self.inner.modes.len(),
                got: occupations.len(),
            });
        }
        let mut index = 0;
        for (i, &n) in occupations.iter().enumerate() {
            let max = self.inner.local_dims[i] - 1;
            if n > max {
                return Err(Error::OccupationOutOfRange {
                    mode: self.inner.modes[i].id.clone(),
                    occupation: n,
                    max,
                });
            }
            index += n * self.inner.strides[i];
        }
        Ok(index)
    }

    /// Occupation of mode `position` in basis state `index`.
    #[inline]
    pub fn occupation(&self, index: usize, position: usize) -> usize {
        (index / self.inner.strides[position]) % self.inner.local_dims[position]
    }

    pub fn occupations(&self, index: usize) -> Vec<usize> {
        (0..self.inner.modes.len())
            .map(|i| self.occupation(index, i))
            .collect()
    }

    /// Modes of one species, in space order.
    pub fn species_modes(&self, species: Species) -> Vec<ModeId> {
        self.inner
            .modes
            .iter()
            .filter(|m| m.id.species == species)
            .map(|m| m.id.clone())
            .collect()
    }

    pub fn fermionic_modes(&self) -> Vec<ModeId> {
        self.inner
            .modes
            .iter()
            .filter(|m| m.statistics.is_fermi())
            .map(|m| m.id.clone())
            .collect()
    }

    /// Basis states on which number-conserving bosonic dynamics is represented
    /// without truncation error: for every bosonic species, the total number of
    /// quanta in that species does not exceed the smallest cutoff among its modes.
    pub fn faithful_states(&self) -> Vec<bool> {
        let modes = &self.inner.modes;
        let mut limits: Vec<(Species, usize, Vec<usize>)> = Vec::new();
        for (i, m) in modes.iter().enumerate() {
            if let Statistics::Bose { cutoff } = m.statistics {
                match limits.iter_mut().find(|(s, _, _)| *s == m.id.species) {
                    Some((_, lim, pos)) => {
                        *lim = (*lim).min(cutoff);
                        pos.push(i);
                    }
                    None => limits.push((m.id.species, cutoff, vec![i])),
                }
            }
        }
        (0..self.dim())
            .map(|idx| {
                limits.iter().all(|(_, lim, pos)| {
                    pos.iter().map(|&p| self.occupation(idx, p)).sum::<usize>() <= *lim
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_of_standard_spaces() {
        let bos = build_space(&[ModeSpec::photon("L", 2), ModeSpec::photon("R", 2)]).unwrap();
        assert_eq!(bos.dim(), 9);
        let fer = build_space(&[
            ModeSpec::electron("L"),
            ModeSpec::electron("R"),
            ModeSpec::positron("L"),
            ModeSpec::positron("R"),
        ])
        .unwrap();
        assert_eq!(fer.dim(), 16);
        let mixed = build_space(&[ModeSpec::photon("L", 1), ModeSpec::electron("L")]).unwrap();
        assert_eq!(mixed.dim(), 4);
        assert_eq!(mixed.strides(), &[2, 1]);
    }

    #[test]
    fn index_convention_first_mode_slowest() {
        let bos = build_space(&[ModeSpec::photon("L", 2), ModeSpec::photon("R", 2)]).unwrap();
        assert_eq!(bos.index_of(&[0, 0]).unwrap(), 0);
        assert_eq!(bos.index_of(&[1, 0]).unwrap(), 3);
        assert_eq!(bos.index_of(&[0, 1]).unwrap(), 1);
        assert_eq!(bos.occupations(5), vec![1, 2]);
        let fer = build_space(&[
            ModeSpec::electron("L"),
            ModeSpec::electron("R"),
            ModeSpec::positron("L"),
            ModeSpec::positron("R"),
        ])
        .unwrap();
        assert_eq!(fer.index_of(&[0, 1, 0, 0]).unwrap(), 4);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(build_space(&[]).unwrap_err(), Error::EmptySpace);
        assert!(matches!(
            build_space(&[ModeSpec::photon("L", 2), ModeSpec::photon("L", 3)]),
            Err(Error::DuplicateMode(_))
        ));
        assert!(matches!(
            build_space(&[ModeSpec::photon("L", 0)]),
            Err(Error::ZeroCutoff(_))
        ));
        let specs: Vec<_> = (0..13)
            .map(|i| ModeSpec::electron(&i.to_string()))
            .collect();
        assert!(matches!(
            build_space(&specs),
            Err(Error::DimensionTooLarge {
                dim: 8192,
                bound: 4096
            })
        ));
        assert!(build_space_with_bound(&specs, 8192).is_ok());
        let bad = ModeSpec {
            id: ModeId::electron("L"),
            statistics: Statistics::Bose { cutoff: 2 },
        };
        assert!(matches!(
            build_space(&[bad]),
            Err(Error::WrongStatistics { .. })
        ));
    }

    #[test]
    fn occupation_out_of_range() {
        let s = build_space(&[ModeSpec::photon("L", 2), ModeSpec::electron("L")]).unwrap();
        assert!(matches!(
            s.index_of(&[3, 0]),
            Err(Error::OccupationOutOfRange {
                occupation: 3,
                max: 2,
                ..
            })
        ));
        assert!(matches!(
            s.index_of(&[0, 2]),
            Err(Error::OccupationOutOfRange {
                occupation: 2,
                max: 1,
                ..
            })
        ));
        assert!(matches!(
            s.index_of(&[0]),
            Err(Error::OccupationLength {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn faithful_states_bound_total_photon_number() {
        let s = build_space(&[ModeSpec::photon("L", 2), ModeSpec::photon("R", 2)]).unwrap();
        let mask = s.faithful_states();
        let count = mask.iter().filter(|&&b| b).count();
        // N = 0, 1, 2 sectors: 1 + 2 + 3
        assert_eq!(count, 6);
        assert!(!mask[s.index_of(&[2, 1]).unwrap()]);
    }
}
