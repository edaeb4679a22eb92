use super::operator::MatrixOperator;
use super::space::FockSpace;
use crate::error::{Error, Result};
use crate::{CVector, C64};

const ZERO_NORM: f64 = 1e-14;

/// Normalized state vector on a Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: FockSpace,
    amplitudes: CVector,
}

impl StateVector {
    /// Normalizes `amplitudes`; fails on length mismatch or zero norm.
    pub fn from_amplitudes(space: &FockSpace, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::SpaceMismatch);
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let norm = amplitudes.norm();
        if norm < ZERO_NORM {
            return Err(Error::ZeroNorm);
        }
        Ok(Self {
            space: space.clone(),
            amplitudes: amplitudes / C64::from(norm),
        })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn amplitude(&self, occupations: &[usize]) -> Result<C64> {
        Ok(self.amplitudes[self.space.index_of(occupations)?])
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `<self|other>`
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `U|psi>` for a unitary `U`; the result is renormalized to absorb roundoff.
    pub fn evolve(&self, unitary: &MatrixOperator) -> Result<StateVector> {
        if unitary.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        StateVector::from_amplitudes(&self.space, unitary.matrix() * &self.amplitudes)
    }
}

pub fn basis_state(space: &FockSpace, occupations: &[usize]) -> Result<StateVector> {
    let index = space.index_of(occupations)?;
    let mut amplitudes = CVector::zeros(space.dim());
    amplitudes[index] = C64::new(1.0, 0.0);
    Ok(StateVector {
        space: space.clone(),
        amplitudes,
    })
}

/// Normalized linear combination of states on a common space.
pub fn superpose(terms: &[(C64, &StateVector)]) -> Result<StateVector> {
    let (_, first) = terms.first().ok_or(Error::ZeroNorm)?;
    let space = first.space.clone();
    let mut acc = CVector::zeros(space.dim());
    for (coeff, state) in terms {
        if state.space != space {
            return Err(Error::SpaceMismatch);
        }
        acc.axpy(*coeff, &state.amplitudes, C64::new(1.0, 0.0));
    }
    StateVector::from_amplitudes(&space, acc)
}
