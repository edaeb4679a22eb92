use super::mode::{ModeId, Statistics};
use super::space::FockSpace;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::{CMatrix, C64};

/// Dense operator on a Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixOperator {
    space: FockSpace,
    matrix: CMatrix,
}

impl MatrixOperator {
    pub fn new(space: &FockSpace, matrix: CMatrix) -> Result<Self> {
        let d = space.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self {
            space: space.clone(),
            matrix,
        })
    }

    pub fn zeros(space: &FockSpace) -> Self {
        Self {
            space: space.clone(),
            matrix: CMatrix::zeros(space.dim(), space.dim()),
        }
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    fn check(&self, other: &MatrixOperator) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    fn with(&self, matrix: CMatrix) -> Self {
        Self {
            space: self.space.clone(),
            matrix,
        }
    }

    pub fn add(&self, other: &MatrixOperator) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(&self.matrix + &other.matrix))
    }

    pub fn sub(&self, other: &MatrixOperator) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(&self.matrix - &other.matrix))
    }

    pub fn scale(&self, factor: C64) -> Self {
        self.with(&self.matrix * factor)
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &MatrixOperator) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(&self.matrix * &other.matrix))
    }

    pub fn adjoint(&self) -> Self {
        self.with(self.matrix.adjoint())
    }

    /// Max-abs-entry distance.
    pub fn distance(&self, other: &MatrixOperator) -> Result<f64> {
        self.check(other)?;
        Ok(super::max_abs(&(&self.matrix - &other.matrix)))
    }

    pub fn norm_max(&self) -> f64 {
        super::max_abs(&self.matrix)
    }

    pub fn approx_eq(&self, other: &MatrixOperator, tol: f64) -> bool {
        self.distance(other).map(|d| d < tol).unwrap_or(false)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        super::max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() < tol
    }

    /// `max |U†U - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.space.dim();
        super::max_abs(&(self.matrix.adjoint() * &self.matrix - CMatrix::identity(d, d)))
    }

    /// `O|psi>` without renormalization, as raw amplitudes.
    pub fn apply(&self, state: &StateVector) -> Result<crate::CVector> {
        if state.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(&self.matrix * state.amplitudes())
    }
}

pub fn identity_op(space: &FockSpace) -> MatrixOperator {
    let d = space.dim();
    MatrixOperator {
        space: space.clone(),
        matrix: CMatrix::identity(d, d),
    }
}

/// Ladder lowering operator for `mode`.
///
/// Bosonic modes get the truncated `sqrt(n)` matrix. Fermionic modes use the
/// Jordan-Wigner form: the local lowering matrix times `(-1)^(N_prior)`, where
/// `N_prior` counts the occupied fermionic modes preceding `mode` in space order.
pub fn annihilation_op(space: &FockSpace, mode: &ModeId) -> Result<MatrixOperator> {
    let (pos, spec) = space.mode(mode)?;
    let stride = space.strides()[pos];
    let earlier_fermions: Vec<usize> = space.modes()[..pos]
        .iter()
        .enumerate()
        .filter(|(_, m)| m.statistics.is_fermi())
        .map(|(i, _)| i)
        .collect();
    let d = space.dim();
    let mut m = CMatrix::zeros(d, d);
    for idx in 0..d {
        let n = space.occupation(idx, pos);
        if n == 0 {
            continue;
        }
        let value = match spec.statistics {
            Statistics::Bose { .. } => (n as f64).sqrt(),
            Statistics::Fermi => {
                let prior: usize = earlier_fermions
                    .iter()
                    .map(|&j| space.occupation(idx, j))
                    .sum();
                if prior.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        m[(idx - stride, idx)] = C64::new(value, 0.0);
    }
    MatrixOperator::new(space, m)
}

pub fn create_op(space: &FockSpace, mode: &ModeId) -> Result<MatrixOperator> {
    Ok(annihilation_op(space, mode)?.adjoint())
}

pub fn number_op(space: &FockSpace, mode: &ModeId) -> Result<MatrixOperator> {
    let a = annihilation_op(space, mode)?;
    a.adjoint().mul(&a)
}

/// `AB - BA`
pub fn commutator(a: &MatrixOperator, b: &MatrixOperator) -> Result<MatrixOperator> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// `AB + BA`
pub fn anticommutator(a: &MatrixOperator, b: &MatrixOperator) -> Result<MatrixOperator> {
    a.mul(b)?.add(&b.mul(a)?)
}

/// `<psi|O|psi>`
pub fn expectation(state: &StateVector, op: &MatrixOperator) -> Result<C64> {
    let o_psi = op.apply(state)?;
    Ok(state.amplitudes().dotc(&o_psi))
}
