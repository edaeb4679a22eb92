//! Matrix exponential of Fock-space operators (nalgebra's Padé scaling and squaring).

use super::operator::MatrixOperator;
use crate::error::{Error, Result};
use crate::{CMatrix, C64};

/// `exp(scalar * op)`.
pub fn matrix_exponential(op: &MatrixOperator, scalar: C64) -> Result<MatrixOperator> {
    let m = expm(&(op.matrix() * scalar))?;
    MatrixOperator::new(op.space(), m)
}

pub(crate) fn expm(a: &CMatrix) -> Result<CMatrix> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    if a.is_empty() {
        return Ok(CMatrix::zeros(0, 0));
    }

    let result = a.exp();
    if result
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{annihilation_op, basis_state, build_space, identity_op, max_abs, number_op};
    use crate::fock::{ModeId, ModeSpec};
    use std::f64::consts::PI;

    /// Independent oracle: Taylor series on `A / 2^k` followed by `k` squarings.
    fn taylor_expm(a: &CMatrix) -> CMatrix {
        let n = a.nrows();
        let k = 12;
        let scaled = a * C64::new(2f64.powi(-k), 0.0);
        let mut term = CMatrix::identity(n, n);
        let mut sum = term.clone();
        for j in 1..40 {
            term = &term * &scaled / C64::new(j as f64, 0.0);
            sum += &term;
        }
        for _ in 0..k {
            sum = &sum * &sum;
        }
        sum
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let s = build_space(&[ModeSpec::photon("L", 2), ModeSpec::electron("L")]).unwrap();
        let zero = MatrixOperator::zeros(&s);
        let e = matrix_exponential(&zero, C64::new(1.0, 0.0)).unwrap();
        assert_eq!(e.distance(&identity_op(&s)).unwrap(), 0.0);
    }

    #[test]
    fn parity_from_number_exponential() {
        let s = build_space(&[ModeSpec::electron("A")]).unwrap();
        let n = number_op(&s, &ModeId::electron("A")).unwrap();
        let p = matrix_exponential(&n, C64::new(0.0, PI)).unwrap();
        assert!((p.matrix()[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((p.matrix()[(1, 1)] - C64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(p.matrix()[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn fermion_rotation_fills_empty_mode() {
        let s = build_space(&[ModeSpec::electron("A")]).unwrap();
        let f = annihilation_op(&s, &ModeId::electron("A")).unwrap();
        let gen = f.adjoint().sub(&f).unwrap();
        let u = matrix_exponential(&gen, C64::new(PI / 2.0, 0.0)).unwrap();
        let out = u.apply(&basis_state(&s, &[0]).unwrap()).unwrap();
        assert!(out[0].norm() < 1e-12);
        assert!((out[1].norm() - 1.0).abs() < 1e-12);
        assert!(u.unitarity_residual() < 1e-12);
    }

    #[test]
    fn matches_taylor_oracle_on_large_norm() {
        // deterministic pseudo-random dense matrix with a 1-norm large enough to force squarings
        let n = 9;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a = CMatrix::from_fn(n, n, |_, _| C64::new(4.0 * next(), 4.0 * next()));
        let pade = expm(&a).unwrap();
        let oracle = taylor_expm(&a);
        let scale = max_abs(&oracle).max(1.0);
        assert!(max_abs(&(pade - oracle)) / scale < 1e-11);
    }

    #[test]
    fn rejects_non_finite() {
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 1)] = C64::new(f64::NAN, 0.0);
        assert_eq!(expm(&a).unwrap_err(), Error::NonFinite);
        assert!(matches!(
            expm(&CMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }
}
