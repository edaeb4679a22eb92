use super::circuit::Circuit;
use super::gate::{gate_coefficient_matrix, GateSpec};
use crate::error::{Error, Result};
use crate::fock::{
    annihilation_op, commutator, create_op, identity_op, matrix_exponential, max_abs, number_op,
    FockSpace, MatrixOperator, Statistics,
};
use crate::{CMatrix, Tolerances, C64};

/// Hermitian `h` with `exp(i h) = g` for a unitary `g`, via complex Schur form.
fn unitary_log(g: &CMatrix) -> Result<CMatrix> {
    let n = g.nrows();
    let (q, t) = g.clone().schur().unpack();
    let mut phases = CMatrix::zeros(n, n);
    let mut rebuilt = CMatrix::zeros(n, n);
    for i in 0..n {
        phases[(i, i)] = C64::new(t[(i, i)].arg(), 0.0);
        rebuilt[(i, i)] = C64::from_polar(1.0, t[(i, i)].arg());
    }
    let residual = max_abs(&(&q * rebuilt * q.adjoint() - g));
    if residual > 1e-12 {
        return Err(Error::NotUnitary(residual));
    }
    let h = &q * phases * q.adjoint();
    Ok((&h + h.adjoint()) * C64::new(0.5, 0.0))
}

/// Fock-space unitary of a gate.
///
/// Passive gates are built as `exp(i sum_jk h_jk a_j† a_k)` with `exp(i h) = G`,
/// which gives `U† a_i U = sum_j G_ij a_j` and fixes the vacuum. The phase shift
/// becomes `exp(i phi N_site)` and the charge rotation `exp(i phi (N_b + N_d))`.
/// The result is checked for unitarity and for the conjugation identity on the
/// untruncated subspace; failures are reported as `SynthesisResidual`.
pub fn synthesize_gate_unitary(gate: &GateSpec, space: &FockSpace) -> Result<MatrixOperator> {
    let tol = Tolerances::default();
    let unitary = match gate {
        GateSpec::Opaque {
            unitary, support, ..
        } => {
            gate.validate(space)?;
            warn_if_not_number_conserving(gate, space, unitary, support)?;
            unitary.clone()
        }
        _ => {
            let sectors = gate_coefficient_matrix(gate, space)?;
            let mut generator = MatrixOperator::zeros(space);
            for (species, g) in &sectors {
                let h = unitary_log(g)?;
                let modes = space.species_modes(*species);
                for (j, mj) in modes.iter().enumerate() {
                    for (k, mk) in modes.iter().enumerate() {
                        let c = h[(j, k)];
                        if c.norm() < 1e-16 {
                            continue;
                        }
                        let term = create_op(space, mj)?.mul(&annihilation_op(space, mk)?)?;
                        generator = generator.add(&term.scale(c))?;
                    }
                }
            }
            matrix_exponential(&generator, C64::i())?
        }
    };

    let unitarity = unitary.unitarity_residual();
    if unitarity > tol.operator {
        return Err(Error::SynthesisResidual {
            gate: gate.label(),
            residual: unitarity,
            tolerance: tol.operator,
        });
    }
    if gate.is_passive() {
        let residual = conjugation_residual(gate, space, &unitary)?;
        if residual > tol.expectation {
            return Err(Error::SynthesisResidual {
                gate: gate.label(),
                residual,
                tolerance: tol.expectation,
            });
        }
    }
    Ok(unitary)
}

fn warn_if_not_number_conserving(
    gate: &GateSpec,
    space: &FockSpace,
    unitary: &MatrixOperator,
    support: &[crate::fock::ModeId],
) -> Result<()> {
    for m in support {
        let (_, spec) = space.mode(m)?;
        if let Statistics::Bose { .. } = spec.statistics {
            let n = number_op(space, m)?;
            if commutator(unitary, &n)?.norm_max() > 1e-10 {
                log::warn!("{gate} does not conserve the number of quanta in {m}; truncation may distort it");
            }
        }
    }
    Ok(())
}

/// Largest deviation of `U† a_i U` from `sum_j G_ij a_j` over all sector modes,
/// measured on the basis states where bosonic truncation is exact.
pub fn conjugation_residual(
    gate: &GateSpec,
    space: &FockSpace,
    unitary: &MatrixOperator,
) -> Result<f64> {
    let sectors = gate_coefficient_matrix(gate, space)?;
    let faithful = space.faithful_states();
    let mut worst: f64 = 0.0;
    for (species, g) in &sectors {
        let modes = space.species_modes(*species);
        let ladders = modes
            .iter()
            .map(|m| annihilation_op(space, m))
            .collect::<Result<Vec<_>>>()?;
        for (i, a) in ladders.iter().enumerate() {
            let conj = heisenberg_conjugate(unitary, a)?;
            let mut predicted = MatrixOperator::zeros(space);
            for (j, aj) in ladders.iter().enumerate() {
                predicted = predicted.add(&aj.scale(g[(i, j)]))?;
            }
            let diff = conj.sub(&predicted)?;
            for (col, &ok) in faithful.iter().enumerate() {
                if ok {
                    for z in diff.matrix().column(col).iter() {
                        worst = worst.max(z.norm());
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// `U† O U`
pub fn heisenberg_conjugate(
    unitary: &MatrixOperator,
    op: &MatrixOperator,
) -> Result<MatrixOperator> {
    unitary.adjoint().mul(op)?.mul(unitary)
}

/// Chronological product `U_n ... U_2 U_1`.
pub fn circuit_unitary(circuit: &Circuit) -> Result<MatrixOperator> {
    let space = circuit.space();
    let mut total = identity_op(space);
    for gate in circuit.gates() {
        total = synthesize_gate_unitary(gate, space)?.mul(&total)?;
    }
    Ok(total)
}
