use crate::descriptors::{
    advance, heisenberg_conjugate, synthesize_gate_unitary, Circuit, DescriptorFrame,
};
use crate::error::Result;
use crate::fock::{annihilation_op, number_op, MatrixOperator, ModeId};
use crate::Config;
use serde::{Deserialize, Serialize};

/// Locality verdict for one gate of a circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateAudit {
    pub index: usize,
    pub gate: String,
    pub support: Vec<ModeId>,
    pub untouched: Vec<ModeId>,
    /// Largest change in a descriptor row of an untouched mode; `None` for gates
    /// without a coefficient matrix.
    pub descriptor_row_deviation: Option<f64>,
    /// Largest `max |U† O U - O|` over ladder, number and quadrature operators
    /// of untouched modes.
    pub conjugation_deviation: f64,
    /// Observable attaining `conjugation_deviation`.
    pub worst_observable: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub gates: Vec<GateAudit>,
    pub pass: bool,
}

fn probes(space: &crate::fock::FockSpace, mode: &ModeId) -> Result<Vec<(String, MatrixOperator)>> {
    let a = annihilation_op(space, mode)?;
    let quadrature = a.add(&a.adjoint())?;
    Ok(vec![
        (format!("a[{mode}]"), a),
        (format!("N[{mode}]"), number_op(space, mode)?),
        (format!("a+a†[{mode}]"), quadrature),
    ])
}

/// Checks, gate by gate, that nothing outside a gate's support moves: the
/// descriptor rows of untouched modes (symbolic) and their operators under
/// conjugation by the gate's own unitary (numeric).
pub fn locality_audit(circuit: &Circuit, cfg: &Config) -> Result<AuditReport> {
    let space = circuit.space();
    let tol = cfg.tol.operator;
    let mut frame = DescriptorFrame::identity(space);
    let mut gates = Vec::with_capacity(circuit.len());

    for (index, gate) in circuit.gates().iter().enumerate() {
        let support = gate.support(space)?;
        let untouched: Vec<ModeId> = space
            .modes()
            .iter()
            .map(|m| m.id.clone())
            .filter(|m| !support.contains(m))
            .collect();

        let descriptor_row_deviation = if gate.is_passive() {
            let next = advance(&frame, gate)?;
            let mut dev: f64 = 0.0;
            for m in &untouched {
                for (x, y) in frame.row(m)?.iter().zip(next.row(m)?) {
                    dev = dev.max((x - y).norm());
                }
            }
            frame = next;
            Some(dev)
        } else {
            None
        };

        let unitary = synthesize_gate_unitary(gate, space)?;
        let mut conjugation_deviation: f64 = 0.0;
        let mut worst_observable = None;
        for m in &untouched {
            for (label, op) in probes(space, m)? {
                let dev = heisenberg_conjugate(&unitary, &op)?.distance(&op)?;
                if dev > conjugation_deviation || worst_observable.is_none() {
                    conjugation_deviation = conjugation_deviation.max(dev);
                    worst_observable = Some(label);
                }
            }
        }

        let pass = descriptor_row_deviation.is_none_or(|d| d < tol) && conjugation_deviation < tol;
        gates.push(GateAudit {
            index,
            gate: gate.label(),
            support,
            untouched,
            descriptor_row_deviation,
            conjugation_deviation,
            worst_observable,
            pass,
        });
    }

    let pass = gates.iter().all(|g| g.pass);
    Ok(AuditReport { gates, pass })
}
