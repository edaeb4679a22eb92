use super::fringe::{dirac_space, photon_pair_space};
use super::random::{random_admissible_quadratic, random_circuit, random_state};
use crate::descriptors::{heisenberg_conjugate, synthesize_gate_unitary, Circuit};
use crate::error::Result;
use crate::fock::{expectation, identity_op, MatrixOperator, StateVector};
use crate::Config;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceEntry {
    pub time: usize,
    pub observable: String,
    /// `<psi(t)| O |psi(t)>`
    pub schrodinger: f64,
    /// `<psi_0| U(t)† O U(t) |psi_0>`
    pub heisenberg: f64,
    /// Complex modulus of the difference between the two expectations.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub entries: Vec<EquivalenceEntry>,
    pub max_deviation: f64,
    pub pass: bool,
}

/// Evolves the state forward (Schrödinger) and the observables backward
/// (Heisenberg) through every prefix of the circuit and compares expectations.
pub fn picture_equivalence(
    circuit: &Circuit,
    heisenberg_state: &StateVector,
    observables: &[(String, MatrixOperator)],
    cfg: &Config,
) -> Result<EquivalenceReport> {
    let space = circuit.space();
    let mut cumulative = identity_op(space);
    let mut state = heisenberg_state.clone();
    let mut entries = Vec::new();

    for time in 0..=circuit.len() {
        if time > 0 {
            let u = synthesize_gate_unitary(&circuit.gates()[time - 1], space)?;
            state = state.evolve(&u)?;
            cumulative = u.mul(&cumulative)?;
        }
        for (name, op) in observables {
            let s = expectation(&state, op)?;
            let h = expectation(heisenberg_state, &heisenberg_conjugate(&cumulative, op)?)?;
            entries.push(EquivalenceEntry {
                time,
                observable: name.clone(),
                schrodinger: s.re,
                heisenberg: h.re,
                deviation: (s - h).norm(),
            });
        }
    }
    let max_deviation = entries.iter().map(|e| e.deviation).fold(0.0, f64::max);
    Ok(EquivalenceReport {
        entries,
        max_deviation,
        pass: max_deviation < cfg.tol.expectation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceSummary {
    pub seed: u64,
    pub trials: usize,
    pub max_deviation: f64,
    /// Trials whose report failed.
    pub failures: usize,
    pub pass: bool,
}

/// Seeded random circuits (up to `max_gates` library gates) on the photon pair
/// and the four-mode Dirac space, alternating, each checked with three random
/// admissible quadratic observables.
pub fn equivalence_trials(
    seed: u64,
    trials: usize,
    max_gates: usize,
    cfg: &Config,
) -> Result<EquivalenceSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spaces = [photon_pair_space(2)?, dirac_space()];
    let mut max_deviation: f64 = 0.0;
    let mut failures = 0;
    for trial in 0..trials {
        let space = &spaces[trial % spaces.len()];
        let circuit = random_circuit(&mut rng, space, max_gates)?;
        let psi = random_state(&mut rng, space)?;
        let observables = (0..3)
            .map(|k| {
                Ok((
                    format!("Q{k}"),
                    random_admissible_quadratic(&mut rng, space)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let report = picture_equivalence(&circuit, &psi, &observables, cfg)?;
        max_deviation = max_deviation.max(report.max_deviation);
        if !report.pass {
            failures += 1;
        }
    }
    Ok(EquivalenceSummary {
        seed,
        trials,
        max_deviation,
        failures,
        pass: failures == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{basis_state, number_op, ModeId};
    use crate::scenarios::boson_mz_circuit;

    #[test]
    fn interferometer_pictures_agree() {
        let s = photon_pair_space(2).unwrap();
        let c = boson_mz_circuit(&s, 1.2).unwrap();
        let psi = basis_state(&s, &[1, 0]).unwrap();
        let obs = vec![(
            "N_L".to_string(),
            number_op(&s, &ModeId::photon("L")).unwrap(),
        )];
        let r = picture_equivalence(&c, &psi, &obs, &Config::default()).unwrap();
        assert_eq!(r.entries.len(), 4);
        assert!(r.pass && r.max_deviation < 1e-9);
        assert!((r.entries[3].heisenberg - (0.6f64).cos().powi(2)).abs() < 1e-9);
    }

    #[test]
    fn empty_circuit_is_exact() {
        let s = dirac_space();
        let c = Circuit::new(&s, vec![]).unwrap();
        let psi = basis_state(&s, &[1, 0, 0, 1]).unwrap();
        let obs = vec![(
            "N".to_string(),
            number_op(&s, &ModeId::electron("L")).unwrap(),
        )];
        let r = picture_equivalence(&c, &psi, &obs, &Config::default()).unwrap();
        assert_eq!(r.max_deviation, 0.0);
    }

    #[test]
    fn seeded_trials_are_deterministic() {
        let cfg = Config::default();
        let a = equivalence_trials(7, 6, 10, &cfg).unwrap();
        let b = equivalence_trials(7, 6, 10, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.pass);
    }
}
