use serde::{Deserialize, Serialize};

/// Numerical thresholds used by every check in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Agreement of expectation values between independent routes.
    pub expectation: f64,
    /// Operator identities (admissibility, locality, conjugation checks).
    pub operator: f64,
    /// Exact algebraic identities (CAR, unitarity of coefficient matrices).
    pub exact: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            expectation: 1e-9,
            operator: 1e-10,
            exact: 1e-12,
        }
    }
}

/// Global configuration: tolerances, Fock-dimension bound and the charge unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub tol: Tolerances,
    pub max_dim: usize,
    /// Magnitude of the elementary charge `e`; the electron carries `-charge`.
    pub charge: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            max_dim: 4096,
            charge: 1.0,
        }
    }
}
