use crate::fock::ModeId;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode list is empty")]
    EmptySpace,
    #[error("duplicate mode {0}")]
    DuplicateMode(ModeId),
    #[error("mode {0} has zero bosonic cutoff")]
    ZeroCutoff(ModeId),
    #[error("mode {mode}: species requires {expected} statistics")]
    WrongStatistics {
        mode: ModeId,
        expected: &'static str,
    },
    #[error("Fock dimension {dim} exceeds bound {bound}")]
    DimensionTooLarge { dim: usize, bound: usize },
    #[error("unknown mode {0}")]
    UnknownMode(ModeId),
    #[error("expected {expected} occupations, got {got}")]
    OccupationLength { expected: usize, got: usize },
    #[error("occupation {occupation} of mode {mode} exceeds its maximum {max}")]
    OccupationOutOfRange {
        mode: ModeId,
        occupation: usize,
        max: usize,
    },
    #[error("operands live on different Fock spaces")]
    SpaceMismatch,
    #[error("linear combination has zero norm")]
    ZeroNorm,
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("mode {0} is fermionic; {1}")]
    FermionicMode(ModeId, &'static str),
    #[error("mode {0} is bosonic; {1}")]
    BosonicMode(ModeId, &'static str),
    #[error("coefficient matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("gate '{0}' has no passive coefficient matrix")]
    NotPassive(String),
    #[error("gate synthesis residual {residual:.3e} above tolerance {tolerance:.1e} for {gate}")]
    SynthesisResidual {
        gate: String,
        residual: f64,
        tolerance: f64,
    },
    #[error("site {site} has no {species} mode")]
    MissingSpecies { site: String, species: &'static str },
    #[error("invalid sweep grid: {0}")]
    BadGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
