use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot normalize zero vector")]
    ZeroVector,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("not in doubled lattice: coordinate {coord} is odd")]
    NotInDoubledLattice { coord: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("unknown cone `{0}`")]
    UnknownCone(String),

    #[error("cone {name} is not supported for n={n}: {reason}")]
    UnsupportedSize { name: String, n: usize, reason: String },

    #[error("space mismatch: expected {expected}, got {got}")]
    SpaceMismatch { expected: String, got: String },

    #[error("cone not pointed (rank {rank} < dimension {dim})")]
    NotPointed { rank: usize, dim: usize },

    #[error("resource limit exceeded after {iteration} iterations ({rays} rays){}", checkpoint_note(.checkpoint))]
    ResourceLimit { iteration: usize, rays: usize, checkpoint: Option<PathBuf> },

    #[error("not a ray of this description: {0}")]
    NotARay(String),

    #[error("not a facet of this description: {0}")]
    NotAFacet(String),

    #[error("set not closed under the group action; escaping element {0}")]
    NotClosed(String),

    #[error("graph is disconnected (component sizes {0:?})")]
    Disconnected(Vec<usize>),

    #[error("tournament is not admissible")]
    NotAdmissible,

    #[error("b-coefficients must sum to {expected}, got {got}")]
    BadSigma { expected: i64, got: i64 },

    #[error("even n={0} has no admissible tournament")]
    EvenTournament(usize),

    #[error("0,1 enumeration budget exceeded for {0}")]
    Budget(String),

    #[error("inconsistent assignment: {0}")]
    Inconsistent(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid group element for this space: {0}")]
    BadGroupElement(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn checkpoint_note(path: &Option<PathBuf>) -> String {
    match path {
        Some(p) => format!("; checkpoint written to {}", p.display()),
        None => String::new(),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
