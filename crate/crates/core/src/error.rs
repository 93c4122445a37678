//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative value")]
    NegativeSqrt,
    #[error("witness coefficient does not fit in i64")]
    WitnessOverflow,
}

/// Syntax or semantic error in a direction expression, with byte position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }

    pub fn shift(mut self, offset: usize) -> Self {
        self.pos += offset;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DirectionError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("direction needs between 2 and 10 components, got {0}")]
    BadArity(usize),
    #[error("first component must evaluate to exactly 1")]
    FirstComponentNotOne,
    #[error("component {index} is not strictly positive")]
    NonPositiveComponent { index: usize },
    #[error("direction mixes indeterminates and sqrt; use one backend only")]
    MixedBackends,
    #[error("symbolic direction must be the generic (1, t1, ..., td)")]
    NonGenericSymbolic,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    /// A candidate coefficient came within epsilon of {0, 1}.
    #[error("point within {margin:e} of a piece boundary")]
    NearBoundary { margin: f64 },
    #[error("point lies outside the window")]
    Outside,
    #[error("operation requires a numeric direction")]
    SymbolicUnsupported,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("orbit hit a piece boundary at step {step} (margin {margin:e}); re-sample the parameter")]
    NearBoundary { step: i64, margin: f64 },
    #[error("no generic parameter found after {attempts} attempts")]
    SamplingExhausted { attempts: u32 },
    #[error("billiard trajectory hit a corner at step {step}")]
    CornerHit { step: u64 },
    #[error("start point must lie on exactly one face of the cube")]
    BadStartPoint,
    #[error("alphabet size {0} exceeds 9; the word format uses single digits")]
    AlphabetTooLarge(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LanguageError {
    #[error("factor length {n} exceeds word length {len}")]
    FactorTooLong { n: usize, len: usize },
    #[error("closed-form pair frequencies require d = 2, got d = {0}")]
    NotCubic(usize),
    #[error("direction cannot be reduced to the chamber theta1 > theta2 > 0, theta1 > 1 (ties within epsilon)")]
    ChamberViolation,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BalanceError {
    #[error("checkpoint {checkpoint} exceeds word length {len}")]
    CheckpointTooLarge { checkpoint: usize, len: usize },
    #[error("need at least 3 checkpoints, got {0}")]
    TooFewCheckpoints(usize),
    #[error("checkpoints must be strictly increasing")]
    UnorderedCheckpoints,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReportError {
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Balance(#[from] BalanceError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BrsError {
    #[error("cell construction requires d = 2, got d = {0}")]
    NotCubic(usize),
    #[error("direction cannot be reduced to the chamber theta1 > theta2 > 0, theta1 > 1 (ties within epsilon)")]
    ChamberViolation,
    #[error("degenerate intersection: a predicate is within epsilon of zero but not symbolically zero")]
    DegenerateIntersection,
    #[error("expected 7 nonempty cells, found {0}")]
    UnexpectedCellCount(usize),
    #[error("generator {index} has no valid certificate in the return group")]
    UncertifiedGenerator { index: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
