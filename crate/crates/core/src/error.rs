use thiserror::Error;

/// Errors raised across the library. Variants carry the short message that
/// the command-line front end prints verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no data")]
    NoData,
    #[error("missing orbit distance for k = {0}")]
    MissingDistance(u64),
    #[error("incomplete audit data: pair ({0}, {1}) missing")]
    IncompleteAudit(i64, i64),
    #[error("invalid constants: {0}")]
    InvalidConstants(String),
    #[error("not a curve class: ({0}, {1})")]
    NotACurveClass(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not in SL(2,Z): determinant {0}")]
    NotUnimodular(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("duplicate puncture at {0}")]
    DuplicatePuncture(String),
    #[error("empty puncture set")]
    EmptyPunctures,
    #[error("invalid crossing sequence: {0}")]
    BadCrossings(String),
    #[error("inessential")]
    Inessential,
    #[error("not a simple curve: {0}")]
    NotSimple(String),
    #[error("invalid normal coordinates: {0}")]
    BadWeights(String),
    #[error("triangulation mismatch")]
    TriangulationMismatch,
    #[error("separating curve")]
    Separating,
    #[error("dies under forgetting")]
    DiesUnderForgetting,
    #[error("not a subset of the puncture set")]
    NotSubset,
    #[error("not f-invariant")]
    NotInvariant,
    #[error("flip failed: {0}")]
    Flip(String),
    #[error("self-crossing at {0}")]
    SelfCrossing(String),
    #[error("separating/inessential fine curve")]
    InessentialFine,
    #[error("perturb inputs: {0}")]
    NonTransverse(String),
    #[error("puncture {0} touches a curve")]
    PunctureOnCurve(String),
    #[error("not in minimal position rel P: empty bigon with vertices {0}")]
    NotMinimal(String),
    #[error("not hyperbolic: |trace| <= 2")]
    NotAnosov,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
