use thiserror::Error;

/// Errors raised while building or transforming counting systems and monoid tables.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must contain at least one element")]
    EmptyCarrier,
    #[error("index set must contain at least one label")]
    EmptyIndexSet,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`: labels must be non-empty and contain no whitespace or `#`")]
    InvalidLabel(String),
    #[error("{what}: index {index} out of range for carrier of size {size}")]
    BadIndex {
        what: String,
        index: usize,
        size: usize,
    },
    #[error("map `{map}` has {got} entries, expected {expected}")]
    ArityMismatch {
        map: String,
        expected: usize,
        got: usize,
    },
    #[error("maps `{s}` and `{t}` do not commute at element `{x}`")]
    NonCommuting { s: String, t: String, x: String },
    #[error("carrier of {size} elements exceeds the limit of {limit}")]
    CarrierTooLarge { size: usize, limit: usize },
    #[error("index set of {size} labels exceeds the limit of {limit}")]
    IndexSetTooLarge { size: usize, limit: usize },
    #[error("transformation monoid exceeds the limit of {limit} elements")]
    ClosureTooLarge { limit: usize },
    #[error("system is not minimal; unreachable elements: {}", unreachable.join(" "))]
    MinimalityRequired { unreachable: Vec<String> },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("operation requires a single-map system, got {got} maps")]
    SingleMapRequired { got: usize },
    #[error("index sets differ: {left:?} vs {right:?}")]
    IndexSetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("table is not a monoid: {0}")]
    NotAMonoid(String),
    #[error("table is not a commutative monoid")]
    NotCommutativeMonoid,
    #[error("generators do not generate the monoid")]
    GensDoNotGenerate,
    #[error("expected {expected} targets, got {got}")]
    TargetCount { expected: usize, got: usize },
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("compatibility violated for generators {s} and {t}")]
    CompatibilityViolated { s: usize, t: usize },
    #[error("odot table is not total: missing `{s} {t}`")]
    OdotNotTotal { s: String, t: String },
    #[error("declared unit `{0}` is not a left unit of the odot table")]
    OdotUnitInvalid(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
