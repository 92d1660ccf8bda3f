use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("not a group law: {0}")]
    NotGroup(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group of order {order} exceeds the size bound {bound}")]
    SizeBound { order: usize, bound: usize },
    #[error("action is not well defined: {0}")]
    BadAction(String),
    #[error("infinite group where a finite one is required: {0}")]
    Infinite(String),
    #[error("not finite index: {0}")]
    NotFiniteIndex(String),
    #[error("wild case unsupported: {0}")]
    Wild(String),
    #[error("wrong place kind: {0}")]
    PlaceKind(String),
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("degree bound {bound} exceeds the limit {limit}")]
    DegreeBound { bound: u64, limit: u64 },
    #[error("model has {orbits} orbits, above the limit {limit}")]
    TooManyOrbits { orbits: usize, limit: usize },
    #[error("incompatible pair at place `{0}`")]
    Incompatible(String),
    #[error("obstruction nonzero: {0}")]
    Obstruction(String),
    #[error("model too small: {0}")]
    ModelTooSmall(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
