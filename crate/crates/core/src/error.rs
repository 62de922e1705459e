use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("morphism is not well defined: {0}")]
    IllDefined(String),
    #[error("square does not commute: {0}")]
    NotCommuting(String),
    #[error("not a homotopy: {0}")]
    NotHomotopy(String),
    #[error("morphisms are not parallel")]
    NotParallel,
    #[error("object is outside the free-target subcategory: {0}")]
    NotInC(String),
    #[error("object is not discrete (arrow is not a monomorphism)")]
    NotDiscrete,
    #[error("module is infinite")]
    Infinite,
    #[error("enumeration bound exceeded: {size} > {bound}")]
    BoundExceeded { size: String, bound: u64 },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("retry budget exhausted: {0}")]
    RetriesExhausted(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
