use thiserror::Error;

use crate::relation::TwoWayType;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("order must be between 1 and {max}, got {order}")]
    InvalidOrder { order: usize, max: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("arc ({u}, {v}) has an endpoint outside 0..{order}")]
    VertexOutOfRange { u: usize, v: usize, order: usize },
    #[error("digraph is undirected (every arc has its reverse)")]
    Undirected,
    #[error("digraph is not strongly connected: no path from {from} to {to}")]
    NotStronglyConnected { from: usize, to: usize },
    #[error("unknown two-way distance type {0}")]
    UnknownType(TwoWayType),
    #[error("circuit length must be at least 2, got {0}")]
    CircuitTooShort(usize),
    #[error("({0}, {1}) is not an arc")]
    NotAnArc(usize, usize),
    #[error("arc type {0} is not present")]
    TypeAbsent(TwoWayType),
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("invalid Cayley spec: {0}")]
    InvalidCayley(String),
    #[error("invalid search range: {0}")]
    InvalidRange(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
