//! Error type shared by every module of the crate.

use thiserror::Error;

/// Row or column axis of a multiplication table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Col,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Col => write!(f, "column"),
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum LoopError {
    #[error("malformed input at line {line}: {msg}")]
    MalformedInput { line: usize, msg: String },

    #[error("not a Latin square: {axis} {index} repeats value {value} at positions {first} and {second}")]
    NotLatin {
        axis: Axis,
        index: usize,
        value: usize,
        first: usize,
        second: usize,
    },

    #[error("no two-sided identity element exists")]
    NoIdentity,

    #[error("order {requested} exceeds the cap of {cap}")]
    SizeCap { requested: usize, cap: usize },

    #[error("element {index} out of range for a loop of order {order}")]
    ElemRange { index: usize, order: usize },

    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("powers of element {elem} are not well defined (bracketings disagree)")]
    NotPowerAssociative { elem: usize },

    #[error("element {elem} has no two-sided inverse (1/x != x\\1)")]
    NoInverse { elem: usize },

    #[error("subloop is not normal: {witness}")]
    NotNormal { witness: String },

    #[error("loop is not Moufang: witness ({x},{y},{z})")]
    NotMoufang { x: usize, y: usize, z: usize },

    #[error("permutation group closure exceeded the cap of {cap} elements")]
    GroupCap { cap: usize },

    #[error("weight {requested} exceeds the cap of {cap}")]
    WeightCap { requested: usize, cap: usize },

    #[error("assignment space of {required} evaluations exceeds the budget of {budget}")]
    Budget { required: u128, budget: u64 },

    #[error("no value assigned to variable x{var}")]
    MissingVariable { var: u32 },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, LoopError>;
