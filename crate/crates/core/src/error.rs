use thiserror::Error;

/// Errors raised by group construction and by the operators built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("multiplication table row {row} has {len} entries, expected {expected}")]
    RaggedTable { row: usize, len: usize, expected: usize },
    #[error("table entry {x}*{y} = {value} is out of range for order {order}")]
    EntryOutOfRange { x: usize, y: usize, value: usize, order: usize },
    #[error("identity axiom fails: no two-sided identity in the table")]
    NoIdentity,
    #[error("inverse axiom fails: element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({x}, {y}, {z}): (xy)z = {left}, x(yz) = {right}")]
    NotAssociative { x: usize, y: usize, z: usize, left: usize, right: usize },
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("element {element} is not in a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup {inner:?} is not contained in {outer:?}")]
    NotContained { inner: Vec<usize>, outer: Vec<usize> },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("function lives on {found}, expected {expected}")]
    SpaceMismatch { expected: String, found: String },
    #[error("rho-function is invalid: {0}")]
    InvalidRho(String),
    #[error("measure is invalid: {0}")]
    InvalidMeasure(String),
    #[error("function is not invariant: {0}")]
    NotInvariant(String),
    #[error("operator value at coset {coset} depends on the representative")]
    NotWellDefined { coset: usize },
    #[error("{k:?} and {h:?} are not conjugate by element {g0}")]
    InvalidWitness { k: Vec<usize>, h: Vec<usize>, g0: usize },
    #[error("sample z = 0 is not an element of the multiplicative group")]
    ZeroSample,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid operator description: {0}")]
    InvalidOperator(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}
