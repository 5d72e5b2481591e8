use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operation undefined on the void complex")]
    VoidComplex,
    #[error("face {0:?} is not in the complex")]
    FaceNotInComplex(Vec<u32>),
    #[error("vertex labels must be positive integers")]
    BadVertexLabel,
    #[error("complex is not pure")]
    NotPure,
    #[error("vertex sets are not disjoint")]
    NotDisjoint,
    #[error("coloring does not assign a color to vertex {0}")]
    MissingColor(u32),
    #[error("coloring is not balanced on face {0:?}")]
    NotBalanced(Vec<u32>),
    #[error("matrix entries come from different fields")]
    MixedField,
    #[error("field too small for randomized search: {0}")]
    FieldTooSmall(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("guard exceeded: {what} needs {needed}, limit is {limit}")]
    GuardExceeded {
        what: String,
        needed: usize,
        limit: usize,
    },
    #[error("no l.s.o.p. found after {attempts} attempts; facet {facet:?} kept a singular restriction")]
    LsopSearchFailed { attempts: usize, facet: Vec<u32> },
    #[error("the given linear forms are not an l.s.o.p.: facet {0:?} has a singular restriction")]
    NotLsop(Vec<u32>),
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("chambers are not opposite")]
    NotOpposite,
    #[error("not a subcomplex of the ambient complex: face {0:?}")]
    NotSubcomplex(Vec<u32>),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
