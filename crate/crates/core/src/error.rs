use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("generators have degrees {expected} and {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("group closure exceeds the order cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("permutation {0:?} is not an element of the group")]
    NotInGroup(Vec<usize>),

    /// `gamma * sigma * gamma^-1` is not in the subgroup.
    #[error("subgroup is not normal: conjugating element {sigma} by {gamma} leaves the subgroup")]
    NotNormal { gamma: usize, sigma: usize },

    /// `action[element] * action[generator] != action[element * generator]`.
    #[error("not a representation: relation fails for element {element} times generator {generator}")]
    NotARepresentation { element: usize, generator: usize },

    #[error("subspace is not stable under group element {element} (basis vector {vector})")]
    NotStable { element: usize, vector: usize },

    #[error("action is not trivial: element {element} moves the quotient")]
    NontrivialAction { element: usize },

    #[error("alpha(v) is not A-linear for basis vector {vector} of V")]
    AlphaNotAHom { vector: usize },

    #[error("filtration index q={q} is outside the computed range 1..={len}")]
    FiltrationRange { q: usize, len: usize },

    #[error("resolution of length {length} is too short for degree {degree}")]
    ResolutionTooShort { length: usize, degree: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("module map is not equivariant for element {element}")]
    NotEquivariant { element: usize },

    /// An internal certificate failed; indicates a bug, never bad input.
    #[error("certification failed: {0}")]
    Certification(String),
}
