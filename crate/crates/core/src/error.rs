use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("composed differentials are not zero: d_out * d_in != 0")]
    NotComposable,

    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("generator {0} is not a permutation")]
    NotPermutation(usize),

    #[error("group has {size} elements, cap is {cap}")]
    GroupTooLarge { size: usize, cap: usize },

    #[error("action matrix for element {0} is not unimodular")]
    NotUnimodular(usize),

    #[error("action does not respect the group law: {0}")]
    RelationViolation(String),

    #[error("map is not Galois-equivariant (fails for element {0})")]
    NotEquivariant(usize),

    #[error("lattices live over different groups")]
    GroupMismatch,

    #[error("group is not cyclic")]
    NotCyclic,

    #[error("cochain dimension {dimension} exceeds cap {cap}")]
    BudgetExceeded { dimension: usize, cap: usize },

    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("illegal root system type {0}")]
    IllegalCartanType(String),

    #[error("permutation {0:?} is not a Dynkin diagram automorphism")]
    NotDiagramAutomorphism(Vec<usize>),

    #[error("character lattice is not stable under the diagram action")]
    UnstableLattice,

    #[error("isogeny data invalid: {0}")]
    BadIsogeny(String),

    #[error("restriction map is invalid: {0}")]
    BadRestriction(String),

    #[error("group has free rank {0}; expected a finite group")]
    NotFinite(usize),

    #[error("resolution invalid: {0}")]
    BadResolution(String),

    #[error("schema violation at {field}: {message}")]
    Schema { field: String, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Whether the error comes from malformed input rather than from a computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Schema { .. }
                | Error::Shape(_)
                | Error::NonAssociative(..)
                | Error::InvalidGroup(_)
                | Error::NotPermutation(_)
                | Error::IllegalCartanType(_)
        )
    }
}
