//! Exact linear algebra over `Q` and `F_p`.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, FieldElem};
pub use matrix::Matrix;
pub use subspace::{
    image_basis, induced_map_on_quotients, kernel_basis, preimage, rank, subspace_intersection,
    subspace_sum, Inclusion, QuotientBasis, Subspace,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("cannot read {0:?} as an element of {1}")]
    Literal(String, Field),
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("fields differ: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("divisor is not a subspace of the quotiented space")]
    NotNested,
    #[error("induced map is not well defined: {0}")]
    Precondition(Inclusion),
}
