//! Exact arithmetic foundation: rationals, tower fields, polynomials and
//! linear algebra over fields.

pub mod bivariate;
pub mod field;
pub mod matrix;
pub mod modp;
pub mod mpoly;
pub mod rational;
pub mod roots;
pub mod tower;
pub mod univariate;

pub use bivariate::bivariate_gcd;
pub use field::{common_tower, FieldElement, Nested};
pub use matrix::{kernel_basis, DenseMatrix, ExactField, LinearField, PrimeField};
pub use mpoly::{det3, det_poly, jacobian_det, MPoly, Monomial, Var};
pub use rational::{q, qi, Rational};
pub use tower::{tower_extend, Level, Tower};
pub use univariate::UniPoly;

use thiserror::Error;

/// Errors raised by the arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// Division by the zero element.
    #[error("division by zero")]
    DivisionByZero,
    /// Operands live in towers where neither is a prefix of the other.
    #[error("incompatible towers")]
    IncompatibleTowers,
    /// The element uses generators absent from the requested subfield.
    #[error("element does not lie in the requested subfield")]
    NotInSubfield,
    /// The polynomial has a root in the base field.
    #[error("polynomial is reducible; it has the root {0}")]
    Reducible(Box<FieldElement>),
    /// Generator name already used in the tower.
    #[error("generator name `{0}` already used")]
    NameCollision(String),
    /// Minimal polynomial is not monic.
    #[error("minimal polynomial is not monic")]
    NotMonic,
    /// Only quadratic and cubic levels are supported.
    #[error("unsupported minimal polynomial degree {0}")]
    DegreeUnsupported(usize),
    /// Neither a root nor an irreducibility certificate was found.
    #[error("irreducibility could not be decided")]
    IrreducibilityUndecided,
    /// The matrix is not invertible.
    #[error("singular matrix")]
    SingularMatrix,
    /// Shapes do not fit.
    #[error("dimension mismatch")]
    DimensionMismatch,
    /// Nested coefficient list does not match the tower shape.
    #[error("malformed nested coefficient list")]
    MalformedCoefficient,
}
