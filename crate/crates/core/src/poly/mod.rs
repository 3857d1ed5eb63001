//! Sparse commutative polynomials, polynomial maps, Jacobians and the
//! standard symplectic Poisson bracket.

mod map;
mod poisson;
mod polynomial;

use thiserror::Error;

use crate::exact::{ArithError, LinalgError, Ring};

pub use map::{compose_map, inverse_degree_bound, PolyMap};
pub use poisson::{generator_bracket, poisson_standard};
pub use polynomial::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },
    #[error("the symplectic bracket needs an even number of variables, got {0}")]
    OddVariableCount(usize),
    #[error("half-dimension {n} does not match {nvars} variables")]
    HalfDimension { n: usize, nvars: usize },
    #[error("a map needs one component per variable ({components} components, {nvars} variables)")]
    NotSquare { components: usize, nvars: usize },
    #[error("operation needs a field, got {0}")]
    NotAField(Ring),
    #[error("polynomial division is not exact")]
    NotExactlyDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
