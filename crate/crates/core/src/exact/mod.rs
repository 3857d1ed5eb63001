//! Exact scalars over ℤ, ℚ and 𝔽_p, and dense exact linear algebra.

mod matrix;
mod prime;
mod scalar;

use thiserror::Error;

pub use matrix::{solve_linear, solve_linear_many, DenseMatrix, LinearSolution};
pub use prime::{primes_below, Prime, MAX_PRIME};
pub use scalar::{ArithOp, Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not defined over {0}")]
    NotAField(Ring),
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("{value} has no image in {ring}")]
    NotRepresentable { value: String, ring: Ring },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported word size")]
    PrimeTooLarge(u64),
    #[error("unknown ring `{0}` (expected Z, Q or Fp:<p>)")]
    UnknownRing(String),
    #[error("`{0}` is not a natural number")]
    NotANumber(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },
    #[error("linear solving needs a field, got {0}")]
    NotAField(Ring),
    #[error("shape mismatch: {left:?} vs {right:?}")]
    Shape {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("rows have different lengths")]
    Ragged,
}
