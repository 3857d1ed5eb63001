//! Weyl algebras `A_{n,R}` over ℤ, ℚ and 𝔽_p in normal-ordered form, their
//! endomorphisms, and the center in characteristic `p`.

mod center;
mod element;
mod endo;
mod signature;

use thiserror::Error;

use crate::exact::{ArithError, Ring};
use crate::poly::PolyError;

pub use center::{
    bracket_of_lifts, canonical_poisson, embed_central, extract_center_poly, is_central,
    is_central_by_commutators,
};
pub use element::WeylElement;
pub use endo::{RelationFailure, WeylEndo};
pub use signature::WeylSignature;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("signature mismatch: n = {left} vs n = {right}")]
    SignatureMismatch { left: usize, right: usize },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("exponent vectors must have length {expected}, found {found}")]
    ExponentLength { expected: usize, found: usize },
    #[error("an endomorphism needs {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("not an endomorphism: {0}")]
    Relations(RelationFailure),
    #[error("the center is only modelled over a prime field, got {0}")]
    NotPrimeField(Ring),
    #[error("element is not central (term with exponents {exponents:?})")]
    NotCentral { exponents: Vec<u32> },
    #[error("commutator coefficient {coefficient} is not divisible by {p}")]
    BracketNotDivisible { p: u64, coefficient: String },
    #[error("bracket quotient is not central")]
    BracketNotCentral,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
