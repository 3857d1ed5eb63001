//! Reduction mod `p`, the induced map on the center, its certification,
//! constructive inversion and multi-prime suites.

mod center_map;
pub mod corpus;
mod invert;
mod suite;

use thiserror::Error;

use crate::exact::{LinalgError, Ring};
use crate::poly::PolyError;
use crate::weyl::{RelationFailure, WeylError};

pub use center_map::{center_map, verify_center_map, CenterMapResult, CenterMapVerification, CentralityWitness};
pub use invert::{invert_weyl_endo, weyl_inverse_degree_bound};
pub use suite::{run_suite, PrimeRecord, RationalRecord, SuiteReport};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("endomorphism was built without checking its relations")]
    Unverified,
    #[error("not an endomorphism: {0}")]
    Relations(RelationFailure),
    #[error("expected coefficients in {expected}, found {found}")]
    RingMismatch { expected: String, found: Ring },
    /// `f_p(y_i)^p` is not central. This would contradict the theory, so it
    /// is surfaced with the offending term rather than ignored.
    #[error("f_p(y{generator})^p is not central (term with exponents {exponents:?})")]
    NotCentral { generator: usize, exponents: Vec<u32> },
    #[error("prime {0} requested twice")]
    DuplicatePrime(u64),
    #[error("degree bound must be at least 1")]
    ZeroDegreeBound,
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
