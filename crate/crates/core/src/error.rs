use thiserror::Error;

use crate::index::MultiIndex;
use crate::poly::FFPoly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid step: omega must be nonzero")]
    InvalidStep,

    #[error("basis mismatch: cannot combine polynomials with omega {left} and omega {right}")]
    BasisMismatch {
        left: Box<Rational>,
        right: Box<Rational>,
    },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("degenerate seed: the coefficient at the zero multi-index must be nonzero")]
    DegenerateSeed,

    #[error("index {index} is beyond the truncation order {order}")]
    OutOfOrder { index: MultiIndex, order: usize },

    #[error("component {component} of {index} cannot be decremented below zero")]
    NegativeIndex { index: MultiIndex, component: usize },

    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("family is not Delta-omega-Appell: difference rule fails at {index}")]
    NotAppell {
        index: MultiIndex,
        residual: Box<FFPoly>,
    },

    #[error("missing family member {0}")]
    MissingMember(MultiIndex),

    #[error("moment functional requires omega = 1, found {0}")]
    MomentBasis(Rational),

    #[error("moment functional weight must be positive, found {0}")]
    NonPositiveWeight(Rational),

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
