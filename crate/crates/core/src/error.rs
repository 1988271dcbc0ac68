use thiserror::Error;

use crate::form::{Form, KdsPoint};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("{0} is not a good point: D and S have different parity")]
    NotGoodPoint(KdsPoint),

    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),

    #[error("invalid word {0:?}: letters must be one of A, B, a, b, R")]
    InvalidWord(String),

    #[error("word {0} contains inverse or R letters, expected only A and B")]
    NotPositiveWord(String),

    #[error("invalid fraction {0:?}")]
    InvalidFraction(String),

    #[error("{0} is a zero-generation point, not a descendant of 1/1")]
    ZeroGeneration(String),

    #[error("{0} and {1} are not Farey neighbours")]
    NotAdjacent(String, String),

    #[error("triple ({0}, {1}, {2}) is not a simple Pythagorean triple with K >= 0")]
    MalformedTriple(i64, i64, i64),

    #[error("{point} is not on the hyperboloid with discriminant {discriminant}")]
    OffSurface { point: KdsPoint, discriminant: i64 },

    #[error("discriminant {0} is not positive")]
    NonPositiveDiscriminant(i64),

    #[error("no integer form has discriminant {0} (residue 2 or 3 mod 4)")]
    NoForms(i64),

    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(i64),

    #[error("discriminant {0} is not a perfect square")]
    NonSquareDiscriminant(i64),

    #[error("{0} lies in a fundamental domain or on its frontier")]
    FundamentalDomain(Form),

    #[error("{0} is not in the fundamental domain H0 (m > 0, n < 0)")]
    NotInH0(Form),

    #[error("{0} is not an interior point of the F_Abar segment")]
    NotOnFAbar(Form),

    #[error("ambiguous step at {0}: both or neither of A f, B f stay in H0")]
    AmbiguousStep(Form),

    #[error("{0} is not parabolic")]
    NotParabolic(Form),

    #[error("the zero form is its own degenerate class")]
    ZeroForm,
}
