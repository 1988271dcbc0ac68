//! Exact classification of integer binary quadratic forms `m x^2 + n y^2 + k xy`
//! under `SL(2, Z)`, read off the geometry of coefficient space: the
//! hyperboloids `K^2 + D^2 - S^2 = Delta` and their partition into
//! fundamental domains and generation domains.

pub mod action;
pub mod classify;
pub mod error;
pub mod farey;
pub mod form;
pub mod partition;
pub mod report;

pub use action::{
    apply_generator, apply_word, lift_sl2, necklace, vsu_normal_form, Generator, GeneratorWord,
    Sl2Matrix, TMatrix, VsuForm,
};
pub use classify::{
    chain_of, classify_parabolic, cycle_of, enumerate_classes, enumerate_classes_elliptic,
    enumerate_h0, reduce, reduce_definite, seed_point, symmetry_type, Chain, ClassList,
    ClassPayload, Cycle, OrbitClass, SymmetryType,
};
pub use error::{Error, Result};
pub use farey::{
    farey_son, pythagorean_of_rational, rational_of_pythagorean, rational_of_word,
    word_of_rational, Fraction, PythagoreanTriple, SignedFraction,
};
pub use form::{
    classify_discriminant, exact_sqrt, isqrt, Discriminant, DiscriminantKind, Form, Involution,
    KdsPoint,
};
pub use partition::{
    classify_form, classify_region, domain_word, domain_word_of_form, generation_of,
    is_domain_frontier, Region, RegionLabel, Segment,
};
pub use report::{ClassReport, DiscriminantReport, SweepRow};
