//! Finitely presented groups, free differential calculus, braid closures and
//! cohomology classes.

mod braid;
mod fox;
mod parse;
mod presentation;
mod word;

use thiserror::Error;

pub use braid::{braid_to_knot_group, closure_components, strand_count};
pub use fox::{
    fox_derivative, fox_derivative_in, fox_jacobian_in, fundamental_identity_holds, FreeGroupRing, FreeGroupRingElement, GroupRingMap,
};
pub use parse::{parse_presentation, parse_presentation_json, parse_word, JsonPresentation, JsonWord};
pub use presentation::{default_generator_names, Abelianization, CohomologyClass, GroupPresentation};
pub use word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("relator uses generator index {0} which is not declared")]
    UnknownGenerator(usize),
    #[error("generator '{0}' declared twice")]
    DuplicateGenerator(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("braid closure has {components} components, not a knot")]
    NotAKnot { components: usize },
    #[error("braid letters must be nonzero")]
    InvalidBraidLetter,
    #[error("abelianization has no free part")]
    NoFreeQuotient,
    #[error("class does not vanish on relator {relator}")]
    PhiNotHomomorphism { relator: usize },
    #[error("expected {expected} values, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
