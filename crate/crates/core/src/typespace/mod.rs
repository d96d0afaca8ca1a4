//! One-types, two-types, finite structures and model checking.

mod eval;
mod structure;
mod types;

use thiserror::Error;

use crate::formula::Var;

pub use eval::{
    check_snf, evaluate, expand_model, one_type_of, realized_one_types, realized_two_types,
    two_type_of, Assignment, CompiledFormula, SnfCheck, TypeEvaluator,
};
pub use structure::Structure;
pub use types::{OneType, TwoType, TypeShape, MAX_TWO_TYPE_WIDTH};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("element {element} is outside the domain 0..{size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("two-types are defined for distinct elements only (got ({0}, {0}))")]
    DiagonalPair(usize),
    #[error(
        "vocabulary with n={n}, m={m} exceeds the {MAX_TWO_TYPE_WIDTH}-atom limit for two-types"
    )]
    TooManyAtoms { n: usize, m: usize },
    #[error("bit pattern {bits:#x} does not fit {width} atoms")]
    PatternOutOfRange { bits: u64, width: usize },
    #[error("type was built over a different vocabulary shape")]
    ShapeMismatch,
    #[error("vocabularies do not match")]
    VocabularyMismatch,
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("no predicate with index {index}")]
    PredicateIndex { index: usize },
    #[error("variable {0} is free but unassigned")]
    UnboundVariable(Var),
    #[error("formula must be quantifier-free")]
    NotQuantifierFree,
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}
