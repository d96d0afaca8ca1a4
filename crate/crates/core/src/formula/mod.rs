//! Two-variable sentences: vocabularies, syntax trees, the ASCII grammar
//! and conversion to Scott normal form.

mod ast;
mod parser;
mod snf;
mod vocab;

pub use ast::{print_formula, Formula, FreeVars, Quantifier, Var};
pub use parser::{parse_formula, parse_formula_file, write_formula_file, ParseError};
pub use snf::{to_scott_normal_form, Definition, ScottNormalForm, SnfError};
pub use vocab::{is_predicate_name, Arity, Vocabulary, VocabularyError, FRESH_PREFIX};

pub(crate) use vocab::HeaderReader;
