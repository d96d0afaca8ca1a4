//! Small models for two-variable logic.
//!
//! Any finite model of a two-variable sentence in Scott normal form can be
//! viewed as a complete directed graph whose vertices are colored by
//! one-types and whose edges are colored by two-types. The [`compressor`]
//! rebuilds every color class with more than one vertex at a fixed size
//! while keeping the kings (singleton classes), the profiles of the other
//! vertices, and every edge color that occurs between any two classes. The
//! rebuilt graph is again a model, which bounds the size of the smallest
//! model and makes the bounded search in [`satengine`] a decision procedure.
//!
//! - [`formula`]: syntax, parsing, Scott normal form.
//! - [`typespace`]: types, structures, evaluation and model checking.
//! - [`tournament`]: vertex- and edge-colored tournaments with fixed
//!   orientation between color classes, and the bridge to structures.
//! - [`compressor`]: the recoloring construction and its property checker.
//! - [`satengine`]: size bounds, brute-force search, the decision
//!   procedure and seeded generators.

pub mod compressor;
pub mod formula;
pub mod satengine;
pub mod tournament;
pub mod typespace;

pub use compressor::{compress, verify_properties, CompressionConfig, Mode, PropertyReport};
pub use formula::{parse_formula, to_scott_normal_form, Formula, ScottNormalForm, Var, Vocabulary};
pub use satengine::{brute_force_sat, decide_sat, size_bound, SizeBound};
pub use tournament::{from_structure, to_structure, ColoredTournament};
pub use typespace::{check_snf, evaluate, OneType, Structure, TwoType};
