//! Size bounds, exhaustive model search, the bounded decision procedure
//! and seeded generators.

mod bound;
mod decide;
mod random;
mod search;

pub use bound::{padded_paper_bound, size_bound, BoundError, SizeBound};
pub use decide::{decide_sat, Decision, Outcome};
pub use random::{
    random_sentence, random_structure, random_tournament, snf_of_structure, GenError, SentenceShape,
};
pub use search::{
    brute_force_sat, search_size, Problem, SearchError, SearchLimits, DEFAULT_CEILING,
};
