//! Exhaustive model search over domains `0..N`.
//!
//! A candidate structure of size `N` is the bit string obtained by listing,
//! for `b = 0, 1, …, N−1`, the one-type of `b` (unary atoms, then self
//! loops, in vocabulary order) followed by the pairs `(a, b)` for `a < b`
//! (all `r(a,b)` bits, then all `r(b,a)` bits). Candidates are visited in
//! lexicographic order of that string, smallest domain first, so the model
//! returned is the least one in this order.

use std::collections::HashMap;

use thiserror::Error;

use crate::formula::{Formula, ScottNormalForm, SnfError, Vocabulary};
use crate::typespace::{
    Assignment, CompiledFormula, OneType, Structure, TwoType, TypeError, TypeEvaluator, TypeShape,
};

pub const DEFAULT_CEILING: u64 = 1 << 26;

/// Widest one-type the search will enumerate.
const MAX_ONE_TYPE_WIDTH: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search at domain size {size} exceeds the resource ceiling of {ceiling}")]
    ResourceExceeded { size: usize, ceiling: u64 },
    #[error("formula has free variables")]
    NotASentence,
    #[error("one-types with {0} atoms are too wide to enumerate")]
    TooWide(usize),
    #[error("witness failed its own check: {0}")]
    UncheckedWitness(String),
    #[error(transparent)]
    Bound(#[from] super::bound::BoundError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Snf(#[from] SnfError),
}

/// Caps the work done per domain size: the number of candidates for a
/// plain sentence, the number of search nodes for a normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub ceiling: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            ceiling: DEFAULT_CEILING,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Problem<'a> {
    /// Any sentence; candidates are enumerated one by one and evaluated.
    Formula {
        vocabulary: &'a Vocabulary,
        formula: &'a Formula,
    },
    /// Normal form; searched depth-first with `α` checked as soon as a pair
    /// is fixed and each `βᵢ` once an element's pairs are all fixed.
    Snf(&'a ScottNormalForm),
}

/// Least model with at most `max_size` elements, if any. Domains start at
/// one element.
pub fn brute_force_sat(
    problem: Problem<'_>,
    max_size: usize,
    limits: SearchLimits,
) -> Result<Option<Structure>, SearchError> {
    for size in 1..=max_size {
        if let Some(s) = search_size(problem, size, limits)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Least model with exactly `size` elements, if any.
pub fn search_size(
    problem: Problem<'_>,
    size: usize,
    limits: SearchLimits,
) -> Result<Option<Structure>, SearchError> {
    match problem {
        Problem::Formula {
            vocabulary,
            formula,
        } => enumerate(vocabulary, formula, size, limits),
        Problem::Snf(snf) => SnfSearch::new(snf, size, limits)?.run(),
    }
}

/// Positions of one-type atoms in the candidate string, most significant
/// first.
fn one_type_from_chunk(shape: TypeShape, chunk: u64) -> OneType {
    let w = shape.one_width();
    let mut bits = 0u64;
    for i in 0..w {
        bits |= (chunk >> (w - 1 - i) & 1) << i;
    }
    OneType::from_bits(shape, bits).expect("chunk fits the one-type width")
}

/// `(forward, backward)` masks of a pair chunk.
fn pair_from_chunk(m: usize, chunk: u64) -> (u64, u64) {
    let w = 2 * m;
    let mut fwd = 0u64;
    let mut bwd = 0u64;
    for j in 0..m {
        fwd |= (chunk >> (w - 1 - j) & 1) << j;
        bwd |= (chunk >> (w - 1 - m - j) & 1) << j;
    }
    (fwd, bwd)
}

fn candidate_bits(shape: TypeShape, size: usize) -> usize {
    size * shape.one_width() + size * size.saturating_sub(1) * shape.m()
}

fn enumerate(
    vocab: &Vocabulary,
    phi: &Formula,
    size: usize,
    limits: SearchLimits,
) -> Result<Option<Structure>, SearchError> {
    if !phi.is_sentence() {
        return Err(SearchError::NotASentence);
    }
    let shape = TypeShape::of(vocab)?;
    let compiled = CompiledFormula::new(phi, vocab)?;
    let width = candidate_bits(shape, size);
    let count = if width < 64 { 1u64 << width } else { u64::MAX };
    if width >= 64 || count > limits.ceiling {
        return Err(SearchError::ResourceExceeded {
            size,
            ceiling: limits.ceiling,
        });
    }
    let (w1, pw) = (shape.one_width(), 2 * shape.m());
    for code in 0..count {
        let mut s = Structure::new(vocab.clone(), size);
        let mut rest = width;
        let mut take = |w: usize| {
            rest -= w;
            (code >> rest) & ((1u64 << w) - 1)
        };
        for b in 0..size {
            s.set_one_type(b, one_type_from_chunk(shape, take(w1)))?;
            for a in 0..b {
                let (fwd, bwd) = pair_from_chunk(shape.m(), take(pw));
                for j in 0..shape.m() {
                    s.set_binary(j, a, b, fwd >> j & 1 == 1)?;
                    s.set_binary(j, b, a, bwd >> j & 1 == 1)?;
                }
            }
        }
        if compiled.eval(&s, Assignment::empty())? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Memoized truth table of a quantifier-free formula over packed two-types.
struct Table {
    eval: TypeEvaluator,
    dense: Vec<u8>,
    sparse: HashMap<u64, bool>,
}

impl Table {
    const DENSE_LIMIT: usize = 22;

    fn new(eval: TypeEvaluator) -> Self {
        let width = eval.shape().two_width();
        let dense = if width <= Self::DENSE_LIMIT {
            vec![0u8; 1 << width]
        } else {
            Vec::new()
        };
        Table {
            eval,
            dense,
            sparse: HashMap::new(),
        }
    }

    fn get(&mut self, bits: u64) -> bool {
        if self.dense.is_empty() {
            let eval = &self.eval;
            return *self
                .sparse
                .entry(bits)
                .or_insert_with(|| eval.eval_bits(bits));
        }
        let slot = &mut self.dense[bits as usize];
        if *slot == 0 {
            *slot = if self.eval.eval_bits(bits) { 2 } else { 1 };
        }
        *slot == 2
    }
}

struct SnfSearch<'a> {
    snf: &'a ScottNormalForm,
    shape: TypeShape,
    size: usize,
    alpha: Table,
    betas: Vec<Table>,
    types: Vec<OneType>,
    /// `(forward, backward)` masks of pair `(a, b)`, `a < b`, at `b*(b-1)/2 + a`.
    pairs: Vec<(u64, u64)>,
    nodes: u64,
    ceiling: u64,
}

impl<'a> SnfSearch<'a> {
    fn new(
        snf: &'a ScottNormalForm,
        size: usize,
        limits: SearchLimits,
    ) -> Result<Self, SearchError> {
        let shape = TypeShape::of(&snf.vocabulary)?;
        if shape.one_width() > MAX_ONE_TYPE_WIDTH {
            return Err(SearchError::TooWide(shape.one_width()));
        }
        let alpha = Table::new(TypeEvaluator::new(&snf.alpha, &snf.vocabulary)?);
        let betas = snf
            .betas
            .iter()
            .map(|b| TypeEvaluator::new(b, &snf.vocabulary).map(Table::new))
            .collect::<Result<Vec<_>, _>>()?;
        let zero = OneType::from_bits(shape, 0)?;
        Ok(SnfSearch {
            snf,
            shape,
            size,
            alpha,
            betas,
            types: vec![zero; size],
            pairs: vec![(0, 0); size * size.saturating_sub(1) / 2],
            nodes: 0,
            ceiling: limits.ceiling,
        })
    }

    fn run(mut self) -> Result<Option<Structure>, SearchError> {
        if self.size == 0 {
            return Ok(None);
        }
        if self.type_step(0)? {
            Ok(Some(self.build()?))
        } else {
            Ok(None)
        }
    }

    fn tick(&mut self) -> Result<(), SearchError> {
        self.nodes += 1;
        if self.nodes > self.ceiling {
            return Err(SearchError::ResourceExceeded {
                size: self.size,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    fn two_type(&self, a: usize, b: usize) -> TwoType {
        if a == b {
            return self.types[a].doubled();
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (fwd, bwd) = self.pairs[hi * (hi - 1) / 2 + lo];
        let t = TwoType::from_parts(self.types[lo], self.types[hi], fwd, bwd);
        if a == lo {
            t
        } else {
            t.invert()
        }
    }

    /// Tries every one-type for element `b`.
    fn type_step(&mut self, b: usize) -> Result<bool, SearchError> {
        let w = self.shape.one_width();
        for chunk in 0..1u64 << w {
            self.tick()?;
            let t = one_type_from_chunk(self.shape, chunk);
            if !self.alpha.get(t.doubled().bits()) {
                continue;
            }
            self.types[b] = t;
            let done = if b == 0 {
                self.after_element(0)?
            } else {
                self.pair_step(0, b)?
            };
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Tries every relation pattern for the pair `(a, b)`, `a < b`.
    fn pair_step(&mut self, a: usize, b: usize) -> Result<bool, SearchError> {
        let m = self.shape.m();
        for chunk in 0..1u64 << (2 * m) {
            self.tick()?;
            let (fwd, bwd) = pair_from_chunk(m, chunk);
            let t = TwoType::from_parts(self.types[a], self.types[b], fwd, bwd);
            if !self.alpha.get(t.bits()) || !self.alpha.get(t.invert().bits()) {
                continue;
            }
            self.pairs[b * (b - 1) / 2 + a] = (fwd, bwd);
            let last = self.size - 1;
            if b == last && !self.witnessed(a) {
                continue;
            }
            let done = if a + 1 < b {
                self.pair_step(a + 1, b)?
            } else {
                self.after_element(b)?
            };
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Element `b` and all pairs below it are fixed.
    fn after_element(&mut self, b: usize) -> Result<bool, SearchError> {
        if b + 1 < self.size {
            return self.type_step(b + 1);
        }
        Ok(self.witnessed(b))
    }

    /// Every `βᵢ` has a witness for `a`; all pairs at `a` must be fixed.
    fn witnessed(&mut self, a: usize) -> bool {
        for i in 0..self.betas.len() {
            let found = (0..self.size).any(|b| {
                let bits = self.two_type(a, b).bits();
                self.betas[i].get(bits)
            });
            if !found {
                return false;
            }
        }
        true
    }

    fn build(&self) -> Result<Structure, SearchError> {
        let mut s = Structure::new(self.snf.vocabulary.clone(), self.size);
        for b in 0..self.size {
            s.set_one_type(b, self.types[b])?;
            for a in 0..b {
                s.set_pair_relations(a, b, self.two_type(a, b))?;
            }
        }
        Ok(s)
    }
}
