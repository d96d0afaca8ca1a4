//! Seeded generators for graphs, structures and sentences, and the
//! sentence a given structure satisfies by construction.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::{Formula, ScottNormalForm, Var, Vocabulary};
use crate::tournament::{Color, ColoredTournament, EdgeColor};
use crate::typespace::{realized_one_types, realized_two_types, Structure, TwoType, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{given} class sizes given for {k} colors")]
    SizeCount { k: u64, given: usize },
    #[error("class sizes must be at least 1")]
    EmptyClass,
    #[error("edge colors needed but the alphabet is empty")]
    NoEdgeColors,
    #[error("normal form of a structure needs a non-empty domain")]
    EmptyDomain,
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// Valid graph in which color `i` has `class_sizes[i]` vertices. Vertex
/// ids are shuffled across classes; edge colors, the orientation between
/// each pair of colors and the direction of each edge inside a class are
/// drawn uniformly.
pub fn random_tournament(
    k: u64,
    l: u64,
    class_sizes: &[usize],
    seed: u64,
) -> Result<ColoredTournament, GenError> {
    if class_sizes.len() as u64 != k {
        return Err(GenError::SizeCount {
            k,
            given: class_sizes.len(),
        });
    }
    if class_sizes.contains(&0) {
        return Err(GenError::EmptyClass);
    }
    let total: usize = class_sizes.iter().sum();
    if total > 1 && l == 0 {
        return Err(GenError::NoEdgeColors);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors: Vec<Color> = class_sizes
        .iter()
        .enumerate()
        .flat_map(|(c, &n)| std::iter::repeat_n(Color(c as u64), n))
        .collect();
    colors.shuffle(&mut rng);
    let mut g = ColoredTournament::new(k, l);
    for &c in &colors {
        g.add_vertex(c);
    }
    for c1 in 0..k {
        for c2 in c1 + 1..k {
            if rng.gen::<bool>() {
                g.set_orientation(Color(c1), Color(c2));
            } else {
                g.set_orientation(Color(c2), Color(c1));
            }
        }
    }
    for b in 0..total {
        for a in 0..b {
            let d = EdgeColor(rng.gen_range(0..l));
            let (ca, cb) = (colors[a], colors[b]);
            let forward = if ca == cb {
                rng.gen::<bool>()
            } else {
                g.orientation(ca, cb) == Some((ca, cb))
            };
            let (from, to) = if forward { (a, b) } else { (b, a) };
            g.set_edge(from, to, d).expect("ids in range");
        }
    }
    Ok(g)
}

/// Structure of the given size with every fact present with probability ½.
pub fn random_structure(vocab: &Vocabulary, size: usize, seed: u64) -> Structure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Structure::new(vocab.clone(), size);
    for p in 0..vocab.n() {
        for a in 0..size {
            s.set_unary(p, a, rng.gen()).expect("in range");
        }
    }
    for r in 0..vocab.m() {
        for a in 0..size {
            for b in 0..size {
                s.set_binary(r, a, b, rng.gen()).expect("in range");
            }
        }
    }
    s
}

/// A normal form that `s` satisfies: `α` allows exactly the two-types
/// realized in `s` (diagonal pairs included), and for each realized
/// one-type `π` there is a `β` asking every element of type `π` for a
/// partner along one of the two-types `π` realizes with others.
pub fn snf_of_structure(s: &Structure) -> Result<ScottNormalForm, GenError> {
    if s.size() == 0 {
        return Err(GenError::EmptyDomain);
    }
    let vocab = s.vocabulary();
    let ones = realized_one_types(s)?;
    let twos = realized_two_types(s)?;
    let mut allowed: BTreeSet<TwoType> = twos.clone();
    allowed.extend(ones.iter().map(|t| t.doubled()));
    let alpha = Formula::disjunction(allowed.iter().map(|t| t.describe(vocab)));
    let betas = ones
        .iter()
        .map(|&pi| {
            let mut partners: Vec<TwoType> = twos
                .iter()
                .copied()
                .filter(|t| t.project_x() == pi)
                .collect();
            if partners.is_empty() {
                partners.push(pi.doubled());
            }
            Formula::or(
                Formula::not(pi.describe(vocab)),
                Formula::disjunction(partners.iter().map(|t| t.describe(vocab))),
            )
        })
        .collect();
    Ok(ScottNormalForm {
        vocabulary: vocab.clone(),
        alpha,
        betas,
        definitions: Vec::new(),
    })
}

/// Shape limits for [`random_sentence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SentenceShape {
    /// Maximum AST depth, counting the root as depth 1.
    pub max_depth: usize,
    pub max_quantifiers: usize,
}

impl Default for SentenceShape {
    fn default() -> Self {
        SentenceShape {
            max_depth: 5,
            max_quantifiers: 3,
        }
    }
}

/// Random two-variable sentence over `vocab`.
pub fn random_sentence(vocab: &Vocabulary, shape: SentenceShape, seed: u64) -> Formula {
    let mut gen = SentenceGen {
        vocab,
        rng: ChaCha8Rng::seed_from_u64(seed),
        quantifiers_left: shape.max_quantifiers,
    };
    gen.formula(shape.max_depth.max(1), &[])
}

struct SentenceGen<'a> {
    vocab: &'a Vocabulary,
    rng: ChaCha8Rng,
    quantifiers_left: usize,
}

impl SentenceGen<'_> {
    fn formula(&mut self, depth: usize, scope: &[Var]) -> Formula {
        if depth <= 1 {
            return self.leaf(scope);
        }
        let can_quantify = self.quantifiers_left > 0;
        // a sentence needs a quantifier before any atom can appear
        let choice = if scope.is_empty() && can_quantify && self.rng.gen_bool(0.7) {
            0
        } else {
            self.rng.gen_range(0..8)
        };
        match choice {
            0 | 1 if can_quantify => {
                self.quantifiers_left -= 1;
                let v = if self.rng.gen() { Var::X } else { Var::Y };
                let mut inner: Vec<Var> = scope.iter().copied().filter(|&w| w != v).collect();
                inner.push(v);
                let body = self.formula(depth - 1, &inner);
                if self.rng.gen() {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }
            2 => Formula::not(self.formula(depth - 1, scope)),
            3 | 4 => {
                let a = self.formula(depth - 1, scope);
                Formula::and(a, self.formula(depth - 1, scope))
            }
            5 => {
                let a = self.formula(depth - 1, scope);
                Formula::or(a, self.formula(depth - 1, scope))
            }
            6 => {
                let a = self.formula(depth - 1, scope);
                Formula::implies(a, self.formula(depth - 1, scope))
            }
            7 => {
                let a = self.formula(depth - 1, scope);
                Formula::iff(a, self.formula(depth - 1, scope))
            }
            _ => self.leaf(scope),
        }
    }

    fn leaf(&mut self, scope: &[Var]) -> Formula {
        let (n, m) = (self.vocab.n(), self.vocab.m());
        if scope.is_empty() || n + m == 0 {
            return if self.rng.gen() {
                Formula::True
            } else {
                Formula::False
            };
        }
        let pick = |rng: &mut ChaCha8Rng| scope[rng.gen_range(0..scope.len())];
        let i = self.rng.gen_range(0..n + m);
        if i < n {
            Formula::unary(self.vocab.unary()[i].clone(), pick(&mut self.rng))
        } else {
            let (a, b) = (pick(&mut self.rng), pick(&mut self.rng));
            Formula::binary(self.vocab.binary()[i - n].clone(), a, b)
        }
    }
}
