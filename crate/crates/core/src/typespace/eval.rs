use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::formula::{Formula, ScottNormalForm, Var, Vocabulary};

use super::structure::Structure;
use super::types::{OneType, TwoType, TypeShape};
use super::TypeError;

pub fn one_type_of(s: &Structure, a: usize) -> Result<OneType, TypeError> {
    if a >= s.size() {
        return Err(TypeError::ElementOutOfRange {
            element: a,
            size: s.size(),
        });
    }
    let shape = TypeShape::of(s.vocabulary())?;
    OneType::from_bits(shape, s.one_bits(a))
}

/// Two-type of the distinct pair `(a, b)`.
pub fn two_type_of(s: &Structure, a: usize, b: usize) -> Result<TwoType, TypeError> {
    for e in [a, b] {
        if e >= s.size() {
            return Err(TypeError::ElementOutOfRange {
                element: e,
                size: s.size(),
            });
        }
    }
    if a == b {
        return Err(TypeError::DiagonalPair(a));
    }
    let shape = TypeShape::of(s.vocabulary())?;
    TwoType::from_bits(shape, s.two_bits(shape, a, b))
}

pub fn realized_one_types(s: &Structure) -> Result<BTreeSet<OneType>, TypeError> {
    (0..s.size()).map(|a| one_type_of(s, a)).collect()
}

/// Two-types of all ordered pairs of distinct elements.
pub fn realized_two_types(s: &Structure) -> Result<BTreeSet<TwoType>, TypeError> {
    let mut out = BTreeSet::new();
    for a in 0..s.size() {
        for b in 0..s.size() {
            if a != b {
                out.insert(two_type_of(s, a, b)?);
            }
        }
    }
    Ok(out)
}

/// Values for the variables `x` and `y`; either may be unbound.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Assignment {
    pub x: Option<usize>,
    pub y: Option<usize>,
}

impl Assignment {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn x(a: usize) -> Self {
        Assignment {
            x: Some(a),
            y: None,
        }
    }

    pub fn xy(a: usize, b: usize) -> Self {
        Assignment {
            x: Some(a),
            y: Some(b),
        }
    }

    fn get(&self, v: Var) -> usize {
        match v {
            Var::X => self.x,
            Var::Y => self.y,
        }
        .expect("free variables checked before evaluation")
    }

    fn set(mut self, v: Var, a: usize) -> Self {
        match v {
            Var::X => self.x = Some(a),
            Var::Y => self.y = Some(a),
        }
        self
    }
}

/// Formula with predicate names resolved to indices.
#[derive(Debug, Clone)]
enum Resolved {
    Const(bool),
    Unary(usize, Var),
    Binary(usize, Var, Var),
    Not(Box<Resolved>),
    And(Box<Resolved>, Box<Resolved>),
    Or(Box<Resolved>, Box<Resolved>),
    Implies(Box<Resolved>, Box<Resolved>),
    Iff(Box<Resolved>, Box<Resolved>),
    Forall(Var, Box<Resolved>),
    Exists(Var, Box<Resolved>),
}

fn resolve(phi: &Formula, vocab: &Vocabulary) -> Result<Resolved, TypeError> {
    let bx = |f: &Formula| resolve(f, vocab).map(Box::new);
    Ok(match phi {
        Formula::True => Resolved::Const(true),
        Formula::False => Resolved::Const(false),
        Formula::Unary(p, v) => Resolved::Unary(
            vocab
                .unary_index(p)
                .ok_or_else(|| TypeError::UnknownPredicate(p.clone()))?,
            *v,
        ),
        Formula::Binary(r, a, b) => Resolved::Binary(
            vocab
                .binary_index(r)
                .ok_or_else(|| TypeError::UnknownPredicate(r.clone()))?,
            *a,
            *b,
        ),
        Formula::Not(f) => Resolved::Not(bx(f)?),
        Formula::And(a, b) => Resolved::And(bx(a)?, bx(b)?),
        Formula::Or(a, b) => Resolved::Or(bx(a)?, bx(b)?),
        Formula::Implies(a, b) => Resolved::Implies(bx(a)?, bx(b)?),
        Formula::Iff(a, b) => Resolved::Iff(bx(a)?, bx(b)?),
        Formula::Forall(v, f) => Resolved::Forall(*v, bx(f)?),
        Formula::Exists(v, f) => Resolved::Exists(*v, bx(f)?),
    })
}

impl Resolved {
    fn eval(&self, s: &Structure, env: Assignment) -> bool {
        match self {
            Resolved::Const(b) => *b,
            Resolved::Unary(p, v) => s.holds_unary(*p, env.get(*v)),
            Resolved::Binary(r, a, b) => s.holds_binary(*r, env.get(*a), env.get(*b)),
            Resolved::Not(f) => !f.eval(s, env),
            Resolved::And(a, b) => a.eval(s, env) && b.eval(s, env),
            Resolved::Or(a, b) => a.eval(s, env) || b.eval(s, env),
            Resolved::Implies(a, b) => !a.eval(s, env) || b.eval(s, env),
            Resolved::Iff(a, b) => a.eval(s, env) == b.eval(s, env),
            Resolved::Forall(v, f) => (0..s.size()).all(|a| f.eval(s, env.set(*v, a))),
            Resolved::Exists(v, f) => (0..s.size()).any(|a| f.eval(s, env.set(*v, a))),
        }
    }
}

/// A formula prepared for repeated evaluation over structures of one
/// vocabulary.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    vocabulary: Vocabulary,
    root: Resolved,
    needs_x: bool,
    needs_y: bool,
}

impl CompiledFormula {
    pub fn new(phi: &Formula, vocab: &Vocabulary) -> Result<Self, TypeError> {
        let free = phi.free_vars();
        Ok(CompiledFormula {
            vocabulary: vocab.clone(),
            root: resolve(phi, vocab)?,
            needs_x: free.x,
            needs_y: free.y,
        })
    }

    pub fn eval(&self, s: &Structure, env: Assignment) -> Result<bool, TypeError> {
        if s.vocabulary() != &self.vocabulary {
            return Err(TypeError::VocabularyMismatch);
        }
        if self.needs_x && env.x.is_none() {
            return Err(TypeError::UnboundVariable(Var::X));
        }
        if self.needs_y && env.y.is_none() {
            return Err(TypeError::UnboundVariable(Var::Y));
        }
        for e in [env.x, env.y].into_iter().flatten() {
            if e >= s.size() {
                return Err(TypeError::ElementOutOfRange {
                    element: e,
                    size: s.size(),
                });
            }
        }
        Ok(self.root.eval(s, env))
    }
}

/// Tarskian truth of `phi` in `s`; quantifiers range over `0..size`, so on
/// the empty domain `∀` is true and `∃` is false.
pub fn evaluate(phi: &Formula, s: &Structure, env: Assignment) -> Result<bool, TypeError> {
    CompiledFormula::new(phi, s.vocabulary())?.eval(s, env)
}

#[derive(Debug, Clone)]
enum Circuit {
    Const(bool),
    Bit(usize),
    Not(Box<Circuit>),
    And(Box<Circuit>, Box<Circuit>),
    Or(Box<Circuit>, Box<Circuit>),
    Iff(Box<Circuit>, Box<Circuit>),
}

impl Circuit {
    fn eval(&self, bits: u64) -> bool {
        match self {
            Circuit::Const(b) => *b,
            Circuit::Bit(i) => bits >> i & 1 == 1,
            Circuit::Not(c) => !c.eval(bits),
            Circuit::And(a, b) => a.eval(bits) && b.eval(bits),
            Circuit::Or(a, b) => a.eval(bits) || b.eval(bits),
            Circuit::Iff(a, b) => a.eval(bits) == b.eval(bits),
        }
    }
}

/// A quantifier-free formula over `x, y` read as a Boolean function of a
/// packed two-type.
#[derive(Debug, Clone)]
pub struct TypeEvaluator {
    shape: TypeShape,
    circuit: Circuit,
}

impl TypeEvaluator {
    pub fn new(phi: &Formula, vocab: &Vocabulary) -> Result<Self, TypeError> {
        let shape = TypeShape::of(vocab)?;
        Ok(TypeEvaluator {
            shape,
            circuit: Self::compile(phi, vocab, shape)?,
        })
    }

    fn compile(phi: &Formula, vocab: &Vocabulary, s: TypeShape) -> Result<Circuit, TypeError> {
        let bx = |f: &Formula| Self::compile(f, vocab, s).map(Box::new);
        Ok(match phi {
            Formula::True => Circuit::Const(true),
            Formula::False => Circuit::Const(false),
            Formula::Unary(p, v) => {
                let i = vocab
                    .unary_index(p)
                    .ok_or_else(|| TypeError::UnknownPredicate(p.clone()))?;
                Circuit::Bit(match v {
                    Var::X => s.px(i),
                    Var::Y => s.py(i),
                })
            }
            Formula::Binary(r, a, b) => {
                let j = vocab
                    .binary_index(r)
                    .ok_or_else(|| TypeError::UnknownPredicate(r.clone()))?;
                Circuit::Bit(match (a, b) {
                    (Var::X, Var::X) => s.rxx(j),
                    (Var::Y, Var::Y) => s.ryy(j),
                    (Var::X, Var::Y) => s.rxy(j),
                    (Var::Y, Var::X) => s.ryx(j),
                })
            }
            Formula::Not(f) => Circuit::Not(bx(f)?),
            Formula::And(a, b) => Circuit::And(bx(a)?, bx(b)?),
            Formula::Or(a, b) => Circuit::Or(bx(a)?, bx(b)?),
            Formula::Implies(a, b) => Circuit::Or(Box::new(Circuit::Not(bx(a)?)), bx(b)?),
            Formula::Iff(a, b) => Circuit::Iff(bx(a)?, bx(b)?),
            Formula::Forall(..) | Formula::Exists(..) => return Err(TypeError::NotQuantifierFree),
        })
    }

    pub fn shape(&self) -> TypeShape {
        self.shape
    }

    /// Truth at a pair of distinct elements realizing `t`.
    pub fn eval(&self, t: TwoType) -> bool {
        self.circuit.eval(t.bits())
    }

    /// Truth at `(a, a)` for an element realizing `t`.
    pub fn eval_diagonal(&self, t: OneType) -> bool {
        self.circuit.eval(t.doubled().bits())
    }

    pub(crate) fn eval_bits(&self, bits: u64) -> bool {
        self.circuit.eval(bits)
    }
}

/// Outcome of [`check_snf`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnfCheck {
    Holds,
    /// `α(x, y)` is false at this pair (possibly `x == y`).
    AlphaViolated {
        x: usize,
        y: usize,
    },
    /// Element `x` has no witness `y` for `βᵢ`.
    BetaUnwitnessed {
        x: usize,
        beta: usize,
    },
}

impl SnfCheck {
    pub fn holds(self) -> bool {
        self == SnfCheck::Holds
    }
}

impl fmt::Display for SnfCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SnfCheck::Holds => f.write_str("holds"),
            SnfCheck::AlphaViolated { x, y } => write!(f, "alpha x={x} y={y}"),
            SnfCheck::BetaUnwitnessed { x, beta } => write!(f, "beta={beta} x={x}"),
        }
    }
}

/// Checks `s ⊨ ∀x∀y α ∧ ⋀ᵢ ∀x∃y βᵢ`. Pairs are scanned row by row
/// (including the diagonal) for `α`, then elements in order for each `βᵢ`;
/// the first failure is returned as the certificate.
pub fn check_snf(s: &Structure, snf: &ScottNormalForm) -> Result<SnfCheck, TypeError> {
    if s.vocabulary() != &snf.vocabulary {
        return Err(TypeError::VocabularyMismatch);
    }
    let shape = TypeShape::of(s.vocabulary())?;
    let alpha = TypeEvaluator::new(&snf.alpha, &snf.vocabulary)?;
    let betas = snf
        .betas
        .iter()
        .map(|b| TypeEvaluator::new(b, &snf.vocabulary))
        .collect::<Result<Vec<_>, _>>()?;
    let n = s.size();
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut alpha_at = |bits: u64| *memo.entry(bits).or_insert_with(|| alpha.eval_bits(bits));
    for a in 0..n {
        for b in 0..n {
            if !alpha_at(s.two_bits(shape, a, b)) {
                return Ok(SnfCheck::AlphaViolated { x: a, y: b });
            }
        }
    }
    for (i, beta) in betas.iter().enumerate() {
        for a in 0..n {
            if !(0..n).any(|b| beta.eval_bits(s.two_bits(shape, a, b))) {
                return Ok(SnfCheck::BetaUnwitnessed { x: a, beta: i });
            }
        }
    }
    Ok(SnfCheck::Holds)
}

/// Extends a structure over the original vocabulary by the fresh
/// predicates of `snf`, each interpreted by its defining formula. Over a
/// non-empty domain the result satisfies `snf` exactly when `s` satisfies
/// the sentence `snf` was computed from.
pub fn expand_model(s: &Structure, snf: &ScottNormalForm) -> Result<Structure, TypeError> {
    let mut out = s.widen(&snf.vocabulary)?;
    for def in &snf.definitions {
        let p = snf
            .vocabulary
            .unary_index(&def.predicate)
            .ok_or_else(|| TypeError::UnknownPredicate(def.predicate.clone()))?;
        let body = CompiledFormula::new(&def.body, &snf.vocabulary)?;
        for a in 0..out.size() {
            let v = body.eval(&out, Assignment::x(a))?;
            out.set_unary(p, a, v)?;
        }
    }
    Ok(out)
}
