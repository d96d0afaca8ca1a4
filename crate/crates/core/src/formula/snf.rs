//! Conversion of two-variable sentences to Scott normal form
//! `∀x∀y α(x,y) ∧ ⋀ᵢ ∀x∃y βᵢ(x,y)`.
//!
//! Top-level conjuncts that already have one of the shapes `∀x∀y α`,
//! `∀x∃y β` or `∀x α(x)` (with quantifier-free bodies) are taken over
//! directly. Every other conjunct is rewritten bottom-up: each innermost
//! quantified subformula `Qv ψ` is replaced by a fresh unary atom `p(w)`,
//! where `w` is the other variable, and `p` is axiomatized by
//!
//! ```text
//! ∀x (p(x) → Qy ψ')     and     ∀x (¬p(x) → Q̄y ¬ψ')
//! ```
//!
//! with `ψ'` the body renamed so that `w ↦ x` and `v ↦ y`. One of the two
//! axioms is universal and joins `α`; the other contributes a `β`. What is
//! left of the conjunct at the top is quantifier-free in the fresh atoms
//! alone and joins `α` with all variables mapped to `x`.
//!
//! The result has the same models as the input over every non-empty domain,
//! up to the (unique) interpretation of the fresh predicates.

use thiserror::Error;

use super::ast::{Formula, Quantifier, Var};
use super::vocab::{Arity, Vocabulary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SnfError {
    #[error("formula has free variables; only sentences can be normalized")]
    NotASentence,
    #[error("predicate `{0}` is not declared in the vocabulary")]
    UndeclaredPredicate(String),
    #[error("predicate `{0}` is used with the wrong arity")]
    ArityMismatch(String),
}

/// Definition of a fresh predicate: `p(x) ↔ body`, where `body` is a
/// single quantifier `Qy ψ(x,y)` over a quantifier-free `ψ` that may
/// mention earlier fresh predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub predicate: String,
    pub body: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScottNormalForm {
    /// Input vocabulary extended with the fresh predicates.
    pub vocabulary: Vocabulary,
    pub alpha: Formula,
    pub betas: Vec<Formula>,
    /// Fresh predicates in the order they were introduced.
    pub definitions: Vec<Definition>,
}

impl ScottNormalForm {
    /// The sentence `∀x∀y α ∧ ⋀ᵢ ∀x∃y βᵢ`.
    pub fn to_sentence(&self) -> Formula {
        let universal = Formula::forall(Var::X, Formula::forall(Var::Y, self.alpha.clone()));
        let existentials = self
            .betas
            .iter()
            .map(|b| Formula::forall(Var::X, Formula::exists(Var::Y, b.clone())));
        Formula::conjunction(std::iter::once(universal).chain(existentials))
    }

    /// Number of predicates introduced by normalization.
    pub fn fresh_count(&self) -> usize {
        self.definitions.len()
    }
}

/// Normalizes `phi`, a sentence over `vocab`.
pub fn to_scott_normal_form(
    phi: &Formula,
    vocab: &Vocabulary,
) -> Result<ScottNormalForm, SnfError> {
    if let Some((name, arity)) = phi.first_symbol_error(vocab) {
        return Err(match arity {
            None => SnfError::UndeclaredPredicate(name),
            Some(Arity::Unary | Arity::Binary) => SnfError::ArityMismatch(name),
        });
    }
    if !phi.is_sentence() {
        return Err(SnfError::NotASentence);
    }
    let mut b = Builder {
        vocabulary: vocab.clone(),
        next_fresh: 0,
        alphas: Vec::new(),
        betas: Vec::new(),
        definitions: Vec::new(),
    };
    let mut conjuncts = Vec::new();
    flatten_and(phi, &mut conjuncts);
    for conjunct in conjuncts {
        match recognize(conjunct) {
            Some(Shape::Universal(alpha)) => b.alphas.push(alpha),
            Some(Shape::Existential(beta)) => b.betas.push(beta),
            None => {
                let residue = b.abstract_quantifiers(conjunct);
                b.alphas.push(residue.rename(&|_| Var::X));
            }
        }
    }
    Ok(ScottNormalForm {
        vocabulary: b.vocabulary,
        alpha: Formula::conjunction(b.alphas),
        betas: b.betas,
        definitions: b.definitions,
    })
}

fn flatten_and<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    if let Formula::And(a, b) = f {
        flatten_and(a, out);
        flatten_and(b, out);
    } else {
        out.push(f);
    }
}

enum Shape {
    Universal(Formula),
    Existential(Formula),
}

fn recognize(f: &Formula) -> Option<Shape> {
    if f.is_quantifier_free() {
        // A closed quantifier-free conjunct is a combination of true/false.
        return Some(Shape::Universal(f.clone()));
    }
    let Formula::Forall(outer, body) = f else {
        return None;
    };
    let outer = *outer;
    let to_xy = move |v: Var| if v == outer { Var::X } else { Var::Y };
    match body.as_ref() {
        Formula::Forall(inner, qf) if *inner != outer && qf.is_quantifier_free() => {
            Some(Shape::Universal(qf.rename(&to_xy)))
        }
        Formula::Exists(inner, qf) if *inner != outer && qf.is_quantifier_free() => {
            Some(Shape::Existential(qf.rename(&to_xy)))
        }
        qf if qf.is_quantifier_free() => Some(Shape::Universal(qf.rename(&|_| Var::X))),
        _ => None,
    }
}

struct Builder {
    vocabulary: Vocabulary,
    next_fresh: usize,
    alphas: Vec<Formula>,
    betas: Vec<Formula>,
    definitions: Vec<Definition>,
}

impl Builder {
    /// Returns a quantifier-free formula equivalent to `f` once the fresh
    /// predicates carry their defined meaning.
    fn abstract_quantifiers(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::True | Formula::False | Formula::Unary(..) | Formula::Binary(..) => f.clone(),
            Formula::Not(a) => Formula::not(self.abstract_quantifiers(a)),
            Formula::And(a, b) => {
                let a = self.abstract_quantifiers(a);
                Formula::and(a, self.abstract_quantifiers(b))
            }
            Formula::Or(a, b) => {
                let a = self.abstract_quantifiers(a);
                Formula::or(a, self.abstract_quantifiers(b))
            }
            Formula::Implies(a, b) => {
                let a = self.abstract_quantifiers(a);
                Formula::implies(a, self.abstract_quantifiers(b))
            }
            Formula::Iff(a, b) => {
                let a = self.abstract_quantifiers(a);
                Formula::iff(a, self.abstract_quantifiers(b))
            }
            Formula::Forall(v, body) => self.replace(Quantifier::Forall, *v, body),
            Formula::Exists(v, body) => self.replace(Quantifier::Exists, *v, body),
        }
    }

    fn replace(&mut self, q: Quantifier, bound: Var, body: &Formula) -> Formula {
        let inner = self.abstract_quantifiers(body);
        let psi = inner.rename(&|u| if u == bound { Var::Y } else { Var::X });
        let p = self.vocabulary.push_fresh_unary(&mut self.next_fresh);
        let px = Formula::unary(p.clone(), Var::X);
        // p(x) -> Qy psi   and   !p(x) -> Q'y !psi
        let positive = Formula::or(Formula::not(px.clone()), psi.clone());
        let negative = Formula::or(px, Formula::not(psi.clone()));
        match q {
            Quantifier::Forall => {
                self.alphas.push(positive);
                self.betas.push(negative);
            }
            Quantifier::Exists => {
                self.betas.push(positive);
                self.alphas.push(negative);
            }
        }
        self.definitions.push(Definition {
            predicate: p.clone(),
            body: Formula::quantified(q, Var::Y, psi),
        });
        Formula::Unary(p, bound.other())
    }
}
