use std::fmt;

use super::vocab::{Arity, Vocabulary};

/// One of the two variables of the logic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }
}

/// A two-variable first-order formula without equality, constants or
/// function symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Unary(String, Var),
    Binary(String, Var, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

/// Set of free variables; at most two.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub x: bool,
    pub y: bool,
}

impl FreeVars {
    pub fn contains(self, v: Var) -> bool {
        match v {
            Var::X => self.x,
            Var::Y => self.y,
        }
    }

    pub fn is_empty(self) -> bool {
        !self.x && !self.y
    }

    fn with(mut self, v: Var, present: bool) -> Self {
        match v {
            Var::X => self.x = present,
            Var::Y => self.y = present,
        }
        self
    }

    fn union(self, other: FreeVars) -> Self {
        FreeVars {
            x: self.x || other.x,
            y: self.y || other.y,
        }
    }
}

impl Formula {
    pub fn unary(name: impl Into<String>, v: Var) -> Self {
        Formula::Unary(name.into(), v)
    }

    pub fn binary(name: impl Into<String>, a: Var, b: Var) -> Self {
        Formula::Binary(name.into(), a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, body: Formula) -> Self {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Self {
        Formula::Exists(v, Box::new(body))
    }

    pub fn quantified(q: Quantifier, v: Var, body: Formula) -> Self {
        match q {
            Quantifier::Forall => Formula::forall(v, body),
            Quantifier::Exists => Formula::exists(v, body),
        }
    }

    /// Left-nested conjunction; `true` for an empty iterator.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `false` for an empty iterator.
    pub fn disjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn free_vars(&self) -> FreeVars {
        match self {
            Formula::True | Formula::False => FreeVars::default(),
            Formula::Unary(_, v) => FreeVars::default().with(*v, true),
            Formula::Binary(_, a, b) => FreeVars::default().with(*a, true).with(*b, true),
            Formula::Not(f) => f.free_vars(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.free_vars().union(b.free_vars()),
            Formula::Forall(v, f) | Formula::Exists(v, f) => f.free_vars().with(*v, false),
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Unary(..) | Formula::Binary(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Number of quantifier nodes.
    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Unary(..) | Formula::Binary(..) => 0,
            Formula::Not(f) => f.quantifier_count(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.quantifier_count() + b.quantifier_count(),
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.quantifier_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Unary(..) | Formula::Binary(..) => 1,
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Substitutes variables in atoms. Quantified variables are left alone,
    /// so this is only meaningful on quantifier-free formulas.
    pub fn rename(&self, map: &impl Fn(Var) -> Var) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Unary(p, v) => Formula::Unary(p.clone(), map(*v)),
            Formula::Binary(r, a, b) => Formula::Binary(r.clone(), map(*a), map(*b)),
            Formula::Not(f) => Formula::not(f.rename(map)),
            Formula::And(a, b) => Formula::and(a.rename(map), b.rename(map)),
            Formula::Or(a, b) => Formula::or(a.rename(map), b.rename(map)),
            Formula::Implies(a, b) => Formula::implies(a.rename(map), b.rename(map)),
            Formula::Iff(a, b) => Formula::iff(a.rename(map), b.rename(map)),
            Formula::Forall(v, f) => Formula::forall(*v, f.rename(map)),
            Formula::Exists(v, f) => Formula::exists(*v, f.rename(map)),
        }
    }

    /// First predicate occurrence that is undeclared or used with the wrong arity.
    pub fn first_symbol_error(&self, vocab: &Vocabulary) -> Option<(String, Option<Arity>)> {
        match self {
            Formula::True | Formula::False => None,
            Formula::Unary(p, _) => match vocab.arity_of(p) {
                Some(Arity::Unary) => None,
                other => Some((p.clone(), other)),
            },
            Formula::Binary(r, _, _) => match vocab.arity_of(r) {
                Some(Arity::Binary) => None,
                other => Some((r.clone(), other)),
            },
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => {
                f.first_symbol_error(vocab)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a
                .first_symbol_error(vocab)
                .or_else(|| b.first_symbol_error(vocab)),
        }
    }
}

/// Renders `phi` in the ASCII grammar accepted by [`super::parse_formula`].
pub fn print_formula(phi: &Formula) -> String {
    phi.to_string()
}

const PREC_IFF: u8 = 1;
const PREC_IMP: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_NOT: u8 = 5;

impl Formula {
    // `min` is the weakest binding the context accepts without parentheses;
    // `tail` is true when nothing follows in the enclosing text, which is the
    // only place a quantifier body (extending maximally right) may appear bare.
    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8, tail: bool) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>,
                      a: &Formula,
                      b: &Formula,
                      op: &str,
                      prec: u8,
                      right_assoc: bool|
         -> fmt::Result {
            let paren = prec < min;
            let tail = tail || paren;
            if paren {
                f.write_str("(")?;
            }
            let (lmin, rmin) = if right_assoc {
                (prec + 1, prec)
            } else {
                (prec, prec + 1)
            };
            a.write_prec(f, lmin, false)?;
            write!(f, " {op} ")?;
            b.write_prec(f, rmin, tail)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        };
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Unary(p, v) => write!(f, "{p}({v})"),
            Formula::Binary(r, a, b) => write!(f, "{r}({a},{b})"),
            Formula::Not(inner) => {
                f.write_str("!")?;
                inner.write_prec(f, PREC_NOT, tail)
            }
            Formula::And(a, b) => binary(f, a, b, "&", PREC_AND, false),
            Formula::Or(a, b) => binary(f, a, b, "|", PREC_OR, false),
            Formula::Implies(a, b) => binary(f, a, b, "->", PREC_IMP, true),
            Formula::Iff(a, b) => binary(f, a, b, "<->", PREC_IFF, true),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let q = if matches!(self, Formula::Forall(..)) {
                    "A"
                } else {
                    "E"
                };
                if !tail {
                    f.write_str("(")?;
                }
                write!(f, "{q} {v}. ")?;
                body.write_prec(f, 0, true)?;
                if !tail {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0, true)
    }
}
