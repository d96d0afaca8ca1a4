use std::fmt;

use crate::compressor::Mode;
use crate::formula::{to_scott_normal_form, Formula, ScottNormalForm, Vocabulary};
use crate::typespace::{check_snf, evaluate, Assignment, Structure};

use super::bound::{padded_paper_bound, size_bound, SizeBound};
use super::search::{search_size, Problem, SearchError, SearchLimits};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// `witness` is over the input vocabulary, `snf_model` its expansion
    /// by the fresh predicates.
    Sat {
        witness: Box<Structure>,
        snf_model: Box<Structure>,
    },
    /// No model up to the size bound, hence none at all.
    Unsat,
    /// The search stopped before reaching the bound, either at the cap or
    /// at the per-size resource ceiling.
    ResourceExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub outcome: Outcome,
    pub snf: ScottNormalForm,
    /// Bound used for the search, over the normal-form vocabulary.
    pub tight_bound: SizeBound,
    /// Paper bound over the normal-form vocabulary padded to `n + m ≥ 3`;
    /// `None` when it overflows.
    pub paper_bound: Option<SizeBound>,
    /// Largest domain size searched completely.
    pub searched: usize,
}

impl Decision {
    pub fn verdict(&self) -> &'static str {
        match self.outcome {
            Outcome::Sat { .. } => "SAT",
            Outcome::Unsat => "UNSAT",
            Outcome::ResourceExceeded => "RESOURCE_EXCEEDED",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.verdict())?;
        if let Outcome::Sat { witness, .. } = &self.outcome {
            writeln!(f, "size {}", witness.size())?;
        }
        writeln!(f, "searched {}", self.searched)?;
        writeln!(f, "bound tight {}", self.tight_bound.total_bound)?;
        match &self.paper_bound {
            Some(b) => writeln!(f, "bound paper {}", b.total_bound),
            None => writeln!(f, "bound paper overflow"),
        }
    }
}

/// Decides satisfiability of the sentence `phi` over `vocab` by searching
/// its normal form on domains `1, 2, …` up to the tight size bound, or up
/// to `cap` if that is smaller. A model found is checked against the normal
/// form and its reduct against `phi` before it is reported.
pub fn decide_sat(
    phi: &Formula,
    vocab: &Vocabulary,
    cap: Option<usize>,
    limits: SearchLimits,
) -> Result<Decision, SearchError> {
    if !phi.is_sentence() {
        return Err(SearchError::NotASentence);
    }
    let snf = to_scott_normal_form(phi, vocab)?;
    let (n, m) = (snf.vocabulary.n(), snf.vocabulary.m());
    let tight_bound = size_bound(n, m, Mode::Tight)?;
    let paper_bound = padded_paper_bound(n, m).ok();
    let bound = usize::try_from(tight_bound.total_bound).unwrap_or(usize::MAX);
    let limit = cap.map_or(bound, |c| c.min(bound));
    let mut decision = Decision {
        outcome: Outcome::ResourceExceeded,
        snf,
        tight_bound,
        paper_bound,
        searched: 0,
    };
    for size in 1..=limit {
        match search_size(Problem::Snf(&decision.snf), size, limits) {
            Ok(Some(model)) => {
                let witness = model.reduct(vocab)?;
                if !check_snf(&model, &decision.snf)?.holds() {
                    return Err(SearchError::UncheckedWitness("normal form".into()));
                }
                if !evaluate(phi, &witness, Assignment::empty())? {
                    return Err(SearchError::UncheckedWitness("input sentence".into()));
                }
                decision.outcome = Outcome::Sat {
                    witness: Box::new(witness),
                    snf_model: Box::new(model),
                };
                return Ok(decision);
            }
            Ok(None) => decision.searched = size,
            Err(SearchError::ResourceExceeded { .. }) => return Ok(decision),
            Err(e) => return Err(e),
        }
    }
    if limit >= bound {
        decision.outcome = Outcome::Unsat;
    }
    Ok(decision)
}
