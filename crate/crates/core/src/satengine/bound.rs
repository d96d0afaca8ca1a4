use std::fmt;

use thiserror::Error;

use crate::compressor::Mode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("paper bound needs n + m >= 3, got n={n}, m={m}; pad the vocabulary first")]
    TooFewPredicates { n: usize, m: usize },
    #[error("bound for n={n}, m={m} does not fit in 128 bits")]
    Overflow { n: usize, m: usize },
}

/// Model-size bound for a vocabulary with `n` unary and `m` binary
/// predicates.
///
/// Paper mode: each non-king one-type gets `k·ℓ = 2^(n+m) · 2^(2n+4m)`
/// elements. Tight mode: at most `max(2^(n+m), 6)` blocks of `4^m`
/// elements, since two one-types leave only the `r(x,y)` and `r(y,x)` bits
/// of a two-type free. Either way the total is one-types × multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBound {
    pub mode: Mode,
    pub n: usize,
    pub m: usize,
    pub one_types: u128,
    /// Edge colors per slice: all two-types in paper mode, the two-types
    /// over one fixed pair of one-types in tight mode.
    pub edge_colors: u128,
    pub per_type_multiplicity: u128,
    pub total_bound: u128,
}

fn pow2(e: usize, n: usize, m: usize) -> Result<u128, BoundError> {
    if e < 128 {
        Ok(1u128 << e)
    } else {
        Err(BoundError::Overflow { n, m })
    }
}

pub fn size_bound(n: usize, m: usize, mode: Mode) -> Result<SizeBound, BoundError> {
    let overflow = BoundError::Overflow { n, m };
    let one_types = pow2(n.checked_add(m).ok_or(overflow.clone())?, n, m)?;
    let (edge_colors, per_type_multiplicity) = match mode {
        Mode::PaperExact => {
            if n + m < 3 {
                return Err(BoundError::TooFewPredicates { n, m });
            }
            let l = pow2(2 * n + 4 * m, n, m)?;
            (l, one_types.checked_mul(l).ok_or(overflow.clone())?)
        }
        Mode::Tight => {
            let l = pow2(2 * m, n, m)?;
            (l, one_types.max(6).checked_mul(l).ok_or(overflow.clone())?)
        }
    };
    let total_bound = one_types
        .checked_mul(per_type_multiplicity)
        .ok_or(overflow)?;
    Ok(SizeBound {
        mode,
        n,
        m,
        one_types,
        edge_colors,
        per_type_multiplicity,
        total_bound,
    })
}

/// Paper bound after padding with unused unary predicates up to `n + m = 3`.
pub fn padded_paper_bound(n: usize, m: usize) -> Result<SizeBound, BoundError> {
    size_bound(n.max(3usize.saturating_sub(m)), m, Mode::PaperExact)
}

impl fmt::Display for SizeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode {}", self.mode)?;
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "m {}", self.m)?;
        writeln!(f, "one_types {}", self.one_types)?;
        writeln!(f, "multiplicity {}", self.per_type_multiplicity)?;
        writeln!(f, "total {}", self.total_bound)
    }
}
