use std::fmt;
use std::str::FromStr;

use crate::formula::{HeaderReader, Vocabulary};

use super::types::{OneType, TwoType, TypeShape};
use super::TypeError;

/// A finite relational structure with domain `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    vocabulary: Vocabulary,
    size: usize,
    /// `unary[p][a]`
    unary: Vec<Vec<bool>>,
    /// `binary[r][a * size + b]`
    binary: Vec<Vec<bool>>,
}

impl Structure {
    /// All relations empty.
    pub fn new(vocabulary: Vocabulary, size: usize) -> Self {
        let unary = vec![vec![false; size]; vocabulary.n()];
        let binary = vec![vec![false; size * size]; vocabulary.m()];
        Structure {
            vocabulary,
            size,
            unary,
            binary,
        }
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn check(&self, a: usize) -> Result<(), TypeError> {
        if a < self.size {
            Ok(())
        } else {
            Err(TypeError::ElementOutOfRange {
                element: a,
                size: self.size,
            })
        }
    }

    pub fn holds_unary(&self, p: usize, a: usize) -> bool {
        self.unary[p][a]
    }

    pub fn holds_binary(&self, r: usize, a: usize, b: usize) -> bool {
        self.binary[r][a * self.size + b]
    }

    pub fn set_unary(&mut self, p: usize, a: usize, value: bool) -> Result<(), TypeError> {
        self.check(a)?;
        let rel = self
            .unary
            .get_mut(p)
            .ok_or(TypeError::PredicateIndex { index: p })?;
        rel[a] = value;
        Ok(())
    }

    pub fn set_binary(
        &mut self,
        r: usize,
        a: usize,
        b: usize,
        value: bool,
    ) -> Result<(), TypeError> {
        self.check(a)?;
        self.check(b)?;
        let size = self.size;
        let rel = self
            .binary
            .get_mut(r)
            .ok_or(TypeError::PredicateIndex { index: r })?;
        rel[a * size + b] = value;
        Ok(())
    }

    pub fn set_unary_named(&mut self, name: &str, a: usize, value: bool) -> Result<(), TypeError> {
        let p = self
            .vocabulary
            .unary_index(name)
            .ok_or_else(|| TypeError::UnknownPredicate(name.to_string()))?;
        self.set_unary(p, a, value)
    }

    pub fn set_binary_named(
        &mut self,
        name: &str,
        a: usize,
        b: usize,
        value: bool,
    ) -> Result<(), TypeError> {
        let r = self
            .vocabulary
            .binary_index(name)
            .ok_or_else(|| TypeError::UnknownPredicate(name.to_string()))?;
        self.set_binary(r, a, b, value)
    }

    /// Packed one-type of `a` without range checks on the shape.
    pub(crate) fn one_bits(&self, a: usize) -> u64 {
        let n = self.vocabulary.n();
        let mut bits = 0u64;
        for (i, rel) in self.unary.iter().enumerate() {
            bits |= (rel[a] as u64) << i;
        }
        for (j, rel) in self.binary.iter().enumerate() {
            bits |= (rel[a * self.size + a] as u64) << (n + j);
        }
        bits
    }

    /// Packed two-type of `(a, b)`; for `a == b` this is the doubled one-type.
    pub(crate) fn two_bits(&self, shape: TypeShape, a: usize, b: usize) -> u64 {
        let mut bits = 0u64;
        for (i, rel) in self.unary.iter().enumerate() {
            bits |= (rel[a] as u64) << shape.px(i) | (rel[b] as u64) << shape.py(i);
        }
        let size = self.size;
        for (j, rel) in self.binary.iter().enumerate() {
            bits |= (rel[a * size + a] as u64) << shape.rxx(j)
                | (rel[b * size + b] as u64) << shape.ryy(j)
                | (rel[a * size + b] as u64) << shape.rxy(j)
                | (rel[b * size + a] as u64) << shape.ryx(j);
        }
        bits
    }

    /// Makes element `a` realize `t`.
    pub fn set_one_type(&mut self, a: usize, t: OneType) -> Result<(), TypeError> {
        self.check(a)?;
        self.expect_shape(t.shape())?;
        for i in 0..self.vocabulary.n() {
            self.unary[i][a] = t.unary(i);
        }
        for j in 0..self.vocabulary.m() {
            self.binary[j][a * self.size + a] = t.self_loop(j);
        }
        Ok(())
    }

    /// Sets the `r(a,b)` and `r(b,a)` facts from `t`. The endpoint one-types
    /// are not touched.
    pub fn set_pair_relations(&mut self, a: usize, b: usize, t: TwoType) -> Result<(), TypeError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(TypeError::DiagonalPair(a));
        }
        self.expect_shape(t.shape())?;
        let (fwd, bwd) = (t.forward(), t.backward());
        let size = self.size;
        for (j, rel) in self.binary.iter_mut().enumerate() {
            rel[a * size + b] = fwd >> j & 1 == 1;
            rel[b * size + a] = bwd >> j & 1 == 1;
        }
        Ok(())
    }

    fn expect_shape(&self, shape: TypeShape) -> Result<(), TypeError> {
        if shape.n() == self.vocabulary.n() && shape.m() == self.vocabulary.m() {
            Ok(())
        } else {
            Err(TypeError::ShapeMismatch)
        }
    }

    /// Restriction to `sub`, which must be a sub-vocabulary.
    pub fn reduct(&self, sub: &Vocabulary) -> Result<Structure, TypeError> {
        let mut out = Structure::new(sub.clone(), self.size);
        for (i, p) in sub.unary().iter().enumerate() {
            let src = self
                .vocabulary
                .unary_index(p)
                .ok_or_else(|| TypeError::UnknownPredicate(p.clone()))?;
            out.unary[i].clone_from(&self.unary[src]);
        }
        for (j, r) in sub.binary().iter().enumerate() {
            let src = self
                .vocabulary
                .binary_index(r)
                .ok_or_else(|| TypeError::UnknownPredicate(r.clone()))?;
            out.binary[j].clone_from(&self.binary[src]);
        }
        Ok(out)
    }

    /// Same domain, vocabulary replaced by `wider`; symbols missing from
    /// `self` start out empty.
    pub fn widen(&self, wider: &Vocabulary) -> Result<Structure, TypeError> {
        if !self.vocabulary.is_subset_of(wider) {
            return Err(TypeError::VocabularyMismatch);
        }
        let mut out = Structure::new(wider.clone(), self.size);
        for (i, p) in self.vocabulary.unary().iter().enumerate() {
            let dst = wider.unary_index(p).expect("checked subset");
            out.unary[dst].clone_from(&self.unary[i]);
        }
        for (j, r) in self.vocabulary.binary().iter().enumerate() {
            let dst = wider.binary_index(r).expect("checked subset");
            out.binary[dst].clone_from(&self.binary[j]);
        }
        Ok(out)
    }

    /// Total number of true unary and binary facts.
    pub fn fact_count(&self) -> usize {
        self.unary
            .iter()
            .chain(&self.binary)
            .map(|rel| rel.iter().filter(|&&b| b).count())
            .sum()
    }
}

/// Canonical text form: vocabulary header, `domain N`, then the facts
/// grouped by predicate in vocabulary order with element ids ascending.
impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.vocabulary.header_lines())?;
        writeln!(f, "domain {}", self.size)?;
        for (p, rel) in self.vocabulary.unary().iter().zip(&self.unary) {
            for (a, _) in rel.iter().enumerate().filter(|(_, &v)| v) {
                writeln!(f, "{p} {a}")?;
            }
        }
        for (r, rel) in self.vocabulary.binary().iter().zip(&self.binary) {
            for (idx, _) in rel.iter().enumerate().filter(|(_, &v)| v) {
                writeln!(f, "{r} {} {}", idx / self.size, idx % self.size)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Structure {
    type Err = TypeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, message: String| TypeError::Format { line, message };
        let mut header = HeaderReader::default();
        let mut structure = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if structure.is_none() {
                if header.accept(line).map_err(|m| err(idx + 1, m))? {
                    continue;
                }
                let mut words = line.split_whitespace();
                if words.next() != Some("domain") {
                    return Err(err(idx + 1, format!("expected `domain N`, found `{line}`")));
                }
                let size = match (words.next().map(str::parse::<usize>), words.next()) {
                    (Some(Ok(size)), None) => size,
                    _ => return Err(err(idx + 1, format!("malformed domain line `{line}`"))),
                };
                let vocab = std::mem::take(&mut header)
                    .finish()
                    .map_err(|e| err(idx + 1, e.to_string()))?;
                structure = Some(Structure::new(vocab, size));
                continue;
            }
            let s = structure.as_mut().expect("domain seen");
            let words: Vec<&str> = line.split_whitespace().collect();
            let ids: Result<Vec<usize>, _> =
                words[1..].iter().map(|w| w.parse::<usize>()).collect();
            let ids = ids.map_err(|_| err(idx + 1, format!("malformed fact `{line}`")))?;
            let name = words[0];
            let result = match (s.vocabulary.arity_of(name), ids.as_slice()) {
                (Some(crate::formula::Arity::Unary), [a]) => s.set_unary_named(name, *a, true),
                (Some(crate::formula::Arity::Binary), [a, b]) => {
                    s.set_binary_named(name, *a, *b, true)
                }
                (Some(_), _) => {
                    return Err(err(
                        idx + 1,
                        format!("wrong number of arguments in `{line}`"),
                    ))
                }
                (None, _) => return Err(err(idx + 1, format!("unknown line `{line}`"))),
            };
            result.map_err(|e| err(idx + 1, e.to_string()))?;
        }
        structure.ok_or_else(|| err(text.lines().count(), "missing `domain N` line".to_string()))
    }
}
