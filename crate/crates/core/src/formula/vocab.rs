use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Prefix reserved for predicates introduced by normalization.
pub const FRESH_PREFIX: &str = "_s";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabularyError {
    #[error("`{0}` is not a valid predicate name")]
    BadName(String),
    #[error("predicate `{0}` declared more than once")]
    Duplicate(String),
}

/// Arity of a declared predicate symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arity {
    Unary,
    Binary,
}

impl Arity {
    pub fn count(self) -> usize {
        match self {
            Arity::Unary => 1,
            Arity::Binary => 2,
        }
    }
}

/// Ordered unary and binary predicate symbols.
///
/// The declaration order is significant: it fixes the canonical atom order
/// used by one- and two-types.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Vocabulary {
    unary: Vec<String>,
    binary: Vec<String>,
}

/// `[A-Za-z][A-Za-z0-9_]*`, or the generated form `_s<digits>`.
pub fn is_predicate_name(name: &str) -> bool {
    if let Some(digits) = name.strip_prefix(FRESH_PREFIX) {
        return !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit());
    }
    let mut bytes = name.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Vocabulary {
    pub fn new<U, B>(unary: U, binary: B) -> Result<Self, VocabularyError>
    where
        U: IntoIterator,
        U::Item: Into<String>,
        B: IntoIterator,
        B::Item: Into<String>,
    {
        let unary: Vec<String> = unary.into_iter().map(Into::into).collect();
        let binary: Vec<String> = binary.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for name in unary.iter().chain(&binary) {
            if !is_predicate_name(name) {
                return Err(VocabularyError::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(VocabularyError::Duplicate(name.clone()));
            }
        }
        Ok(Vocabulary { unary, binary })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn unary(&self) -> &[String] {
        &self.unary
    }

    pub fn binary(&self) -> &[String] {
        &self.binary
    }

    /// Number of unary predicates.
    pub fn n(&self) -> usize {
        self.unary.len()
    }

    /// Number of binary predicates.
    pub fn m(&self) -> usize {
        self.binary.len()
    }

    pub fn unary_index(&self, name: &str) -> Option<usize> {
        self.unary.iter().position(|p| p == name)
    }

    pub fn binary_index(&self, name: &str) -> Option<usize> {
        self.binary.iter().position(|r| r == name)
    }

    pub fn arity_of(&self, name: &str) -> Option<Arity> {
        if self.unary_index(name).is_some() {
            Some(Arity::Unary)
        } else if self.binary_index(name).is_some() {
            Some(Arity::Binary)
        } else {
            None
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.arity_of(name).is_some()
    }

    /// True when every symbol of `self` is declared in `other` with the same arity.
    pub fn is_subset_of(&self, other: &Vocabulary) -> bool {
        self.unary.iter().all(|p| other.unary_index(p).is_some())
            && self.binary.iter().all(|r| other.binary_index(r).is_some())
    }

    /// Appends a fresh unary predicate `_sK` with the smallest `K >= *next`
    /// not already declared, and advances `next` past it.
    pub(crate) fn push_fresh_unary(&mut self, next: &mut usize) -> String {
        loop {
            let name = format!("{FRESH_PREFIX}{next}");
            *next += 1;
            if !self.contains(&name) {
                self.unary.push(name.clone());
                return name;
            }
        }
    }

    /// Header lines of the text formats: `vocab unary ...` / `vocab binary ...`.
    pub fn header_lines(&self) -> String {
        let mut out = String::from("vocab unary");
        for p in &self.unary {
            out.push(' ');
            out.push_str(p);
        }
        out.push_str("\nvocab binary");
        for r in &self.binary {
            out.push(' ');
            out.push_str(r);
        }
        out.push('\n');
        out
    }
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{unary: [{}], binary: [{}]}}",
            self.unary.join(", "),
            self.binary.join(", ")
        )
    }
}

/// Incremental reader for the `vocab unary ...` / `vocab binary ...` header
/// shared by the formula and structure file formats.
#[derive(Debug, Default)]
pub(crate) struct HeaderReader {
    unary: Option<Vec<String>>,
    binary: Option<Vec<String>>,
}

impl HeaderReader {
    /// Consumes the line if it is a vocabulary header; `Err` carries a message.
    pub(crate) fn accept(&mut self, line: &str) -> Result<bool, String> {
        let mut words = line.split_whitespace();
        if words.next() != Some("vocab") {
            return Ok(false);
        }
        let slot = match words.next() {
            Some("unary") => &mut self.unary,
            Some("binary") => &mut self.binary,
            other => {
                return Err(format!(
                    "expected `unary` or `binary` after `vocab`, found {}",
                    other.map_or("end of line".to_string(), |w| format!("`{w}`"))
                ))
            }
        };
        if slot.is_some() {
            return Err("duplicate vocabulary line".to_string());
        }
        *slot = Some(words.map(str::to_string).collect());
        Ok(true)
    }

    pub(crate) fn finish(self) -> Result<Vocabulary, VocabularyError> {
        Vocabulary::new(
            self.unary.unwrap_or_default(),
            self.binary.unwrap_or_default(),
        )
    }
}
