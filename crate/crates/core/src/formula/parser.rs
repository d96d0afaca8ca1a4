//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" iff)?
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | ("A" | "E") var "." formula | primary
//! primary := "(" formula ")" | "true" | "false" | NAME "(" var ("," var)? ")"
//! ```
//!
//! A quantifier body extends as far to the right as possible.

use thiserror::Error;

use super::ast::{Formula, Var};
use super::vocab::{Arity, HeaderReader, Vocabulary, VocabularyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("undeclared predicate `{name}` at offset {pos}")]
    UndeclaredPredicate { pos: usize, name: String },
    #[error("predicate `{name}` at offset {pos} takes {expected} argument(s), found {found}")]
    ArityMismatch {
        pos: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("variable `{name}` at offset {pos} is not allowed; only x and y may occur")]
    BadVariable { pos: usize, name: String },
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
    #[error(transparent)]
    Vocabulary(#[from] VocabularyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`<->`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'!' => Tok::Bang,
            b'&' => Tok::Amp,
            b'|' => Tok::Pipe,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::DoubleArrow
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        toks.push((start, tok));
    }
    toks.push((text.len(), Tok::End));
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vocab: &'a Vocabulary,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.at + k).min(self.toks.len() - 1);
        &self.toks[idx].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {}", want.describe())))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            message: format!("{what}, found {}", self.peek().describe()),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.iff()
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::DoubleArrow {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            // `A(` / `E(` is an atom over a predicate named A / E.
            Tok::Ident(q) if (q == "A" || q == "E") && *self.peek_at(1) != Tok::LParen => {
                self.bump();
                let v = self.var()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if q == "A" {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                })
            }
            _ => self.primary(),
        }
    }

    fn var(&mut self) -> Result<Var, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "x" => Ok(Var::X),
                    "y" => Ok(Var::Y),
                    _ => Err(ParseError::BadVariable { pos, name }),
                }
            }
            _ => Err(self.unexpected("expected a variable")),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) if *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let mut args = vec![self.var()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.var()?);
                }
                self.expect(Tok::RParen)?;
                let arity =
                    self.vocab
                        .arity_of(&name)
                        .ok_or_else(|| ParseError::UndeclaredPredicate {
                            pos,
                            name: name.clone(),
                        })?;
                if args.len() != arity.count() {
                    return Err(ParseError::ArityMismatch {
                        pos,
                        name,
                        expected: arity.count(),
                        found: args.len(),
                    });
                }
                Ok(match arity {
                    Arity::Unary => Formula::Unary(name, args[0]),
                    Arity::Binary => Formula::Binary(name, args[0], args[1]),
                })
            }
            Tok::Ident(name) if name == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(name) if name == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            _ => Err(self.unexpected("expected a formula")),
        }
    }
}

/// Parses one formula; every predicate must be declared in `vocab`.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        vocab,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("expected end of input"));
    }
    Ok(f)
}

/// Parses a formula file: `vocab unary ...` and `vocab binary ...` header
/// lines followed by one sentence, which may span several lines.
///
/// Error offsets for the sentence are relative to the start of the file.
pub fn parse_formula_file(text: &str) -> Result<(Vocabulary, Formula), ParseError> {
    let mut header = HeaderReader::default();
    let mut offset = 0;
    for (idx, line) in text.split_inclusive('\n').enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            offset += line.len();
            continue;
        }
        match header.accept(trimmed) {
            Ok(true) => offset += line.len(),
            Ok(false) => break,
            Err(message) => {
                return Err(ParseError::Header {
                    line: idx + 1,
                    message,
                })
            }
        }
    }
    let vocab = header.finish()?;
    let body = &text[offset..];
    let phi = parse_formula(body, &vocab).map_err(|e| shift(e, offset))?;
    Ok((vocab, phi))
}

fn shift(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Syntax { pos, message } => ParseError::Syntax {
            pos: pos + by,
            message,
        },
        ParseError::UndeclaredPredicate { pos, name } => ParseError::UndeclaredPredicate {
            pos: pos + by,
            name,
        },
        ParseError::ArityMismatch {
            pos,
            name,
            expected,
            found,
        } => ParseError::ArityMismatch {
            pos: pos + by,
            name,
            expected,
            found,
        },
        ParseError::BadVariable { pos, name } => ParseError::BadVariable {
            pos: pos + by,
            name,
        },
        other => other,
    }
}

/// Renders a formula file readable by [`parse_formula_file`].
pub fn write_formula_file(vocab: &Vocabulary, phi: &Formula) -> String {
    format!("{}{}\n", vocab.header_lines(), phi)
}
