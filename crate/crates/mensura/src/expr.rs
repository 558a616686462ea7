//! Set-expression language: interval literals combined with `+` (union),
//! `-` (difference), and `&` (intersection, binds tighter), plus
//! parentheses and the `empty` literal.
//!
//! Grammar:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := atom ('&' atom)*
//! atom     := interval | '(' expr ')' | 'empty'
//! interval := ('[' | '(') endpoint ',' endpoint (']' | ')')
//! endpoint := ['-'] (digits ['/' digits] | 'inf')
//! ```
//!
//! An opening `(` starts an interval literal exactly when the next token is
//! numeric or `inf`; a grouped expression can only start with `[`, `(`, or
//! `empty`, so the comma rule never needs backtracking.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::interval::{Interval, IntervalError};
use crate::numeric::{ExtReal, Rational};
use crate::set::IntervalSet;

/// Abstract syntax of a set expression. Operators are binary and
/// left-associative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Lit(Interval),
    Union(Box<SetExpr>, Box<SetExpr>),
    Difference(Box<SetExpr>, Box<SetExpr>),
    Intersection(Box<SetExpr>, Box<SetExpr>),
}

impl SetExpr {
    fn level(&self) -> u8 {
        match self {
            SetExpr::Union(..) | SetExpr::Difference(..) => 1,
            SetExpr::Intersection(..) => 2,
            SetExpr::Lit(_) => 3,
        }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        if self.level() < min_level {
            write!(f, "(")?;
            self.fmt_with(f, 0)?;
            return write!(f, ")");
        }
        match self {
            SetExpr::Lit(i) => write!(f, "{i}"),
            SetExpr::Union(a, b) => {
                a.fmt_with(f, 1)?;
                write!(f, " + ")?;
                b.fmt_with(f, 2)
            }
            SetExpr::Difference(a, b) => {
                a.fmt_with(f, 1)?;
                write!(f, " - ")?;
                b.fmt_with(f, 2)
            }
            SetExpr::Intersection(a, b) => {
                a.fmt_with(f, 2)?;
                write!(f, " & ")?;
                b.fmt_with(f, 3)
            }
        }
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, 0)
    }
}

/// Recursive evaluation into a canonical interval set.
pub fn eval_expr(e: &SetExpr) -> IntervalSet {
    match e {
        SetExpr::Lit(i) => IntervalSet::from(i.clone()),
        SetExpr::Union(a, b) => eval_expr(a).union(&eval_expr(b)),
        SetExpr::Difference(a, b) => eval_expr(a).difference(&eval_expr(b)),
        SetExpr::Intersection(a, b) => eval_expr(a).intersection(&eval_expr(b)),
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending token (or of the literal that failed
    /// validation).
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken {
        found: String,
        expected: Vec<&'static str>,
    },
    InvalidInterval(IntervalError),
    ZeroDenominator,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedToken { found, expected } => write!(
                f,
                "parse error at byte {}: expected {}, found {}",
                self.offset,
                expected.join(" | "),
                found
            ),
            ParseErrorKind::InvalidInterval(e) => {
                write!(f, "parse error at byte {}: {}", self.offset, e)
            }
            ParseErrorKind::ZeroDenominator => {
                write!(f, "parse error at byte {}: zero denominator", self.offset)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Slash,
    Amp,
    Empty,
    Inf,
    Nat(BigInt),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Empty => "'empty'".into(),
            Tok::Inf => "'inf'".into(),
            Tok::Nat(n) => format!("number {n}"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '/' => Tok::Slash,
            '&' => Tok::Amp,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((start, Tok::Nat(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "empty" => Tok::Empty,
                    "inf" => Tok::Inf,
                    _ => {
                        return Err(ParseError {
                            offset: start,
                            kind: ParseErrorKind::UnexpectedToken {
                                found: format!("'{word}'"),
                                expected: vec!["'empty'", "'inf'"],
                            },
                        })
                    }
                };
                toks.push((start, tok));
                continue;
            }
            other => {
                return Err(ParseError {
                    offset: i,
                    kind: ParseErrorKind::UnexpectedToken {
                        found: format!("'{other}'"),
                        expected: vec!["an expression token"],
                    },
                })
            }
        };
        toks.push((i, tok));
        i += 1;
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.text.len(), |(o, _)| *o)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, expected: Vec<&'static str>) -> ParseError {
        let found = self
            .peek()
            .map_or("end of input".to_string(), |t| t.describe());
        ParseError {
            offset: self.offset(),
            kind: ParseErrorKind::UnexpectedToken { found, expected },
        }
    }

    fn expect(&mut self, want: Tok, label: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(vec![label]))
        }
    }

    fn expr(&mut self) -> Result<SetExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = SetExpr::Union(Box::new(acc), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = SetExpr::Difference(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SetExpr, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let rhs = self.atom()?;
            acc = SetExpr::Intersection(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<SetExpr, ParseError> {
        match self.peek() {
            Some(Tok::Empty) => {
                self.pos += 1;
                Ok(SetExpr::Lit(Interval::Empty))
            }
            Some(Tok::LBracket) => Ok(SetExpr::Lit(self.interval_literal()?)),
            Some(Tok::LParen) => match self.peek2() {
                Some(Tok::Minus | Tok::Inf | Tok::Nat(_)) => {
                    Ok(SetExpr::Lit(self.interval_literal()?))
                }
                _ => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(inner)
                }
            },
            _ => Err(self.err(vec!["'['", "'('", "'empty'"])),
        }
    }

    fn interval_literal(&mut self) -> Result<Interval, ParseError> {
        let (start, open_tok) = self.next().expect("caller checked opening bracket");
        let lo_closed = open_tok == Tok::LBracket;
        let lo = self.endpoint()?;
        self.expect(Tok::Comma, "','")?;
        let hi = self.endpoint()?;
        let hi_closed = match self.peek() {
            Some(Tok::RBracket) => true,
            Some(Tok::RParen) => false,
            _ => return Err(self.err(vec!["']'", "')'"])),
        };
        self.pos += 1;
        Interval::new(lo, lo_closed, hi, hi_closed).map_err(|e| ParseError {
            offset: start,
            kind: ParseErrorKind::InvalidInterval(e),
        })
    }

    fn endpoint(&mut self) -> Result<ExtReal, ParseError> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek() {
            Some(Tok::Inf) => {
                self.pos += 1;
                Ok(if negative {
                    ExtReal::NegInf
                } else {
                    ExtReal::PosInf
                })
            }
            Some(Tok::Nat(_)) => {
                let Some((_, Tok::Nat(n))) = self.next() else {
                    unreachable!()
                };
                let denom = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let offset = self.offset();
                    match self.next() {
                        Some((_, Tok::Nat(d))) => {
                            if d.is_zero() {
                                return Err(ParseError {
                                    offset,
                                    kind: ParseErrorKind::ZeroDenominator,
                                });
                            }
                            d
                        }
                        _ => {
                            self.pos -= 1;
                            return Err(self.err(vec!["a denominator"]));
                        }
                    }
                } else {
                    BigInt::from(1)
                };
                let numer = if negative { -n } else { n };
                Ok(ExtReal::Finite(Rational::new(numer, denom)))
            }
            _ => Err(self.err(vec!["a number", "'inf'"])),
        }
    }
}

/// Parses a full set expression.
pub fn parse_expr(text: &str) -> Result<SetExpr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        text,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err(vec!["'+'", "'-'", "'&'", "end of input"]));
    }
    Ok(e)
}

/// Parses a single interval literal (or `empty`), rejecting anything with
/// operators or grouping. Used where a literal's exact open/closed shape
/// must survive, e.g. cover lists.
pub fn parse_interval_literal(text: &str) -> Result<Interval, ParseError> {
    match parse_expr(text)? {
        SetExpr::Lit(i) => Ok(i),
        _ => Err(ParseError {
            offset: 0,
            kind: ParseErrorKind::UnexpectedToken {
                found: "an operator expression".into(),
                expected: vec!["a single interval literal"],
            },
        }),
    }
}
