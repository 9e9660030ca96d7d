//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' integer]
//! atom   := number | 'x' | 'xi' | 's' | '(' expr ')'
//! number := digits ['.' digits]
//! ```
//!
//! Division is only allowed by nonzero constants. Whitespace is ignored.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Poly, Var};

/// Kind of syntax error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// A character outside the grammar.
    UnexpectedChar(char),
    /// A token in the wrong place.
    UnexpectedToken {
        /// Token text found.
        found: String,
        /// What the parser wanted.
        expected: &'static str,
    },
    /// Input ended early.
    UnexpectedEnd {
        /// What the parser wanted.
        expected: &'static str,
    },
    /// An identifier that is not `x`, `xi` or `s`.
    UnknownIndeterminate(String),
    /// Division by a non-constant polynomial.
    NonConstantDivisor,
    /// Division by zero.
    DivisionByZero,
    /// Exponent too large to be useful.
    ExponentTooLarge,
    /// A key or value problem outside the polynomial grammar.
    Other(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "unexpected `{found}`, expected {expected}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            ParseErrorKind::UnknownIndeterminate(s) => write!(f, "unknown indeterminate `{s}`"),
            ParseErrorKind::NonConstantDivisor => f.write_str("division by a non-constant polynomial"),
            ParseErrorKind::DivisionByZero => f.write_str("division by zero"),
            ParseErrorKind::ExponentTooLarge => f.write_str("exponent too large"),
            ParseErrorKind::Other(s) => f.write_str(s),
        }
    }
}

/// Syntax error with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    /// 1-based line.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
    /// What went wrong.
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational, String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Num(_, s) | Tok::Ident(s) => s.clone(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

const MAX_EXPONENT: u32 = 4096;

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<(Vec<(Tok, usize)>, usize), ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |i: usize, kind| ParseError {
        line,
        column: col0 + i,
        kind,
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => toks.push((Tok::Plus, start)),
            '-' | '−' => toks.push((Tok::Minus, start)),
            '*' | '·' => toks.push((Tok::Star, start)),
            '/' => toks.push((Tok::Slash, start)),
            '^' => toks.push((Tok::Caret, start)),
            '(' => toks.push((Tok::LParen, start)),
            ')' => toks.push((Tok::RParen, start)),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let int_part: String = chars[i..j].iter().collect();
                let mut value = BigRational::from_integer(int_part.parse::<BigInt>().unwrap());
                let mut text = int_part;
                if j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                    let mut k = j + 1;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    let frac: String = chars[j + 1..k].iter().collect();
                    let den = num_traits::pow(BigInt::from(10), frac.len());
                    value += BigRational::new(frac.parse::<BigInt>().unwrap(), den);
                    text = chars[i..k].iter().collect();
                    j = k;
                }
                toks.push((Tok::Num(value, text), start));
                i = j;
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                toks.push((Tok::Ident(chars[i..j].iter().collect()), start));
                i = j;
                continue;
            }
            other => return Err(err(i, ParseErrorKind::UnexpectedChar(other))),
        }
        i += 1;
    }
    Ok((toks, chars.len()))
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let column = self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c);
        ParseError {
            line: self.line,
            column,
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => self.error_here(ParseErrorKind::UnexpectedToken {
                found: t.text(),
                expected,
            }),
            None => self.error_here(ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let col = self.toks.get(at).map_or(self.end_col, |(_, c)| *c);
                    if !d.is_constant() {
                        return Err(ParseError {
                            line: self.line,
                            column: col,
                            kind: ParseErrorKind::NonConstantDivisor,
                        });
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return Err(ParseError {
                            line: self.line,
                            column: col,
                            kind: ParseErrorKind::DivisionByZero,
                        });
                    }
                    acc = acc.scale(&(BigRational::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(v, _)) if v.is_integer() => {
                    let e: u32 = v
                        .to_integer()
                        .try_into()
                        .ok()
                        .filter(|e| *e <= MAX_EXPONENT)
                        .ok_or_else(|| self.error_here(ParseErrorKind::ExponentTooLarge))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.unexpected("a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(v, _)) => {
                self.pos += 1;
                Ok(Poly::constant(v))
            }
            Some(Tok::Ident(name)) => match Var::from_name(&name) {
                Some(v) => {
                    self.pos += 1;
                    Ok(Poly::var(v))
                }
                None => Err(self.error_here(ParseErrorKind::UnknownIndeterminate(name))),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected("`)`")),
                }
            }
            _ => Err(self.unexpected("a number, an indeterminate or `(`")),
        }
    }
}

/// Parses polynomial text located at `line`, with the first character in
/// column `column`.
pub fn parse_poly_at(src: &str, line: usize, column: usize) -> Result<Poly, ParseError> {
    let (toks, len) = lex(src, line, column)?;
    let mut p = Parser {
        toks: toks.into_iter().map(|(t, c)| (t, c + column)).collect(),
        pos: 0,
        line,
        end_col: column + len,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(out)
}

/// Parses a single-line polynomial.
pub fn parse_poly(src: &str) -> Result<Poly, ParseError> {
    parse_poly_at(src, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    #[test]
    fn parses_rational_coefficients() {
        let p = parse_poly("3*x^4 - 2/5*x^2 + 1").unwrap();
        assert_eq!(p.coeff(&[4, 0, 0]), rat(3));
        assert_eq!(p.coeff(&[2, 0, 0]), ratio(-2, 5));
        assert_eq!(p.constant_term(), rat(1));
    }

    #[test]
    fn parses_all_indeterminates_and_parentheses() {
        let p = parse_poly("(x^2 - s^2)/2 + xi").unwrap();
        assert_eq!(p.coeff(&[2, 0, 0]), ratio(1, 2));
        assert_eq!(p.coeff(&[0, 0, 2]), ratio(-1, 2));
        assert_eq!(p.coeff(&[0, 1, 0]), rat(1));
        assert_eq!(parse_poly("0.25*x").unwrap().coeff(&[1, 0, 0]), ratio(1, 4));
    }

    #[test]
    fn double_caret_points_at_second_caret() {
        let e = parse_poly("3*x^^2").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
    }

    #[test]
    fn unknown_indeterminate() {
        let e = parse_poly("x + y").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownIndeterminate("y".into()));
        assert_eq!(e.column, 5);
    }

    #[test]
    fn division_rules() {
        assert_eq!(parse_poly("1/x").unwrap_err().kind, ParseErrorKind::NonConstantDivisor);
        assert_eq!(parse_poly("1/0").unwrap_err().kind, ParseErrorKind::DivisionByZero);
        assert!(matches!(parse_poly("x +").unwrap_err().kind, ParseErrorKind::UnexpectedEnd { .. }));
        assert!(parse_poly("x x").is_err());
    }

    #[test]
    fn offsets_are_reported() {
        let e = parse_poly_at("x^", 3, 6).unwrap_err();
        assert_eq!((e.line, e.column), (3, 8));
    }
}
