//! Polynomial expression grammar:
//!
//! ```text
//! expr   := [ '-' ] term { ('+' | '-') term }
//! term   := factor { '*' factor }
//! factor := atom [ '^' natural ]
//! atom   := natural [ '/' natural ] | identifier | '(' expr ')'
//! ```
//!
//! Identifiers match `[A-Za-z][A-Za-z0-9]*` and must name a ring variable.
//! Fraction literals are only legal over Q. Implicit multiplication is
//! rejected: `2X1` is a syntax error, write `2*X1`.

use keller_core::field::FieldSpec;
use keller_core::poly::{Polynomial, RingRef};
use num_bigint::{BigInt, BigUint};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, col, message: message.into() }
    }

    /// Shift positions for text embedded in a larger document: `line_base`
    /// is the 1-based document line the text starts on, `col_base` the
    /// number of columns preceding it on that line.
    pub fn offset(mut self, line_base: usize, col_base: usize) -> ParseError {
        if self.line == 1 {
            self.col += col_base;
        }
        self.line += line_base - 1;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(BigUint),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

/// Tokens plus the position just past the end of the input, where
/// unexpected-end errors point.
fn tokenize(text: &str) -> Result<(Vec<Token>, (usize, usize)), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1usize;
    let mut col = 1usize;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c == ' ' || c == '\t' || c == '\r' {
            i += 1;
            col += 1;
            continue;
        }
        let (tl, tc) = (line, col);
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits.parse::<BigUint>().expect("digit strings parse");
                out.push(Token { tok: Tok::Nat(n), line: tl, col: tc });
                continue;
            }
            'A'..='Z' | 'a'..='z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                    col += 1;
                }
                let name: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Ident(name), line: tl, col: tc });
                continue;
            }
            other => {
                return Err(ParseError::new(tl, tc, format!("unexpected character `{other}`")));
            }
        };
        out.push(Token { tok, line: tl, col: tc });
        i += 1;
        col += 1;
    }
    Ok((out, (line, col)))
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
    ring: &'a RingRef,
    field: FieldSpec,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eof_error(&self, expected: &str) -> ParseError {
        ParseError::new(self.end.0, self.end.1, format!("{expected}, found end of input"))
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = matches!(self.peek(), Some(Tok::Minus));
        if negate {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let (e, line, col) = self.natural("expected an exponent after `^`")?;
            let e = u32::try_from(&e).map_err(|_| {
                ParseError::new(line, col, "exponent does not fit in 32 bits")
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let Some(t) = self.next() else {
            return Err(self.eof_error("expected a number, variable, or `(`"));
        };
        match t.tok {
            Tok::Nat(n) => {
                if matches!(self.peek(), Some(Tok::Slash)) {
                    let slash = self.toks[self.pos].clone();
                    if !self.field.is_rationals() {
                        return Err(ParseError::new(
                            slash.line,
                            slash.col,
                            "rational literal in a finite field (write an integer residue instead)",
                        ));
                    }
                    self.pos += 1;
                    let (den, dl, dc) = self.natural("expected a denominator after `/`")?;
                    if den == BigUint::from(0u32) {
                        return Err(ParseError::new(dl, dc, "zero denominator"));
                    }
                    let c = self.field.from_ratio(BigInt::from(n), BigInt::from(den));
                    return Ok(Polynomial::constant(self.ring, c));
                }
                Ok(Polynomial::constant(self.ring, self.field.from_bigint(&BigInt::from(n))))
            }
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(j) => Ok(Polynomial::variable(self.ring, j)),
                None => Err(ParseError::new(t.line, t.col, format!("unknown variable `{name}`"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token { tok: Tok::RParen, .. }) => Ok(inner),
                    Some(other) => Err(ParseError::new(
                        other.line,
                        other.col,
                        format!("expected `)`, found {}", other.tok.describe()),
                    )),
                    None => Err(self.eof_error("expected `)`")),
                }
            }
            other => Err(ParseError::new(
                t.line,
                t.col,
                format!("expected a number, variable, or `(`, found {}", other.describe()),
            )),
        }
    }

    fn natural(&mut self, expected: &str) -> Result<(BigUint, usize, usize), ParseError> {
        match self.next() {
            Some(Token { tok: Tok::Nat(n), line, col }) => Ok((n, line, col)),
            Some(other) => Err(ParseError::new(
                other.line,
                other.col,
                format!("{expected}, found {}", other.tok.describe()),
            )),
            None => Err(self.eof_error(expected)),
        }
    }
}

/// Parse one polynomial over the ring's coefficient field. Total on the
/// grammar; every rejection carries the 1-based line and column it was
/// detected at.
pub fn parse_polynomial(text: &str, ring: &RingRef) -> Result<Polynomial, ParseError> {
    let (toks, end) = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end, ring, field: ring.field() };
    if p.toks.is_empty() {
        return Err(p.eof_error("expected a polynomial"));
    }
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        let t = &p.toks[p.pos];
        let hint = match t.tok {
            Tok::Nat(_) | Tok::Ident(_) | Tok::LParen => {
                " (implicit multiplication is not allowed; write `*`)"
            }
            _ => "",
        };
        return Err(ParseError::new(
            t.line,
            t.col,
            format!("unexpected {} after the expression{hint}", t.tok.describe()),
        ));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use keller_core::poly::PolyRing;

    fn ring_q() -> RingRef {
        PolyRing::new(FieldSpec::rationals(), &["X1", "X2"])
    }

    fn ring_f(p: u64) -> RingRef {
        PolyRing::new(FieldSpec::prime(p).unwrap(), &["X"])
    }

    #[test]
    fn basic_shapes_parse() {
        let r = ring_q();
        let f = parse_polynomial("X1 + X2^2", &r).unwrap();
        let x1 = Polynomial::variable(&r, 0);
        let x2 = Polynomial::variable(&r, 1);
        assert_eq!(f, x1.add(&x2.mul(&x2)));

        let g = parse_polynomial("1/2*X1 - 3", &r).unwrap();
        assert_eq!(g.to_string(), "1/2*X1 - 3");

        let h = parse_polynomial("(X1 + X2) * (X1 - X2)", &r).unwrap();
        assert_eq!(h, x1.mul(&x1).sub(&x2.mul(&x2)));
    }

    #[test]
    fn char_p_literals_reduce() {
        let r = ring_f(3);
        let f = parse_polynomial("X - X^3", &r).unwrap();
        assert_eq!(f.to_string(), "2*X^3 + X");
        let g = parse_polynomial("4*X + 3", &r).unwrap();
        assert_eq!(g.to_string(), "X");
    }

    #[test]
    fn fraction_literal_needs_characteristic_zero() {
        let r = ring_f(5);
        let err = parse_polynomial("1/2*X", &r).unwrap_err();
        assert!(err.message.contains("rational literal in a finite field"), "{err}");
        assert_eq!((err.line, err.col), (1, 2));
    }

    #[test]
    fn implicit_multiplication_is_rejected() {
        let r = ring_q();
        let err = parse_polynomial("2X1", &r).unwrap_err();
        assert!(err.message.contains("implicit multiplication"), "{err}");
        assert_eq!((err.line, err.col), (1, 2));
    }

    #[test]
    fn unknown_variable_is_reported_with_position() {
        let r = ring_q();
        let err = parse_polynomial("X1 + Y", &r).unwrap_err();
        assert_eq!(err.message, "unknown variable `Y`");
        assert_eq!((err.line, err.col), (1, 6));
    }

    #[test]
    fn positions_track_lines() {
        let r = ring_q();
        let err = parse_polynomial("X1 +\n  $", &r).unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
    }

    #[test]
    fn unary_minus_binds_below_power() {
        let r = ring_q();
        let f = parse_polynomial("-X1^2", &r).unwrap();
        assert_eq!(f.to_string(), "-X1^2");
        let g = parse_polynomial("-2", &r).unwrap();
        assert_eq!(g.to_string(), "-2");
    }

    #[test]
    fn malformed_inputs_fail_loudly() {
        let r = ring_q();
        for text in ["", "X1 +", "(X1", "X1 ^ X2", "1/0", "3 ** X1", "X1^99999999999"] {
            assert!(parse_polynomial(text, &r).is_err(), "{text:?} parsed");
        }
    }

    #[test]
    fn zero_and_constants_round_trip() {
        let r = ring_q();
        for text in ["0", "7", "1/3"] {
            let f = parse_polynomial(text, &r).unwrap();
            assert_eq!(f.to_string(), text);
        }
    }
}
