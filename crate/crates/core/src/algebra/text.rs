//! Text form of elements.
//!
//! ```text
//! element := ['+'|'-'] term (('+'|'-') term)*
//! term    := [rational] [mono] [field]      (at least one part present)
//! mono    := ('x' [index] ['^' nat])+
//! field   := 'd/dx' [index] | 'dx' [index] ('*' 'dx' index)*
//! ```
//!
//! On the line the index is omitted (`x^2 d/dx`, `3/2 x dx`); for `n > 1` it is
//! required (`x1^2 x3 d/dx2`, `dx1*dx3`). A bare rational is a multiple of the
//! constant function `1`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use super::element::Element;
use super::generator::{Generator, Kind};
use super::monomial::Monomial;
use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown coordinate index {0}")]
    UnknownCoordinate(u64),
    #[error("exponent overflow")]
    ExponentOverflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn syntax(position: usize, msg: impl Into<String>) -> Self {
        ParseError { position, kind: ParseErrorKind::Syntax(msg.into()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(String),
    Slash,
    Plus,
    Minus,
    Caret,
    Star,
    Amp,
    X(Option<String>),
    Dx(Option<String>),
    DDx(Option<String>),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        let start = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        (start, j)
    };
    let index_at = |j: usize| {
        let (s, e) = digits(j);
        ((s < e).then(|| text[s..e].to_string()), e)
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let (s, e) = digits(i);
                i = e;
                Tok::Int(text[s..e].to_string())
            }
            b'/' => {
                i += 1;
                Tok::Slash
            }
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'-' => {
                i += 1;
                Tok::Minus
            }
            b'^' => {
                i += 1;
                Tok::Caret
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'&' => {
                i += 1;
                Tok::Amp
            }
            b'x' => {
                let (idx, e) = index_at(i + 1);
                i = e;
                Tok::X(idx)
            }
            b'd' if text[i..].starts_with("d/dx") => {
                let (idx, e) = index_at(i + 4);
                i = e;
                Tok::DDx(idx)
            }
            b'd' if text[i..].starts_with("dx") => {
                let (idx, e) = index_at(i + 2);
                i = e;
                Tok::Dx(idx)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::syntax(i, format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

/// Recursive-descent reader shared by element and wedge-word parsing.
pub(crate) struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser {
    pub(crate) fn new(text: &str, n: usize) -> Result<Self, ParseError> {
        assert!(n >= 1, "dimension must be positive");
        Ok(Parser { toks: lex(text)?, pos: 0, end: text.len(), n })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::syntax(self.offset(), msg)
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.bump() {
            Some(Tok::Int(s)) => Ok(s.parse().expect("lexer only emits digits")),
            _ => {
                self.pos -= 1;
                Err(self.error("expected an integer"))
            }
        }
    }

    fn coordinate(&self, idx: &Option<String>, at: usize) -> Result<usize, ParseError> {
        match idx {
            None if self.n == 1 => Ok(0),
            None => Err(ParseError::syntax(at, "coordinate index required when n > 1")),
            Some(s) => {
                let k: u64 = s.parse().unwrap_or(u64::MAX);
                if k == 0 || k > self.n as u64 {
                    Err(ParseError { position: at, kind: ParseErrorKind::UnknownCoordinate(k) })
                } else {
                    Ok(k as usize - 1)
                }
            }
        }
    }

    /// `[rational] [mono] [field]`.
    pub(crate) fn term(&mut self) -> Result<(Rational, Generator), ParseError> {
        let start = self.offset();
        let mut coef = Rational::one();
        let mut seen = false;
        if let Some(Tok::Int(_)) = self.peek() {
            let num = self.int()?;
            let mut den = BigInt::one();
            if self.peek() == Some(&Tok::Slash) {
                self.bump();
                den = self.int()?;
                if den.is_zero() {
                    return Err(ParseError::syntax(start, "zero denominator"));
                }
            }
            coef = Rational::new(num, den);
            seen = true;
            // an explicit constant function after a coefficient, e.g. "2 1"
            if let Some(Tok::Int(s)) = self.peek() {
                if s == "1" {
                    self.bump();
                } else {
                    return Err(self.error("unexpected integer"));
                }
            }
        }

        let mut exps = vec![0u32; self.n];
        while let Some(Tok::X(idx)) = self.peek().cloned() {
            let at = self.offset();
            self.bump();
            let k = self.coordinate(&idx, at)?;
            let mut e = 1u32;
            if self.peek() == Some(&Tok::Caret) {
                self.bump();
                let at = self.offset();
                match self.bump() {
                    Some(Tok::Int(s)) => {
                        e = s.parse().map_err(|_| ParseError {
                            position: at,
                            kind: ParseErrorKind::ExponentOverflow,
                        })?;
                    }
                    _ => return Err(ParseError::syntax(at, "expected an exponent")),
                }
            }
            exps[k] = exps[k].checked_add(e).ok_or(ParseError {
                position: at,
                kind: ParseErrorKind::ExponentOverflow,
            })?;
            seen = true;
        }
        let mono = Monomial::new(exps);

        let kind = match self.peek().cloned() {
            Some(Tok::DDx(idx)) => {
                let at = self.offset();
                self.bump();
                Kind::VectorField(self.coordinate(&idx, at)? as u8)
            }
            Some(Tok::Dx(idx)) => {
                let at = self.offset();
                self.bump();
                let mut a: SmallVec<[u8; 4]> = SmallVec::new();
                a.push(self.coordinate(&idx, at)? as u8);
                while self.peek() == Some(&Tok::Star) {
                    self.bump();
                    let at = self.offset();
                    match self.bump() {
                        Some(Tok::Dx(idx)) => {
                            let k = self.coordinate(&idx, at)? as u8;
                            if *a.last().unwrap() >= k {
                                return Err(ParseError::syntax(
                                    at,
                                    "form indices must be strictly increasing",
                                ));
                            }
                            a.push(k);
                        }
                        _ => return Err(ParseError::syntax(at, "expected dx after '*'")),
                    }
                }
                Kind::Form(a)
            }
            _ if seen => Kind::function(),
            _ => return Err(self.error("expected a term")),
        };
        Ok((coef, Generator::new(kind, mono)))
    }

    /// Leading sign, if any: `+1`, `-1`.
    pub(crate) fn sign(&mut self) -> Option<i32> {
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
                Some(1)
            }
            Some(Tok::Minus) => {
                self.bump();
                Some(-1)
            }
            _ => None,
        }
    }
}

/// Parses an element of the superalgebra on `ℝ^n`.
pub fn parse_element(text: &str, n: usize) -> Result<Element, ParseError> {
    let mut p = Parser::new(text, n)?;
    let mut out = Element::zero();
    let mut first = true;
    loop {
        let sign = p.sign();
        if sign.is_none() && !first {
            return Err(p.error("expected '+' or '-'"));
        }
        first = false;
        let (c, g) = p.term()?;
        out.add_term(g, if sign == Some(-1) { -c } else { c });
        if p.at_end() {
            return Ok(out);
        }
    }
}

/// Writes `coef · body` as a signed term; `body` is `None` for the constant `1`.
pub(crate) fn write_signed_term(out: &mut String, first: bool, coef: &Rational, body: Option<&str>) {
    let neg = coef.is_negative();
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    let mag = coef.abs();
    match body {
        None => {
            let _ = write!(out, "{mag}");
        }
        Some(b) if mag.is_one() => out.push_str(b),
        Some(b) => {
            let _ = write!(out, "{mag} {b}");
        }
    }
}

/// Canonical text: terms in increasing generator order, `0` for the zero element.
pub fn format_element(e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (g, c)) in e.iter().enumerate() {
        let constant = g.kind_index() == 1 && g.degree() == 0;
        let body = g.to_string();
        write_signed_term(&mut out, i == 0, c, (!constant).then_some(body.as_str()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_line_notation() {
        let e = parse_element("x^2 d/dx", 1).unwrap();
        assert_eq!(e, Element::from(Generator::on_line(0, 2)));
        let e = parse_element("3/2 x dx", 1).unwrap();
        assert_eq!(e, Element::term(r(3, 2), Generator::on_line(2, 1)));
        let e = parse_element("1", 1).unwrap();
        assert_eq!(e, Element::from(Generator::on_line(1, 0)));
        assert!(parse_element("0", 1).unwrap().is_zero());
        assert!(parse_element("x - x", 1).unwrap().is_zero());
    }

    #[test]
    fn parses_higher_dimensions() {
        let e = parse_element("x1^2 x3 dx1*dx3 - d/dx2", 3).unwrap();
        let g = Generator::form([0, 2], Monomial::new([2, 0, 1]));
        let v = Generator::vector_field(1, Monomial::one(3));
        assert_eq!(e.coefficient(&g), r(1, 1));
        assert_eq!(e.coefficient(&v), r(-1, 1));
    }

    #[test]
    fn reports_errors_with_positions() {
        let err = parse_element("x^2 d/dy", 1).unwrap_err();
        assert_eq!(err.position, 4);
        let err = parse_element("x3 dx", 2).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownCoordinate(3));
        let err = parse_element("x^99999999999", 1).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ExponentOverflow);
        let err = parse_element("dx2*dx1", 2).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        assert!(parse_element("x x^4294967295", 1).is_err());
        assert!(parse_element("", 1).is_err());
        assert!(parse_element("1/0", 1).is_err());
        assert!(parse_element("x dx", 2).is_err());
    }

    #[test]
    fn formats_canonically() {
        let e = parse_element("dx - 2 x^2 d/dx + 3/2 + x", 1).unwrap();
        assert_eq!(format_element(&e), "-2 x^2 d/dx + 3/2 + x + dx");
        assert_eq!(format_element(&parse_element("-1", 1).unwrap()), "-1");
        assert_eq!(format_element(&Element::zero()), "0");
    }
}
