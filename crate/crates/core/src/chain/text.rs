//! Text form of wedge words and chains: factors joined by `&`, terms by `+`/`-`.

use num_traits::One;

use super::chain::Chain;
use super::word::WedgeWord;
use crate::algebra::text::{write_signed_term, Parser, Tok};
use crate::algebra::{ParseError, Rational};

/// Parses a chain such as `1 & 1 - d/dx & dx` on `ℝ^n`. A coefficient may be
/// attached to any factor; the word is canonicalized with its Koszul sign.
pub fn parse_chain(text: &str, n: usize) -> Result<Chain, ParseError> {
    let mut p = Parser::new(text, n)?;
    let mut out = Chain::zero();
    let mut first = true;
    let mut degree = None;
    loop {
        let sign = p.sign();
        if sign.is_none() && !first {
            return Err(p.error("expected '+' or '-'"));
        }
        first = false;
        let start = p.offset();
        let mut coef = Rational::one();
        let mut factors = Vec::new();
        loop {
            let (c, g) = p.term()?;
            coef *= c;
            factors.push(g);
            if p.peek() == Some(&Tok::Amp) {
                p.bump();
            } else {
                break;
            }
        }
        if *degree.get_or_insert(factors.len()) != factors.len() {
            return Err(ParseError {
                position: start,
                kind: crate::algebra::ParseErrorKind::Syntax(
                    "all terms must have the same number of factors".into(),
                ),
            });
        }
        if sign == Some(-1) {
            coef = -coef;
        }
        out.add_factors(factors, &coef);
        if p.at_end() {
            return Ok(out);
        }
    }
}

/// A single wedge word; fails if the text is not exactly one canonical word
/// with coefficient one.
pub fn parse_word(text: &str, n: usize) -> Result<WedgeWord, ParseError> {
    let c = parse_chain(text, n)?;
    let mut it = c.iter();
    match (it.next(), it.next()) {
        (Some((w, coef)), None) if coef.is_one() => Ok(w.clone()),
        _ => Err(ParseError {
            position: 0,
            kind: crate::algebra::ParseErrorKind::Syntax("expected a single wedge word".into()),
        }),
    }
}

pub fn format_word(w: &WedgeWord) -> String {
    w.to_string()
}

/// Terms in decreasing word order, `0` for the zero chain.
pub fn format_chain(c: &Chain) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, coef)) in c.iter().rev().enumerate() {
        write_signed_term(&mut out, i == 0, coef, Some(&w.to_string()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;

    #[test]
    fn parse_and_format() {
        let c = parse_chain("1 & 1 - d/dx & dx", 1).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(format_chain(&c), "1 & 1 - d/dx & dx");
        let c = parse_chain("x d/dx & d/dx", 1).unwrap();
        assert_eq!(format_chain(&c), "-d/dx & x d/dx");
        assert_eq!(format_chain(&parse_chain("2 x d/dx & 1 & 1", 1).unwrap()), "2 x d/dx & 1 & 1");
        assert!(parse_chain("dx & dx", 1).unwrap().is_zero());
        assert_eq!(format_chain(&Chain::zero()), "0");
        assert!(parse_chain("0", 1).unwrap().is_zero());
        assert!(parse_chain("1 & 1 + dx", 1).is_err());
        assert!(parse_chain("1 & ", 1).is_err());
    }

    #[test]
    fn coefficient_on_constant_word() {
        let c = parse_chain("2 1", 1).unwrap();
        assert_eq!(format_chain(&c), "2 1");
        assert_eq!(parse_chain(&format_chain(&c), 1).unwrap(), c);
    }

    #[test]
    fn words() {
        let w = parse_word("d/dx & 1 & x", 1).unwrap();
        assert_eq!(w.factors()[1], Generator::on_line(1, 0));
        assert!(parse_word("x d/dx & d/dx", 1).is_err());
        assert!(parse_word("d/dx + x", 1).is_err());
    }
}
