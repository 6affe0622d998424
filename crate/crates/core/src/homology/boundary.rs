use std::collections::HashMap;

use num_traits::One;

use crate::algebra::{bracket_generators_into, Element, Generator, Rational};
use crate::chain::{Chain, WedgeWord};

/// Memoizes generator brackets; a boundary matrix asks for the same pairs
/// many times over.
#[derive(Default)]
pub struct BracketCache {
    table: HashMap<(Generator, Generator), Element>,
}

impl BracketCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, a: &Generator, b: &Generator) -> &Element {
        self.table.entry((a.clone(), b.clone())).or_insert_with(|| {
            let mut out = Element::zero();
            bracket_generators_into(a, b, &mut out, &Rational::one());
            out
        })
    }
}

/// Adds `coef · ∂(word)` to `out`.
fn boundary_word_into(word: &WedgeWord, coef: &Rational, cache: &mut BracketCache, out: &mut Chain) {
    let f = word.factors();
    let m = f.len();
    for i in 0..m {
        let ai = f[i].kind_index();
        // a_i · Σ_{i<s<j} a_s, updated as j advances
        let mut between = 0u32;
        for j in i + 1..m {
            let odd = (i as u32 + ai * between) % 2 == 1;
            between += f[j].kind_index();
            let br = cache.get(&f[i], &f[j]);
            if br.is_zero() {
                continue;
            }
            let br = br.clone();
            for (g, c) in br.iter() {
                let mut factors = Vec::with_capacity(m - 1);
                factors.extend_from_slice(&f[..i]);
                factors.extend_from_slice(&f[i + 1..j]);
                factors.push(g.clone());
                factors.extend_from_slice(&f[j + 1..]);
                let mut k = c * coef;
                if odd {
                    k = -k;
                }
                out.add_factors(factors, &k);
            }
        }
    }
}

/// `∂` of a single word, sharing `cache` across calls.
pub fn boundary_word_cached(word: &WedgeWord, cache: &mut BracketCache) -> Chain {
    let mut out = Chain::zero();
    boundary_word_into(word, &Rational::one(), cache, &mut out);
    out
}

pub fn boundary_word(word: &WedgeWord) -> Chain {
    boundary_word_cached(word, &mut BracketCache::new())
}

/// The boundary operator, extended linearly.
pub fn boundary(c: &Chain) -> Chain {
    let mut cache = BracketCache::new();
    let mut out = Chain::zero();
    for (w, coef) in c.iter() {
        boundary_word_into(w, coef, &mut cache, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{format_chain, parse_chain};

    fn d(text: &str) -> String {
        format_chain(&boundary(&parse_chain(text, 1).unwrap()))
    }

    #[test]
    fn worked_examples() {
        assert_eq!(d("d/dx & x^2 d/dx"), "2 x d/dx");
        assert_eq!(d("d/dx & x d/dx & x^2 d/dx"), "0");
        assert_eq!(d("d/dx & 1 & x"), "1 & 1 - d/dx & dx");
        assert_eq!(d("d/dx & x d/dx & x^2 d/dx & 1 & 1"), "0");
        assert_eq!(d("d/dx & x d/dx & x"), "x d/dx & 1");
        assert_eq!(d("d/dx & x d/dx & 1 & x"), "x d/dx & 1 & 1 + d/dx & x d/dx & dx");
        assert_eq!(d("x d/dx"), "0");
    }

    #[test]
    fn lowers_degree_and_keeps_weight() {
        let c = parse_chain("d/dx & x d/dx & 1 & x", 1).unwrap();
        let b = boundary(&c);
        assert_eq!(b.degree(), Some(3));
        assert!(b.has_weight(2, -2));
    }

    #[test]
    fn linear() {
        let a = parse_chain("d/dx & 1 & x", 1).unwrap();
        let b = parse_chain("d/dx & x d/dx & x", 1).unwrap();
        let two = Rational::from_integer(2.into());
        let lhs = boundary(&(&a.scaled(&two) - &b));
        let rhs = &boundary(&a).scaled(&two) - &boundary(&b);
        assert_eq!(lhs, rhs);
    }
}
