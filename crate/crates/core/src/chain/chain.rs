use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::word::{canonicalize, WedgeWord};
use crate::algebra::{Element, Generator, Rational};

/// A rational combination of wedge words with a common number of factors.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Chain {
    terms: BTreeMap<WedgeWord, Rational>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    pub fn from_word(word: WedgeWord) -> Self {
        let mut c = Chain::zero();
        c.add_term(word, Rational::one());
        c
    }

    /// The wedge `f_1 ∧ ... ∧ f_m` of the given factors, put in canonical order.
    pub fn from_factors(factors: Vec<Generator>) -> Self {
        let mut c = Chain::zero();
        c.add_factors(factors, &Rational::one());
        c
    }

    /// Degree-one chain of an element.
    pub fn from_element(e: &Element) -> Self {
        let mut c = Chain::zero();
        for (g, coef) in e.iter() {
            c.add_term(WedgeWord::from_sorted_unchecked(vec![g.clone()]), coef.clone());
        }
        c
    }

    pub fn add_term(&mut self, word: WedgeWord, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        debug_assert!(self.degree().map_or(true, |m| m == word.len()), "inhomogeneous chain");
        match self.terms.entry(word) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `coef · (f_1 ∧ ... ∧ f_m)` with the Koszul sign of canonicalization.
    pub fn add_factors(&mut self, factors: Vec<Generator>, coef: &Rational) {
        let (word, sign) = canonicalize(factors);
        match sign {
            0 => {}
            1 => self.add_term(word, coef.clone()),
            _ => self.add_term(word, -coef),
        }
    }

    pub fn add_scaled(&mut self, other: &Chain, coef: &Rational) {
        if coef.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * coef);
        }
    }

    pub fn scaled(&self, coef: &Rational) -> Chain {
        let mut out = Chain::zero();
        out.add_scaled(self, coef);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common factor count, `None` for the zero chain.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(WedgeWord::len)
    }

    pub fn coefficient(&self, word: &WedgeWord) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing word order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&WedgeWord, &Rational)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &WedgeWord> {
        self.terms.keys()
    }

    /// `true` when every word has double weight `(w, h)`.
    pub fn has_weight(&self, w: u32, h: i64) -> bool {
        self.words().all(|x| x.weights() == (w, h))
    }

    /// Bilinear wedge product.
    pub fn wedge(&self, other: &Chain) -> Chain {
        let mut out = Chain::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut f = Vec::with_capacity(a.len() + b.len());
                f.extend_from_slice(a.factors());
                f.extend_from_slice(b.factors());
                out.add_factors(f, &(ca * cb));
            }
        }
        out
    }
}

impl From<WedgeWord> for Chain {
    fn from(w: WedgeWord) -> Self {
        Chain::from_word(w)
    }
}

impl Add<&Chain> for &Chain {
    type Output = Chain;

    fn add(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Add for Chain {
    type Output = Chain;

    fn add(self, rhs: Chain) -> Chain {
        &self + &rhs
    }
}

impl Sub<&Chain> for &Chain {
    type Output = Chain;

    fn sub(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Sub for Chain {
    type Output = Chain;

    fn sub(self, rhs: Chain) -> Chain {
        &self - &rhs
    }
}

impl Neg for &Chain {
    type Output = Chain;

    fn neg(self) -> Chain {
        self.scaled(&-Rational::one())
    }
}

impl Neg for Chain {
    type Output = Chain;

    fn neg(self) -> Chain {
        -&self
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_chain(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32, j: u32) -> Generator {
        Generator::on_line(i, j)
    }

    fn single(x: Generator) -> Chain {
        Chain::from_factors(vec![x])
    }

    #[test]
    fn wedge_examples() {
        let a = single(g(0, 0)).wedge(&single(g(0, 2)));
        assert_eq!(a, Chain::from_factors(vec![g(0, 0), g(0, 2)]));
        assert_eq!(a.iter().next().unwrap().1, &Rational::one());
        let b = single(g(0, 2)).wedge(&single(g(0, 0)));
        assert_eq!(b, -&a);
        let c = single(g(1, 0)).wedge(&single(g(1, 0)));
        assert_eq!(c.len(), 1);
        assert_eq!(c.degree(), Some(2));
        assert!(single(g(2, 0)).wedge(&single(g(2, 0))).is_zero());
    }

    #[test]
    fn wedge_is_associative() {
        let x = single(g(0, 1)) + single(g(1, 2));
        let y = single(g(2, 0)) - single(g(0, 0));
        let z = single(g(1, 1));
        assert_eq!(x.wedge(&y).wedge(&z), x.wedge(&y.wedge(&z)));
    }
}
