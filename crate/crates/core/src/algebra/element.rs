use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::generator::Generator;
use super::Rational;

/// A finite rational linear combination of generators.
///
/// Zero coefficients are never stored, so the empty combination is the unique zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Element {
    terms: BTreeMap<Generator, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_generator(g: Generator) -> Self {
        Element::term(Rational::one(), g)
    }

    pub fn term(coef: Rational, g: Generator) -> Self {
        let mut e = Element::zero();
        e.add_term(g, coef);
        e
    }

    pub fn add_term(&mut self, g: Generator, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(g) {
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

    /// `self += coef * other`.
    pub fn add_scaled(&mut self, other: &Element, coef: &Rational) {
        if coef.is_zero() {
            return;
        }
        for (g, c) in &other.terms {
            self.add_term(g.clone(), c * coef);
        }
    }

    pub fn scaled(&self, coef: &Rational) -> Element {
        let mut out = Element::zero();
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

    pub fn coefficient(&self, g: &Generator) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing generator order.
    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &Rational)> {
        self.terms.iter()
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.terms.keys()
    }

    pub fn is_pure_forms(&self) -> bool {
        self.generators().all(Generator::is_form)
    }

    pub fn is_pure_vector_fields(&self) -> bool {
        self.generators().all(Generator::is_vector_field)
    }
}

impl FromIterator<(Generator, Rational)> for Element {
    fn from_iter<I: IntoIterator<Item = (Generator, Rational)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (g, c) in iter {
            e.add_term(g, c);
        }
        e
    }
}

impl From<Generator> for Element {
    fn from(g: Generator) -> Self {
        Element::from_generator(g)
    }
}

impl Add<&Element> for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Add for Element {
    type Output = Element;

    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Sub for Element {
    type Output = Element;

    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scaled(&-Rational::one())
    }
}

impl Neg for Element {
    type Output = Element;

    fn neg(self) -> Element {
        -&self
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_element(self))
    }
}
