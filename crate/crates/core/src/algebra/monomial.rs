use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A monomial `x_1^{e_1} ... x_n^{e_n}` in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u32; 2]>,
}

impl Monomial {
    pub fn new<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        let exps: SmallVec<[u32; 2]> = exps.into_iter().collect();
        assert!(!exps.is_empty(), "a monomial needs at least one variable");
        Monomial { exps }
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial::new(std::iter::repeat(0).take(n))
    }

    /// `x^e` on the line.
    pub fn power(e: u32) -> Self {
        Monomial::new([e])
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Partial derivative along coordinate `k` (0-based) as `(coefficient, monomial)`,
    /// or `None` when it vanishes.
    pub fn derivative(&self, k: usize) -> Option<(u32, Monomial)> {
        let e = self.exps[k];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[k] -= 1;
        Some((e, Monomial { exps }))
    }

    /// Lexicographic comparison of exponent vectors.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    /// Plain-text form: `x^2` for n = 1, `x1^2 x3` otherwise; empty for the constant.
    pub(crate) fn write_text(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let single = self.dim() == 1;
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char(' ')?;
            }
            first = false;
            f.write_char('x')?;
            if !single {
                write!(f, "{}", k + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }

    /// All monomials of total degree `d` in `n` variables, in increasing lexicographic order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(Monomial::new(prefix.iter().copied()));
                prefix.pop();
                return;
            }
            for e in 0..=d {
                prefix.push(e);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.cmp_lex(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
