use std::fmt;

use crate::algebra::Generator;

/// A wedge of generators in canonical non-decreasing order.
///
/// Equal factors may repeat only when they are odd; a repeated even factor
/// makes the word vanish and such words are never constructed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WedgeWord {
    factors: Vec<Generator>,
}

/// Sign picked up by swapping adjacent factors of parities `p` and `q`: `-(-1)^{pq}`.
pub fn swap_sign(p: u32, q: u32) -> i32 {
    if p & q & 1 == 1 {
        1
    } else {
        -1
    }
}

/// Sorts `factors` into canonical order by adjacent transpositions, tracking the
/// Koszul sign. Returns sign 0 and the empty word when an even factor repeats.
pub fn canonicalize(mut factors: Vec<Generator>) -> (WedgeWord, i32) {
    let mut sign = 1;
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 && factors[j - 1] > factors[j] {
            sign *= swap_sign(factors[j - 1].parity(), factors[j].parity());
            factors.swap(j - 1, j);
            j -= 1;
        }
    }
    if factors.windows(2).any(|p| p[0] == p[1] && p[0].parity() == 0) {
        return (WedgeWord { factors: Vec::new() }, 0);
    }
    (WedgeWord { factors }, sign)
}

impl WedgeWord {
    /// Builds a word from factors already in canonical order; `None` otherwise.
    pub fn from_sorted(factors: Vec<Generator>) -> Option<Self> {
        let ok = factors
            .windows(2)
            .all(|p| p[0] < p[1] || (p[0] == p[1] && p[0].parity() == 1));
        ok.then_some(WedgeWord { factors })
    }

    pub(crate) fn from_sorted_unchecked(factors: Vec<Generator>) -> Self {
        debug_assert!(WedgeWord::from_sorted(factors.clone()).is_some());
        WedgeWord { factors }
    }

    pub fn factors(&self) -> &[Generator] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Generator> {
        self.factors
    }

    /// Number of factors `m`.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Primary weight `Σ i`.
    pub fn primary_weight(&self) -> u32 {
        self.factors.iter().map(Generator::kind_index).sum()
    }

    /// Secondary weight `-m + Σ deg`.
    pub fn secondary_weight(&self) -> i64 {
        self.factors.iter().map(|g| g.degree() as i64).sum::<i64>() - self.len() as i64
    }

    pub fn weights(&self) -> (u32, i64) {
        (self.primary_weight(), self.secondary_weight())
    }
}

impl fmt::Display for WedgeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}
