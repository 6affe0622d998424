//! Closed-form bases of the diagonal complexes `C^{w+k}_{w,-w}` on the line
//! for `w > 2`, and the multiplication map by `1 ∧ ... ∧ 1`.

use thiserror::Error;

use super::basis::ChainBasis;
use super::chain::Chain;
use super::word::canonicalize;
use crate::algebra::Generator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("offset k = {0} is outside 0..=3")]
    OffsetOutOfRange(u32),
    #[error("primary weight w = {0} must exceed 2")]
    WeightTooSmall(u32),
    #[error("chain term {word} has weight ({w}, {h}), expected (2, -2)")]
    WeightMismatch { word: String, w: u32, h: i64 },
}

/// The spanning words of `C^{2+k}_{2,-2}` on the line, as `(kind, degree)` lists.
pub const BASE_COMPLEX: [&[&[(u32, u32)]]; 4] = [
    &[&[(0, 0), (2, 0)], &[(1, 0), (1, 0)]],
    &[
        &[(0, 0), (0, 1), (2, 0)],
        &[(0, 0), (1, 0), (1, 1)],
        &[(0, 1), (1, 0), (1, 0)],
    ],
    &[&[(0, 0), (0, 1), (1, 0), (1, 1)], &[(0, 0), (0, 2), (1, 0), (1, 0)]],
    &[&[(0, 0), (0, 1), (0, 2), (1, 0), (1, 0)]],
];

fn base_factors(k: u32) -> impl Iterator<Item = Vec<Generator>> {
    BASE_COMPLEX[k as usize]
        .iter()
        .map(|word| word.iter().map(|&(i, j)| Generator::on_line(i, j)).collect())
}

/// `C^{2+k}_{2,-2}` from the closed-form table.
pub fn base_basis(k: u32) -> Result<ChainBasis, ChainError> {
    if k > 3 {
        return Err(ChainError::OffsetOutOfRange(k));
    }
    Ok(ChainBasis::new(base_factors(k).map(|f| canonicalize(f).0).collect()))
}

/// `(K[1][0])^{∧(w-2)} ∧ C^{2+k}_{2,-2}` materialized as canonical words.
pub fn closed_form_basis(w: u32, k: u32) -> Result<ChainBasis, ChainError> {
    if k > 3 {
        return Err(ChainError::OffsetOutOfRange(k));
    }
    if w <= 2 {
        return Err(ChainError::WeightTooSmall(w));
    }
    let one = Generator::on_line(1, 0);
    let words = base_factors(k)
        .map(|f| {
            let mut factors = vec![one.clone(); w as usize - 2];
            factors.extend(f);
            let (word, sign) = canonicalize(factors);
            debug_assert_ne!(sign, 0);
            word
        })
        .collect();
    Ok(ChainBasis::new(words))
}

/// Left multiplication by `w - 2` copies of the constant function `1`,
/// mapping `C^m_{2,-2}` into `C^{m+w-2}_{w,-w}`.
pub fn ii_multiply(w: u32, c: &Chain) -> Result<Chain, ChainError> {
    if w <= 2 {
        return Err(ChainError::WeightTooSmall(w));
    }
    if let Some(bad) = c.words().find(|x| x.weights() != (2, -2)) {
        let (bw, bh) = bad.weights();
        return Err(ChainError::WeightMismatch { word: bad.to_string(), w: bw, h: bh });
    }
    let prefix = ones(w as usize - 2);
    Ok(prefix.wedge(c))
}

/// The chain `1 ∧ ... ∧ 1` with `count` factors.
pub fn ones(count: usize) -> Chain {
    Chain::from_factors(vec![Generator::on_line(1, 0); count])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::basis::enumerate_basis;
    use crate::chain::text::parse_chain;
    use crate::chain::word::WedgeWord;
    use num_traits::One;

    fn words(b: &ChainBasis) -> Vec<String> {
        b.words().iter().map(WedgeWord::to_string).collect()
    }

    #[test]
    fn base_table_matches_enumeration() {
        for k in 0..4 {
            assert_eq!(base_basis(k).unwrap(), enumerate_basis(1, 2, -2, 2 + k as usize));
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(words(&closed_form_basis(3, 0).unwrap()), ["d/dx & 1 & dx", "1 & 1 & 1"]);
        assert_eq!(
            words(&closed_form_basis(4, 3).unwrap()),
            ["d/dx & x d/dx & x^2 d/dx & 1 & 1 & 1 & 1"]
        );
        let b = closed_form_basis(5, 1).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b, enumerate_basis(1, 5, -5, 6));
        assert_eq!(closed_form_basis(3, 4), Err(ChainError::OffsetOutOfRange(4)));
        assert_eq!(closed_form_basis(2, 0), Err(ChainError::WeightTooSmall(2)));
    }

    #[test]
    fn ii_examples() {
        let c = parse_chain("1 & 1", 1).unwrap();
        assert_eq!(ii_multiply(3, &c).unwrap(), parse_chain("1 & 1 & 1", 1).unwrap());

        // d/dx crosses two odd factors: (-1)^2
        let c = parse_chain("d/dx & dx", 1).unwrap();
        let out = ii_multiply(4, &c).unwrap();
        let (word, sign) = canonicalize(
            ["1", "1", "d/dx", "dx"]
                .iter()
                .map(|s| crate::algebra::parse_element(s, 1).unwrap().generators().next().unwrap().clone())
                .collect(),
        );
        assert_eq!(sign, 1);
        assert_eq!(out.coefficient(&word), crate::algebra::Rational::one());

        assert!(ii_multiply(3, &Chain::zero()).unwrap().is_zero());
        let bad = parse_chain("x d/dx", 1).unwrap();
        assert!(matches!(ii_multiply(3, &bad), Err(ChainError::WeightMismatch { .. })));
    }
}
