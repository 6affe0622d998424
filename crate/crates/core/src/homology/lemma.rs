//! The operator `𝒜₁`, the twisted boundary `∂′` on `C_{2,-2}`, and checks of how
//! multiplication by `1 ∧ ... ∧ 1` interacts with `∂`.

use num_traits::One;

use super::boundary::{boundary, boundary_word_cached, BracketCache};
use super::matrix::{matrix_of, rank};
use super::report::betti;
use super::verify::{Counterexample, VerificationReport};
use super::HomologyError;
use crate::algebra::{bracket_generators, Generator, Rational};
use crate::chain::{base_basis, enumerate_basis, ii_multiply, ones, Chain, ComplexSlice, WedgeWord};

/// `(As, Bs, Cs)`: the vector fields, functions and one-forms of a word on the line.
pub fn split_word(word: &WedgeWord) -> Result<(&[Generator], &[Generator], &[Generator]), HomologyError> {
    let f = word.factors();
    if f.iter().any(|g| g.dim() != 1) {
        return Err(HomologyError::NotOnLine(word.to_string()));
    }
    let a = f.iter().take_while(|g| g.kind_index() == 0).count();
    let b = f[a..].iter().take_while(|g| g.kind_index() == 1).count();
    Ok((&f[..a], &f[a..a + b], &f[a + b..]))
}

/// Adds `coef · prefix ∧ 𝒜₁(bs) ∧ suffix`.
fn a1_into(prefix: &[Generator], bs: &[Generator], suffix: &[Generator], coef: &Rational, out: &mut Chain) {
    let b = bs.len();
    if b == 0 {
        return;
    }
    let one = Generator::on_line(1, 0);
    let s = if b % 2 == 0 { coef.clone() } else { -coef };
    for j in 0..b {
        for (g, c) in bracket_generators(&one, &bs[j]).iter() {
            let mut f = Vec::with_capacity(prefix.len() + b + suffix.len());
            f.extend_from_slice(prefix);
            f.extend(bs.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, x)| x.clone()));
            f.push(g.clone());
            f.extend_from_slice(suffix);
            out.add_factors(f, &(c * &s));
        }
    }
}

/// `𝒜₁(B_1 ∧ ... ∧ B_b) = (-1)^b Σ_j B_1 ∧ ... B̂_j ... ∧ B_b ∧ [1, B_j]`, zero for `b = 0`.
pub fn a1_operator(bs: &[Generator]) -> Result<Chain, HomologyError> {
    if let Some(g) = bs.iter().find(|g| g.kind_index() != 1 || g.dim() != 1) {
        return Err(HomologyError::KindViolation(g.to_string()));
    }
    let mut out = Chain::zero();
    a1_into(&[], bs, &[], &Rational::one(), &mut out);
    Ok(out)
}

/// `As ∧ 𝒜₁(Bs) ∧ Cs` extended linearly.
pub fn a1_term(c: &Chain) -> Result<Chain, HomologyError> {
    let mut out = Chain::zero();
    for (w, coef) in c.iter() {
        let (a, b, cs) = split_word(w)?;
        a1_into(a, b, cs, coef, &mut out);
    }
    Ok(out)
}

fn check_weight(c: &Chain, w: u32, h: i64) -> Result<(), HomologyError> {
    match c.words().find(|x| x.weights() != (w, h)) {
        Some(bad) => {
            let (bw, bh) = bad.weights();
            Err(HomologyError::WeightMismatch { word: bad.to_string(), w: bw, h: bh })
        }
        None => Ok(()),
    }
}

/// `∂′x = 1 ∧ ∂x + As ∧ 𝒜₁(Bs) ∧ Cs` on `C^m_{2,-2}`, landing in `C^m_{3,-3}`.
pub fn boundary_prime(c: &Chain) -> Result<Chain, HomologyError> {
    check_weight(c, 2, -2)?;
    let one = Chain::from_factors(vec![Generator::on_line(1, 0)]);
    Ok(&one.wedge(&boundary(c)) + &a1_term(c)?)
}

/// `1^{∧p} ∧ c`, the identity for `p = 0`.
fn prepend_ones(p: usize, c: &Chain) -> Chain {
    if p == 0 {
        c.clone()
    } else {
        ones(p).wedge(c)
    }
}

fn parity_sign(p: u32) -> i32 {
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Which signs `σ` make `lhs = σ·rhs`: both when the two sides vanish.
fn reconciling_signs(lhs: &Chain, rhs: &Chain) -> Vec<i32> {
    let mut out = Vec::new();
    if lhs == rhs {
        out.push(1);
    }
    if *lhs == -rhs {
        out.push(-1);
    }
    out
}

/// For each `w`, compares `∂(II ∧ x)` with `σ·(1∧)^{w-3} ∧ ∂′x` on every basis
/// word `x` of `C^{2+k}_{2,-2}`, `k = 0..3`. A cell passes when one sign `σ`
/// works for all words. Also checks the commutator identity
/// `∂(II∧x) - (-1)^{w-2} II∧∂x = σ·(1∧)^{w-3} ∧ As∧𝒜₁(Bs)∧Cs`
/// and records a word on which the `𝒜₁` term survives.
pub fn verify_theorem5(ws: impl IntoIterator<Item = u32>) -> Result<VerificationReport, HomologyError> {
    let ws: Vec<u32> = ws.into_iter().collect();
    let grid = match (ws.first(), ws.last()) {
        (Some(a), Some(b)) => format!("w={a}..{b} k=0..3"),
        _ => "empty".to_string(),
    };
    let mut rep = VerificationReport::new("thm5", grid);
    let words: Vec<WedgeWord> =
        (0..4).map(base_basis).collect::<Result<Vec<_>, _>>()?.iter().flat_map(|b| b.words().to_vec()).collect();

    let mut witness = None;
    for &w in &ws {
        if w <= 2 {
            return Err(crate::chain::ChainError::WeightTooSmall(w).into());
        }
        let p = (w - 3) as usize;
        let printed = parity_sign(w - 2);

        let mut sigma: Option<i32> = None;
        let mut bad = None;
        let mut commutator_bad = None;
        let mut rows = Vec::new();
        for x in &words {
            let xc = Chain::from_word(x.clone());
            let lhs = boundary(&ii_multiply(w, &xc)?);
            let rhs = prepend_ones(p, &boundary_prime(&xc)?);
            let a1 = prepend_ones(p, &a1_term(&xc)?);
            if witness.is_none() && !a1.is_zero() {
                witness = Some(x.clone());
            }
            let signs = reconciling_signs(&lhs, &rhs);
            match (signs.as_slice(), sigma) {
                ([], _) => {
                    bad.get_or_insert_with(|| Counterexample::new(x, &lhs, &rhs));
                }
                ([s], None) => sigma = Some(*s),
                ([s], Some(t)) if *s != t => {
                    bad.get_or_insert_with(|| Counterexample::new(x, &lhs, &rhs.scaled(&Rational::from_integer(t.into()))));
                }
                _ => {}
            }
            rows.push((x, lhs, a1));
        }

        // the commutator side, with σ falling back to the printed sign
        let s = Rational::from_integer(sigma.unwrap_or(printed).into());
        let pr = Rational::from_integer(printed.into());
        for (x, lhs, a1) in &rows {
            let xc = Chain::from_word((*x).clone());
            let commutator = lhs - &ii_multiply(w, &boundary(&xc))?.scaled(&pr);
            let expected = a1.scaled(&s);
            if commutator != expected {
                commutator_bad.get_or_insert_with(|| Counterexample::new(x, &commutator, &expected));
            }
        }

        rep.check(format!("w={w} sign"), bad.map_or(Ok(()), Err));
        rep.check(format!("w={w} commutator"), commutator_bad.map_or(Ok(()), Err));
        match sigma {
            Some(s) if s == printed => rep.note(format!("w={w}: sigma = {s} agrees with (-1)^(w-2)")),
            Some(s) => rep.note(format!("w={w}: sigma = {s} differs from (-1)^(w-2) = {printed}")),
            None => rep.note(format!("w={w}: no word fixes sigma")),
        }
    }
    match &witness {
        Some(x) => rep.note(format!("the A1 term is nonzero on {x}, so II does not commute with the boundary")),
        None => rep.note("the A1 term vanished on every word"),
    }
    rep.check(
        "non-commutativity witness",
        witness.map(|_| ()).ok_or_else(|| Counterexample::new("all words", "A1 term 0", "nonzero A1 term")),
    );
    Ok(rep)
}

/// One row of the table comparing `∂x` with `As ∧ 𝒜₁(Bs) ∧ Cs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaRow {
    pub m: usize,
    pub word: String,
    pub boundary: String,
    pub a1: String,
}

/// Expected rows, listed from `C^5_{2,-2}` down to `C^2_{2,-2}`.
pub const LEMMA_TABLE: [(usize, &str, &str, &str); 8] = [
    (5, "d/dx & x d/dx & x^2 d/dx & 1 & 1", "0", "0"),
    (4, "d/dx & x d/dx & 1 & x", "x d/dx & 1 & 1 + d/dx & x d/dx & dx", "d/dx & x d/dx & 1 & dx"),
    (4, "d/dx & x^2 d/dx & 1 & 1", "2 x d/dx & 1 & 1", "0"),
    (3, "d/dx & x d/dx & dx", "0", "0"),
    (3, "d/dx & 1 & x", "1 & 1 - d/dx & dx", "d/dx & 1 & dx"),
    (3, "x d/dx & 1 & 1", "0", "0"),
    (2, "d/dx & dx", "0", "0"),
    (2, "1 & 1", "0", "0"),
];

/// The table for every basis word of `C^{2..5}_{2,-2}`, top degree first.
pub fn lemma_table() -> Vec<LemmaRow> {
    let mut cache = BracketCache::new();
    let mut out = Vec::new();
    for k in (0..4u32).rev() {
        let basis = base_basis(k).expect("k in range");
        for x in basis.words() {
            let xc = Chain::from_word(x.clone());
            out.push(LemmaRow {
                m: 2 + k as usize,
                word: x.to_string(),
                boundary: boundary_word_cached(x, &mut cache).to_string(),
                a1: a1_term(&xc).expect("words on the line").to_string(),
            });
        }
    }
    out
}

/// Ranks of `x ↦ 1 ∧ ∂x` and `x ↦ ∂′x` on `C^{2+k}_{2,-2}`, `k = 0..3`.
pub fn lemma_rank_pairs() -> Vec<(usize, usize)> {
    let one = Chain::from_factors(vec![Generator::on_line(1, 0)]);
    (0..4u32)
        .map(|k| {
            let source = base_basis(k).expect("k in range");
            let target = enumerate_basis(1, 3, -3, 2 + k as usize);
            let plain = matrix_of(&source, &target, |x| one.wedge(&boundary(&Chain::from_word(x.clone()))));
            let twisted =
                matrix_of(&source, &target, |x| boundary_prime(&Chain::from_word(x.clone())).expect("weight (2, -2)"));
            (rank(&plain), rank(&twisted))
        })
        .collect()
}

/// Rank of `∂` out of `C^{w+k}_{w,-w}` for `k = 0..3`.
pub fn diagonal_ranks(w: u32) -> Vec<usize> {
    let report = betti(&ComplexSlice::new(1, w, -(w as i64)));
    (0..4).map(|k| report.rows.iter().find(|r| r.m == w as usize + k).map_or(0, |r| r.rank)).collect()
}

/// Equal ranks for `1 ∧ ∂` and `∂′`, the comparison table, and the transport
/// of the `w = 2` rank profile to `3 <= w <= max_w`.
pub fn verify_lemma_ranks(max_w: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("lemma-ranks", format!("k=0..3 w=3..{max_w}"));
    let pairs = lemma_rank_pairs();
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let outcome = if a == b {
            Ok(())
        } else {
            Err(Counterexample::new(format!("C^{}_(2,-2)", 2 + k), format!("rank 1&d = {a}"), format!("rank d' = {b}")))
        };
        rep.check(format!("k={k} ranks"), outcome);
    }
    rep.note(format!("rank pairs {:?}", pairs));

    let table = lemma_table();
    for (m, word, bd, a1) in LEMMA_TABLE {
        let outcome = match table.iter().find(|r| r.word == word) {
            Some(r) if r.m == m && r.boundary == bd && r.a1 == a1 => Ok(()),
            Some(r) => Err(Counterexample::new(word, format!("{} | {}", r.boundary, r.a1), format!("{bd} | {a1}"))),
            None => Err(Counterexample::new(word, "absent", "basis word")),
        };
        rep.check(format!("table {word}"), outcome);
    }
    let extra = table.iter().find(|r| !LEMMA_TABLE.iter().any(|e| e.1 == r.word));
    rep.check("table complete", extra.map_or(Ok(()), |r| Err(Counterexample::new(&r.word, "extra row", "none"))));

    let base = diagonal_ranks(2);
    for w in 3..=max_w {
        let got = diagonal_ranks(w);
        let outcome = if got == base { Ok(()) } else { Err(Counterexample::new(format!("w={w}"), format!("{got:?}"), format!("{base:?}"))) };
        rep.check(format!("w={w} ranks"), outcome);
    }
    rep
}

/// `∂(1^{∧p} ∧ x)` for a word of `C_{2,-2}`, evaluated through its pieces.
pub fn ii_boundary_expansion(p: usize, x: &Chain) -> Result<Chain, HomologyError> {
    check_weight(x, 2, -2)?;
    let sign = Rational::from_integer(parity_sign(p as u32).into());
    let mut out = prepend_ones(p, &boundary(x));
    if p > 0 {
        let scale = Rational::from_integer((p as i64).into());
        out.add_scaled(&prepend_ones(p - 1, &a1_term(x)?), &scale);
    }
    Ok(out.scaled(&sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::parse_chain;

    fn ch(t: &str) -> Chain {
        parse_chain(t, 1).unwrap()
    }

    fn gens(t: &[&str]) -> Vec<Generator> {
        t.iter().map(|s| ch(s).words().next().unwrap().factors()[0].clone()).collect()
    }

    #[test]
    fn a1_examples() {
        assert_eq!(a1_operator(&gens(&["1", "x"])).unwrap(), ch("1 & dx"));
        assert!(a1_operator(&gens(&["1", "1"])).unwrap().is_zero());
        assert!(a1_operator(&[]).unwrap().is_zero());
        // two equal summands x ∧ [1, x]
        assert_eq!(a1_operator(&gens(&["x", "x"])).unwrap(), ch("2 x & dx"));
        assert!(matches!(a1_operator(&gens(&["dx"])), Err(HomologyError::KindViolation(_))));
    }

    #[test]
    fn boundary_prime_examples() {
        assert_eq!(boundary_prime(&ch("d/dx & x^2 d/dx & 1 & 1")).unwrap(), ch("2 1 & x d/dx & 1 & 1"));
        assert!(boundary_prime(&ch("d/dx & x d/dx & x^2 d/dx & 1 & 1")).unwrap().is_zero());
        let expected = &ch("1 & 1 & 1 - 1 & d/dx & dx") + &ch("d/dx & 1 & dx");
        assert_eq!(boundary_prime(&ch("d/dx & 1 & x")).unwrap(), expected);
        assert!(boundary_prime(&ch("1 & 1 & 1")).unwrap_err().to_string().contains("(3, -3)"));
    }

    #[test]
    fn table_and_rank_pairs() {
        let table = lemma_table();
        assert_eq!(table.len(), LEMMA_TABLE.len());
        for (row, (m, word, bd, a1)) in table.iter().zip(LEMMA_TABLE) {
            assert_eq!((row.m, row.word.as_str(), row.boundary.as_str(), row.a1.as_str()), (m, word, bd, a1));
        }
        assert_eq!(lemma_rank_pairs(), [(0, 0), (1, 1), (2, 2), (0, 0)]);
    }

    #[test]
    fn single_sign_reconciles_at_w3() {
        let rep = verify_theorem5([3]).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn ii_boundary_counts_every_copy_of_one() {
        for w in 3..=7u32 {
            let p = (w - 2) as usize;
            for k in 0..4 {
                for x in base_basis(k).unwrap().words() {
                    let xc = Chain::from_word(x.clone());
                    let lhs = boundary(&ii_multiply(w, &xc).unwrap());
                    assert_eq!(lhs, ii_boundary_expansion(p, &xc).unwrap(), "w={w} x={x}");
                }
            }
        }
    }
}
