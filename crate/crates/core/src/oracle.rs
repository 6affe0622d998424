//! Slow reference implementations for cross-checking: dense Gauss–Jordan
//! rank, generate-and-filter basis enumeration, and permutation signs by
//! inversion counting. The reference routines do not call the elimination,
//! enumeration or canonicalization code they check; `verify_oracle` puts the
//! two side by side.

use std::collections::BTreeSet;
use std::time::Instant;

use log::debug;
use num_traits::{One, Zero};

use crate::algebra::{Generator, Monomial, Rational};
use crate::chain::{canonicalize, ComplexSlice, WedgeWord};
use crate::homology::{boundary_matrix, rank, Counterexample, VerificationReport};

/// Rows of rationals, all of the same length.
pub type DenseMatrix = Vec<Vec<Rational>>;

/// Rank by reducing to row echelon form.
pub fn naive_rank(m: &DenseMatrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut r = 0;
    for c in 0..cols {
        // the sparsest candidate row keeps fill-in down
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c..].iter().filter(|x| !x.is_zero()).count())
        else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        // left of c the pivot row is already zero
        let support: Vec<usize> = (c..cols).filter(|&j| !a[r][j].is_zero()).collect();
        for &j in &support {
            a[r][j] *= &inv;
        }
        let pivot = a[r].clone();
        for i in r + 1..rows {
            if !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for &j in &support {
                    a[i][j] -= &f * &pivot[j];
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// A generator as plain data: kind index, direction or form indices, exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Raw {
    kind: u32,
    slots: Vec<usize>,
    exps: Vec<u32>,
}

impl Raw {
    fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn odd(&self) -> bool {
        self.kind % 2 == 1
    }

    /// Kind, then degree, then slots, then exponents.
    fn key(&self) -> (u32, u32, &[usize], &[u32]) {
        (self.kind, self.degree(), &self.slots, &self.exps)
    }

    fn to_generator(&self) -> Generator {
        let mono = Monomial::new(self.exps.iter().copied());
        if self.kind == 0 {
            Generator::vector_field(self.slots[0], mono)
        } else {
            Generator::form(self.slots.iter().copied(), mono)
        }
    }
}

fn exponent_vectors(n: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().sum();
            for e in 0..=cap - used {
                let mut v = v.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

fn raw_generators(n: usize, cap: u32) -> Vec<Raw> {
    let exps = exponent_vectors(n, cap);
    let mut out = Vec::new();
    for dir in 0..n {
        for e in &exps {
            out.push(Raw { kind: 0, slots: vec![dir], exps: e.clone() });
        }
    }
    for q in 0..=n {
        for s in subsets(n, q) {
            for e in &exps {
                out.push(Raw { kind: q as u32 + 1, slots: s.clone(), exps: e.clone() });
            }
        }
    }
    out
}

/// Every canonical word of `C^m_{w,h}` whose generators have degree at most
/// `cap`: all multisets of `m` generators with running kind and degree sums
/// kept within `w` and `m + h`, then filtered on the exact weights.
pub fn naive_enumerate(n: usize, w: u32, h: i64, m: usize, cap: u32) -> BTreeSet<WedgeWord> {
    let mut out = BTreeSet::new();
    let budget = m as i64 + h;
    if m == 0 || budget < 0 {
        return out;
    }
    let gens = raw_generators(n, cap);

    fn pick(
        gens: &[Raw],
        start: usize,
        left: usize,
        kinds: u32,
        degrees: i64,
        cur: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            found.push(cur.clone());
            return;
        }
        for i in start..gens.len() {
            let g = &gens[i];
            if kinds < g.kind || degrees < g.degree() as i64 {
                continue;
            }
            cur.push(i);
            pick(gens, i, left - 1, kinds - g.kind, degrees - g.degree() as i64, cur, found);
            cur.pop();
        }
    }

    let mut found = Vec::new();
    pick(&gens, 0, m, w, budget, &mut Vec::new(), &mut found);
    for idx in found {
        let mut factors: Vec<&Raw> = idx.iter().map(|&i| &gens[i]).collect();
        let kinds: u32 = factors.iter().map(|g| g.kind).sum();
        let degrees: i64 = factors.iter().map(|g| g.degree() as i64).sum();
        if kinds != w || degrees - m as i64 != h {
            continue;
        }
        factors.sort_by(|a, b| a.key().cmp(&b.key()));
        if factors.windows(2).any(|p| p[0] == p[1] && !p[0].odd()) {
            continue;
        }
        let word = WedgeWord::from_sorted(factors.iter().map(|g| g.to_generator()).collect())
            .expect("oracle order disagrees with the generator order");
        out.insert(word);
    }
    out
}

/// Sign of moving the factor at position `perm[i]` to position `i`: one
/// factor `-1` per inverted pair unless both factors are odd.
pub fn koszul_sign(perm: &[usize], parities: &[u32]) -> i32 {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        assert!(p < perm.len() && !seen[p], "not a permutation");
        seen[p] = true;
    }
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && !(parities[perm[i]] % 2 == 1 && parities[perm[j]] % 2 == 1) {
                sign = -sign;
            }
        }
    }
    sign
}

fn grid_text(cells: &[(u32, i64)]) -> String {
    let span = |f: fn(&(u32, i64)) -> i64| {
        let lo = cells.iter().map(f).min().unwrap_or(0);
        let hi = cells.iter().map(f).max().unwrap_or(0);
        format!("{lo}..{hi}")
    };
    format!("n=1 w={} h={} ({} cells)", span(|c| c.0 as i64), span(|c| c.1), cells.len())
}

/// Fraction-free rank against dense elimination on every boundary matrix of
/// the given line complexes.
pub fn verify_oracle_ranks(cells: &[(u32, i64)]) -> VerificationReport {
    let mut rep = VerificationReport::new("oracle-ranks", grid_text(cells));
    for &(w, h) in cells {
        let started = Instant::now();
        let slice = ComplexSlice::new(1, w, h);
        let mut bad = None;
        for m in slice.degrees() {
            let mat = boundary_matrix(&slice, m);
            let (fast, slow) = (rank(&mat), naive_rank(&mat.to_dense()));
            if fast != slow {
                bad.get_or_insert_with(|| Counterexample::new(format!("m={m}"), fast, slow));
            }
        }
        rep.check(format!("w={w} h={h} rank"), bad.map_or(Ok(()), Err));
        debug!("oracle w={w} h={h}: ranks in {:?}", started.elapsed());
    }
    rep
}

/// Basis enumeration against generate-and-filter for every `m` up to the
/// top degree plus two.
pub fn verify_oracle_bases(cells: &[(u32, i64)]) -> VerificationReport {
    let mut rep = VerificationReport::new("oracle-bases", grid_text(cells));
    for &(w, h) in cells {
        let started = Instant::now();
        let slice = ComplexSlice::new(1, w, h);
        let top = slice.range().map_or(0, |r| r.1) + 2;
        let mut bad = None;
        for m in 1..=top {
            let cap = (m as i64 + h).max(0) as u32;
            let slow = naive_enumerate(1, w, h, m, cap);
            let fast = slice.basis(m);
            let same = fast.len() == slow.len() && fast.words().iter().all(|x| slow.contains(x));
            if !same {
                bad.get_or_insert_with(|| {
                    Counterexample::new(format!("m={m}"), format!("{} words", fast.len()), format!("{} words", slow.len()))
                });
            }
        }
        rep.check(format!("w={w} h={h} basis"), bad.map_or(Ok(()), Err));
        debug!("oracle w={w} h={h}: bases in {:?}", started.elapsed());
    }
    rep
}

/// Canonicalization sign on every word of up to `max_len` factors drawn from
/// a six-letter alphabet of line generators.
pub fn verify_oracle_signs(max_len: usize) -> VerificationReport {
    let alphabet: Vec<Generator> = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]
        .iter()
        .map(|&(k, d)| Generator::on_line(k, d))
        .collect();
    let mut rep = VerificationReport::new("oracle-signs", format!("len<={max_len}"));
    let mut bad = None;
    let mut seqs: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        seqs = seqs
            .iter()
            .flat_map(|s| (0..alphabet.len()).map(move |i| [s.as_slice(), &[i]].concat()))
            .collect();
        for s in &seqs {
            let factors: Vec<Generator> = s.iter().map(|&i| alphabet[i].clone()).collect();
            if let Some(cx) = sign_mismatch(&factors) {
                bad.get_or_insert(cx);
            }
        }
    }
    rep.check(format!("signs len<={max_len}"), bad.map_or(Ok(()), Err));
    rep
}

/// Ranks and bases on one grid of line complexes, plus the exhaustive sign
/// check.
pub fn verify_oracle(cells: &[(u32, i64)], max_len: usize) -> VerificationReport {
    let mut rep = VerificationReport::new("oracle", grid_text(cells));
    for part in [verify_oracle_ranks(cells), verify_oracle_bases(cells), verify_oracle_signs(max_len)] {
        rep.pass &= part.pass;
        rep.cells.extend(part.cells);
        if rep.counterexample.is_none() {
            rep.counterexample = part.counterexample;
        }
        rep.notes.extend(part.notes);
    }
    rep
}

/// Compares `canonicalize` with the inversion count of a stable sort.
pub fn sign_mismatch(factors: &[Generator]) -> Option<Counterexample> {
    let mut perm: Vec<usize> = (0..factors.len()).collect();
    perm.sort_by(|&a, &b| factors[a].cmp(&factors[b]));
    let parities: Vec<u32> = factors.iter().map(Generator::parity).collect();
    let repeated_even = perm.windows(2).any(|p| factors[p[0]] == factors[p[1]] && parities[p[0]] == 0);
    let expected = if repeated_even { 0 } else { koszul_sign(&perm, &parities) };
    let (_, got) = canonicalize(factors.to_vec());
    (got != expected).then(|| {
        let text: Vec<String> = factors.iter().map(ToString::to_string).collect();
        Counterexample::new(text.join(" & "), got, expected)
    })
}
