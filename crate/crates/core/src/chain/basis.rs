use std::collections::{BTreeMap, HashMap};

use super::word::WedgeWord;
use crate::algebra::Generator;

/// An ordered basis of wedge words with its inverse index.
#[derive(Clone, Debug, Default)]
pub struct ChainBasis {
    words: Vec<WedgeWord>,
    index: HashMap<WedgeWord, usize>,
}

impl ChainBasis {
    /// Sorts and dedupes the words.
    pub fn new(mut words: Vec<WedgeWord>) -> Self {
        words.sort();
        words.dedup();
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        ChainBasis { words, index }
    }

    pub fn words(&self) -> &[WedgeWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &WedgeWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &WedgeWord) -> bool {
        self.index.contains_key(w)
    }
}

impl PartialEq for ChainBasis {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words
    }
}

impl Eq for ChainBasis {}

/// Strictly increasing (`strict`) or non-decreasing tuples of length `len`
/// with entries `>= min` summing to `sum`.
fn tuples(len: usize, sum: u32, min: u32, strict: bool, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if len == 0 {
        if sum == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let step = if strict { 1 } else { 0 };
    let mut v = min;
    loop {
        // the remaining len - 1 entries are at least v + step, v + 2·step, ...
        let rest = len as u64 - 1;
        let floor = v as u64 * len as u64 + step as u64 * rest * (rest + 1) / 2;
        if floor > sum as u64 {
            break;
        }
        prefix.push(v);
        tuples(len - 1, sum - v, v + step, strict, prefix, out);
        prefix.pop();
        v += 1;
    }
}

fn all_tuples(len: usize, sum: u32, strict: bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    tuples(len, sum, 0, strict, &mut Vec::with_capacity(len), &mut out);
    out
}

/// On the line: `a` vector fields, `b` functions and `c` one-forms with
/// `a + b + c = m` and `b + 2c = w`, their degrees distributed as strictly
/// increasing, non-decreasing and strictly increasing tuples.
fn enumerate_line(w: u32, total_degree: u32, m: usize) -> Vec<WedgeWord> {
    let mut out = Vec::new();
    for c in 0..=(w / 2) as usize {
        let b = w as usize - 2 * c;
        if b + c > m {
            continue;
        }
        let a = m - b - c;
        for da in 0..=total_degree {
            let a_tuples = all_tuples(a, da, true);
            if a_tuples.is_empty() {
                continue;
            }
            for db in 0..=(total_degree - da) {
                let dc = total_degree - da - db;
                let b_tuples = all_tuples(b, db, false);
                if b_tuples.is_empty() {
                    continue;
                }
                let c_tuples = all_tuples(c, dc, true);
                for ta in &a_tuples {
                    for tb in &b_tuples {
                        for tc in &c_tuples {
                            let factors = ta
                                .iter()
                                .map(|&d| Generator::on_line(0, d))
                                .chain(tb.iter().map(|&d| Generator::on_line(1, d)))
                                .chain(tc.iter().map(|&d| Generator::on_line(2, d)))
                                .collect();
                            out.push(WedgeWord::from_sorted_unchecked(factors));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Generators on `ℝ^n` of kind at most `min(w, n + 1)` and degree at most
/// `max_degree`, in increasing order.
pub(crate) fn candidates(n: usize, w: u32, max_degree: u32) -> Vec<Generator> {
    let max_kind = (n as u32 + 1).min(w);
    let mut cands: Vec<Generator> = (0..=max_kind)
        .flat_map(|k| (0..=max_degree).flat_map(move |d| Generator::all_of(n, k, d)))
        .collect();
    cands.sort();
    cands
}

/// Any dimension: non-decreasing selections of `m` entries from the sorted
/// candidate list with kinds summing to `w` and degrees to `total_degree`,
/// strictly increasing on even generators. Selections are emitted as index
/// lists in lexicographic order.
pub(crate) fn for_each_word(cands: &[Generator], w: u32, total_degree: u32, m: usize, emit: &mut dyn FnMut(&[usize])) {
    // vector fields come first; prefix[i] is the degree sum of the first i
    let n_vf = cands.iter().take_while(|g| g.is_vector_field()).count();
    let mut prefix = vec![0u64; n_vf + 1];
    for i in 0..n_vf {
        prefix[i + 1] = prefix[i] + cands[i].degree() as u64;
    }

    struct Ctx<'a, 'e> {
        cands: &'a [Generator],
        prefix: Vec<u64>,
        cur: Vec<usize>,
        emit: &'e mut dyn FnMut(&[usize]),
    }
    fn rec(ctx: &mut Ctx, start: usize, left: usize, kind_left: u32, deg_left: u32) {
        if left == 0 {
            if kind_left == 0 && deg_left == 0 {
                (ctx.emit)(&ctx.cur);
            }
            return;
        }
        for idx in start..ctx.cands.len() {
            let g = &ctx.cands[idx];
            let k = g.kind_index();
            // later factors have kind at least k
            if k as u64 * left as u64 > kind_left as u64 {
                break;
            }
            if g.degree() > deg_left {
                continue;
            }
            let next = if g.parity() == 1 { idx } else { idx + 1 };
            // at most kind_left - k further forms, the rest are distinct vector fields
            let need = (left - 1).saturating_sub((kind_left - k) as usize);
            if need > 0 {
                let n_vf = ctx.prefix.len() - 1;
                if next + need > n_vf
                    || ctx.prefix[next + need] - ctx.prefix[next] > (deg_left - g.degree()) as u64
                {
                    continue;
                }
            }
            ctx.cur.push(idx);
            rec(ctx, next, left - 1, kind_left - k, deg_left - g.degree());
            ctx.cur.pop();
        }
    }
    let mut ctx = Ctx { cands, prefix, cur: Vec::with_capacity(m), emit };
    rec(&mut ctx, 0, m, w, total_degree);
}

fn enumerate_general(n: usize, w: u32, total_degree: u32, m: usize) -> Vec<WedgeWord> {
    let cands = candidates(n, w, total_degree);
    let mut out = Vec::new();
    for_each_word(&cands, w, total_degree, m, &mut |idx| {
        out.push(WedgeWord::from_sorted_unchecked(idx.iter().map(|&i| cands[i].clone()).collect()));
    });
    out
}

/// The canonical words spanning `C^m_{w,h}` on `ℝ^n`: `m` factors, primary
/// weight `w`, secondary weight `h`.
pub fn enumerate_basis(n: usize, w: u32, h: i64, m: usize) -> ChainBasis {
    assert!(n >= 1, "dimension must be positive");
    let total = m as i64 + h;
    if m == 0 || total < 0 {
        return ChainBasis::default();
    }
    let total = total as u32;
    let words = if n == 1 {
        enumerate_line(w, total, m)
    } else {
        enumerate_general(n, w, total, m)
    };
    ChainBasis::new(words)
}

/// Largest number of factors a nonempty `C^m_{w,h}` can have.
///
/// At most `w` factors are forms, so `m <= a + w` with `a` pairwise distinct
/// vector fields whose degrees sum to at most `m + h`.
pub fn max_chain_length(n: usize, w: u32, h: i64) -> Option<usize> {
    let budget = w as i64 + h;
    let mut best = None;
    let mut a = 0usize;
    let mut min_sum = 0i64;
    let mut degree = 0i64;
    let mut left_at_degree = n as i64;
    loop {
        if min_sum - a as i64 <= budget {
            best = Some(a);
        } else if degree >= 2 {
            // from here on every step raises min_sum - a by at least 1
            break;
        }
        if left_at_degree == 0 {
            degree += 1;
            left_at_degree = Generator::all_of(n, 0, degree as u32).len() as i64;
        }
        min_sum += degree;
        left_at_degree -= 1;
        a += 1;
    }
    best.map(|a| a + w as usize)
}

/// Smallest and largest `m` with a nonempty basis, `None` for an empty complex.
pub fn m_range(n: usize, w: u32, h: i64) -> Option<(usize, usize)> {
    let slice = ComplexSlice::new(n, w, h);
    slice.range()
}

/// All nonempty chain spaces `C^m_{w,h}` of one weighted complex.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub n: usize,
    pub w: u32,
    pub h: i64,
    bases: BTreeMap<usize, ChainBasis>,
}

impl ComplexSlice {
    pub fn new(n: usize, w: u32, h: i64) -> Self {
        let mut bases = BTreeMap::new();
        if let Some(top) = max_chain_length(n, w, h) {
            let bottom = (-h).max(1) as usize;
            for m in bottom..=top {
                let b = enumerate_basis(n, w, h, m);
                if !b.is_empty() {
                    bases.insert(m, b);
                }
            }
        }
        ComplexSlice { n, w, h, bases }
    }

    pub fn range(&self) -> Option<(usize, usize)> {
        let lo = *self.bases.keys().next()?;
        let hi = *self.bases.keys().next_back()?;
        Some((lo, hi))
    }

    /// The basis of `C^m`, empty outside the range.
    pub fn basis(&self, m: usize) -> &ChainBasis {
        static EMPTY: std::sync::OnceLock<ChainBasis> = std::sync::OnceLock::new();
        self.bases.get(&m).unwrap_or_else(|| EMPTY.get_or_init(ChainBasis::default))
    }

    pub fn dim(&self, m: usize) -> usize {
        self.basis(m).len()
    }

    /// Degrees with a nonempty basis, increasing.
    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.bases.keys().copied()
    }
}
