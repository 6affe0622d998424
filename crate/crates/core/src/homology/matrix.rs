use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::boundary::{boundary_word_cached, BracketCache};
use crate::algebra::Rational;
use crate::chain::{Chain, ChainBasis, ComplexSlice};

/// A sparse exact matrix with columns indexed by a source basis and rows by a
/// target basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    /// Sorted by column then row; no zero entries.
    entries: Vec<(usize, usize, Rational)>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: Vec::new() }
    }

    /// Drops zeros and sums duplicate positions.
    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut map: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            *map.entry((c, r)).or_insert_with(Rational::zero) += v;
        }
        let entries = map.into_iter().filter(|(_, v)| !v.is_zero()).map(|((c, r), v)| (r, c, v)).collect();
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone())));
        ExactMatrix::from_entries(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Rational)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    /// Entries grouped by column, each column sorted by row.
    fn columns(&self) -> Vec<Vec<(usize, &Rational)>> {
        let mut out = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            out[*c].push((*r, v));
        }
        out
    }
}

/// Coordinates of a chain in a basis; panics when a word is missing, which
/// would mean the boundary left its weight space.
fn coordinates(c: &Chain, basis: &ChainBasis, source: &str) -> Vec<(usize, Rational)> {
    c.iter()
        .map(|(w, v)| {
            let Some(pos) = basis.position(w) else {
                panic!("image word {w} of {source} is not in the target basis");
            };
            (pos, v.clone())
        })
        .collect()
}

/// The matrix of `∂: C^m → C^{m-1}` in the slice bases.
pub fn boundary_matrix(slice: &ComplexSlice, m: usize) -> ExactMatrix {
    let mut cache = BracketCache::new();
    boundary_matrix_cached(slice, m, &mut cache)
}

pub(crate) fn boundary_matrix_cached(slice: &ComplexSlice, m: usize, cache: &mut BracketCache) -> ExactMatrix {
    let source = slice.basis(m);
    let target = if m == 0 { slice.basis(usize::MAX) } else { slice.basis(m - 1) };
    let mut entries = Vec::new();
    for (k, word) in source.words().iter().enumerate() {
        let image = boundary_word_cached(word, cache);
        for (r, v) in coordinates(&image, target, &word.to_string()) {
            entries.push((r, k, v));
        }
    }
    ExactMatrix::from_entries(target.len(), source.len(), entries)
}

/// The matrix of a linear map given on basis words.
pub fn matrix_of<F: FnMut(&crate::chain::WedgeWord) -> Chain>(source: &ChainBasis, target: &ChainBasis, mut f: F) -> ExactMatrix {
    let mut entries = Vec::new();
    for (k, word) in source.words().iter().enumerate() {
        for (r, v) in coordinates(&f(word), target, &word.to_string()) {
            entries.push((r, k, v));
        }
    }
    ExactMatrix::from_entries(target.len(), source.len(), entries)
}

/// Integers the elimination can run on; `None` signals overflow.
trait Exact: Clone + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)));
        self / o
    }
}

/// A sparse vector sorted by row, and the number of pivots it has seen.
struct Vector<T> {
    id: usize,
    entries: Vec<(usize, T)>,
    epoch: usize,
}

impl<T: Exact> Vector<T> {
    /// Applies the scalings of the steps that skipped this vector: they
    /// telescope to `pivots[now] / pivots[epoch]`.
    fn catch_up(&mut self, pivots: &[T]) -> Option<()> {
        let now = pivots.len() - 1;
        if self.epoch < now {
            let (num, den) = (&pivots[now], &pivots[self.epoch]);
            for (_, x) in self.entries.iter_mut() {
                *x = x.mul(num)?.div_exact(den);
            }
            self.epoch = now;
        }
        Some(())
    }
}

fn bareiss<T: Exact>(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Option<usize> {
    let mut vecs: Vec<Vector<T>> =
        columns
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
            .map(|(id, entries)| Vector { id, entries, epoch: 0 })
            .collect();
    let mut pivots = vec![T::one()];
    for row in 0..rows {
        // every earlier row has been cleared, so row is a leading entry or absent
        // among the columns reaching this row, the sparsest (then earliest) pivots
        let Some(p_idx) = (0..vecs.len())
            .filter(|&i| vecs[i].entries[0].0 == row)
            .min_by_key(|&i| (vecs[i].entries.len(), vecs[i].id))
        else {
            continue;
        };
        let mut pivot = vecs.swap_remove(p_idx);
        pivot.catch_up(&pivots)?;
        let p = pivot.entries[0].1.clone();
        let prev = pivots.last().expect("seeded with one").clone();
        for v in vecs.iter_mut().filter(|v| v.entries[0].0 == row) {
            v.catch_up(&pivots)?;
            let vr = v.entries[0].1.clone();
            let (a, b) = (&v.entries[1..], &pivot.entries[1..]);
            let mut next = Vec::with_capacity(a.len() + b.len());
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let (k, val) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                    i += 1;
                    (a[i - 1].0, a[i - 1].1.mul(&p)?)
                } else if i == a.len() || b[j].0 < a[i].0 {
                    j += 1;
                    (b[j - 1].0, T::zero().sub(&b[j - 1].1.mul(&vr)?)?)
                } else {
                    i += 1;
                    j += 1;
                    (a[i - 1].0, a[i - 1].1.mul(&p)?.sub(&b[j - 1].1.mul(&vr)?)?)
                };
                if !val.is_zero() {
                    next.push((k, val.div_exact(&prev)));
                }
            }
            v.entries = next;
            v.epoch = pivots.len();
        }
        vecs.retain(|v| !v.entries.is_empty());
        pivots.push(p);
        if vecs.is_empty() {
            break;
        }
    }
    Some(pivots.len() - 1)
}

/// Exact rank by fraction-free elimination.
///
/// Each column is scaled to integers, then columns are eliminated against
/// each other Bareiss-style: at every step the pivot is the first remaining
/// column with a nonzero entry in the lowest row index still present, and the
/// update `(p·v - v_r·u) / p_prev` divides exactly. Columns without an entry
/// in the pivot row only pick up the factor `p / p_prev`, which is deferred
/// until they are next needed. The arithmetic runs in `i128` and restarts in
/// big integers on overflow.
pub fn rank(mat: &ExactMatrix) -> usize {
    let columns: Vec<Vec<(usize, BigInt)>> = mat
        .columns()
        .into_iter()
        .map(|col| {
            let lcm = col.iter().fold(<BigInt as One>::one(), |acc, (_, v)| acc.lcm(v.denom()));
            col.into_iter().map(|(r, v)| (r, v.numer() * (&lcm / v.denom()))).collect()
        })
        .collect();
    let small: Option<Vec<Vec<(usize, i128)>>> =
        columns.iter().map(|c| c.iter().map(|(r, v)| v.to_i128().map(|x| (*r, x))).collect()).collect();
    if let Some(r) = small.and_then(|cols| bareiss(mat.rows, cols)) {
        return r;
    }
    bareiss(mat.rows, columns).expect("big integers do not overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn dense(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&dense(&[&[2]])), 1);
        assert_eq!(rank(&ExactMatrix::zero(3, 4)), 0);
        assert_eq!(rank(&ExactMatrix::zero(0, 2)), 0);
        assert_eq!(rank(&dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(rank(&dense(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]])), 3);
        assert_eq!(rank(&dense(&[&[0, 1], &[0, 1], &[0, 1]])), 1);
    }

    #[test]
    fn fractions_are_cleared() {
        let m = ExactMatrix::from_dense(&[vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 1)]]);
        assert_eq!(rank(&m), 1);
        let m = ExactMatrix::from_dense(&[vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 2)]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn boundary_matrices_of_small_slices() {
        let s = ComplexSlice::new(1, 2, -2);
        let m3 = boundary_matrix(&s, 3);
        assert_eq!((m3.rows(), m3.cols(), rank(&m3)), (2, 3, 1));
        assert_eq!(rank(&boundary_matrix(&s, 4)), 2);
        let m2 = boundary_matrix(&s, 2);
        assert_eq!((m2.rows(), m2.cols(), rank(&m2)), (0, 2, 0));

        let s = ComplexSlice::new(1, 0, 0);
        assert_eq!(boundary_matrix(&s, 2).to_dense(), vec![vec![q(2, 1)]]);
    }

    #[test]
    fn duplicate_entries_are_summed() {
        let m = ExactMatrix::from_entries(1, 1, [(0, 0, q(1, 1)), (0, 0, q(-1, 1))]);
        assert_eq!(m.nnz(), 0);
    }
}
