//! A lean boundary engine for large slices: generators are numbered in their
//! total order, words are short id lists, coefficients are machine integers,
//! and only two consecutive degrees are held at once.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use smallvec::SmallVec;

use super::boundary::BracketCache;
use crate::algebra::Generator;
use crate::chain::basis::{candidates, for_each_word};
use crate::chain::{max_chain_length, WedgeWord};

pub(crate) type Ids = SmallVec<[u16; 16]>;

/// One sparse column: `(row, coefficient)` sorted by row, no zeros.
pub(crate) type Column = Vec<(u32, i64)>;

pub(crate) struct Table {
    gens: Vec<Generator>,
    index: HashMap<Generator, u16>,
    parity: Vec<u8>,
    kind: Vec<u32>,
    brackets: HashMap<(u16, u16), Box<[(u16, i64)]>>,
    cache: BracketCache,
}

impl Table {
    fn new(n: usize, w: u32, max_degree: u32) -> Self {
        let gens = candidates(n, w, max_degree);
        assert!(gens.len() < u16::MAX as usize, "too many generators for compact ids");
        let index = gens.iter().enumerate().map(|(i, g)| (g.clone(), i as u16)).collect();
        let parity = gens.iter().map(|g| g.parity() as u8).collect();
        let kind = gens.iter().map(Generator::kind_index).collect();
        Table { gens, index, parity, kind, brackets: HashMap::new(), cache: BracketCache::new() }
    }

    fn bracket(&mut self, a: u16, b: u16) -> &[(u16, i64)] {
        let Table { gens, index, brackets, cache, .. } = self;
        brackets.entry((a, b)).or_insert_with(|| {
            cache
                .get(&gens[a as usize], &gens[b as usize])
                .iter()
                .map(|(g, c)| {
                    let id = *index.get(g).unwrap_or_else(|| panic!("bracket term {g} outside the generator table"));
                    assert!(c.is_integer(), "non-integral structure constant {c}");
                    (id, c.to_integer().to_i64().expect("structure constant fits in i64"))
                })
                .collect()
        })
    }

    pub(crate) fn word(&self, ids: &[u16]) -> WedgeWord {
        WedgeWord::from_sorted(ids.iter().map(|&i| self.gens[i as usize].clone()).collect()).expect("sorted ids")
    }
}

pub(crate) struct Level {
    pub words: Vec<Ids>,
    index: HashMap<Ids, u32>,
}

impl Level {
    fn new(table: &Table, w: u32, h: i64, m: usize) -> Self {
        let mut words = Vec::new();
        let total = m as i64 + h;
        if m > 0 && total >= 0 {
            for_each_word(&table.gens, w, total as u32, m, &mut |idx| {
                words.push(idx.iter().map(|&i| i as u16).collect());
            });
        }
        let index = words.iter().enumerate().map(|(i, x): (usize, &Ids)| (x.clone(), i as u32)).collect();
        Level { words, index }
    }

    fn empty() -> Self {
        Level { words: Vec::new(), index: HashMap::new() }
    }
}

/// `rest` with `g` inserted in order, and the Koszul sign of moving `g` from
/// position `at` there; `None` when an even generator would repeat.
fn insert_sorted(table: &Table, rest: &[u16], at: usize, g: u16) -> Option<(Ids, i64)> {
    let pg = table.parity[g as usize];
    let pos = rest.partition_point(|&f| f <= g);
    if pg == 0 && pos > 0 && rest[pos - 1] == g {
        return None;
    }
    let mut sign = 1i64;
    let crossed = if pos < at { &rest[pos..at] } else { &rest[at..pos] };
    for &f in crossed {
        if !(pg == 1 && table.parity[f as usize] == 1) {
            sign = -sign;
        }
    }
    let mut out: Ids = SmallVec::with_capacity(rest.len() + 1);
    out.extend_from_slice(&rest[..pos]);
    out.push(g);
    out.extend_from_slice(&rest[pos..]);
    Some((out, sign))
}

/// Coordinates of `∂(word)` in the level below.
fn boundary_column(table: &mut Table, word: &[u16], below: &Level) -> Column {
    let m = word.len();
    let mut col: Column = Vec::new();
    let mut rest: Vec<u16> = Vec::with_capacity(m);
    for i in 0..m {
        let ai = table.kind[word[i] as usize];
        let mut between = 0u32;
        for j in i + 1..m {
            let odd = (i as u32 + ai * between) % 2 == 1;
            between += table.kind[word[j] as usize];
            let terms: SmallVec<[(u16, i64); 4]> = table.bracket(word[i], word[j]).iter().copied().collect();
            if terms.is_empty() {
                continue;
            }
            rest.clear();
            rest.extend(word.iter().enumerate().filter(|&(s, _)| s != i && s != j).map(|(_, &f)| f));
            for (g, c) in terms {
                // g starts where A_j was, after the factors left of j
                let Some((ids, sign)) = insert_sorted(table, &rest, j - 1, g) else { continue };
                let Some(&row) = below.index.get(&ids) else {
                    panic!("image word {} is not in the target basis", table.word(&ids));
                };
                let v = if odd { -c * sign } else { c * sign };
                col.push((row, v));
            }
        }
    }
    col.sort_unstable_by_key(|e| e.0);
    let mut merged: Column = Vec::with_capacity(col.len());
    for (r, v) in col {
        match merged.last_mut() {
            Some(last) if last.0 == r => last.1 = last.1.checked_add(v).expect("coefficient overflow"),
            _ => merged.push((r, v)),
        }
    }
    merged.retain(|e| e.1 != 0);
    merged
}

/// Walks a weighted complex degree by degree from the bottom.
pub(crate) struct Sweep {
    pub table: Table,
    w: u32,
    h: i64,
    top: usize,
    next_m: usize,
    below: Option<Level>,
}

impl Sweep {
    pub fn new(n: usize, w: u32, h: i64) -> Self {
        let top = max_chain_length(n, w, h).unwrap_or(0);
        let max_degree = (top as i64 + h).max(0) as u32;
        Sweep { table: Table::new(n, w, max_degree), w, h, top, next_m: 1, below: None }
    }

    /// Boundary columns of the next degree `m` into degree `m - 1`, one per
    /// basis word of `C^m`; the words are then available from `current`.
    pub fn step(&mut self) -> Option<(usize, Vec<Column>)> {
        if self.next_m > self.top {
            return None;
        }
        let m = self.next_m;
        self.next_m += 1;
        let level = Level::new(&self.table, self.w, self.h, m);
        let below = self.below.take().unwrap_or_else(Level::empty);
        let cols = level.words.iter().map(|x| boundary_column(&mut self.table, x, &below)).collect();
        self.below = Some(level);
        Some((m, cols))
    }

    pub fn current(&self) -> Option<&Level> {
        self.below.as_ref()
    }
}
