use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use log::debug;

use super::boundary::{boundary, BracketCache};
use super::compact::{Column, Sweep};
use super::report::betti;
use super::HomologyError;
use crate::algebra::{bracket, euler_field, Element, Generator, Rational};
use crate::chain::{closed_form_basis, enumerate_basis, Chain, ComplexSlice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub word: String,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new(word: impl ToString, lhs: impl ToString, rhs: impl ToString) -> Self {
        Counterexample { word: word.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub cell: String,
    pub pass: bool,
}

/// Outcome of checking one claim over a parameter grid. A failing report
/// always carries the first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub grid: String,
    pub pass: bool,
    pub cells: Vec<Cell>,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>, grid: impl Into<String>) -> Self {
        VerificationReport {
            claim: claim.into(),
            grid: grid.into(),
            pass: true,
            cells: Vec::new(),
            counterexample: None,
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, cell: impl Into<String>, outcome: Result<(), Counterexample>) {
        let pass = outcome.is_ok();
        if let Err(cx) = outcome {
            self.pass = false;
            self.counterexample.get_or_insert(cx);
        }
        self.cells.push(Cell { cell: cell.into(), pass });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Folds the cells of `other` in, prefixing them with its grid.
    pub fn absorb(&mut self, other: VerificationReport) {
        for c in other.cells {
            self.cells.push(Cell { cell: format!("{} {}", other.grid, c.cell), pass: c.pass });
        }
        if !other.pass {
            self.pass = false;
            if self.counterexample.is_none() {
                self.counterexample = other.counterexample;
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn failed_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.pass)
    }
}

/// `∂∂ = 0` on every basis word of `C_{w,h}` on `ℝ^n`, as the vanishing of
/// each product of consecutive boundary matrices.
pub fn verify_d_squared(n: usize, w: u32, h: i64) -> VerificationReport {
    let mut rep = VerificationReport::new("d2", format!("n={n} w={w} h={h}"));
    let mut sweep = Sweep::new(n, w, h);
    let mut prev: Vec<Column> = Vec::new();
    let mut acc: Vec<i64> = Vec::new();
    let mut touched: Vec<u32> = Vec::new();
    while let Some((m, cols)) = sweep.step() {
        if cols.is_empty() {
            prev = cols;
            continue;
        }
        let rows = prev.iter().flat_map(|c| c.iter().map(|e| e.0 as usize + 1)).max().unwrap_or(0);
        acc.clear();
        acc.resize(rows, 0);
        let mut bad = None;
        for (k, col) in cols.iter().enumerate() {
            for &(r, v) in col {
                for &(r2, v2) in &prev[r as usize] {
                    let a = &mut acc[r2 as usize];
                    if *a == 0 {
                        touched.push(r2);
                    }
                    *a = v.checked_mul(v2).and_then(|x| a.checked_add(x)).expect("coefficient overflow");
                }
            }
            if bad.is_none() && touched.iter().any(|&t| acc[t as usize] != 0) {
                let word = sweep.current().map(|l| sweep.table.word(&l.words[k])).expect("current level");
                let dd = boundary(&boundary(&Chain::from_word(word.clone())));
                bad = Some(Counterexample::new(word, dd, "0"));
            }
            for t in touched.drain(..) {
                acc[t as usize] = 0;
            }
        }
        debug!("d2 n={n} w={w} h={h} m={m}: {} words", cols.len());
        rep.check(format!("m={m}"), bad.map_or(Ok(()), Err));
        prev = cols;
    }
    rep
}

/// Acyclicity off the diagonal: every Betti number below the top degree
/// vanishes and the top one is the signed alternating sum of dimensions.
/// Also checks `∂(E ∧ Y) = -E ∧ ∂Y + (w + h)·Y` on every basis word `Y`.
pub fn verify_acyclicity(n: usize, w: u32, h: i64) -> Result<VerificationReport, HomologyError> {
    if h == -(w as i64) {
        return Err(HomologyError::OnDiagonal { w, h });
    }
    let mut rep = VerificationReport::new("acyclic", format!("n={n} w={w} h={h}"));
    let slice = ComplexSlice::new(n, w, h);
    let report = betti(&slice);
    if let Some((_, top)) = report.m_range() {
        for row in &report.rows {
            let expected = if row.m < top {
                0
            } else {
                let chi = report.euler_characteristic();
                if top % 2 == 0 { chi } else { -chi }
            };
            let got = row.betti as i64;
            rep.check(
                format!("betti m={}", row.m),
                if got == expected { Ok(()) } else { Err(Counterexample::new(format!("m={}", row.m), got, expected)) },
            );
        }
    }

    let e = Chain::from_element(&euler_field(n));
    let scale = Rational::from_integer((w as i64 + h).into());
    for m in slice.degrees() {
        let mut bad = None;
        for y in slice.basis(m).words() {
            let y = Chain::from_word(y.clone());
            let lhs = boundary(&e.wedge(&y));
            let rhs = &y.scaled(&scale) - &e.wedge(&boundary(&y));
            if lhs != rhs {
                bad = Some(Counterexample::new(&y, lhs, rhs));
                break;
            }
        }
        rep.check(format!("euler m={m}"), bad.map_or(Ok(()), Err));
    }
    Ok(rep)
}

/// All generators on `ℝ^n` with monomial degree at most `cap`.
pub fn generators_up_to(n: usize, cap: u32) -> Vec<Generator> {
    let mut out: Vec<Generator> =
        (0..=n as u32 + 1).flat_map(|k| (0..=cap).flat_map(move |d| Generator::all_of(n, k, d))).collect();
    out.sort();
    out
}

fn brackets_of(gens: &[Generator]) -> HashMap<(usize, usize), Element> {
    let mut cache = BracketCache::new();
    let mut out = HashMap::new();
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            out.insert((i, j), cache.get(a, b).clone());
        }
    }
    out
}

/// Weight containment: every term of `[K[i][j], K[i'][j']]` lies in `K[i+i'][j+j'-1]`.
pub fn verify_prop1(n: usize, cap: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("prop1", format!("n={n} degree<={cap}"));
    let gens = generators_up_to(n, cap);
    let mut bad = None;
    'outer: for a in &gens {
        for b in &gens {
            let br = bracket(&Element::from_generator(a.clone()), &Element::from_generator(b.clone()));
            let kind = a.kind_index() + b.kind_index();
            let degree = a.degree() as i64 + b.degree() as i64 - 1;
            if br.generators().any(|g| g.kind_index() != kind || g.degree() as i64 != degree) {
                bad = Some(Counterexample::new(format!("[{a}, {b}]"), &br, format!("K[{kind}][{degree}]")));
                break 'outer;
            }
        }
    }
    rep.check("pairs", bad.map_or(Ok(()), Err));
    rep
}

fn sign(p: u32) -> Rational {
    Rational::from_integer(if p % 2 == 0 { 1.into() } else { (-1).into() })
}

/// Super antisymmetry on pairs and the super Jacobi identity on triples.
pub fn verify_jacobi(n: usize, cap: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("jacobi", format!("n={n} degree<={cap}"));
    let gens = generators_up_to(n, cap);
    let table = brackets_of(&gens);
    let mut bad = None;
    'anti: for i in 0..gens.len() {
        for j in 0..gens.len() {
            let s = sign(gens[i].parity() * gens[j].parity());
            let sum = &table[&(i, j)] + &table[&(j, i)].scaled(&s);
            if !sum.is_zero() {
                bad = Some(Counterexample::new(format!("[{}, {}]", gens[i], gens[j]), &table[&(i, j)], &table[&(j, i)]));
                break 'anti;
            }
        }
    }
    rep.check("antisymmetry", bad.map_or(Ok(()), Err));

    // [x, [y, z]] from the cached inner bracket
    let mut cache = BracketCache::new();
    let mut outer = |x: &Generator, inner: &Element| {
        let mut out = Element::zero();
        for (g, c) in inner.iter() {
            out.add_scaled(cache.get(x, g), c);
        }
        out
    };
    let mut bad = None;
    'jac: for a in 0..gens.len() {
        for b in 0..gens.len() {
            for c in 0..gens.len() {
                let (pa, pb, pc) = (gens[a].parity(), gens[b].parity(), gens[c].parity());
                let mut sum = outer(&gens[a], &table[&(b, c)]).scaled(&sign(pa * pc));
                sum.add_scaled(&outer(&gens[b], &table[&(c, a)]), &sign(pb * pa));
                sum.add_scaled(&outer(&gens[c], &table[&(a, b)]), &sign(pc * pb));
                if !sum.is_zero() {
                    let word = format!("({}, {}, {})", gens[a], gens[b], gens[c]);
                    bad = Some(Counterexample::new(word, sum, "0"));
                    break 'jac;
                }
            }
        }
    }
    rep.check("jacobi", bad.map_or(Ok(()), Err));
    rep
}

/// `[E, g] = (i + j - 1)·g` for every generator up to the degree cap.
pub fn verify_euler(n: usize, cap: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("euler", format!("n={n} degree<={cap}"));
    let e = euler_field(n);
    let mut bad = None;
    for g in generators_up_to(n, cap) {
        let lambda = g.kind_index() as i64 + g.degree() as i64 - 1;
        let lhs = bracket(&e, &Element::from_generator(g.clone()));
        let rhs = Element::term(Rational::from_integer(lambda.into()), g.clone());
        if lhs != rhs {
            bad = Some(Counterexample::new(&g, lhs, rhs));
            break;
        }
    }
    rep.check("eigenvalue", bad.map_or(Ok(()), Err));
    rep
}

/// Word-set equality of the closed-form bases with the enumerated ones.
pub fn verify_theorem2(ws: impl IntoIterator<Item = u32>) -> Result<VerificationReport, HomologyError> {
    let ws: Vec<u32> = ws.into_iter().collect();
    let grid = match (ws.first(), ws.last()) {
        (Some(a), Some(b)) => format!("w={a}..{b} k=0..3"),
        _ => "empty".to_string(),
    };
    let mut rep = VerificationReport::new("thm2", grid);
    for &w in &ws {
        for k in 0..4u32 {
            let closed = closed_form_basis(w, k).map_err(HomologyError::Chain)?;
            let found = enumerate_basis(1, w, -(w as i64), (w + k) as usize);
            let outcome = if closed == found {
                Ok(())
            } else {
                let extra = found.words().iter().find(|x| !closed.contains(x));
                let missing = closed.words().iter().find(|x| !found.contains(x));
                let word = extra.or(missing).map_or_else(|| "order".to_string(), ToString::to_string);
                Err(Counterexample::new(word, format!("{} enumerated", found.len()), format!("{} closed form", closed.len())))
            };
            rep.check(format!("w={w} k={k}"), outcome);
        }
    }
    Ok(rep)
}
