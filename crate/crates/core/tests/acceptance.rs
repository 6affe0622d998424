//! The acceptance suite: one line per criterion, `PASS` or `FAIL`.
//!
//! Criterion 8 is expected to fail: the first-order term of `∂(1^p ∧ x)` picks
//! up the factor `p = w - 2`, so no single sign per `w` reconciles the two
//! sides once `w >= 4`. The test asserts that every other criterion passes and
//! that this one still fails, so a change in either direction is noticed.

use std::collections::BTreeSet;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superhom::algebra::Generator;
use superhom::chain::{enumerate_basis, base_basis, Chain, ComplexSlice};
use superhom::homology::{
    betti, boundary, boundary_prime, generators_up_to, lemma_rank_pairs, matrix_of, rank, verify_acyclicity,
    verify_d_squared, verify_euler, verify_jacobi, verify_lemma_ranks, verify_prop1, verify_theorem2,
    verify_theorem5, ExactMatrix,
};
use superhom::oracle::{naive_rank, sign_mismatch, verify_oracle_bases};

const EXPECTED_FAILURES: &[usize] = &[8];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

/// First failure message among `checks`, or a pass with `summary`.
fn all(checks: Vec<(bool, String)>, summary: &str) -> Outcome {
    match checks.into_iter().find(|c| !c.0) {
        Some((_, why)) => Outcome::new(false, why),
        None => Outcome::new(true, summary),
    }
}

fn golden_betti_tables() -> Outcome {
    let cases: [((u32, i64), &[usize], &[usize], &[usize], &[usize]); 3] = [
        ((0, 0), &[1, 2, 3], &[1, 1, 1], &[0, 1, 0], &[0, 0, 1]),
        ((1, -1), &[1, 2, 3, 4], &[1, 2, 2, 1], &[0, 1, 1, 0], &[0, 0, 1, 1]),
        ((2, -2), &[2, 3, 4, 5], &[2, 3, 2, 1], &[0, 1, 2, 0], &[1, 0, 0, 1]),
    ];
    let checks = cases
        .iter()
        .map(|&((w, h), ms, dims, ranks, bettis)| {
            let r = betti(&ComplexSlice::new(1, w, h));
            let ms_got: Vec<usize> = r.rows.iter().map(|x| x.m).collect();
            let ok = ms_got == ms && r.dims() == dims && r.ranks() == ranks && r.bettis() == bettis;
            (ok, format!("w={w} h={h}: m {ms_got:?} dims {:?} ranks {:?} betti {:?}", r.dims(), r.ranks(), r.bettis()))
        })
        .collect();
    all(checks, "three golden tables match")
}

fn dimension_listing() -> Outcome {
    let dims: Vec<usize> = (3..=6).map(|m| enumerate_basis(1, 3, -3, m).len()).collect();
    Outcome::new(dims == [2, 3, 2, 1], format!("dim C^3..6_(3,-3) = {dims:?}"))
}

fn diagonal_sweep() -> Outcome {
    let checks = (2..=10u32)
        .map(|w| {
            let b = betti(&ComplexSlice::new(1, w, -(w as i64))).bettis();
            (b == [1, 0, 0, 1], format!("w={w}: betti {b:?}"))
        })
        .collect();
    all(checks, "betti (1,0,0,1) for w=2..10")
}

fn diagonal_m_range() -> Outcome {
    let checks = (0..=10u32)
        .map(|w| {
            let found: Vec<usize> =
                (1..=w as usize + 8).filter(|&m| !enumerate_basis(1, w, -(w as i64), m).is_empty()).collect();
            let want: Vec<usize> = if w == 0 { vec![1, 2, 3] } else { (w as usize..=w as usize + 3).collect() };
            (found == want, format!("w={w}: nonempty at {found:?}"))
        })
        .collect();
    all(checks, "nonempty exactly on w..w+3 (1..3 for w=0)")
}

fn acyclicity() -> Outcome {
    let mut cells = 0;
    let mut checks = Vec::new();
    for w in 0..=5u32 {
        for h in -5..=5i64 {
            if h == -(w as i64) {
                continue;
            }
            let rep = verify_acyclicity(1, w, h).expect("off the diagonal");
            cells += 1;
            checks.push((rep.pass, format!("w={w} h={h}: {:?}", rep.counterexample)));
        }
    }
    all(checks, &format!("{cells} slices acyclic below the top, top matches the Euler characteristic"))
}

fn d_squared() -> Outcome {
    let mut checks = Vec::new();
    let mut cells = 0;
    for (n, ws, hs) in [(1usize, 0..=10u32, -10..=5i64), (2, 0..=3, -2..=2)] {
        for w in ws {
            for h in hs.clone() {
                let rep = verify_d_squared(n, w, h);
                cells += 1;
                checks.push((rep.pass, format!("n={n} w={w} h={h}: {:?}", rep.counterexample)));
            }
        }
    }
    all(checks, &format!("d^2 = 0 on every basis word of {cells} slices"))
}

fn closed_forms() -> Outcome {
    let rep = verify_theorem2(3..=10).expect("w >= 3");
    let failed: Vec<&str> = rep.failed_cells().map(|c| c.cell.as_str()).collect();
    Outcome::new(rep.pass, format!("{}/{} (w,k) cells equal; failed {failed:?}", rep.cells.len() - failed.len(), rep.cells.len()))
}

fn reconciliation_and_ranks() -> Outcome {
    let thm = verify_theorem5(3..=8).expect("w >= 3");
    let ranks = verify_lemma_ranks(10);
    let pairs = lemma_rank_pairs();
    let mut detail = Vec::new();
    if !thm.pass {
        let failed: Vec<&str> = thm.failed_cells().map(|c| c.cell.as_str()).collect();
        detail.push(format!("sign reconciliation fails at {failed:?}"));
        if let Some(cx) = &thm.counterexample {
            detail.push(format!("e.g. {}: {} vs {}", cx.word, cx.lhs, cx.rhs));
        }
    }
    if !ranks.pass {
        let failed: Vec<&str> = ranks.failed_cells().map(|c| c.cell.as_str()).collect();
        detail.push(format!("rank checks fail at {failed:?}"));
    }
    let pairs_ok = pairs == [(0, 0), (1, 1), (2, 2), (0, 0)];
    detail.push(format!("rank pairs {pairs:?}"));
    Outcome::new(thm.pass && ranks.pass && pairs_ok, detail.join("; "))
}

/// Every boundary matrix assembled by the other criteria, plus the two maps
/// compared in criterion 8.
fn assembled_matrices() -> Vec<(String, ExactMatrix)> {
    let mut cells: BTreeSet<(u32, i64)> = BTreeSet::new();
    for w in 0..=5u32 {
        for h in -5..=5i64 {
            cells.insert((w, h));
        }
    }
    for w in 0..=10u32 {
        cells.insert((w, -(w as i64)));
    }
    let mut out = Vec::new();
    for (w, h) in cells {
        let slice = ComplexSlice::new(1, w, h);
        for m in slice.degrees() {
            out.push((format!("w={w} h={h} m={m}"), superhom::homology::boundary_matrix(&slice, m)));
        }
    }
    let one = Chain::from_factors(vec![Generator::on_line(1, 0)]);
    for k in 0..4u32 {
        let source = base_basis(k).expect("k in range");
        let target = enumerate_basis(1, 3, -3, 2 + k as usize);
        let plain = matrix_of(&source, &target, |x| one.wedge(&boundary(&Chain::from_word(x.clone()))));
        let twisted = matrix_of(&source, &target, |x| boundary_prime(&Chain::from_word(x.clone())).expect("weight (2, -2)"));
        out.push((format!("1&d k={k}"), plain));
        out.push((format!("d' k={k}"), twisted));
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut checks = Vec::new();
    let mats = assembled_matrices();
    for (name, mat) in &mats {
        let (fast, slow) = (rank(mat), naive_rank(&mat.to_dense()));
        checks.push((fast == slow, format!("{name}: rank {fast} vs naive {slow}")));
    }
    let cells: Vec<(u32, i64)> = (0..=8u32).flat_map(|w| (-8..=4i64).map(move |h| (w, h))).collect();
    let bases = verify_oracle_bases(&cells);
    checks.push((bases.pass, format!("enumeration: {:?}", bases.counterexample)));

    let alphabet: Vec<Generator> = generators_up_to(1, 3).into_iter().chain(generators_up_to(2, 1)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=8);
        let word: Vec<Generator> = (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())].clone()).collect();
        if let Some(cx) = sign_mismatch(&word) {
            checks.push((false, format!("sign of {}: {} vs {}", cx.word, cx.lhs, cx.rhs)));
        }
    }
    all(checks, &format!("{} matrices, {} enumeration cells, 1000 random words", mats.len(), cells.len()))
}

fn bracket_identities() -> Outcome {
    let mut checks = Vec::new();
    for n in [1, 2] {
        for rep in [verify_jacobi(n, 3), verify_prop1(n, 4), verify_euler(n, 3)] {
            checks.push((rep.pass, format!("n={n} {}: {:?}", rep.claim, rep.counterexample)));
        }
    }
    all(checks, "antisymmetry, Jacobi, bracket formulas and Euler eigenvalues for n=1,2")
}

fn superhom(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superhom")).args(args).env("LOGLEVEL", "quiet").output().expect("binary runs");
    (out.status.code(), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn cli_contract() -> Outcome {
    let runs: [&[&str]; 6] = [
        &["basis", "--w", "3", "--diag", "--m", "4"],
        &["betti", "--w", "2", "--diag"],
        &["sweep", "--w", "0:4", "--diag", "--csv"],
        &["bracket", "d/dx", "x^2 d/dx"],
        &["boundary", "d/dx & x d/dx & 1 & x"],
        &["verify", "thm2", "--w", "3:5", "--json"],
    ];
    let mut checks = Vec::new();
    for args in runs {
        let (a, b) = (superhom(args), superhom(args));
        checks.push((a == b && a.0 == Some(0), format!("{args:?}: exit {:?}, repeatable {}", a.0, a == b)));
    }
    let (code, _) = superhom(&["verify", "thm5", "--w", "4:4"]);
    checks.push((code == Some(1), format!("failed verification exits {code:?}")));
    let (code, _) = superhom(&["betti", "--w", "2", "--h", "x"]);
    checks.push((code == Some(2), format!("malformed flag exits {code:?}")));
    all(checks, "six subcommands repeatable; exit codes 0, 1, 2")
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 11] = [
        (1, "golden Betti tables", golden_betti_tables),
        (2, "dimension listing", dimension_listing),
        (3, "diagonal sweep", diagonal_sweep),
        (4, "diagonal m-range", diagonal_m_range),
        (5, "acyclicity", acyclicity),
        (6, "d^2 = 0", d_squared),
        (7, "closed-form bases", closed_forms),
        (8, "sign reconciliation and rank pairs", reconciliation_and_ranks),
        (9, "oracle equivalence", oracle_equivalence),
        (10, "bracket identities", bracket_identities),
        (11, "CLI contract", cli_contract),
    ];
    let mut surprises = Vec::new();
    for (id, name, run) in criteria {
        let started = std::time::Instant::now();
        let out = run();
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {status} {name}: {} ({:.1}s)", out.detail, started.elapsed().as_secs_f64());
        if out.pass == EXPECTED_FAILURES.contains(&id) {
            surprises.push(id);
        }
    }
    if !surprises.is_empty() {
        eprintln!("criteria with unexpected outcomes: {surprises:?}");
        std::process::exit(1);
    }
}
