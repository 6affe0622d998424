//! Run configuration, range parsing and the text, JSON and CSV renderings
//! used by the command-line tool.

use std::fmt::Write;

use thiserror::Error;

use crate::homology::{HomologyReport, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("invalid range '{0}': expected 'a' or 'a:b' with a <= b")]
    BadRange(String),
    #[error("--diag cannot be combined with --h")]
    DiagWithH,
    #[error("one of --h or --diag is required")]
    MissingH,
    #[error("{0} takes a single value, got the range {1}")]
    NotSingle(&'static str, String),
    #[error("--json and --csv are exclusive")]
    TwoFormats,
}

/// Inclusive integer range written `a:b`, or `a` alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Copy + PartialOrd + std::str::FromStr + std::fmt::Display> Range<T> {
    pub fn single(v: T) -> Self {
        Range { lo: v, hi: v }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let bad = || ConfigError::BadRange(text.to_string());
        let (a, b) = match text.split_once(':') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let v = text.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if a > b {
            return Err(bad());
        }
        Ok(Range { lo: a, hi: b })
    }

    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }

    pub fn only(&self, name: &'static str) -> Result<T, ConfigError> {
        if self.is_single() {
            Ok(self.lo)
        } else {
            Err(ConfigError::NotSingle(name, format!("{}:{}", self.lo, self.hi)))
        }
    }
}

impl Range<u32> {
    pub fn values(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

impl Range<i64> {
    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Secondary weights to visit: an explicit range, or `h = -w` per `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HChoice {
    Diagonal,
    Range(Range<i64>),
}

impl HChoice {
    pub fn from_flags(h: Option<&str>, diag: bool) -> Result<Option<Self>, ConfigError> {
        match (h, diag) {
            (Some(_), true) => Err(ConfigError::DiagWithH),
            (Some(t), false) => Ok(Some(HChoice::Range(Range::parse(t)?))),
            (None, true) => Ok(Some(HChoice::Diagonal)),
            (None, false) => Ok(None),
        }
    }

    pub fn for_w(&self, w: u32) -> Vec<i64> {
        match self {
            HChoice::Diagonal => vec![-(w as i64)],
            HChoice::Range(r) => r.values().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl Format {
    pub fn from_flags(json: bool, csv: bool) -> Result<Self, ConfigError> {
        match (json, csv) {
            (true, true) => Err(ConfigError::TwoFormats),
            (true, false) => Ok(Format::Json),
            (false, true) => Ok(Format::Csv),
            (false, false) => Ok(Format::Table),
        }
    }
}

/// Everything a subcommand needs after flag validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub n: usize,
    pub w: Range<u32>,
    pub h: Option<HChoice>,
    pub m: Option<usize>,
    pub format: Format,
    pub cap: Option<u32>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// `(w, h)` cells in ascending `w`, then ascending `h`.
    pub fn cells(&self) -> Result<Vec<(u32, i64)>, ConfigError> {
        let h = self.h.ok_or(ConfigError::MissingH)?;
        Ok(self.w.values().flat_map(|w| h.for_w(w).into_iter().map(move |h| (w, h))).collect())
    }

    /// The single `(w, h)` a one-slice command works on.
    pub fn single_cell(&self) -> Result<(u32, i64), ConfigError> {
        let w = self.w.only("--w")?;
        match self.h.ok_or(ConfigError::MissingH)? {
            HChoice::Diagonal => Ok((w, -(w as i64))),
            HChoice::Range(r) => Ok((w, r.only("--h")?)),
        }
    }
}

fn pad_row(out: &mut String, label: &str, values: impl Iterator<Item = usize>) {
    let _ = write!(out, "{label:<6}");
    for v in values {
        let _ = write!(out, "{v:>6}");
    }
    out.push('\n');
}

/// Header line and one row each for `m`, dim, rank and Betti numbers.
pub fn homology_table(r: &HomologyReport) -> String {
    let mut out = format!("n={} w={} h={}\n", r.n, r.w, r.h);
    if r.rows.is_empty() {
        out.push_str("(empty complex)\n");
        return out;
    }
    pad_row(&mut out, "m", r.rows.iter().map(|x| x.m));
    pad_row(&mut out, "dim", r.rows.iter().map(|x| x.dim));
    pad_row(&mut out, "rank", r.rows.iter().map(|x| x.rank));
    pad_row(&mut out, "betti", r.rows.iter().map(|x| x.betti));
    out
}

pub fn homology_csv(r: &HomologyReport) -> String {
    let mut out = String::from("m,dim,rank,betti\n");
    for x in &r.rows {
        let _ = writeln!(out, "{},{},{},{}", x.m, x.dim, x.rank, x.betti);
    }
    out
}

/// Sweep CSV: the single-report columns prefixed by `n,w,h`.
pub fn sweep_csv(reports: &[HomologyReport]) -> String {
    let mut out = String::from("n,w,h,m,dim,rank,betti\n");
    for r in reports {
        for x in &r.rows {
            let _ = writeln!(out, "{},{},{},{},{},{},{}", r.n, r.w, r.h, x.m, x.dim, x.rank, x.betti);
        }
    }
    out
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Status line, failing cells, notes and the counterexample if any.
pub fn verification_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let status = if r.pass { "PASS" } else { "FAIL" };
    let passed = r.cells.iter().filter(|c| c.pass).count();
    let _ = writeln!(out, "{status} {} [{}] {passed}/{} cells", r.claim, r.grid, r.cells.len());
    for c in r.failed_cells() {
        let _ = writeln!(out, "  failed: {}", c.cell);
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    if let Some(cx) = &r.counterexample {
        let _ = writeln!(out, "  word: {}", cx.word);
        let _ = writeln!(out, "  lhs:  {}", cx.lhs);
        let _ = writeln!(out, "  rhs:  {}", cx.rhs);
    }
    out
}

pub fn verification_csv(r: &VerificationReport) -> String {
    let mut out = String::from("claim,cell,pass\n");
    for c in &r.cells {
        let _ = writeln!(out, "{},\"{}\",{}", r.claim, c.cell.replace('"', "\"\""), c.pass);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ComplexSlice;
    use crate::homology::betti;

    #[test]
    fn ranges() {
        assert_eq!(Range::<u32>::parse("0:4"), Ok(Range { lo: 0, hi: 4 }));
        assert_eq!(Range::<i64>::parse("-3"), Ok(Range::single(-3)));
        assert_eq!(Range::<i64>::parse("-5:-2").unwrap().values().count(), 4);
        assert!(Range::<u32>::parse("4:2").is_err());
        assert!(Range::<u32>::parse("a").is_err());
        assert!(Range::<u32>::parse("-1").is_err());
    }

    #[test]
    fn h_choices() {
        assert_eq!(HChoice::from_flags(Some("1"), true), Err(ConfigError::DiagWithH));
        assert_eq!(HChoice::from_flags(None, true), Ok(Some(HChoice::Diagonal)));
        assert_eq!(HChoice::Diagonal.for_w(3), [-3]);
        let cfg = RunConfig {
            n: 1,
            w: Range { lo: 0, hi: 2 },
            h: Some(HChoice::Diagonal),
            m: None,
            format: Format::Table,
            cap: None,
            jobs: None,
        };
        assert_eq!(cfg.cells().unwrap(), [(0, 0), (1, -1), (2, -2)]);
        assert!(cfg.single_cell().is_err());
    }

    #[test]
    fn renderings() {
        let r = betti(&ComplexSlice::new(1, 2, -2));
        let t = homology_table(&r);
        assert!(t.contains("betti      1     0     0     1"), "{t}");
        assert_eq!(homology_csv(&r), "m,dim,rank,betti\n2,2,0,1\n3,3,1,0\n4,2,2,0\n5,1,0,1\n");
        assert!(sweep_csv(&[r.clone()]).starts_with("n,w,h,m,dim,rank,betti\n1,2,-2,2,2,0,1\n"));
        let back: HomologyReport = serde_json::from_str(&to_json(&r)).unwrap();
        assert_eq!(back, r);
    }
}
