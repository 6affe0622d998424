use serde::{Deserialize, Serialize};

use super::boundary::BracketCache;
use super::matrix::{boundary_matrix_cached, rank};
use crate::chain::ComplexSlice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub m: usize,
    pub dim: usize,
    /// Rank of `∂: C^m → C^{m-1}`.
    pub rank: usize,
    pub betti: usize,
}

/// Dimensions, boundary ranks and Betti numbers of one weighted complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub n: usize,
    pub w: u32,
    pub h: i64,
    pub rows: Vec<HomologyRow>,
}

impl HomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dim).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.rank).collect()
    }

    pub fn bettis(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.betti).collect()
    }

    pub fn m_range(&self) -> Option<(usize, usize)> {
        Some((self.rows.first()?.m, self.rows.last()?.m))
    }

    /// `Σ (-1)^m dim C^m`.
    pub fn euler_characteristic(&self) -> i64 {
        self.rows.iter().map(|r| if r.m % 2 == 0 { r.dim as i64 } else { -(r.dim as i64) }).sum()
    }

    /// `Σ (-1)^m b_m`.
    pub fn betti_characteristic(&self) -> i64 {
        self.rows.iter().map(|r| if r.m % 2 == 0 { r.betti as i64 } else { -(r.betti as i64) }).sum()
    }
}

/// Betti numbers from exact ranks: `b_m = dim C^m - rank ∂_m - rank ∂_{m+1}`.
pub fn betti(slice: &ComplexSlice) -> HomologyReport {
    let mut cache = BracketCache::new();
    let degrees: Vec<usize> = slice.degrees().collect();
    let ranks: Vec<usize> = degrees.iter().map(|&m| rank(&boundary_matrix_cached(slice, m, &mut cache))).collect();
    let rows = match (degrees.first(), degrees.last()) {
        (Some(&lo), Some(&hi)) => (lo..=hi)
            .map(|m| {
                let rank_at = |m: usize| degrees.iter().position(|&d| d == m).map_or(0, |i| ranks[i]);
                let dim = slice.dim(m);
                let (r, up) = (rank_at(m), rank_at(m + 1));
                HomologyRow { m, dim, rank: r, betti: dim - r - up }
            })
            .collect(),
        _ => Vec::new(),
    };
    HomologyReport { n: slice.n, w: slice.w, h: slice.h, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(w: u32, h: i64) -> HomologyReport {
        betti(&ComplexSlice::new(1, w, h))
    }

    #[test]
    fn small_tables() {
        let r = report(0, 0);
        assert_eq!(r.m_range(), Some((1, 3)));
        assert_eq!(r.bettis(), [0, 0, 1]);
        assert_eq!(report(1, -1).bettis(), [0, 0, 1, 1]);
        let r = report(2, -2);
        assert_eq!(r.dims(), [2, 3, 2, 1]);
        assert_eq!(r.ranks(), [0, 1, 2, 0]);
        assert_eq!(r.bettis(), [1, 0, 0, 1]);
    }

    #[test]
    fn euler_characteristic_matches() {
        for w in 0..=4 {
            for h in -4..=2 {
                let r = report(w, h);
                assert_eq!(r.euler_characteristic(), r.betti_characteristic(), "w={w} h={h}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let r = report(2, -2);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.starts_with(r#"{"n":1,"w":2,"h":-2,"rows":[{"m":2,"dim":2,"rank":0,"betti":1}"#));
        let back: HomologyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
