//! Extended difference-of-positions (EDoP) matrices.
//!
//! Row `i` of the matrix lists the cyclic distances from the `i`-th one-bit
//! to every other one-bit of the code. Correlation between codes (or a code
//! and its shifts) reduces to counting common entries between rows.

use std::collections::BTreeMap;

use crate::code_model::{Dopr, PartialDopr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdopMatrix {
    n: usize,
    rows: Vec<Vec<usize>>,
    /// Same rows, each sorted ascending, for merge-style intersection.
    sorted: Vec<Vec<usize>>,
    partial: bool,
}

impl EdopMatrix {
    fn from_rows(rows: Vec<Vec<usize>>, n: usize, partial: bool) -> Self {
        let sorted = rows
            .iter()
            .map(|r| {
                let mut s = r.clone();
                s.sort_unstable();
                s
            })
            .collect();
        EdopMatrix {
            n,
            rows,
            sorted,
            partial,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rows in constructive order.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn sorted_rows(&self) -> &[Vec<usize>] {
        &self.sorted
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Weight of the code the matrix describes (one row per one-bit).
    pub fn weight(&self) -> usize {
        self.rows.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().flatten().copied()
    }

    /// Rows rotated so that row `i` starts at the gap leaving one-bit `i`
    /// (row `i` shifted left `i` places). For a partial matrix this yields
    /// the cyclic layout of the prefix code; for a complete matrix it is
    /// the identity up to the rotation of each row.
    pub fn cyclic_layout(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                if !r.is_empty() {
                    let k = i % r.len();
                    r.rotate_left(k);
                }
                r
            })
            .collect()
    }

    /// Drops the bottom `k` rows and the rightmost `k` columns.
    pub fn truncated(&self, k: usize) -> EdopMatrix {
        let keep_rows = self.rows.len().saturating_sub(k);
        let keep_cols = self.num_cols().saturating_sub(k);
        let rows = self.rows[..keep_rows]
            .iter()
            .map(|r| r[..keep_cols].to_vec())
            .collect();
        EdopMatrix::from_rows(rows, self.n, true)
    }
}

/// Prepends the zero column: row `i` becomes the WPR of the circular shift
/// that moves one-bit `i` to position zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroAugmentedEdop {
    rows: Vec<Vec<usize>>,
}

impl ZeroAugmentedEdop {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

/// The `w x (w-1)` matrix in cyclic layout: row `j`, column `k` holds
/// `d[j] + d[j+1] + ... + d[j+k]` with indices taken mod `w`.
pub fn edop_full(dopr: &Dopr) -> EdopMatrix {
    let d = dopr.dops();
    let w = d.len();
    let rows = (0..w)
        .map(|j| {
            (0..w - 1)
                .scan(0, |acc, k| {
                    *acc += d[(j + k) % w];
                    Some(*acc)
                })
                .collect()
        })
        .collect();
    EdopMatrix::from_rows(rows, dopr.n(), false)
}

/// The `(u+1) x u` matrix of a code with only its first `u` elements known.
///
/// Row `i`, column `j` (1-based) is `d[i+1] + ... + d[j]` above the
/// diagonal and `n - (d[j] + ... + d[i])` on and below it.
pub fn edop_partial(partial: &PartialDopr) -> EdopMatrix {
    EdopMatrix::from_rows(prefix_rows(partial.dops(), partial.n()), partial.n(), true)
}

fn prefix_rows(dops: &[usize], n: usize) -> Vec<Vec<usize>> {
    let u = dops.len();
    // positions of the prefix code: p[0] = 0, p[k] = d1 + ... + dk
    let mut p = Vec::with_capacity(u + 1);
    p.push(0usize);
    for &d in dops {
        p.push(p[p.len() - 1] + d);
    }
    (0..=u)
        .map(|i| {
            (1..=u)
                .map(|j| {
                    if j > i {
                        p[j] - p[i]
                    } else {
                        n - (p[i] - p[j - 1])
                    }
                })
                .collect()
        })
        .collect()
}

pub fn zero_augment(m: &EdopMatrix) -> ZeroAugmentedEdop {
    let rows = m
        .rows()
        .iter()
        .map(|r| std::iter::once(0).chain(r.iter().copied()).collect())
        .collect();
    ZeroAugmentedEdop { rows }
}

/// True iff the multiset of entries is closed under `a -> n - a`.
pub fn check_complement_closure(m: &EdopMatrix) -> bool {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for e in m.entries() {
        if e == 0 || e >= m.n() {
            return false;
        }
        *counts.entry(e).or_default() += 1;
    }
    counts
        .iter()
        .all(|(&a, &c)| counts.get(&(m.n() - a)) == Some(&c))
}
