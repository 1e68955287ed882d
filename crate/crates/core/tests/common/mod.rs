#![allow(dead_code)]

use std::collections::BTreeSet;

use ooc_design::code_model::{dopr_from_wpr, standardize};
use ooc_design::correlation::autocorr_bruteforce;
use ooc_design::{Dopr, Wpr};

/// Every weight-`w` subset of `0..n`, as sorted positions.
pub fn all_subsets(n: usize, w: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in start..=n - left {
            cur.push(p);
            go(p + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, w, &mut Vec::new(), &mut out);
    out
}

/// One standard DoPR per rotation class whose shift-counted
/// auto-correlation is at most `lambda`.
pub fn exhaustive_pool(n: usize, w: usize, lambda: usize) -> Vec<Dopr> {
    let classes: BTreeSet<Dopr> = all_subsets(n, w)
        .into_iter()
        .filter(|s| s[0] == 0)
        .map(|s| dopr_from_wpr(&Wpr::new(s, n).unwrap()))
        .filter(|d| autocorr_bruteforce(&d.to_binary()).unwrap().lambda_ax <= lambda)
        .map(|d| standardize(&d).into_dopr())
        .collect();
    classes.into_iter().collect()
}
