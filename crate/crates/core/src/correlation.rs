//! Auto- and cross-correlation, by direct shift counting and by EDoP row
//! intersection, plus set-level constraints and the Johnson bound.

use crate::code_model::{BinaryCode, Dopr};
use crate::edop::{edop_full, EdopMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationReport {
    /// Maximum overlap with any non-zero circular shift.
    pub lambda_ax: usize,
    /// Overlap at shifts `1..n`; only filled by the shift-counting path.
    pub per_shift: Option<Vec<usize>>,
    /// Exact number of element (or bit) comparisons performed.
    pub comparisons: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossReport {
    pub lambda_cxy: usize,
    /// Overlap at shifts `0..n`; only filled by the shift-counting path.
    pub per_shift: Option<Vec<usize>>,
    pub comparisons: u64,
}

/// Non-zero-shift auto-correlation by counting overlaps at every shift.
pub fn autocorr_bruteforce(code: &BinaryCode) -> Result<CorrelationReport> {
    let w = code.weight();
    if w < 2 {
        return Err(Error::WeightTooSmall(w));
    }
    let x = code.bits();
    let n = x.len();
    let mut comparisons = 0u64;
    let per_shift: Vec<usize> = (1..n)
        .map(|m| {
            comparisons += n as u64;
            (0..n).filter(|&t| x[t] && x[(t + m) % n]).count()
        })
        .collect();
    let lambda_ax = per_shift.iter().copied().max().unwrap_or(0);
    Ok(CorrelationReport {
        lambda_ax,
        per_shift: Some(per_shift),
        comparisons,
    })
}

/// Cross-correlation of two equal-length codes over all `n` relative shifts.
pub fn crosscorr_bruteforce(x: &BinaryCode, y: &BinaryCode) -> Result<CrossReport> {
    if x.n() != y.n() {
        return Err(Error::LengthMismatch(x.n(), y.n()));
    }
    for c in [x, y] {
        if c.weight() < 2 {
            return Err(Error::WeightTooSmall(c.weight()));
        }
    }
    let (xb, yb) = (x.bits(), y.bits());
    let n = xb.len();
    let mut comparisons = 0u64;
    let per_shift: Vec<usize> = (0..n)
        .map(|m| {
            comparisons += n as u64;
            (0..n).filter(|&t| xb[t] && yb[(t + m) % n]).count()
        })
        .collect();
    let lambda_cxy = per_shift.iter().copied().max().unwrap_or(0);
    Ok(CrossReport {
        lambda_cxy,
        per_shift: Some(per_shift),
        comparisons,
    })
}

/// Size of the intersection of two ascending rows, counting one
/// comparison per merge step.
fn common_entries(a: &[usize], b: &[usize], comparisons: &mut u64) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        *comparisons += 1;
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    common
}

/// One plus the largest number of entries shared by two distinct rows.
pub fn autocorr_edop(m: &EdopMatrix) -> CorrelationReport {
    let rows = m.sorted_rows();
    let mut comparisons = 0u64;
    let mut best = 0;
    for i in 0..rows.len() {
        for k in i + 1..rows.len() {
            best = best.max(common_entries(&rows[i], &rows[k], &mut comparisons));
        }
    }
    CorrelationReport {
        lambda_ax: 1 + best,
        per_shift: None,
        comparisons,
    }
}

/// One plus the largest number of entries shared by a row of `mx` and a row
/// of `my`. Lengths and weights may differ; entries are compared as plain
/// integers.
pub fn crosscorr_edop(mx: &EdopMatrix, my: &EdopMatrix) -> CrossReport {
    let mut comparisons = 0u64;
    let mut best = 0;
    for rx in mx.sorted_rows() {
        for ry in my.sorted_rows() {
            best = best.max(common_entries(rx, ry, &mut comparisons));
        }
    }
    CrossReport {
        lambda_cxy: 1 + best,
        per_shift: None,
        comparisons,
    }
}

/// True iff no row of `mx` shares an entry with a row of `my`, stopping at
/// the first common entry. Equivalent to `crosscorr_edop(..) == 1`.
pub fn edop_disjoint(mx: &EdopMatrix, my: &EdopMatrix) -> bool {
    let mut scratch = 0u64;
    mx.sorted_rows().iter().all(|rx| {
        my.sorted_rows()
            .iter()
            .all(|ry| common_entries(rx, ry, &mut scratch) == 0)
    })
}

pub fn set_lambda_a(codes: &[Dopr]) -> Result<usize> {
    codes
        .iter()
        .map(|c| autocorr_edop(&edop_full(c)).lambda_ax)
        .max()
        .ok_or(Error::TooFewCodes { needed: 1, got: 0 })
}

pub fn set_lambda_c(codes: &[Dopr]) -> Result<usize> {
    if codes.len() < 2 {
        return Err(Error::TooFewCodes {
            needed: 2,
            got: codes.len(),
        });
    }
    let mats: Vec<EdopMatrix> = codes.iter().map(edop_full).collect();
    let mut best = 0;
    for i in 0..mats.len() {
        for k in i + 1..mats.len() {
            best = best.max(crosscorr_edop(&mats[i], &mats[k]).lambda_cxy);
        }
    }
    Ok(best)
}

/// Maximum cross-correlation over pairs with one code from each set.
pub fn interset_crosscorr(a: &[Dopr], b: &[Dopr]) -> Result<usize> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::TooFewCodes { needed: 1, got: 0 });
    }
    let mb: Vec<EdopMatrix> = b.iter().map(edop_full).collect();
    Ok(a.iter()
        .map(|x| {
            let mx = edop_full(x);
            mb.iter()
                .map(|my| crosscorr_edop(&mx, my).lambda_cxy)
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0))
}

/// Upper bound on the size of a code set with `lambda_a = lambda_c = lambda`,
/// evaluated innermost floor first:
/// `floor(1/w * floor((n-1)/(w-1) * ... floor((n-lambda)/(w-lambda))))`.
pub fn johnson_bound(n: usize, w: usize, lambda: usize) -> Result<usize> {
    if !(lambda >= 1 && w > lambda && n > w) {
        return Err(Error::InvalidParams(format!(
            "n > w > lambda >= 1 violated (n = {n}, w = {w}, lambda = {lambda})"
        )));
    }
    let (n, w) = (n as u128, w as u128);
    let mut v = (n - lambda as u128) / (w - lambda as u128);
    for i in (1..lambda as u128).rev() {
        v = (n - i) * v / (w - i);
    }
    usize::try_from(v / w).map_err(|_| Error::InvalidParams("bound overflows usize".into()))
}

/// `floor(C(n, w) / n)`, the closed form of the bound at `lambda = w - 1`.
pub fn johnson_bound_max_lambda(n: usize, w: usize) -> Result<usize> {
    if !(w >= 2 && n > w) {
        return Err(Error::InvalidParams(format!(
            "n > w >= 2 violated (n = {n}, w = {w})"
        )));
    }
    let mut c: u128 = 1;
    for i in 0..w as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    usize::try_from(c / n as u128).map_err(|_| Error::InvalidParams("bound overflows usize".into()))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Diagnostic shift-counting cross-correlation for codes of different
/// lengths: both codes are repeated periodically over `lcm(n1, n2)` chips
/// and overlaps are counted over one such period, normalised by the number
/// of repetitions of the longer code. Reported next to [`crosscorr_edop`],
/// never used for design decisions.
pub fn crosscorr_lcm_period(x: &BinaryCode, y: &BinaryCode) -> CrossReport {
    let (n1, n2) = (x.n(), y.n());
    let l = n1 / gcd(n1, n2) * n2;
    let reps = l / n1.max(n2);
    let (xb, yb) = (x.bits(), y.bits());
    let mut comparisons = 0u64;
    let per_shift: Vec<usize> = (0..l)
        .map(|m| {
            comparisons += l as u64;
            let overlap = (0..l).filter(|&t| yb[t % n2] && xb[(t + m) % n1]).count();
            overlap / reps
        })
        .collect();
    let lambda_cxy = per_shift.iter().copied().max().unwrap_or(0);
    CrossReport {
        lambda_cxy,
        per_shift: Some(per_shift),
        comparisons,
    }
}
