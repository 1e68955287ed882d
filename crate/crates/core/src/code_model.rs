//! Representations of unipolar codes and conversions among them.
//!
//! A code of length `n` and weight `w` can be held as a binary word, as its
//! sorted one-bit positions (WPR), or as the cyclic sequence of gaps between
//! consecutive one-bits (DoPR). The DoPR is invariant under circular shift
//! up to rotation; [`standardize`] picks one rotation as the code's identity.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::correlation;
use crate::edop::edop_partial;
use crate::error::{Error, Result};

/// Length, weight and the two correlation constraints of a code set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeParams {
    pub n: usize,
    pub w: usize,
    pub lambda_a: usize,
    pub lambda_c: usize,
}

impl CodeParams {
    pub fn new(n: usize, w: usize, lambda_a: usize, lambda_c: usize) -> Result<Self> {
        let params = CodeParams {
            n,
            w,
            lambda_a,
            lambda_c,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let CodeParams {
            n,
            w,
            lambda_a,
            lambda_c,
        } = *self;
        if lambda_a < 1 {
            return Err(Error::InvalidParams(format!(
                "lambda_a >= 1 violated (lambda_a = {lambda_a})"
            )));
        }
        if lambda_c < 1 {
            return Err(Error::InvalidParams(format!(
                "lambda_c >= 1 violated (lambda_c = {lambda_c})"
            )));
        }
        if n <= w {
            return Err(Error::InvalidParams(format!(
                "n > w violated (n = {n}, w = {w})"
            )));
        }
        if lambda_a >= w {
            return Err(Error::InvalidParams(format!(
                "lambda_a <= w - 1 violated (lambda_a = {lambda_a}, w = {w})"
            )));
        }
        if lambda_c >= w {
            return Err(Error::InvalidParams(format!(
                "lambda_c <= w - 1 violated (lambda_c = {lambda_c}, w = {w})"
            )));
        }
        Ok(())
    }

    /// Anything other than `lambda_a = lambda_c = 1` runs the designer in
    /// its generalised, untested mode.
    pub fn is_experimental(&self) -> bool {
        self.lambda_a != 1 || self.lambda_c != 1
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.n, self.w, self.lambda_a, self.lambda_c
        )
    }
}

/// A binary word of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    bits: Vec<bool>,
}

impl BinaryCode {
    pub fn new(bits: Vec<bool>) -> Self {
        BinaryCode { bits }
    }

    /// Builds a code and checks that it carries exactly `w` one-bits.
    pub fn with_weight(bits: Vec<bool>, w: usize) -> Result<Self> {
        let code = BinaryCode { bits };
        let found = code.weight();
        if found != w {
            return Err(Error::WeightMismatch { declared: w, found });
        }
        Ok(code)
    }

    /// Parses `"0101..."`, ignoring spaces and commas.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                ' ' | ',' | '[' | ']' => {}
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character {other:?} in binary code"
                    )))
                }
            }
        }
        if bits.is_empty() {
            return Err(Error::Parse("empty binary code".into()));
        }
        Ok(BinaryCode { bits })
    }

    pub fn from_wpr(wpr: &Wpr) -> Self {
        let mut bits = vec![false; wpr.n()];
        for &p in wpr.positions() {
            bits[p] = true;
        }
        BinaryCode { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Weighted-positions representation: the ascending indices of one-bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wpr {
    positions: Vec<usize>,
    n: usize,
}

impl Wpr {
    pub fn new(positions: Vec<usize>, n: usize) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::WeightTooSmall(0));
        }
        if positions.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::UnsortedPositions);
        }
        if let Some(&last) = positions.last() {
            if last >= n {
                return Err(Error::OutOfRange {
                    value: last,
                    min: 0,
                    max: n.saturating_sub(1),
                });
            }
        }
        Ok(Wpr { positions, n })
    }

    /// Sorts and deduplicates arbitrary positions before validating.
    pub fn from_unsorted(mut positions: Vec<usize>, n: usize) -> Result<Self> {
        positions.sort_unstable();
        let before = positions.len();
        positions.dedup();
        if positions.len() != before {
            return Err(Error::UnsortedPositions);
        }
        Wpr::new(positions, n)
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> usize {
        self.positions.len()
    }

    /// The WPR of the code circularly shifted by `a` chips.
    pub fn shifted(&self, a: usize) -> Wpr {
        let mut positions: Vec<usize> = self.positions.iter().map(|&p| (p + a) % self.n).collect();
        positions.sort_unstable();
        Wpr {
            positions,
            n: self.n,
        }
    }
}

impl fmt::Display for Wpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.positions, ",")
    }
}

/// Difference-of-positions representation: `w` cyclic gaps summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dopr {
    n: usize,
    dops: Vec<usize>,
}

impl Dopr {
    pub fn new(dops: Vec<usize>, n: usize) -> Result<Self> {
        if dops.is_empty() {
            return Err(Error::WeightTooSmall(0));
        }
        // a weight-1 code wraps the whole circle in one gap
        let max = if dops.len() == 1 {
            n
        } else {
            n.saturating_sub(1)
        };
        for &d in &dops {
            if d < 1 || d > max {
                return Err(Error::OutOfRange {
                    value: d,
                    min: 1,
                    max,
                });
            }
        }
        let sum: usize = dops.iter().sum();
        if sum != n {
            return Err(Error::SumMismatch { sum, n });
        }
        Ok(Dopr { n, dops })
    }

    pub fn dops(&self) -> &[usize] {
        &self.dops
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> usize {
        self.dops.len()
    }

    /// Rotation starting at element `k`.
    pub fn rotated(&self, k: usize) -> Dopr {
        let w = self.dops.len();
        let dops = (0..w).map(|i| self.dops[(i + k) % w]).collect();
        Dopr { n: self.n, dops }
    }

    pub fn to_wpr(&self) -> Wpr {
        wpr_from_dopr(self)
    }

    pub fn to_binary(&self) -> BinaryCode {
        BinaryCode::from_wpr(&self.to_wpr())
    }
}

impl fmt::Display for Dopr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.dops, ",")
    }
}

/// A DoPR in canonical rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardDopr(Dopr);

impl StandardDopr {
    /// Wraps a DoPR already known to be standard; fails otherwise.
    pub fn try_from_dopr(dopr: Dopr) -> Result<Self> {
        if is_standard(&dopr) {
            Ok(StandardDopr(dopr))
        } else {
            Err(Error::Parse(format!("({dopr}) is not in standard form")))
        }
    }

    pub fn into_dopr(self) -> Dopr {
        self.0
    }
}

impl Deref for StandardDopr {
    type Target = Dopr;

    fn deref(&self) -> &Dopr {
        &self.0
    }
}

impl fmt::Display for StandardDopr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The first `u < w` elements of a DoPR whose full weight is `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialDopr {
    n: usize,
    w: usize,
    dops: Vec<usize>,
}

impl PartialDopr {
    pub fn new(dops: Vec<usize>, n: usize, w: usize) -> Result<Self> {
        let u = dops.len();
        if u == 0 || u >= w {
            return Err(Error::OutOfRange {
                value: u,
                min: 1,
                max: w.saturating_sub(1),
            });
        }
        if let Some(&d) = dops.iter().find(|&&d| d == 0) {
            return Err(Error::OutOfRange {
                value: d,
                min: 1,
                max: n,
            });
        }
        let sum: usize = dops.iter().sum();
        let limit = n.saturating_sub(w - u);
        if sum > limit {
            return Err(Error::PartialOverflow { sum, limit });
        }
        Ok(PartialDopr { n, w, dops })
    }

    pub fn dops(&self) -> &[usize] {
        &self.dops
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn w(&self) -> usize {
        self.w
    }

    /// Number of known elements.
    pub fn len(&self) -> usize {
        self.dops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dops.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.dops.iter().sum()
    }

    pub fn is_last_stage(&self) -> bool {
        self.dops.len() + 1 == self.w
    }

    /// Appends one element, checking the room invariant.
    pub fn extended(&self, next: usize) -> Result<PartialDopr> {
        let mut dops = self.dops.clone();
        dops.push(next);
        PartialDopr::new(dops, self.n, self.w)
    }

    /// Fills in the last element as `n - sum`; only valid at `u = w - 1`.
    pub fn complete(&self) -> Result<Dopr> {
        if !self.is_last_stage() {
            return Err(Error::OutOfRange {
                value: self.dops.len(),
                min: self.w - 1,
                max: self.w - 1,
            });
        }
        let mut dops = self.dops.clone();
        dops.push(self.n - self.sum());
        Dopr::new(dops, self.n)
    }

    /// WPR of the weight-(u+1) prefix code, anchored at zero.
    pub fn prefix_wpr(&self) -> Wpr {
        let positions = prefix_sums(&self.dops);
        Wpr {
            positions,
            n: self.n,
        }
    }
}

impl fmt::Display for PartialDopr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.dops, ",")
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, xs: &[usize], sep: &str) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn prefix_sums(dops: &[usize]) -> Vec<usize> {
    std::iter::once(0)
        .chain(dops.iter().scan(0, |acc, &d| {
            *acc += d;
            Some(*acc)
        }))
        .collect()
}

pub fn wpr_from_binary(code: &BinaryCode) -> Result<Wpr> {
    let positions: Vec<usize> = code
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect();
    Wpr::new(positions, code.n())
}

/// Like [`wpr_from_binary`], but checks the declared weight first.
pub fn wpr_from_binary_checked(code: &BinaryCode, w: usize) -> Result<Wpr> {
    let found = code.weight();
    if found != w {
        return Err(Error::WeightMismatch { declared: w, found });
    }
    wpr_from_binary(code)
}

pub fn dopr_from_wpr(wpr: &Wpr) -> Dopr {
    let p = wpr.positions();
    let n = wpr.n();
    let mut dops: Vec<usize> = p.windows(2).map(|x| x[1] - x[0]).collect();
    dops.push(n + p[0] - p[p.len() - 1]);
    Dopr { n, dops }
}

/// Inverse of [`dopr_from_wpr`], anchored at position 0.
pub fn wpr_from_dopr(dopr: &Dopr) -> Wpr {
    let w = dopr.weight();
    let positions = prefix_sums(&dopr.dops()[..w - 1]);
    Wpr {
        positions,
        n: dopr.n(),
    }
}

/// Picks the canonical rotation of a DoPR: maximal last element, ties
/// broken by the lexicographically smallest run of the first `w - 1`
/// elements. A code whose rotations all coincide comes back unchanged.
pub fn standardize(dopr: &Dopr) -> StandardDopr {
    let w = dopr.weight();
    let d = dopr.dops();
    let max = *d.iter().max().expect("non-empty DoPR");
    let best = (0..w)
        // rotation k ends with element k - 1
        .filter(|&k| d[(k + w - 1) % w] == max)
        .min_by(|&a, &b| {
            (0..w - 1)
                .map(|i| d[(a + i) % w])
                .cmp((0..w - 1).map(|i| d[(b + i) % w]))
        })
        .expect("at least one rotation ends with the maximum");
    StandardDopr(dopr.rotated(best))
}

pub fn is_standard(dopr: &Dopr) -> bool {
    standardize(dopr).dops() == dopr.dops()
}

/// Upper limit of the element at 0-based position `index < w - 1` of a
/// standard DoPR.
pub fn position_limit(n: usize, w: usize, index: usize) -> usize {
    if index < (w - 1) / 2 {
        (n + 1 - w) / 2
    } else {
        (n + 2 - w) / 2
    }
}

/// Inclusive range of the last element of a standard DoPR.
pub fn last_element_range(n: usize, w: usize) -> (usize, usize) {
    (n.div_ceil(w), n + 1 - w)
}

/// Checks the positional upper limits and the last-element range that every
/// standard DoPR satisfies.
pub fn conforms_to_ranges(dopr: &Dopr) -> bool {
    let n = dopr.n();
    let w = dopr.weight();
    if w < 2 {
        return true;
    }
    let d = dopr.dops();
    let body_ok = d[..w - 1]
        .iter()
        .enumerate()
        .all(|(i, &x)| x >= 1 && x <= position_limit(n, w, i));
    let (lo, hi) = last_element_range(n, w);
    body_ok && (lo..=hi).contains(&d[w - 1])
}

/// All admissible two-element prefixes `(d1, d2)`, in lexicographic order.
///
/// A pair is kept when its elements differ, both respect their positional
/// limits, there is room for the remaining `w - 2` elements, and the
/// weight-3 prefix code has non-zero-shift auto-correlation at most
/// `lambda_a`.
pub fn enumerate_first_pairs(params: &CodeParams) -> Vec<PartialDopr> {
    let CodeParams { n, w, .. } = *params;
    if w < 3 {
        return Vec::new();
    }
    let room = n - (w - 2);
    let mut out = Vec::new();
    for d1 in 1..=position_limit(n, w, 0) {
        for d2 in 1..=position_limit(n, w, 1) {
            if d1 == d2 || d1 + d2 > room {
                continue;
            }
            let pair = PartialDopr {
                n,
                w,
                dops: vec![d1, d2],
            };
            if correlation::autocorr_edop(&edop_partial(&pair)).lambda_ax <= params.lambda_a {
                out.push(pair);
            }
        }
    }
    out
}
