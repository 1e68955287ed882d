//! On-disk form of a designed family and its independent re-verification.
//!
//! JSON is canonical: UTF-8, keys sorted, two-space indent, trailing
//! newline, unknown fields rejected. CSV is a flat export of the codes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clique::CliqueSet;
use crate::code_model::{
    conforms_to_ranges, dopr_from_wpr, is_standard, wpr_from_dopr, CodeParams, Dopr, Wpr,
};
use crate::correlation::{
    autocorr_bruteforce, autocorr_edop, crosscorr_bruteforce, crosscorr_edop, johnson_bound,
};
use crate::designer::{DesignConfig, Family};
use crate::edop::{edop_full, EdopMatrix};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeEntry {
    pub dopr: Vec<usize>,
    pub wpr: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetEntry {
    pub codes: Vec<CodeEntry>,
    pub params: CodeParams,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEcho {
    pub max_sets: Option<usize>,
    pub parameters: Vec<CodeParams>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub config: ConfigEcho,
    pub tool: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSetDocument {
    /// Largest inter-set cross-correlation; 0 when there are fewer than
    /// two sets.
    pub family_interset_lambda: usize,
    pub format_version: String,
    pub provenance: Provenance,
    pub sets: Vec<SetEntry>,
}

impl CodeSetDocument {
    pub fn from_family(family: &Family, config: &DesignConfig) -> Self {
        let sets = family
            .sets
            .iter()
            .map(|s| SetEntry {
                codes: s
                    .codes
                    .iter()
                    .map(|c| CodeEntry {
                        dopr: c.dops().to_vec(),
                        wpr: wpr_from_dopr(c).positions().to_vec(),
                    })
                    .collect(),
                params: s.params,
            })
            .collect();
        CodeSetDocument {
            family_interset_lambda: family.interset_lambda.unwrap_or(0),
            format_version: FORMAT_VERSION.to_string(),
            provenance: Provenance {
                config: ConfigEcho {
                    max_sets: config.max_sets,
                    parameters: config.parameter_list.clone(),
                },
                tool: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            },
            sets,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        // going through Value sorts every object's keys
        let value = serde_json::to_value(self).map_err(|e| Error::Document(e.to_string()))?;
        let mut s =
            serde_json::to_string_pretty(&value).map_err(|e| Error::Document(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Document(e.to_string()))
    }

    /// Flat export: `set_id,n,w,dopr,wpr` with dash-joined integer lists.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("set_id,n,w,dopr,wpr\n");
        for (id, set) in self.sets.iter().enumerate() {
            for code in &set.codes {
                out.push_str(&format!(
                    "{id},{},{},{},{}\n",
                    set.params.n,
                    set.params.w,
                    dash_join(&code.dopr),
                    dash_join(&code.wpr)
                ));
            }
        }
        out
    }
}

fn dash_join(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("-")
}

/// One row of the CSV export.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CsvRow {
    pub set_id: usize,
    pub n: usize,
    pub w: usize,
    pub dopr: Vec<usize>,
    pub wpr: Vec<usize>,
}

pub fn parse_csv(s: &str) -> Result<Vec<CsvRow>> {
    let mut lines = s.lines();
    match lines.next() {
        Some("set_id,n,w,dopr,wpr") => {}
        other => return Err(Error::Document(format!("unexpected CSV header {other:?}"))),
    }
    let int = |x: &str| {
        x.parse::<usize>()
            .map_err(|e| Error::Document(format!("bad integer {x:?}: {e}")))
    };
    let list = |x: &str| x.split('-').map(int).collect::<Result<Vec<_>>>();
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(Error::Document(format!(
                    "expected 5 CSV fields, got {}: {line:?}",
                    f.len()
                )));
            }
            Ok(CsvRow {
                set_id: int(f[0])?,
                n: int(f[1])?,
                w: int(f[2])?,
                dopr: list(f[3])?,
                wpr: list(f[4])?,
            })
        })
        .collect()
}

/// Named invariant re-checked by [`verify_document`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    FormatVersion,
    Params,
    Weight,
    DoprSum,
    DopRange,
    WprConsistency,
    StandardForm,
    StandardRanges,
    AutoCorrelation,
    CrossCorrelation,
    SetSizeBound,
    IntersetSeparation,
    IntersetMinimum,
    FamilyIntersetLambda,
    /// EDoP and shift-counting routes gave different answers.
    MethodAgreement,
}

impl Invariant {
    pub const ALL: [Invariant; 15] = [
        Invariant::FormatVersion,
        Invariant::Params,
        Invariant::Weight,
        Invariant::DoprSum,
        Invariant::DopRange,
        Invariant::WprConsistency,
        Invariant::StandardForm,
        Invariant::StandardRanges,
        Invariant::AutoCorrelation,
        Invariant::CrossCorrelation,
        Invariant::SetSizeBound,
        Invariant::IntersetSeparation,
        Invariant::IntersetMinimum,
        Invariant::FamilyIntersetLambda,
        Invariant::MethodAgreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::FormatVersion => "format-version",
            Invariant::Params => "params",
            Invariant::Weight => "weight",
            Invariant::DoprSum => "dopr-sum-equals-length",
            Invariant::DopRange => "dop-range",
            Invariant::WprConsistency => "wpr-dopr-consistency",
            Invariant::StandardForm => "standard-form",
            Invariant::StandardRanges => "standard-element-ranges",
            Invariant::AutoCorrelation => "auto-correlation",
            Invariant::CrossCorrelation => "cross-correlation",
            Invariant::SetSizeBound => "johnson-bound",
            Invariant::IntersetSeparation => "interset-separation",
            Invariant::IntersetMinimum => "interset-minimum",
            Invariant::FamilyIntersetLambda => "family-interset-lambda",
            Invariant::MethodAgreement => "method-agreement",
        }
    }

    /// What the invariant asserts, printed next to failures.
    pub fn statement(self) -> &'static str {
        match self {
            Invariant::FormatVersion => "document format version is supported",
            Invariant::Params => "n > w > max(lambda_a, lambda_c) >= 1",
            Invariant::Weight => "every code has w elements",
            Invariant::DoprSum => "DoPR elements sum to the code length",
            Invariant::DopRange => "every DoP element lies in [1, n-1]",
            Invariant::WprConsistency => "wpr and dopr describe the same code",
            Invariant::StandardForm => "dopr is the canonical rotation",
            Invariant::StandardRanges => "standard DoPR elements respect their positional limits",
            Invariant::AutoCorrelation => {
                "every code's non-zero-shift auto-correlation is <= lambda_a"
            }
            Invariant::CrossCorrelation => {
                "codes in a set share no EDoP entries beyond lambda_c - 1 (lambda_cxy <= lambda_c)"
            }
            Invariant::SetSizeBound => "set size does not exceed the Johnson bound",
            Invariant::IntersetSeparation => "inter-set cross-correlation <= lambda_c + 1",
            Invariant::IntersetMinimum => {
                "distinct maximal sets of one class correlate >= lambda_c + 1"
            }
            Invariant::FamilyIntersetLambda => {
                "stored family_interset_lambda matches recomputation"
            }
            Invariant::MethodAgreement => "EDoP and shift-counting correlation agree",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: Invariant,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed(&self, inv: Invariant) -> bool {
        self.violations.iter().any(|v| v.invariant == inv)
    }

    /// Method disagreement is its own failure class, distinct from a
    /// constraint violation.
    pub fn has_method_disagreement(&self) -> bool {
        self.failed(Invariant::MethodAgreement)
    }

    fn push(&mut self, invariant: Invariant, detail: String) {
        self.violations.push(Violation { invariant, detail });
    }

    /// One PASS/FAIL line per invariant followed by failure details.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for inv in Invariant::ALL {
            let fails: Vec<&Violation> = self
                .violations
                .iter()
                .filter(|v| v.invariant == inv)
                .collect();
            if fails.is_empty() {
                out.push_str(&format!("PASS {inv}\n"));
            } else {
                out.push_str(&format!(
                    "FAIL {inv} ({}): {} violation(s)\n",
                    inv.statement(),
                    fails.len()
                ));
                for v in fails {
                    out.push_str(&format!("  - {}\n", v.detail));
                }
            }
        }
        out
    }
}

/// A structurally valid code with both correlation routes evaluated.
struct CheckedCode {
    dopr: Dopr,
    edop: EdopMatrix,
}

fn check_code(
    report: &mut VerifyReport,
    si: usize,
    ci: usize,
    entry: &CodeEntry,
    params: &CodeParams,
) -> Option<CheckedCode> {
    let at = format!("set {si} code {ci}");
    let n = params.n;
    if entry.dopr.len() != params.w {
        report.push(
            Invariant::Weight,
            format!(
                "{at}: dopr has {} elements, w = {}",
                entry.dopr.len(),
                params.w
            ),
        );
        return None;
    }
    let sum: usize = entry.dopr.iter().sum();
    if sum != n {
        report.push(
            Invariant::DoprSum,
            format!(
                "{at}: elements of {:?} sum to {sum}, expected {n}",
                entry.dopr
            ),
        );
        return None;
    }
    if let Some(&bad) = entry.dopr.iter().find(|&&d| d < 1 || d >= n) {
        report.push(
            Invariant::DopRange,
            format!("{at}: element {bad} outside [1, {}]", n - 1),
        );
        return None;
    }
    let dopr = match Dopr::new(entry.dopr.clone(), n) {
        Ok(d) => d,
        Err(e) => {
            report.push(Invariant::DopRange, format!("{at}: {e}"));
            return None;
        }
    };
    match Wpr::new(entry.wpr.clone(), n) {
        Ok(wpr) if dopr_from_wpr(&wpr) == dopr => {}
        Ok(wpr) => report.push(
            Invariant::WprConsistency,
            format!(
                "{at}: wpr {:?} has DoPR ({}), stored ({dopr})",
                entry.wpr,
                dopr_from_wpr(&wpr)
            ),
        ),
        Err(e) => report.push(
            Invariant::WprConsistency,
            format!("{at}: wpr {:?} invalid: {e}", entry.wpr),
        ),
    }
    if !is_standard(&dopr) {
        report.push(
            Invariant::StandardForm,
            format!("{at}: ({dopr}) is not the canonical rotation"),
        );
    } else if !conforms_to_ranges(&dopr) {
        report.push(
            Invariant::StandardRanges,
            format!("{at}: ({dopr}) violates positional limits"),
        );
    }
    let edop = edop_full(&dopr);
    let via_edop = autocorr_edop(&edop).lambda_ax;
    match autocorr_bruteforce(&dopr.to_binary()) {
        Ok(bf) if bf.lambda_ax != via_edop => report.push(
            Invariant::MethodAgreement,
            format!(
                "{at}: auto-correlation EDoP {via_edop} vs shift count {}",
                bf.lambda_ax
            ),
        ),
        Ok(_) => {}
        Err(e) => report.push(Invariant::AutoCorrelation, format!("{at}: {e}")),
    }
    if via_edop > params.lambda_a {
        report.push(
            Invariant::AutoCorrelation,
            format!(
                "{at}: ({dopr}) has lambda_ax = {via_edop} > lambda_a = {}",
                params.lambda_a
            ),
        );
    }
    Some(CheckedCode { dopr, edop })
}

fn shared_entries(a: &EdopMatrix, b: &EdopMatrix) -> Vec<usize> {
    let sa: BTreeSet<usize> = a.entries().collect();
    let sb: BTreeSet<usize> = b.entries().collect();
    sa.intersection(&sb).copied().collect()
}

/// Cross-correlation of two checked codes by both routes; records a
/// method disagreement when they differ (same length only).
fn cross_both(report: &mut VerifyReport, at: &str, x: &CheckedCode, y: &CheckedCode) -> usize {
    let via_edop = crosscorr_edop(&x.edop, &y.edop).lambda_cxy;
    if x.dopr.n() == y.dopr.n() {
        if let Ok(bf) = crosscorr_bruteforce(&x.dopr.to_binary(), &y.dopr.to_binary()) {
            if bf.lambda_cxy != via_edop {
                report.push(
                    Invariant::MethodAgreement,
                    format!(
                        "{at}: cross-correlation EDoP {via_edop} vs shift count {}",
                        bf.lambda_cxy
                    ),
                );
            }
        }
    }
    via_edop
}

/// Recomputes every stored property of a document from scratch.
pub fn verify_document(doc: &CodeSetDocument) -> VerifyReport {
    let mut report = VerifyReport::default();
    if doc.format_version != FORMAT_VERSION {
        report.push(
            Invariant::FormatVersion,
            format!("unsupported format_version {:?}", doc.format_version),
        );
    }
    let mut checked_sets: Vec<(CodeParams, Vec<CheckedCode>)> = Vec::new();
    for (si, set) in doc.sets.iter().enumerate() {
        if let Err(e) = set.params.validate() {
            report.push(Invariant::Params, format!("set {si}: {e}"));
            continue;
        }
        let p = set.params;
        let codes: Vec<CheckedCode> = set
            .codes
            .iter()
            .enumerate()
            .filter_map(|(ci, c)| check_code(&mut report, si, ci, c, &p))
            .collect();
        if let Ok(bound) = johnson_bound(p.n, p.w, p.lambda_a.max(p.lambda_c)) {
            if set.codes.len() > bound {
                report.push(
                    Invariant::SetSizeBound,
                    format!("set {si}: {} codes > bound {bound}", set.codes.len()),
                );
            }
        }
        for i in 0..codes.len() {
            for j in i + 1..codes.len() {
                let at = format!("set {si} codes ({}) and ({})", codes[i].dopr, codes[j].dopr);
                let v = cross_both(&mut report, &at, &codes[i], &codes[j]);
                if v > p.lambda_c {
                    let shared = shared_entries(&codes[i].edop, &codes[j].edop);
                    report.push(
                        Invariant::CrossCorrelation,
                        format!("{at}: lambda_cxy = {v} > lambda_c = {}; shared EDoP entries {shared:?}", p.lambda_c),
                    );
                }
            }
        }
        checked_sets.push((p, codes));
    }

    let mut interset_max: Option<usize> = None;
    for i in 0..checked_sets.len() {
        for j in i + 1..checked_sets.len() {
            let (pa, a) = &checked_sets[i];
            let (pb, b) = &checked_sets[j];
            let at = format!("sets {i} and {j}");
            let mut v = 0;
            for x in a {
                for y in b {
                    v = v.max(cross_both(&mut report, &at, x, y));
                }
            }
            if a.is_empty() || b.is_empty() {
                continue;
            }
            interset_max = Some(interset_max.map_or(v, |m| m.max(v)));
            let limit = pa.lambda_c.max(pb.lambda_c) + 1;
            if v > limit {
                report.push(
                    Invariant::IntersetSeparation,
                    format!("{at}: inter-set value {v} > {limit}"),
                );
            }
            if pa == pb && v < pa.lambda_c + 1 {
                report.push(
                    Invariant::IntersetMinimum,
                    format!(
                        "{at}: inter-set value {v} < {}; the sets are not both maximal",
                        pa.lambda_c + 1
                    ),
                );
            }
        }
    }
    let recomputed = interset_max.unwrap_or(0);
    if recomputed != doc.family_interset_lambda {
        report.push(
            Invariant::FamilyIntersetLambda,
            format!(
                "stored {}, recomputed {recomputed}",
                doc.family_interset_lambda
            ),
        );
    }
    report
}

/// Rebuilds a family from a document without any checks beyond parsing.
pub fn family_from_document(doc: &CodeSetDocument) -> Result<Family> {
    let sets = doc
        .sets
        .iter()
        .map(|s| {
            let codes = s
                .codes
                .iter()
                .map(|c| Dopr::new(c.dopr.clone(), s.params.n))
                .collect::<Result<Vec<_>>>()?;
            CliqueSet::new(codes, s.params)
        })
        .collect::<Result<Vec<_>>>()?;
    Family::from_sets(sets)
}
