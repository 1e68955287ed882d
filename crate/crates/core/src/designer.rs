//! End-to-end design of minimum-correlated families of maximal code sets.
//!
//! Codes are grown one DoP element at a time from their first two
//! elements. At every prefix length `u` the partial codes are linked in a
//! compatibility graph, maximal cliques are searched, and each clique's
//! members are extended by one more element. Once `u = w - 1` the last
//! element is fixed by the code length and the cliques become code sets.
//! A final greedy search over the inter-set correlation matrix picks the
//! family.

use std::collections::BTreeSet;

use log::{debug, warn};
use rayon::prelude::*;

use crate::clique::{
    self, build_graph, build_graph_blocked, enumerate_cliques, CliqueSet, CodeGraph,
};
use crate::code_model::{
    conforms_to_ranges, enumerate_first_pairs, is_standard, position_limit, standardize,
    CodeParams, Dopr, PartialDopr,
};
use crate::correlation::{autocorr_bruteforce, autocorr_edop};
use crate::edop::{edop_full, edop_partial, EdopMatrix};
use crate::error::{Error, Result};

/// Graphs with more nodes than this are built block by block.
const BLOCKED_GRAPH_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignConfig {
    pub parameter_list: Vec<CodeParams>,
    /// Cap on cliques carried from one stage to the next (largest first).
    pub max_sets: Option<usize>,
}

impl DesignConfig {
    pub fn new(parameter_list: Vec<CodeParams>) -> Self {
        DesignConfig {
            parameter_list,
            max_sets: None,
        }
    }

    pub fn with_max_sets(mut self, max_sets: Option<usize>) -> Self {
        self.max_sets = max_sets;
        self
    }
}

/// A collection of code sets with a verified inter-set correlation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Family {
    pub sets: Vec<CliqueSet>,
    /// Largest pairwise inter-set correlation; `None` with fewer than two
    /// sets.
    pub interset_lambda: Option<usize>,
}

impl Family {
    pub fn empty() -> Self {
        Family::default()
    }

    /// Sorts the sets canonically (by parameters, then codes) and measures
    /// the inter-set correlation.
    pub fn from_sets(mut sets: Vec<CliqueSet>) -> Result<Self> {
        sets.sort_by(|a, b| (a.params, &a.codes).cmp(&(b.params, &b.codes)));
        let mut interset_lambda = None;
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let v = clique::interset_crosscorr(&sets[i], &sets[j])?;
                interset_lambda = Some(interset_lambda.map_or(v, |m: usize| m.max(v)));
            }
        }
        Ok(Family {
            sets,
            interset_lambda,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn codes(&self) -> impl Iterator<Item = &Dopr> {
        self.sets.iter().flat_map(|s| s.codes.iter())
    }
}

/// Everything the fixed-parameter pipeline produced, for inspection.
#[derive(Debug, Clone)]
pub struct FixedDesign {
    pub params: CodeParams,
    /// Every distinct code set found at the last stage, canonical order.
    pub cliques: Vec<CliqueSet>,
    pub family: Family,
    /// Completed codes dropped for falling outside the standard ranges or
    /// exceeding the auto-correlation constraint.
    pub discarded: Vec<Dopr>,
}

fn check_design_params(params: &CodeParams) -> Result<()> {
    params.validate()?;
    if params.w < 3 {
        return Err(Error::InvalidParams(format!(
            "w >= 3 required for design (w = {})",
            params.w
        )));
    }
    if params.is_experimental() {
        warn!("parameters {params} use thresholds other than 1; design runs in experimental mode");
    }
    Ok(())
}

/// Designs a family for one parameter tuple. Infeasible parameters give an
/// empty family.
pub fn design_fixed(params: &CodeParams) -> Result<Family> {
    Ok(design_fixed_detailed(params, None)?.family)
}

/// All single-element extensions of the clique's codes whose prefix code
/// keeps auto-correlation within `lambda_a`, in member order then element
/// order, without duplicates.
pub fn extend_clique_codes(clique: &[PartialDopr], params: &CodeParams) -> Vec<PartialDopr> {
    let per_code: Vec<Vec<PartialDopr>> = clique
        .par_iter()
        .map(|code| extend_code(code, params))
        .collect();
    let mut seen = BTreeSet::new();
    per_code
        .into_iter()
        .flatten()
        .filter(|p| seen.insert(p.dops().to_vec()))
        .collect()
}

fn extend_code(code: &PartialDopr, params: &CodeParams) -> Vec<PartialDopr> {
    let u = code.len();
    if u + 1 >= params.w {
        return Vec::new();
    }
    let limit = position_limit(params.n, params.w, u);
    let last = *code.dops().last().expect("non-empty prefix");
    (1..=limit)
        // with lambda_a = 1 equal neighbours would already repeat an entry
        .filter(|&e| params.lambda_a != 1 || e != last)
        .filter_map(|e| code.extended(e).ok())
        .filter(|p| autocorr_edop(&edop_partial(p)).lambda_ax <= params.lambda_a)
        .collect()
}

/// At the last stage a candidate is kept only if its completion is a
/// standard DoPR, so every code class enters the graph exactly once.
fn completes_to_standard(p: &PartialDopr) -> bool {
    p.complete().map(|d| is_standard(&d)).unwrap_or(false)
}

fn graph_for(pool: &[PartialDopr], threshold: usize) -> CodeGraph {
    let mats: Vec<EdopMatrix> = pool.iter().map(edop_partial).collect();
    if pool.len() > BLOCKED_GRAPH_THRESHOLD {
        let keys: Vec<usize> = pool.iter().map(|p| p.dops()[0]).collect();
        build_graph_blocked(&mats, &keys, threshold)
    } else {
        build_graph(&mats, threshold)
    }
}

fn cliques_of(pool: &[PartialDopr], params: &CodeParams) -> Vec<Vec<PartialDopr>> {
    if pool.is_empty() {
        return Vec::new();
    }
    let g = graph_for(pool, params.lambda_c);
    enumerate_cliques(&g)
        .into_iter()
        .map(|c| c.into_iter().map(|i| pool[i].clone()).collect())
        .collect()
}

/// Keeps the `max` largest cliques, ties resolved by discovery order.
fn cap_cliques(mut cliques: Vec<Vec<PartialDopr>>, max: Option<usize>) -> Vec<Vec<PartialDopr>> {
    if let Some(max) = max {
        // stable sort keeps discovery order among equal sizes
        cliques.sort_by_key(|c| std::cmp::Reverse(c.len()));
        cliques.truncate(max);
    }
    cliques
}

fn dedup_cliques(cliques: Vec<Vec<PartialDopr>>) -> Vec<Vec<PartialDopr>> {
    let mut seen = BTreeSet::new();
    cliques
        .into_iter()
        .filter(|c| {
            let mut key: Vec<Vec<usize>> = c.iter().map(|p| p.dops().to_vec()).collect();
            key.sort();
            seen.insert(key)
        })
        .collect()
}

/// Fixed-parameter pipeline returning intermediate results as well.
pub fn design_fixed_detailed(params: &CodeParams, max_sets: Option<usize>) -> Result<FixedDesign> {
    check_design_params(params)?;
    let w = params.w;

    let mut branches: Vec<Vec<PartialDopr>> = vec![enumerate_first_pairs(params)];
    let mut u = 2;
    let final_cliques = loop {
        let last_stage = u == w - 1;
        let mut stage: Vec<Vec<PartialDopr>> = Vec::new();
        for pool in &branches {
            let pool: Vec<PartialDopr> = if last_stage {
                pool.iter()
                    .filter(|p| completes_to_standard(p))
                    .cloned()
                    .collect()
            } else {
                pool.clone()
            };
            stage.extend(cliques_of(&pool, params));
        }
        let stage = cap_cliques(dedup_cliques(stage), max_sets);
        debug!(
            "stage u = {u}: {} branches -> {} cliques",
            branches.len(),
            stage.len()
        );
        if last_stage {
            break stage;
        }
        branches = stage
            .iter()
            .map(|c| extend_clique_codes(c, params))
            .filter(|pool| !pool.is_empty())
            .collect();
        u += 1;
    };

    let mut discarded = Vec::new();
    let mut sets = Vec::new();
    let mut seen = BTreeSet::new();
    for clique in final_cliques {
        let mut codes = Vec::with_capacity(clique.len());
        for partial in &clique {
            let code = standardize(&partial.complete()?).into_dopr();
            let auto = autocorr_bruteforce(&code.to_binary())?.lambda_ax;
            if !conforms_to_ranges(&code) || auto > params.lambda_a {
                warn!("discarding finalized code ({code}): outside standard ranges or auto-correlation {auto}");
                discarded.push(code);
                continue;
            }
            codes.push(code);
        }
        if codes.is_empty() {
            continue;
        }
        let set = CliqueSet::new(codes, *params)?;
        if !set.satisfies_constraints() {
            warn!("dropping set failing re-verification: {:?}", set.codes);
            continue;
        }
        if seen.insert(set.codes.clone()) {
            sets.push(set);
        }
    }
    sets.sort_by(|a, b| a.codes.cmp(&b.codes));
    let family = clique::select_family(sets.clone(), params.lambda_c)?;
    Ok(FixedDesign {
        params: *params,
        cliques: sets,
        family,
        discarded,
    })
}

/// Multi-class design: one fixed design per parameter tuple, then a greedy
/// clique over the sets of all classes where two sets are linked when their
/// inter-set correlation is at most one above the larger `lambda_c`.
pub fn design_multi(config: &DesignConfig) -> Result<Family> {
    if config.parameter_list.is_empty() {
        return Err(Error::InvalidParams(
            "at least one parameter tuple required".into(),
        ));
    }
    for p in &config.parameter_list {
        check_design_params(p)?;
    }
    let families: Vec<Family> = config
        .parameter_list
        .iter()
        .map(|p| design_fixed_detailed(p, config.max_sets).map(|d| d.family))
        .collect::<Result<_>>()?;
    if families.len() == 1 {
        return Ok(families.into_iter().next().unwrap_or_default());
    }
    let sets: Vec<CliqueSet> = families.into_iter().flat_map(|f| f.sets).collect();
    if sets.is_empty() {
        return Ok(Family::empty());
    }
    let mats: Vec<Vec<EdopMatrix>> = sets
        .iter()
        .map(|s| s.codes.iter().map(edop_full).collect())
        .collect();
    let m = sets.len();
    let upper: Vec<Vec<bool>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (0..m)
                .map(|j| {
                    if j <= i {
                        return false;
                    }
                    let limit = sets[i].params.lambda_c.max(sets[j].params.lambda_c) + 1;
                    mats[i].iter().all(|x| {
                        mats[j]
                            .iter()
                            .all(|y| crate::correlation::crosscorr_edop(x, y).lambda_cxy <= limit)
                    })
                })
                .collect()
        })
        .collect();
    let graph = CodeGraph::from_adjacency(&upper, 2);
    let picked = clique::greedy_clique(&graph);
    let mut slots: Vec<Option<CliqueSet>> = sets.into_iter().map(Some).collect();
    Family::from_sets(picked.into_iter().filter_map(|i| slots[i].take()).collect())
}

/// Runs [`design_fixed`] for a single tuple and [`design_multi`] otherwise.
pub fn design(config: &DesignConfig) -> Result<Family> {
    match config.parameter_list.as_slice() {
        [one] => Ok(design_fixed_detailed(one, config.max_sets)?.family),
        _ => design_multi(config),
    }
}
