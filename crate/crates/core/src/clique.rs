//! Compatibility graphs over candidate codes and the greedy maximal-clique
//! search run on them.
//!
//! Nodes are identified by their index in the candidate list handed to
//! [`build_graph`]; callers keep the list and map cliques back to codes.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::code_model::{standardize, CodeParams, Dopr};
use crate::correlation::{self, crosscorr_edop, edop_disjoint, johnson_bound};
use crate::designer::Family;
use crate::edop::{edop_full, EdopMatrix};
use crate::error::{Error, Result};

/// Fixed-size bitset over node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct NodeSet {
    words: Vec<u64>,
}

impl NodeSet {
    fn empty(len: usize) -> Self {
        NodeSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut s = NodeSet::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn intersect_count(&self, other: &NodeSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn intersect_with(&mut self, other: &NodeSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// Symmetric compatibility graph; `i ~ j` iff the two codes correlate at
/// most `threshold`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeGraph {
    adjacency: Vec<NodeSet>,
    threshold: usize,
}

impl CodeGraph {
    /// Builds a graph from an explicit boolean matrix. Only the upper
    /// triangle is read; the diagonal is ignored.
    pub fn from_adjacency(matrix: &[Vec<bool>], threshold: usize) -> Self {
        let n = matrix.len();
        let mut adjacency = vec![NodeSet::empty(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if matrix[i][j] {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        CodeGraph {
            adjacency,
            threshold,
        }
    }

    fn from_edge_lists(n: usize, upper: Vec<Vec<usize>>, threshold: usize) -> Self {
        let mut adjacency = vec![NodeSet::empty(n); n];
        for (i, js) in upper.into_iter().enumerate() {
            for j in js {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
        CodeGraph {
            adjacency,
            threshold,
        }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.adjacency[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i]
            .words
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.adjacency[i].iter().collect()
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.is_adjacent(i, j)).collect())
            .collect()
    }

    pub fn is_clique(&self, nodes: &[usize]) -> bool {
        nodes
            .iter()
            .enumerate()
            .all(|(a, &i)| nodes[a + 1..].iter().all(|&j| self.is_adjacent(i, j)))
    }
}

fn compatible(a: &EdopMatrix, b: &EdopMatrix, threshold: usize) -> bool {
    if threshold == 1 {
        edop_disjoint(a, b)
    } else {
        crosscorr_edop(a, b).lambda_cxy <= threshold
    }
}

/// Compatibility graph over EDoP matrices (complete or partial). Pairs are
/// evaluated in parallel; edges are assembled in node order.
pub fn build_graph(codes: &[EdopMatrix], threshold: usize) -> CodeGraph {
    let n = codes.len();
    let upper: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .filter(|&j| compatible(&codes[i], &codes[j], threshold))
                .collect()
        })
        .collect();
    CodeGraph::from_edge_lists(n, upper, threshold)
}

/// Same graph as [`build_graph`], computed block by block where nodes are
/// grouped by `keys` (the first DoP element in the designer). Each block
/// pair is evaluated independently, which bounds the working set for very
/// large candidate pools.
pub fn build_graph_blocked(codes: &[EdopMatrix], keys: &[usize], threshold: usize) -> CodeGraph {
    assert_eq!(codes.len(), keys.len(), "one key per code");
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &k) in keys.iter().enumerate() {
        blocks.entry(k).or_default().push(i);
    }
    let blocks: Vec<Vec<usize>> = blocks.into_values().collect();
    let pairs: Vec<(usize, usize)> = (0..blocks.len())
        .flat_map(|a| (a..blocks.len()).map(move |b| (a, b)))
        .collect();
    let edges: Vec<Vec<(usize, usize)>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut out = Vec::new();
            for &i in &blocks[a] {
                for &j in &blocks[b] {
                    if (a != b || i < j) && i != j && compatible(&codes[i], &codes[j], threshold) {
                        out.push((i.min(j), i.max(j)));
                    }
                }
            }
            out
        })
        .collect();
    let mut upper = vec![Vec::new(); codes.len()];
    for (i, j) in edges.into_iter().flatten() {
        upper[i].push(j);
    }
    CodeGraph::from_edge_lists(codes.len(), upper, threshold)
}

/// Highest-degree node of `working` within the subgraph it induces,
/// lowest index on ties.
fn highest_degree(g: &CodeGraph, working: &NodeSet) -> Option<(usize, usize)> {
    working
        .iter()
        .map(|v| (v, g.adjacency[v].intersect_count(working)))
        .fold(None, |best, (v, d)| match best {
            Some((_, bd)) if bd >= d => best,
            _ => Some((v, d)),
        })
}

fn greedy_from(g: &CodeGraph, start: Option<usize>) -> Vec<usize> {
    let mut selected = Vec::new();
    let mut working = NodeSet::full(g.len());
    let mut forced = start;
    loop {
        let pick = match forced.take() {
            Some(v) => Some((v, g.adjacency[v].intersect_count(&working))),
            None => highest_degree(g, &working),
        };
        let Some((v, degree)) = pick else { break };
        selected.push(v);
        let mut next = g.adjacency[v].clone();
        next.intersect_with(&working);
        next.remove(v);
        match degree {
            0 => break,
            1 => {
                // the single remaining neighbour closes the clique
                if let Some(u) = next.iter().next() {
                    selected.push(u);
                }
                break;
            }
            _ => working = next,
        }
        if working.is_empty() {
            break;
        }
    }
    selected
}

/// Repeatedly takes a highest-degree node (lowest index on ties) and
/// restricts the working graph to its neighbourhood, until the working
/// graph's top degree drops to one (add the partner) or zero (stop).
/// Returns node indices in selection order; the result is a maximal clique.
pub fn greedy_clique(g: &CodeGraph) -> Vec<usize> {
    if g.is_empty() {
        return Vec::new();
    }
    greedy_from(g, None)
}

/// One greedy run per distinct highest-degree node of the full graph, used
/// as the forced first pick. Duplicate results are dropped; order follows
/// the starting node index.
pub fn enumerate_cliques(g: &CodeGraph) -> Vec<Vec<usize>> {
    if g.is_empty() {
        return Vec::new();
    }
    let degrees: Vec<usize> = (0..g.len()).map(|i| g.degree(i)).collect();
    let top = degrees.iter().copied().max().unwrap_or(0);
    let starts: Vec<usize> = (0..g.len()).filter(|&i| degrees[i] == top).collect();
    let runs: Vec<Vec<usize>> = starts
        .par_iter()
        .map(|&s| greedy_from(g, Some(s)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for clique in runs {
        let mut key = clique.clone();
        key.sort_unstable();
        if seen.insert(key) {
            out.push(clique);
        }
    }
    out
}

/// True iff no node outside `clique` is adjacent to every member.
pub fn is_maximal_in(g: &CodeGraph, clique: &[usize]) -> bool {
    let mut common = NodeSet::full(g.len());
    for &v in clique {
        common.intersect_with(&g.adjacency[v]);
    }
    for &v in clique {
        common.remove(v);
    }
    common.is_empty()
}

const EXACT_MAX_NODES: usize = 24;
const EXACT_MAX_BOUND: usize = 6;

fn exact_guard(g: &CodeGraph, bound: usize) -> Result<()> {
    if g.len() > EXACT_MAX_NODES && bound > EXACT_MAX_BOUND {
        return Err(Error::InvalidParams(format!(
            "exact clique search limited to pools of <= {EXACT_MAX_NODES} nodes or bounds <= {EXACT_MAX_BOUND} \
             (got {} nodes, bound {bound})",
            g.len()
        )));
    }
    Ok(())
}

/// Exhaustive maximum clique, searching cliques of size up to `bound`.
/// Intended as a test oracle for small pools.
pub fn exact_max_clique(g: &CodeGraph, bound: usize) -> Result<Vec<usize>> {
    exact_guard(g, bound)?;
    fn grow(
        g: &CodeGraph,
        current: &mut Vec<usize>,
        cands: NodeSet,
        bound: usize,
        best: &mut Vec<usize>,
    ) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        if best.len() >= bound || current.len() >= bound {
            return;
        }
        for v in cands.iter() {
            if best.len() >= bound {
                return;
            }
            let mut next = cands.clone();
            next.intersect_with(&g.adjacency[v]);
            // only extend with higher indices so each subset is visited once
            for u in 0..=v {
                next.remove(u);
            }
            current.push(v);
            grow(g, current, next, bound, best);
            current.pop();
        }
    }
    let mut best = Vec::new();
    grow(
        g,
        &mut Vec::new(),
        NodeSet::full(g.len()),
        bound.max(1),
        &mut best,
    );
    Ok(best)
}

/// Every maximal clique of the graph (Bron-Kerbosch with pivoting), each
/// sorted, in lexicographic order. Test oracle for small pools.
pub fn all_maximal_cliques(g: &CodeGraph) -> Result<Vec<Vec<usize>>> {
    if g.len() > 64 {
        return Err(Error::InvalidParams(format!(
            "maximal clique listing limited to 64 nodes (got {})",
            g.len()
        )));
    }
    fn bk(
        g: &CodeGraph,
        r: &mut Vec<usize>,
        p: NodeSet,
        mut x: NodeSet,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| g.adjacency[u].intersect_count(&p));
        let mut p = p;
        let candidates: Vec<usize> = match pivot {
            Some(u) => p.iter().filter(|&v| !g.adjacency[u].contains(v)).collect(),
            None => p.iter().collect(),
        };
        for v in candidates {
            let mut np = p.clone();
            np.intersect_with(&g.adjacency[v]);
            let mut nx = x.clone();
            nx.intersect_with(&g.adjacency[v]);
            r.push(v);
            bk(g, r, np, nx, out);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    bk(
        g,
        &mut Vec::new(),
        NodeSet::full(g.len()),
        NodeSet::empty(g.len()),
        &mut out,
    );
    out.sort();
    Ok(out)
}

/// A set of codes that pairwise satisfy the cross-correlation constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSet {
    pub codes: Vec<Dopr>,
    pub params: CodeParams,
    pub bound: usize,
    pub verified_lambda_a: usize,
    /// `None` for a single-code set.
    pub verified_lambda_c: Option<usize>,
}

impl CliqueSet {
    /// Wraps codes (sorted into canonical order) and measures their actual
    /// auto- and cross-correlation.
    pub fn new(mut codes: Vec<Dopr>, params: CodeParams) -> Result<Self> {
        codes.sort();
        let verified_lambda_a = correlation::set_lambda_a(&codes)?;
        let verified_lambda_c = if codes.len() >= 2 {
            Some(correlation::set_lambda_c(&codes)?)
        } else {
            None
        };
        let bound = johnson_bound(params.n, params.w, params.lambda_a.max(params.lambda_c))?;
        Ok(CliqueSet {
            codes,
            params,
            bound,
            verified_lambda_a,
            verified_lambda_c,
        })
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Constraint and bound checks; maximality needs a candidate pool, see
    /// [`verify_maximality`].
    pub fn satisfies_constraints(&self) -> bool {
        self.verified_lambda_a <= self.params.lambda_a
            && self
                .verified_lambda_c
                .is_none_or(|c| c <= self.params.lambda_c)
            && self.codes.len() <= self.bound
    }
}

/// True iff no candidate outside `clique` is compatible with every member.
/// Candidates are compared by standard form.
pub fn verify_maximality(clique: &CliqueSet, all_candidates: &[Dopr]) -> bool {
    let members: BTreeSet<Dopr> = clique
        .codes
        .iter()
        .map(|c| standardize(c).into_dopr())
        .collect();
    let member_mats: Vec<EdopMatrix> = clique.codes.iter().map(edop_full).collect();
    let threshold = clique.params.lambda_c;
    !all_candidates.iter().any(|cand| {
        if members.contains(&*standardize(cand)) {
            return false;
        }
        let m = edop_full(cand);
        member_mats
            .iter()
            .all(|mm| crosscorr_edop(mm, &m).lambda_cxy <= threshold)
    })
}

/// Pairwise inter-set correlations plus their thresholded form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSetMatrix {
    pub raw: Vec<Vec<usize>>,
    pub normalized: Vec<Vec<bool>>,
}

impl CliqueSetMatrix {
    /// `normalized[i][j]` is set iff `raw[i][j] <= threshold` and `i != j`.
    pub fn build(sets: &[CliqueSet], threshold: usize) -> Result<Self> {
        let mats: Vec<Vec<EdopMatrix>> = sets
            .iter()
            .map(|s| s.codes.iter().map(edop_full).collect())
            .collect();
        if mats.iter().any(Vec::is_empty) {
            return Err(Error::TooFewCodes { needed: 1, got: 0 });
        }
        let m = sets.len();
        let upper: Vec<Vec<usize>> = (0..m)
            .into_par_iter()
            .map(|i| (i..m).map(|j| interset_of(&mats[i], &mats[j])).collect())
            .collect();
        let mut raw = vec![vec![0; m]; m];
        for (i, row) in upper.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                raw[i][i + off] = v;
                raw[i + off][i] = v;
            }
        }
        let normalized = (0..m)
            .map(|i| (0..m).map(|j| i != j && raw[i][j] <= threshold).collect())
            .collect();
        Ok(CliqueSetMatrix { raw, normalized })
    }
}

fn interset_of(a: &[EdopMatrix], b: &[EdopMatrix]) -> usize {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| crosscorr_edop(x, y).lambda_cxy))
        .max()
        .unwrap_or(0)
}

/// Maximum cross-correlation over pairs drawn one from each set.
pub fn interset_crosscorr(a: &CliqueSet, b: &CliqueSet) -> Result<usize> {
    correlation::interset_crosscorr(&a.codes, &b.codes)
}

/// Chooses a family of sets whose pairwise inter-set correlation is at most
/// `lambda_c + 1`, by running the greedy clique search over the
/// thresholded inter-set matrix.
pub fn select_family(cliques: Vec<CliqueSet>, lambda_c: usize) -> Result<Family> {
    if cliques.is_empty() {
        return Ok(Family::empty());
    }
    let matrix = CliqueSetMatrix::build(&cliques, lambda_c + 1)?;
    let graph = CodeGraph::from_adjacency(&matrix.normalized, lambda_c + 1);
    let picked = greedy_clique(&graph);
    let mut slots: Vec<Option<CliqueSet>> = cliques.into_iter().map(Some).collect();
    let sets = picked.into_iter().filter_map(|i| slots[i].take()).collect();
    Family::from_sets(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn complete(n: usize) -> CodeGraph {
        let m = vec![vec![true; n]; n];
        CodeGraph::from_adjacency(&m, 1)
    }

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> CodeGraph {
        let mut m = vec![vec![false; n]; n];
        for &(a, b) in edges {
            m[a.min(b)][a.max(b)] = true;
        }
        CodeGraph::from_adjacency(&m, 1)
    }

    fn random_graph(n: usize, seed: u64) -> CodeGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for cell in row.iter_mut().skip(i + 1) {
                *cell = rng.gen_bool(0.5);
            }
        }
        CodeGraph::from_adjacency(&m, 1)
    }

    /// Maximum clique size by checking every subset.
    fn brute_max_clique(g: &CodeGraph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|mask| {
                let nodes: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                g.is_clique(&nodes)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn greedy_on_complete_graph() {
        let mut c = greedy_clique(&complete(3));
        c.sort();
        assert_eq!(c, vec![0, 1, 2]);
    }

    #[test]
    fn greedy_on_edgeless_graph() {
        let g = from_edges(5, &[]);
        assert_eq!(greedy_clique(&g), vec![0]);
    }

    #[test]
    fn greedy_on_random_graphs_is_maximal_and_bounded() {
        for seed in 0..20 {
            let g = random_graph(10, seed);
            let c = greedy_clique(&g);
            assert!(g.is_clique(&c));
            assert!(is_maximal_in(&g, &c));
            let best = brute_max_clique(&g);
            assert!(c.len() <= best);
            assert_eq!(exact_max_clique(&g, 10).unwrap().len(), best);
        }
    }

    #[test]
    fn single_node_graph() {
        let g = from_edges(1, &[]);
        assert_eq!(g.to_matrix(), vec![vec![false]]);
        assert_eq!(greedy_clique(&g), vec![0]);
    }

    #[test]
    fn enumerate_on_k3_and_two_triangles() {
        assert_eq!(enumerate_cliques(&complete(3)).len(), 1);
        let g = from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let cl = enumerate_cliques(&g);
        assert_eq!(cl.len(), 2);
        assert!(cl.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn maximality_checks() {
        let k4 = complete(4);
        assert!(is_maximal_in(&k4, &[0, 1, 2, 3]));
        assert!(!is_maximal_in(&k4, &[0, 1, 2]));
    }

    #[test]
    fn degree_one_tail_adds_partner() {
        // path 0 - 1 - 2: node 1 has degree 2, then {0, 2} are non-adjacent
        let g = from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(greedy_clique(&g), vec![1, 0]);
        // star with an extra edge: 0 centre, 1-2 joined
        let g = from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]);
        let mut c = greedy_clique(&g);
        c.sort();
        assert_eq!(c, vec![0, 1, 2]);
    }

    #[test]
    fn blocked_build_matches_whole_graph() {
        let codes: Vec<Dopr> = (1..8)
            .flat_map(|a| (1..8).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && a + b < 24)
            .map(|(a, b)| Dopr::new(vec![a, b, 25 - a - b], 25).unwrap())
            .collect();
        let mats: Vec<EdopMatrix> = codes.iter().map(edop_full).collect();
        let keys: Vec<usize> = codes.iter().map(|c| c.dops()[0]).collect();
        for t in [1, 2] {
            assert_eq!(build_graph(&mats, t), build_graph_blocked(&mats, &keys, t));
        }
    }

    #[test]
    fn graph_edges_follow_cross_correlation() {
        let codes = [
            Dopr::new(vec![1, 3, 9], 13).unwrap(),
            Dopr::new(vec![2, 5, 6], 13).unwrap(),
            Dopr::new(vec![1, 2, 10], 13).unwrap(),
        ];
        let mats: Vec<EdopMatrix> = codes.iter().map(edop_full).collect();
        let g = build_graph(&mats, 1);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert!(!g.is_adjacent(i, j));
                    continue;
                }
                let bf =
                    correlation::crosscorr_bruteforce(&codes[i].to_binary(), &codes[j].to_binary())
                        .unwrap();
                assert_eq!(g.is_adjacent(i, j), bf.lambda_cxy <= 1, "{i} {j}");
            }
        }
    }

    #[test]
    fn bron_kerbosch_matches_subset_scan() {
        for seed in 0..10 {
            let g = random_graph(9, seed);
            let mut expected = Vec::new();
            for mask in 1u32..1 << 9 {
                let nodes: Vec<usize> = (0..9).filter(|i| mask >> i & 1 == 1).collect();
                if g.is_clique(&nodes) && is_maximal_in(&g, &nodes) {
                    expected.push(nodes);
                }
            }
            expected.sort();
            assert_eq!(all_maximal_cliques(&g).unwrap(), expected);
        }
    }

    #[test]
    fn exact_oracle_is_guarded() {
        let g = random_graph(30, 1);
        assert!(exact_max_clique(&g, 7).is_err());
        assert!(exact_max_clique(&g, 4).is_ok());
    }

    fn set(codes: &[&[usize]], n: usize) -> CliqueSet {
        let params = CodeParams::new(n, codes[0].len(), 1, 1).unwrap();
        CliqueSet::new(
            codes
                .iter()
                .map(|c| Dopr::new(c.to_vec(), n).unwrap())
                .collect(),
            params,
        )
        .unwrap()
    }

    #[test]
    fn clique_set_matrix_diagonal_is_weight() {
        let a = set(&[&[1, 3, 9]], 13);
        let b = set(&[&[2, 5, 6]], 13);
        let m = CliqueSetMatrix::build(&[a, b], 2).unwrap();
        assert_eq!(m.raw[0][0], 3);
        assert_eq!(m.raw[1][1], 3);
        assert!(!m.normalized[0][0]);
        assert_eq!(m.raw[0][1], m.raw[1][0]);
    }

    #[test]
    fn select_family_single_and_pair() {
        let a = set(&[&[1, 3, 9]], 13);
        let fam = select_family(vec![a.clone()], 1).unwrap();
        assert_eq!(fam.sets.len(), 1);
        let b = set(&[&[2, 4, 7]], 13);
        let bf =
            correlation::crosscorr_bruteforce(&a.codes[0].to_binary(), &b.codes[0].to_binary())
                .unwrap();
        assert_eq!(bf.lambda_cxy, 2);
        assert_eq!(interset_crosscorr(&a, &b).unwrap(), 2);
        let fam = select_family(vec![a.clone(), b], 1).unwrap();
        assert_eq!(fam.sets.len(), 2);
        assert_eq!(fam.interset_lambda, Some(2));
        // a pair above lambda_c + 1 is never selected together
        let c = set(&[&[1, 3, 9]], 13);
        let fam = select_family(vec![a, c], 1).unwrap();
        assert_eq!(fam.sets.len(), 1);
    }

    #[test]
    fn verify_maximality_against_pool() {
        let pool = vec![
            Dopr::new(vec![1, 2, 4], 7).unwrap(),
            Dopr::new(vec![2, 1, 4], 7).unwrap(),
        ];
        // the two planar codes at n = 7 always collide, so each alone is maximal
        let a = set(&[&[1, 2, 4]], 7);
        assert!(verify_maximality(&a, &pool));
        let params = CodeParams::new(25, 3, 1, 1).unwrap();
        let lone = CliqueSet::new(vec![Dopr::new(vec![1, 3, 21], 25).unwrap()], params).unwrap();
        let pool25 = vec![
            Dopr::new(vec![1, 3, 21], 25).unwrap(),
            Dopr::new(vec![5, 6, 14], 25).unwrap(),
        ];
        assert_eq!(
            correlation::crosscorr_edop(&edop_full(&pool25[0]), &edop_full(&pool25[1])).lambda_cxy
                <= 1,
            !verify_maximality(&lone, &pool25)
        );
    }
}
