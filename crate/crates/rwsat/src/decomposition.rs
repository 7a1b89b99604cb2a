//! Branch-decompositions of signed graphs under the signed cut-rank
//! measure.
//!
//! A branch-decomposition is a rooted binary tree whose leaves are in
//! bijection with the graph vertices. Every node induces a cut (the
//! vertices below it against the rest); the cut's cost per sign is the
//! GF(2) rank of the bipartite adjacency submatrix it induces, and the
//! signed width of the tree is the maximum over nodes of the sum of
//! the two ranks.

use crate::formula::{Sign, SignedGraph, VertexKind};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DecompositionError {
    #[error("decomposition syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown leaf {label:?}")]
    UnknownLeaf { label: String },
    #[error("duplicate leaf {label:?}")]
    DuplicateLeaf { label: String },
    #[error("decomposition covers {found} vertices, graph has {expected}")]
    LeafSetMismatch { found: usize, expected: usize },
    #[error("graph has {n} vertices, exhaustive search is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("cannot decompose an empty graph")]
    EmptyGraph,
    #[error("malformed decomposition tree: {0}")]
    Malformed(String),
}

// --- vertex-set bitsets -------------------------------------------------

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

pub(crate) fn set_bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

pub(crate) fn get_bit(set: &[u64], i: usize) -> bool {
    (set[i / 64] >> (i % 64)) & 1 == 1
}

fn iter_bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * 64 + b)
        })
    })
}

fn first_set(row: &[u64]) -> Option<usize> {
    row.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn xor_assign(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

/// Incremental GF(2) row basis over wide bitset rows.
#[derive(Clone, Default)]
struct WideBasis {
    rows: Vec<(Vec<u64>, usize)>, // (row, pivot)
}

impl WideBasis {
    /// Reduce and keep the row if independent; report whether kept.
    fn insert(&mut self, mut row: Vec<u64>) -> bool {
        for (r, pivot) in &self.rows {
            if get_bit(&row, *pivot) {
                xor_assign(&mut row, r);
            }
        }
        match first_set(&row) {
            Some(pivot) => {
                self.rows.push((row, pivot));
                true
            }
            None => false,
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn neighbor_row(g: &SignedGraph, sign: Sign, v: u32, mask: &[u64]) -> Vec<u64> {
    let mut row = vec![0u64; mask.len()];
    for &u in g.neighbors(sign, v) {
        if get_bit(mask, u as usize) {
            set_bit(&mut row, u as usize);
        }
    }
    row
}

/// Rank of the adjacency submatrix between the vertices of `side` and
/// the vertices of `against`, in one sign.
fn cut_rank_masked(g: &SignedGraph, sign: Sign, side: &[u64], against: &[u64]) -> usize {
    let mut basis = WideBasis::default();
    for v in iter_bits(side) {
        basis.insert(neighbor_row(g, sign, v as u32, against));
    }
    basis.rank()
}

/// GF(2) rank of the cut between `side` and the rest of the graph, in
/// one sign.
pub fn cut_rank(g: &SignedGraph, sign: Sign, side: &[u64]) -> usize {
    let mut against = vec![u64::MAX; words_for(g.n())];
    if g.n() % 64 != 0 {
        *against.last_mut().unwrap() = (1u64 << (g.n() % 64)) - 1;
    }
    for (w, s) in against.iter_mut().zip(side) {
        *w &= !s;
    }
    cut_rank_masked(g, sign, side, &against)
}

/// Positive and negative cut-ranks of one side.
pub fn signed_cut_rank(g: &SignedGraph, side: &[u64]) -> (usize, usize) {
    (cut_rank(g, Sign::Pos, side), cut_rank(g, Sign::Neg, side))
}

fn singleton_rank(g: &SignedGraph, v: u32) -> (usize, usize) {
    let pos = usize::from(!g.neighbors(Sign::Pos, v).is_empty());
    let neg = usize::from(!g.neighbors(Sign::Neg, v).is_empty());
    (pos, neg)
}

// --- decomposition trees ------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DecompNode {
    Leaf(u32),
    Internal(usize, usize),
}

/// A rooted binary tree over the graph vertices. Node ids index an
/// arena; children always have smaller ids than their parent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BranchDecomposition {
    nodes: Vec<DecompNode>,
    root: usize,
}

impl BranchDecomposition {
    pub fn new() -> Self {
        BranchDecomposition { nodes: Vec::new(), root: 0 }
    }

    pub fn add_leaf(&mut self, vertex: u32) -> usize {
        self.nodes.push(DecompNode::Leaf(vertex));
        self.root = self.nodes.len() - 1;
        self.root
    }

    pub fn add_internal(&mut self, left: usize, right: usize) -> usize {
        assert!(left < self.nodes.len() && right < self.nodes.len() && left != right);
        self.nodes.push(DecompNode::Internal(left, right));
        self.root = self.nodes.len() - 1;
        self.root
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn set_root(&mut self, id: usize) {
        assert!(id < self.nodes.len());
        self.root = id;
    }

    pub fn node(&self, id: usize) -> DecompNode {
        self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node ids with children before parents, root last.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            match self.nodes[id] {
                DecompNode::Leaf(_) => out.push(id),
                DecompNode::Internal(l, r) => {
                    if expanded {
                        out.push(id);
                    } else {
                        stack.push((id, true));
                        stack.push((r, false));
                        stack.push((l, false));
                    }
                }
            }
        }
        out
    }

    pub fn leaf_vertices(&self) -> Vec<u32> {
        self.postorder()
            .into_iter()
            .filter_map(|id| match self.nodes[id] {
                DecompNode::Leaf(v) => Some(v),
                DecompNode::Internal(..) => None,
            })
            .collect()
    }

    /// Bitset of graph vertices below each node.
    pub fn below_sets(&self, n: usize) -> Vec<Vec<u64>> {
        let words = words_for(n);
        let mut below = vec![Vec::new(); self.nodes.len()];
        for id in self.postorder() {
            let mut set = vec![0u64; words];
            match self.nodes[id] {
                DecompNode::Leaf(v) => set_bit(&mut set, v as usize),
                DecompNode::Internal(l, r) => {
                    set.copy_from_slice(&below[l]);
                    xor_assign(&mut set, &below[r]);
                }
            }
            below[id] = set;
        }
        below
    }

    /// Check tree shape and that the leaves are exactly the graph's
    /// vertex set.
    pub fn validate(&self, g: &SignedGraph) -> Result<(), DecompositionError> {
        if self.nodes.is_empty() {
            return if g.n() == 0 {
                Ok(())
            } else {
                Err(DecompositionError::LeafSetMismatch { found: 0, expected: g.n() })
            };
        }
        if self.root >= self.nodes.len() {
            return Err(DecompositionError::Malformed("root out of range".into()));
        }
        let mut visits = vec![0usize; self.nodes.len()];
        let mut seen = vec![false; g.n()];
        let mut leaves = 0usize;
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            visits[id] += 1;
            if visits[id] > 1 {
                return Err(DecompositionError::Malformed(format!("node {id} reached twice")));
            }
            match self.nodes[id] {
                DecompNode::Leaf(v) => {
                    if (v as usize) >= g.n() {
                        return Err(DecompositionError::Malformed(format!(
                            "leaf vertex {v} out of range"
                        )));
                    }
                    if seen[v as usize] {
                        return Err(DecompositionError::DuplicateLeaf {
                            label: vertex_label(g.kind(v)),
                        });
                    }
                    seen[v as usize] = true;
                    leaves += 1;
                }
                DecompNode::Internal(l, r) => {
                    if l >= self.nodes.len() || r >= self.nodes.len() {
                        return Err(DecompositionError::Malformed("child out of range".into()));
                    }
                    stack.push(l);
                    stack.push(r);
                }
            }
        }
        if visits.iter().any(|&c| c == 0) {
            return Err(DecompositionError::Malformed("unreachable node".into()));
        }
        if leaves != g.n() {
            return Err(DecompositionError::LeafSetMismatch { found: leaves, expected: g.n() });
        }
        Ok(())
    }
}

impl Default for BranchDecomposition {
    fn default() -> Self {
        Self::new()
    }
}

/// Per-sign and combined widths of a decomposition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WidthReport {
    pub t_pos: usize,
    pub t_neg: usize,
    /// Maximum over cuts of the sum of the two ranks; this can be
    /// smaller than `t_pos + t_neg` when the maxima sit on different
    /// cuts.
    pub signed: usize,
}

/// Evaluate all cuts of a decomposition.
pub fn width(d: &BranchDecomposition, g: &SignedGraph) -> Result<WidthReport, DecompositionError> {
    d.validate(g)?;
    let below = d.below_sets(g.n());
    let mut report = WidthReport { t_pos: 0, t_neg: 0, signed: 0 };
    for id in d.postorder() {
        if id == d.root() {
            continue;
        }
        let (p, n) = signed_cut_rank(g, &below[id]);
        report.t_pos = report.t_pos.max(p);
        report.t_neg = report.t_neg.max(n);
        report.signed = report.signed.max(p + n);
    }
    Ok(report)
}

// --- exhaustive search --------------------------------------------------

/// Optimal decomposition by enumerating leaf-labeled cubic trees with
/// iterative leaf insertion, pruned against the best signed width seen
/// so far. `cap` bounds the vertex count; the candidate space grows as
/// (2n-5)!!.
pub fn exact_decomposition(
    g: &SignedGraph,
    cap: usize,
) -> Result<(BranchDecomposition, WidthReport), DecompositionError> {
    let n = g.n();
    if n == 0 {
        return Err(DecompositionError::EmptyGraph);
    }
    if n > cap {
        return Err(DecompositionError::TooLarge { n, cap });
    }
    let (seed_d, seed_w) = heuristic_decomposition(g);
    if n <= 3 {
        // a single tree shape exists
        return Ok((seed_d, seed_w));
    }
    let lower = (0..n as u32).map(|v| { let (p, q) = singleton_rank(g, v); p + q }).max().unwrap();
    if seed_w.signed <= lower {
        return Ok((seed_d, seed_w));
    }

    let mut search = TreeSearch {
        g,
        adj: vec![vec![3], vec![3], vec![3], vec![0, 1, 2]],
        leaf_vertex: vec![Some(0), Some(1), Some(2), None],
        edges: vec![(0, 3), (1, 3), (2, 3)],
        best_signed: seed_w.signed,
        best: None,
        lower,
        done: false,
    };
    search.grow(3);
    match search.best {
        Some(tree) => {
            let w = width(&tree, g).expect("search produced a valid tree");
            Ok((tree, w))
        }
        None => Ok((seed_d, seed_w)),
    }
}

struct TreeSearch<'a> {
    g: &'a SignedGraph,
    adj: Vec<Vec<usize>>,
    leaf_vertex: Vec<Option<u32>>,
    edges: Vec<(usize, usize)>,
    best_signed: usize,
    best: Option<BranchDecomposition>,
    lower: usize,
    done: bool,
}

impl<'a> TreeSearch<'a> {
    fn grow(&mut self, placed: usize) {
        if self.done || self.partial_width(placed) >= self.best_signed {
            return;
        }
        if placed == self.g.n() {
            self.best_signed = self.partial_width(placed);
            self.best = Some(self.to_rooted());
            if self.best_signed <= self.lower {
                self.done = true;
            }
            return;
        }
        for idx in 0..self.edges.len() {
            self.insert_leaf(placed as u32, idx);
            self.grow(placed + 1);
            self.remove_leaf(idx);
            if self.done {
                return;
            }
        }
    }

    fn insert_leaf(&mut self, vertex: u32, edge_idx: usize) {
        let (a, b) = self.edges[edge_idx];
        let mid = self.adj.len();
        let leaf = mid + 1;
        self.adj.push(vec![a, b, leaf]);
        self.adj.push(vec![mid]);
        self.leaf_vertex.push(None);
        self.leaf_vertex.push(Some(vertex));
        replace(&mut self.adj[a], b, mid);
        replace(&mut self.adj[b], a, mid);
        self.edges[edge_idx] = (a, mid);
        self.edges.push((mid, b));
        self.edges.push((mid, leaf));
    }

    fn remove_leaf(&mut self, edge_idx: usize) {
        self.edges.pop();
        let (mid, b) = self.edges.pop().unwrap();
        let (a, _) = self.edges[edge_idx];
        self.edges[edge_idx] = (a, b);
        replace(&mut self.adj[a], mid, b);
        replace(&mut self.adj[b], mid, a);
        self.adj.pop();
        self.adj.pop();
        self.leaf_vertex.pop();
        self.leaf_vertex.pop();
    }

    /// Signed width of the partial tree against the subgraph induced
    /// by the placed vertices; a lower bound for every completion.
    fn partial_width(&self, placed: usize) -> usize {
        let words = words_for(self.g.n());
        let mut placed_mask = vec![0u64; words];
        for v in 0..placed {
            set_bit(&mut placed_mask, v);
        }
        let mut worst = 0;
        for &(u, v) in &self.edges {
            let mut side = vec![0u64; words];
            self.collect_side(u, v, &mut side);
            let mut against = placed_mask.clone();
            for (w, s) in against.iter_mut().zip(&side) {
                *w &= !s;
            }
            let p = cut_rank_masked(self.g, Sign::Pos, &side, &against);
            let q = cut_rank_masked(self.g, Sign::Neg, &side, &against);
            worst = worst.max(p + q);
            if worst >= self.best_signed {
                return worst;
            }
        }
        worst
    }

    fn collect_side(&self, at: usize, from: usize, side: &mut [u64]) {
        if let Some(v) = self.leaf_vertex[at] {
            set_bit(side, v as usize);
        }
        for &next in &self.adj[at] {
            if next != from {
                self.collect_side(next, at, side);
            }
        }
    }

    /// Root the unrooted tree by splitting the tree edge at the leaf
    /// of vertex 0.
    fn to_rooted(&self) -> BranchDecomposition {
        let mut d = BranchDecomposition::new();
        let leaf0 = self
            .leaf_vertex
            .iter()
            .position(|v| *v == Some(0))
            .expect("vertex 0 is always placed");
        let anchor = self.adj[leaf0][0];
        let left = d.add_leaf(0);
        let right = self.build_rooted(&mut d, anchor, leaf0);
        d.add_internal(left, right);
        d
    }

    fn build_rooted(&self, d: &mut BranchDecomposition, at: usize, from: usize) -> usize {
        if let Some(v) = self.leaf_vertex[at] {
            return d.add_leaf(v);
        }
        let kids: Vec<usize> = self.adj[at].iter().copied().filter(|&x| x != from).collect();
        debug_assert_eq!(kids.len(), 2);
        let l = self.build_rooted(d, kids[0], at);
        let r = self.build_rooted(d, kids[1], at);
        d.add_internal(l, r)
    }
}

fn replace(list: &mut [usize], old: usize, new: usize) {
    let slot = list.iter_mut().find(|x| **x == old).expect("tree adjacency out of sync");
    *slot = new;
}

// --- greedy heuristic ---------------------------------------------------

const LOCAL_SEARCH_MAX_N: usize = 256;
const LOCAL_SEARCH_SWEEPS: usize = 3;

/// Greedy vertex ordering realized as a caterpillar tree. Each step
/// appends the vertex that keeps the signed cut-rank of the growing
/// prefix smallest, scanning the neighbors of the prefix first and
/// breaking ties toward the smallest vertex id. A bounded pass of
/// adjacent-position swaps then shakes out easy improvements. No
/// optimality guarantee; deterministic for a fixed input.
pub fn heuristic_decomposition(g: &SignedGraph) -> (BranchDecomposition, WidthReport) {
    let n = g.n();
    assert!(n > 0, "cannot decompose an empty graph");
    let (mut order, prefix_maxima) = greedy_order(g);
    if n <= LOCAL_SEARCH_MAX_N {
        local_search(g, &mut order);
        let d = caterpillar(&order);
        let w = width(&d, g).expect("caterpillar over all vertices is valid");
        return (d, w);
    }
    // A caterpillar's cuts are exactly the greedy prefixes plus the
    // singleton leaf cuts, so the width folds from ranks the greedy
    // pass already computed — rescanning every cut would be quadratic
    // in the graph size per cut.
    let mut w = prefix_maxima;
    for v in 0..n as u32 {
        let (p, q) = singleton_rank(g, v);
        w.t_pos = w.t_pos.max(p);
        w.t_neg = w.t_neg.max(q);
        w.signed = w.signed.max(p + q);
    }
    (caterpillar(&order), w)
}

/// Basis rows of the cut between a prefix and its complement, per sign.
#[derive(Clone, Default)]
struct PrefixCut {
    pos: Vec<Vec<u64>>,
    neg: Vec<Vec<u64>>,
}

impl PrefixCut {
    /// Extend the prefix by `v`; rows get re-reduced against the new,
    /// smaller complement. Returns the new rank pair.
    fn extend(&mut self, g: &SignedGraph, v: u32, new_against: &[u64]) -> (usize, usize) {
        let mut ranks = (0, 0);
        for sign in Sign::BOTH {
            let rows = match sign {
                Sign::Pos => &mut self.pos,
                Sign::Neg => &mut self.neg,
            };
            let mut basis = WideBasis::default();
            for row in rows.drain(..) {
                let mut masked = row;
                for (w, m) in masked.iter_mut().zip(new_against) {
                    *w &= m;
                }
                basis.insert(masked);
            }
            basis.insert(neighbor_row(g, sign, v, new_against));
            let rank = basis.rank();
            *rows = basis.rows.into_iter().map(|(r, _)| r).collect();
            match sign {
                Sign::Pos => ranks.0 = rank,
                Sign::Neg => ranks.1 = rank,
            }
        }
        ranks
    }
}

/// At most this many frontier candidates get a trial rank per step;
/// scanning an unbounded frontier makes dense graphs quadratic in the
/// candidate count alone.
const GREEDY_SCAN_CAP: usize = 64;

/// Prefix-cut basis in one sign, laid out over "support" columns: the
/// complement vertices adjacent to some basis representative, numbered
/// in first-seen order. Row width therefore tracks representative
/// degrees, not graph size. `col_of` is a caller-owned scratch map from
/// vertex to column, `u32::MAX` when unmapped; `clear_columns` must be
/// called before the map is reused for another basis.
struct SupportBasis {
    support: Vec<u32>,
    words: usize,
    rows: Vec<Vec<u64>>,
    kept: Vec<u32>,
}

impl SupportBasis {
    /// Echelonize the cut rows of `cands` (ascending vertex order, so
    /// the kept set is the lexicographically first basis) against the
    /// complement `!placed`.
    fn build(g: &SignedGraph, sign: Sign, cands: &[u32], placed: &[bool], col_of: &mut [u32]) -> Self {
        let mut support = Vec::new();
        for &r in cands {
            for &u in g.neighbors(sign, r) {
                if !placed[u as usize] && col_of[u as usize] == u32::MAX {
                    col_of[u as usize] = support.len() as u32;
                    support.push(u);
                }
            }
        }
        let words = words_for(support.len());
        let mut basis = WideBasis::default();
        let mut kept = Vec::new();
        for &r in cands {
            let mut row = vec![0u64; words];
            for &u in g.neighbors(sign, r) {
                if !placed[u as usize] {
                    set_bit(&mut row, col_of[u as usize] as usize);
                }
            }
            if basis.insert(row) {
                kept.push(r);
            }
        }
        let rows = basis.rows.into_iter().map(|(r, _)| r).collect();
        SupportBasis { support, words, rows, kept }
    }

    /// Rank of the cut if unplaced `v` joined the prefix: the basis
    /// rows lose column `v`, and `v`'s own row (over the remaining
    /// complement) joins them. A neighbor of `v` outside the support is
    /// a column every basis row is zero in, so it makes `v`'s row
    /// independent without being materialized.
    fn trial(&self, g: &SignedGraph, sign: Sign, v: u32, placed: &[bool], col_of: &[u32]) -> usize {
        let vcol = col_of[v as usize];
        let mut extra = false;
        let mut row = vec![0u64; self.words];
        for &u in g.neighbors(sign, v) {
            if placed[u as usize] {
                continue;
            }
            let c = col_of[u as usize];
            if c == u32::MAX {
                extra = true;
            } else {
                set_bit(&mut row, c as usize);
            }
        }
        let mut basis = WideBasis::default();
        for r in &self.rows {
            let mut masked = r.clone();
            if vcol != u32::MAX {
                masked[vcol as usize / 64] &= !(1u64 << (vcol % 64));
            }
            basis.insert(masked);
        }
        let mut rank = basis.rank();
        if extra {
            rank += 1;
        } else {
            rank += usize::from(basis.insert(row));
        }
        rank
    }

    fn clear_columns(&self, col_of: &mut [u32]) {
        for &u in &self.support {
            col_of[u as usize] = u32::MAX;
        }
    }
}

fn greedy_order(g: &SignedGraph) -> (Vec<u32>, WidthReport) {
    let n = g.n();
    let mut maxima = WidthReport { t_pos: 0, t_neg: 0, signed: 0 };
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut frontier: BTreeSet<u32> = BTreeSet::new();
    // Cut-basis representatives of the prefix, per sign, ascending.
    // Every prefix vertex's cut row is a combination of theirs, the
    // same propagation invariant the parse-tree construction uses.
    let mut reps: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    let mut col_of: [Vec<u32>; 2] = [vec![u32::MAX; n], vec![u32::MAX; n]];

    for _ in 0..n {
        let bases = [
            SupportBasis::build(g, Sign::Pos, &reps[0], &placed, &mut col_of[0]),
            SupportBasis::build(g, Sign::Neg, &reps[1], &placed, &mut col_of[1]),
        ];
        let mut best: Option<(usize, u32)> = None;
        let candidates: Vec<u32> = if frontier.is_empty() {
            (0..n as u32).filter(|&v| !placed[v as usize]).take(GREEDY_SCAN_CAP).collect()
        } else {
            frontier.iter().copied().take(GREEDY_SCAN_CAP).collect()
        };
        for v in candidates {
            let rank = bases[0].trial(g, Sign::Pos, v, &placed, &col_of[0])
                + bases[1].trial(g, Sign::Neg, v, &placed, &col_of[1]);
            if best.map_or(true, |(r, u)| rank < r || (rank == r && v < u)) {
                best = Some((rank, v));
            }
        }
        let (_, v) = best.expect("some vertex remains");
        for si in 0..2 {
            bases[si].clear_columns(&mut col_of[si]);
        }
        placed[v as usize] = true;
        frontier.remove(&v);
        for sign in Sign::BOTH {
            for &u in g.neighbors(sign, v) {
                if !placed[u as usize] {
                    frontier.insert(u);
                }
            }
        }
        order.push(v);
        let mut ranks = [0usize; 2];
        for (si, sign) in Sign::BOTH.into_iter().enumerate() {
            let mut cands = reps[si].clone();
            let at = cands.binary_search(&v).expect_err("an unplaced vertex is never a rep");
            cands.insert(at, v);
            let base = SupportBasis::build(g, sign, &cands, &placed, &mut col_of[si]);
            ranks[si] = base.rows.len();
            base.clear_columns(&mut col_of[si]);
            reps[si] = base.kept;
        }
        maxima.t_pos = maxima.t_pos.max(ranks[0]);
        maxima.t_neg = maxima.t_neg.max(ranks[1]);
        maxima.signed = maxima.signed.max(ranks[0] + ranks[1]);
    }
    (order, maxima)
}

/// Adjacent-position swap sweeps. A swap at position i changes exactly
/// one prefix cut (the first i+1 vertices); it is accepted when the
/// (signed width, number of width-attaining cuts) pair strictly
/// improves.
fn local_search(g: &SignedGraph, order: &mut [u32]) {
    let n = order.len();
    if n < 3 {
        return;
    }
    let words = words_for(g.n());
    let singleton: Vec<usize> =
        (0..n).map(|i| { let (p, q) = singleton_rank(g, order[i]); p + q }).collect();

    let prefix_ranks = |order: &[u32]| -> Vec<usize> {
        let mut against = vec![u64::MAX; words];
        if g.n() % 64 != 0 {
            against[words - 1] = (1u64 << (g.n() % 64)) - 1;
        }
        let mut cut = PrefixCut::default();
        let mut out = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            against[v as usize / 64] &= !(1u64 << (v % 64));
            let (p, q) = cut.extend(g, v, &against);
            out[i] = p + q; // rank of the prefix ending at position i
        }
        out
    };

    let metric = |ranks: &[usize]| -> (usize, usize) {
        // cuts of the caterpillar: every singleton, plus prefixes of
        // sizes 2..n-1 (positions 1..n-2)
        let mut width = 0;
        for &s in &singleton {
            width = width.max(s);
        }
        for i in 1..n - 1 {
            width = width.max(ranks[i]);
        }
        let attains = singleton.iter().filter(|&&s| s == width).count()
            + (1..n - 1).filter(|&i| ranks[i] == width).count();
        (width, attains)
    };

    for _ in 0..LOCAL_SEARCH_SWEEPS {
        let mut ranks = prefix_ranks(order);
        let mut improved = false;
        for i in 1..n - 1 {
            // swapping positions i and i+1 re-routes prefix i only
            let mut trial = order.to_vec();
            trial.swap(i, i + 1);
            let trial_ranks = prefix_ranks(&trial);
            let old = metric(&ranks);
            let new = metric(&trial_ranks);
            if new < old {
                order.copy_from_slice(&trial);
                ranks = trial_ranks;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
}

fn caterpillar(order: &[u32]) -> BranchDecomposition {
    let mut d = BranchDecomposition::new();
    let mut spine = d.add_leaf(order[0]);
    for &v in &order[1..] {
        let leaf = d.add_leaf(v);
        spine = d.add_internal(spine, leaf);
    }
    d
}

// --- text format ---------------------------------------------------------

fn vertex_label(kind: VertexKind) -> String {
    match kind {
        VertexKind::Variable(k) => format!("v{k}"),
        VertexKind::Clause(k) => format!("c{k}"),
    }
}

/// Serialize as nested pairs, e.g. `((v1,c1),(v2,c2))`. Leaves are
/// `v<k>` for variables and `c<k>` for clauses, both 1-based.
pub fn write_decomposition(d: &BranchDecomposition, g: &SignedGraph) -> String {
    fn emit(d: &BranchDecomposition, g: &SignedGraph, id: usize, out: &mut String) {
        match d.node(id) {
            DecompNode::Leaf(v) => out.push_str(&vertex_label(g.kind(v))),
            DecompNode::Internal(l, r) => {
                out.push('(');
                emit(d, g, l, out);
                out.push(',');
                emit(d, g, r, out);
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    emit(d, g, d.root(), &mut out);
    out.push('\n');
    out
}

/// Parse the nested-pair format; whitespace is insignificant. The
/// leaves must be exactly the vertices of `g`.
pub fn read_decomposition(text: &str, g: &SignedGraph) -> Result<BranchDecomposition, DecompositionError> {
    let mut labels = std::collections::HashMap::new();
    for v in 0..g.n() as u32 {
        labels.insert(vertex_label(g.kind(v)), v);
    }
    let bytes: Vec<char> = text.chars().collect();
    let mut parser = DecompParser {
        chars: &bytes,
        pos: 0,
        labels,
        seen: vec![false; g.n()],
        tree: BranchDecomposition::new(),
    };
    parser.skip_ws();
    let root = parser.parse_tree()?;
    parser.skip_ws();
    if parser.pos != parser.chars.len() {
        return Err(DecompositionError::Syntax {
            pos: parser.pos,
            message: "trailing input after decomposition".into(),
        });
    }
    let found = parser.seen.iter().filter(|&&s| s).count();
    if found != g.n() {
        return Err(DecompositionError::LeafSetMismatch { found, expected: g.n() });
    }
    parser.tree.set_root(root);
    Ok(parser.tree)
}

struct DecompParser<'a> {
    chars: &'a [char],
    pos: usize,
    labels: std::collections::HashMap<String, u32>,
    seen: Vec<bool>,
    tree: BranchDecomposition,
}

impl<'a> DecompParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), DecompositionError> {
        self.skip_ws();
        if self.pos < self.chars.len() && self.chars[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(DecompositionError::Syntax {
                pos: self.pos,
                message: format!("expected {c:?}"),
            })
        }
    }

    fn parse_tree(&mut self) -> Result<usize, DecompositionError> {
        self.skip_ws();
        match self.chars.get(self.pos) {
            Some('(') => {
                self.pos += 1;
                let left = self.parse_tree()?;
                self.expect(',')?;
                let right = self.parse_tree()?;
                self.expect(')')?;
                Ok(self.tree.add_internal(left, right))
            }
            Some(c) if c.is_ascii_alphabetic() => self.parse_leaf(),
            _ => Err(DecompositionError::Syntax {
                pos: self.pos,
                message: "expected '(' or a leaf label".into(),
            }),
        }
    }

    fn parse_leaf(&mut self) -> Result<usize, DecompositionError> {
        let start = self.pos;
        self.pos += 1; // the kind letter
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let label: String = self.chars[start..self.pos].iter().collect();
        let vertex = *self
            .labels
            .get(&label)
            .ok_or_else(|| DecompositionError::UnknownLeaf { label: label.clone() })?;
        if self.seen[vertex as usize] {
            return Err(DecompositionError::DuplicateLeaf { label });
        }
        self.seen[vertex as usize] = true;
        Ok(self.tree.add_leaf(vertex))
    }
}
