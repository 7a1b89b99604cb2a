//! Algebraic parse trees over branch-decompositions.
//!
//! Each vertex carries one label vector per sign. A leaf introduces
//! its vertex with label e1; an internal node joins two evaluated
//! parts, adding an edge between u (left) and v (right) in a sign
//! exactly when `lab(u) * G^T * lab(v)^T = 1` for that sign's cross
//! matrix G, and then relabels both parts (`lab * F1` on the left,
//! `lab * F2` on the right). A tree built from a decomposition by
//! [`build_parse_tree`] regenerates the original graph exactly, which
//! [`verify_parse_tree`] checks.
//!
//! The construction picks, for every node, representative vertices
//! whose cut rows form a basis of the node's cut matrix (scanning
//! candidates inherited from the children in vertex order), makes
//! labels the coordinates of a vertex's cut row in that basis, and
//! reads the relabeling and cross matrices off those coordinates.

use crate::decomposition::{words_for, BranchDecomposition, DecompNode, WidthReport};
use crate::formula::{Sign, SignedGraph, VertexKind};
use crate::gf2::BitMatrix;
use std::collections::HashMap;
use std::fmt::Write as _;

/// Per-sign matrices of an internal node: left and right relabelings
/// and the cross matrix deciding new edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignOps {
    pub f1: BitMatrix,
    pub f2: BitMatrix,
    pub g: BitMatrix,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelabelOps {
    pub pos: SignOps,
    pub neg: SignOps,
}

impl RelabelOps {
    pub fn side(&self, sign: Sign) -> &SignOps {
        match sign {
            Sign::Pos => &self.pos,
            Sign::Neg => &self.neg,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PtNode {
    Leaf { vertex: u32, kind: VertexKind },
    Internal { left: usize, right: usize, ops: RelabelOps },
}

/// A parse tree with one label dimension per sign. Node ids mirror the
/// decomposition the tree was built from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedParseTree {
    pub t_pos: usize,
    pub t_neg: usize,
    nodes: Vec<PtNode>,
    root: usize,
}

impl SignedParseTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> &PtNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn width(&self, sign: Sign) -> usize {
        match sign {
            Sign::Pos => self.t_pos,
            Sign::Neg => self.t_neg,
        }
    }

    /// Node ids with children before parents, root last.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            match &self.nodes[id] {
                PtNode::Leaf { .. } => out.push(id),
                PtNode::Internal { left, right, .. } => {
                    if expanded {
                        out.push(id);
                    } else {
                        stack.push((id, true));
                        stack.push((*right, false));
                        stack.push((*left, false));
                    }
                }
            }
        }
        out
    }

    pub fn leaves(&self) -> Vec<(u32, VertexKind)> {
        self.postorder()
            .into_iter()
            .filter_map(|id| match &self.nodes[id] {
                PtNode::Leaf { vertex, kind } => Some((*vertex, *kind)),
                PtNode::Internal { .. } => None,
            })
            .collect()
    }

    pub fn num_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, PtNode::Leaf { .. })).count()
    }

    pub fn num_clause_leaves(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, PtNode::Leaf { kind: VertexKind::Clause(_), .. }))
            .count()
    }

    /// True iff the leaves are exactly the vertices of `g` with
    /// matching kinds.
    pub fn matches_graph(&self, g: &SignedGraph) -> bool {
        let leaves = self.leaves();
        if leaves.len() != g.n() {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for (v, kind) in leaves {
            if v as usize >= g.n() || seen[v as usize] || g.kind(v) != kind {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    /// Indented description of every node's matrices, row-major bit
    /// strings, for debugging.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "parse tree: t+={} t-={}", self.t_pos, self.t_neg);
        self.dump_node(self.root, 1, &mut out);
        out
    }

    fn dump_node(&self, id: usize, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match &self.nodes[id] {
            PtNode::Leaf { vertex, kind } => {
                let _ = writeln!(out, "{pad}leaf {vertex} ({kind:?})");
            }
            PtNode::Internal { left, right, ops } => {
                let _ = writeln!(
                    out,
                    "{pad}node {id}: f1+={} f2+={} g+={} f1-={} f2-={} g-={}",
                    ops.pos.f1.bit_string(),
                    ops.pos.f2.bit_string(),
                    ops.pos.g.bit_string(),
                    ops.neg.f1.bit_string(),
                    ops.neg.f2.bit_string(),
                    ops.neg.g.bit_string(),
                );
                self.dump_node(*left, depth + 1, out);
                self.dump_node(*right, depth + 1, out);
            }
        }
    }
}

// --- construction ---------------------------------------------------------

/// Gaussian basis over wide rows that remembers, for every reduced
/// row, its expression in terms of the kept original rows.
#[derive(Default)]
struct CoordEchelon {
    rows: Vec<(Vec<u64>, u64, usize)>, // reduced row, combo over kept originals, pivot
}

impl CoordEchelon {
    fn reduce(&self, mut row: Vec<u64>, mut combo: u64) -> (Vec<u64>, u64) {
        for (r, c, pivot) in &self.rows {
            if crate::decomposition::get_bit(&row, *pivot) {
                for (a, b) in row.iter_mut().zip(r) {
                    *a ^= b;
                }
                combo ^= c;
            }
        }
        (row, combo)
    }

    /// Keep the row if independent of those already kept.
    fn insert(&mut self, row: Vec<u64>) -> bool {
        assert!(self.rows.len() < 64, "label dimensions above 64 are not supported");
        let seed = 1u64 << self.rows.len();
        let (row, combo) = self.reduce(row, seed);
        match row.iter().enumerate().find(|(_, &w)| w != 0) {
            Some((i, &w)) => {
                let pivot = i * 64 + w.trailing_zeros() as usize;
                self.rows.push((row, combo, pivot));
                true
            }
            None => false,
        }
    }

    /// Coordinates of `row` over the kept originals; the row must lie
    /// in their span.
    fn express(&self, row: Vec<u64>) -> u64 {
        let (row, combo) = self.reduce(row, 0);
        assert!(row.iter().all(|&w| w == 0), "row outside the representative span");
        combo
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

struct SignBuild {
    /// Representative vertices per node, in vertex order. Leaves
    /// always expose their own vertex; internal nodes expose the
    /// candidates whose cut rows were kept as basis rows.
    reps: Vec<Vec<u32>>,
    rank: Vec<usize>,
    // raw matrix rows (coordinate masks), one per child representative
    f1_rows: Vec<Vec<u64>>,
    f2_rows: Vec<Vec<u64>>,
    g_rows: Vec<Vec<u64>>,
}

/// Build the parse tree for a decomposition of `g`. The label
/// dimension per sign is the decomposition's width in that sign, and
/// evaluating the result reproduces `g` exactly.
pub fn build_parse_tree(d: &BranchDecomposition, g: &SignedGraph) -> SignedParseTree {
    build_parse_tree_with_widths(d, g).0
}

/// Like [`build_parse_tree`], but also report the decomposition's
/// width, which the construction measures anyway as the per-node basis
/// ranks. Reading it off here avoids a separate full-cut rescan when
/// the decomposition came from a file rather than a search.
pub fn build_parse_tree_with_widths(
    d: &BranchDecomposition,
    g: &SignedGraph,
) -> (SignedParseTree, WidthReport) {
    d.validate(g).expect("decomposition does not fit the graph");
    let n = g.n();
    assert!(n > 0, "cannot build a parse tree for an empty graph");
    let order = d.postorder();

    // The leaves under a node occupy one contiguous run of the
    // left-to-right leaf order, so "u lies outside the subtree" is an
    // interval test rather than a bitset probe.
    let mut lo = vec![u32::MAX; d.len()];
    let mut hi = vec![0u32; d.len()];
    let mut leaf_rank = vec![u32::MAX; n];
    let mut next_rank = 0u32;
    for &id in &order {
        match d.node(id) {
            DecompNode::Leaf(v) => {
                leaf_rank[v as usize] = next_rank;
                lo[id] = next_rank;
                hi[id] = next_rank;
                next_rank += 1;
            }
            DecompNode::Internal(l, r) => {
                lo[id] = lo[l].min(lo[r]);
                hi[id] = hi[l].max(hi[r]);
            }
        }
    }

    let mut sides = [
        SignBuild {
            reps: vec![Vec::new(); d.len()],
            rank: vec![0; d.len()],
            f1_rows: vec![Vec::new(); d.len()],
            f2_rows: vec![Vec::new(); d.len()],
            g_rows: vec![Vec::new(); d.len()],
        },
        SignBuild {
            reps: vec![Vec::new(); d.len()],
            rank: vec![0; d.len()],
            f1_rows: vec![Vec::new(); d.len()],
            f2_rows: vec![Vec::new(); d.len()],
            g_rows: vec![Vec::new(); d.len()],
        },
    ];

    // Scratch column map, cleared after each node: cut rows are laid
    // out over just the outside neighbors the node's candidates touch,
    // so row width tracks candidate degrees rather than graph size.
    let mut col_of = vec![u32::MAX; n];

    for &id in &order {
        let (node_lo, node_hi) = (lo[id], hi[id]);
        let outside = |u: u32| {
            let r = leaf_rank[u as usize];
            r < node_lo || r > node_hi
        };
        for (si, sign) in Sign::BOTH.into_iter().enumerate() {
            match d.node(id) {
                DecompNode::Leaf(v) => {
                    let side = &mut sides[si];
                    side.reps[id] = vec![v];
                    // A lone leaf's cut row is its whole neighborhood
                    // (the graph has no self-loops), so the rank is 1
                    // exactly when the vertex has an edge of this sign.
                    side.rank[id] = usize::from(!g.neighbors(sign, v).is_empty());
                }
                DecompNode::Internal(l, r) => {
                    let (left_reps, right_reps) = {
                        let side = &sides[si];
                        (side.reps[l].clone(), side.reps[r].clone())
                    };
                    // candidates in vertex order; their rows span every
                    // below-vertex's cut row
                    let mut candidates: Vec<u32> =
                        left_reps.iter().chain(right_reps.iter()).copied().collect();
                    candidates.sort_unstable();
                    let mut support: Vec<u32> = Vec::new();
                    for &v in &candidates {
                        for &u in g.neighbors(sign, v) {
                            if outside(u) && col_of[u as usize] == u32::MAX {
                                col_of[u as usize] = support.len() as u32;
                                support.push(u);
                            }
                        }
                    }
                    let words = words_for(support.len());
                    // Which independent subset is kept, and the unique
                    // coordinates of a row over it, do not depend on
                    // the column order, so first-seen numbering is as
                    // good as vertex order.
                    let row_of = |v: u32| -> Vec<u64> {
                        let mut row = vec![0u64; words];
                        for &u in g.neighbors(sign, v) {
                            if outside(u) {
                                crate::decomposition::set_bit(&mut row, col_of[u as usize] as usize);
                            }
                        }
                        row
                    };
                    let mut ech = CoordEchelon::default();
                    let mut kept = Vec::new();
                    for &v in &candidates {
                        if ech.insert(row_of(v)) {
                            kept.push(v);
                        }
                    }
                    let f1_rows: Vec<u64> =
                        left_reps.iter().map(|&v| ech.express(row_of(v))).collect();
                    let f2_rows: Vec<u64> =
                        right_reps.iter().map(|&v| ech.express(row_of(v))).collect();
                    // cross matrix row j: adjacency of right rep j to
                    // each left rep i, so that lab1 * G^T * lab2^T
                    // reproduces the bipartite adjacency
                    let g_rows: Vec<u64> = right_reps
                        .iter()
                        .map(|&rv| {
                            let mut bits = 0u64;
                            for (i, &lv) in left_reps.iter().enumerate() {
                                if g.has_edge(sign, lv, rv) {
                                    bits |= 1 << i;
                                }
                            }
                            bits
                        })
                        .collect();
                    for &u in &support {
                        col_of[u as usize] = u32::MAX;
                    }
                    let side = &mut sides[si];
                    side.rank[id] = ech.rank();
                    side.reps[id] = kept;
                    side.f1_rows[id] = f1_rows;
                    side.f2_rows[id] = f2_rows;
                    side.g_rows[id] = g_rows;
                }
            }
        }
    }

    let t_pos = sides[0].rank.iter().copied().max().unwrap_or(0);
    let t_neg = sides[1].rank.iter().copied().max().unwrap_or(0);
    let mut report = WidthReport { t_pos, t_neg, signed: 0 };
    for id in 0..d.len() {
        report.signed = report.signed.max(sides[0].rank[id] + sides[1].rank[id]);
    }

    let materialize = |rows: &[u64], t: usize| -> BitMatrix {
        let mut padded = Vec::with_capacity(t);
        for i in 0..t {
            padded.push(rows.get(i).copied().unwrap_or(0));
        }
        for (i, &r) in rows.iter().enumerate() {
            assert!(i < t || r == 0, "nonzero matrix row beyond the label dimension");
        }
        BitMatrix::from_row_bits(padded, t)
    };

    let nodes: Vec<PtNode> = (0..d.len())
        .map(|id| match d.node(id) {
            DecompNode::Leaf(v) => PtNode::Leaf { vertex: v, kind: g.kind(v) },
            DecompNode::Internal(l, r) => {
                let mut per_sign = Vec::with_capacity(2);
                for (si, t) in [(0, t_pos), (1, t_neg)] {
                    let side = &sides[si];
                    per_sign.push(SignOps {
                        f1: materialize(&side.f1_rows[id], t),
                        f2: materialize(&side.f2_rows[id], t),
                        g: materialize(&side.g_rows[id], t),
                    });
                }
                let neg = per_sign.pop().unwrap();
                let pos = per_sign.pop().unwrap();
                PtNode::Internal { left: l, right: r, ops: RelabelOps { pos, neg } }
            }
        })
        .collect();

    (SignedParseTree { t_pos, t_neg, nodes, root: d.root() }, report)
}

// --- evaluation -----------------------------------------------------------

fn mul_row(bits: u64, m: &BitMatrix) -> u64 {
    let mut acc = 0u64;
    let mut b = bits;
    while b != 0 {
        let i = b.trailing_zeros() as usize;
        acc ^= m.row_bits()[i];
        b &= b - 1;
    }
    acc
}

fn mul_row_transpose(bits: u64, m: &BitMatrix) -> u64 {
    let mut acc = 0u64;
    for (j, &row) in m.row_bits().iter().enumerate() {
        if (bits & row).count_ones() % 2 == 1 {
            acc |= 1 << j;
        }
    }
    acc
}

fn leaf_bits(t: usize) -> u64 {
    if t == 0 {
        0
    } else {
        1
    }
}

/// Replay the parse tree and return the graph it generates. Vertices
/// with equal label pairs are bucketed together, so the cost is the
/// number of generated edges plus bucket bookkeeping, not a full
/// pairwise scan.
pub fn evaluate_parse_tree(t: &SignedParseTree) -> SignedGraph {
    let leaves = t.leaves();
    let n = leaves.len();
    let mut kinds = vec![None; n];
    for &(v, kind) in &leaves {
        assert!((v as usize) < n && kinds[v as usize].is_none(), "leaf vertices must be 0..n");
        kinds[v as usize] = Some(kind);
    }
    let kinds: Vec<VertexKind> = kinds.into_iter().map(|k| k.unwrap()).collect();

    let mut pos_edges: Vec<(u32, u32)> = Vec::new();
    let mut neg_edges: Vec<(u32, u32)> = Vec::new();
    // label-pair class -> vertices, per evaluated subtree
    type ClassMap = HashMap<(u64, u64), Vec<u32>>;
    let mut done: Vec<Option<ClassMap>> = vec![None; t.len()];

    for id in t.postorder() {
        let map = match t.node(id) {
            PtNode::Leaf { vertex, .. } => {
                let mut m: ClassMap = HashMap::new();
                m.insert((leaf_bits(t.t_pos), leaf_bits(t.t_neg)), vec![*vertex]);
                m
            }
            PtNode::Internal { left, right, ops } => {
                let lm = done[*left].take().unwrap();
                let rm = done[*right].take().unwrap();
                for (lk, lvs) in &lm {
                    // u-side keys against the cross matrices
                    let up = mul_row_transpose(lk.0, &ops.pos.g);
                    let un = mul_row_transpose(lk.1, &ops.neg.g);
                    for (rk, rvs) in &rm {
                        let edge_pos = (up & rk.0).count_ones() % 2 == 1;
                        let edge_neg = (un & rk.1).count_ones() % 2 == 1;
                        if edge_pos || edge_neg {
                            for &u in lvs {
                                for &v in rvs {
                                    if edge_pos {
                                        pos_edges.push((u, v));
                                    }
                                    if edge_neg {
                                        neg_edges.push((u, v));
                                    }
                                }
                            }
                        }
                    }
                }
                let mut merged: ClassMap = HashMap::new();
                for (side, mut m) in [(&ops.pos.f1, &ops.neg.f1), (&ops.pos.f2, &ops.neg.f2)]
                    .into_iter()
                    .zip([lm, rm])
                {
                    for (k, mut vs) in m.drain() {
                        let nk = (mul_row(k.0, side.0), mul_row(k.1, side.1));
                        let slot = merged.entry(nk).or_default();
                        if slot.len() < vs.len() {
                            std::mem::swap(slot, &mut vs);
                        }
                        slot.append(&mut vs);
                    }
                }
                merged
            }
        };
        done[id] = Some(map);
    }

    SignedGraph::with_edges(kinds, &pos_edges, &neg_edges)
}

/// True iff replaying the tree reproduces `g` exactly (vertex kinds
/// and both edge sets).
pub fn verify_parse_tree(t: &SignedParseTree, g: &SignedGraph) -> bool {
    t.matches_graph(g) && evaluate_parse_tree(t) == *g
}

/// Labels of the vertices below a node, at that node: (vertex, label
/// bits per sign). Indexed by node id.
pub type NodeLabels = Vec<(u32, u64, u64)>;

/// Replay the tree keeping every intermediate labeling. Quadratic in
/// the worst case; meant for cross-checks on small instances.
pub fn evaluate_with_labels(t: &SignedParseTree) -> (SignedGraph, Vec<NodeLabels>) {
    let leaves = t.leaves();
    let n = leaves.len();
    let kinds: Vec<VertexKind> = {
        let mut ks = vec![None; n];
        for &(v, kind) in &leaves {
            ks[v as usize] = Some(kind);
        }
        ks.into_iter().map(|k| k.unwrap()).collect()
    };
    let mut labels: Vec<NodeLabels> = vec![Vec::new(); t.len()];
    let mut pos_edges = Vec::new();
    let mut neg_edges = Vec::new();

    for id in t.postorder() {
        match t.node(id) {
            PtNode::Leaf { vertex, .. } => {
                labels[id] = vec![(*vertex, leaf_bits(t.t_pos), leaf_bits(t.t_neg))];
            }
            PtNode::Internal { left, right, ops } => {
                let mut here = Vec::new();
                for &(u, lp, ln) in &labels[*left] {
                    let up = mul_row_transpose(lp, &ops.pos.g);
                    let un = mul_row_transpose(ln, &ops.neg.g);
                    for &(v, rp, rn) in &labels[*right] {
                        if (up & rp).count_ones() % 2 == 1 {
                            pos_edges.push((u, v));
                        }
                        if (un & rn).count_ones() % 2 == 1 {
                            neg_edges.push((u, v));
                        }
                    }
                }
                for &(u, lp, ln) in &labels[*left] {
                    here.push((u, mul_row(lp, &ops.pos.f1), mul_row(ln, &ops.neg.f1)));
                }
                for &(v, rp, rn) in &labels[*right] {
                    here.push((v, mul_row(rp, &ops.pos.f2), mul_row(rn, &ops.neg.f2)));
                }
                labels[id] = here;
            }
        }
    }

    (SignedGraph::with_edges(kinds, &pos_edges, &neg_edges), labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{exact_decomposition, heuristic_decomposition};
    use crate::families::{cycle_graph, random_signed_graph};
    use crate::formula::{build_signed_graph, parse_dimacs};

    fn tree_for(dimacs: &str) -> (SignedParseTree, SignedGraph) {
        let f = parse_dimacs(dimacs).unwrap().formula;
        let g = build_signed_graph(&f);
        let (d, _) = heuristic_decomposition(&g);
        (build_parse_tree(&d, &g), g)
    }

    #[test]
    fn single_positive_edge() {
        let (t, g) = tree_for("p cnf 1 1\n1 0\n");
        assert_eq!(t.t_pos, 1);
        assert_eq!(t.t_neg, 0);
        let root = match t.node(t.root()) {
            PtNode::Internal { ops, .. } => ops,
            PtNode::Leaf { .. } => panic!("root must be internal"),
        };
        assert_eq!(root.pos.g, BitMatrix::from_row_bits(vec![1], 1));
        assert!(root.neg.g.is_zero());
        assert_eq!(root.neg.g.nrows(), 0);
        assert!(verify_parse_tree(&t, &g));
    }

    #[test]
    fn five_cycle_round_trips_with_two_dimensional_labels() {
        let g = cycle_graph(5);
        let (d, w) = exact_decomposition(&g, 10).unwrap();
        assert_eq!(w.t_pos, 2);
        let t = build_parse_tree(&d, &g);
        assert_eq!(t.t_pos, 2);
        assert_eq!(t.t_neg, 0);
        assert!(verify_parse_tree(&t, &g));
    }

    #[test]
    fn label_dimensions_match_decomposition_width() {
        let (t, g) = tree_for("p cnf 3 3\n1 -2 0\n2 -3 0\n3 -1 0\n");
        let (_, w) = heuristic_decomposition(&g);
        assert_eq!(t.t_pos, w.t_pos);
        assert_eq!(t.t_neg, w.t_neg);
        assert!(verify_parse_tree(&t, &g));
    }

    #[test]
    fn tautologies_and_free_variables_round_trip() {
        let (t, g) = tree_for("p cnf 3 2\n1 -1 0\n0\n");
        assert!(verify_parse_tree(&t, &g));
    }

    #[test]
    fn zeroed_cross_matrix_is_detected() {
        let (mut t, g) = tree_for("p cnf 1 1\n1 0\n");
        assert!(verify_parse_tree(&t, &g));
        let root = t.root();
        if let PtNode::Internal { ops, .. } = &mut t.nodes[root] {
            ops.pos.g = BitMatrix::zeros(1, 1);
        }
        assert!(!verify_parse_tree(&t, &g)); // the edge disappears
    }

    #[test]
    fn evaluation_matches_on_random_graphs() {
        for seed in 0..60 {
            let g = random_signed_graph(seed, 2 + (seed as usize % 7), 0.4);
            let (d, _) = heuristic_decomposition(&g);
            let t = build_parse_tree(&d, &g);
            assert!(verify_parse_tree(&t, &g), "regeneration failed for seed {seed}");
            let (via_labels, _) = evaluate_with_labels(&t);
            assert_eq!(via_labels, g);
        }
    }

    #[test]
    fn swapping_children_with_transposed_cross_matrix_is_neutral() {
        // join symmetry: (x1 join x2 | g) = (x2 join x1 | g^T) with the
        // relabelings swapped
        let g = cycle_graph(6);
        let (d, _) = heuristic_decomposition(&g);
        let t = build_parse_tree(&d, &g);
        let mut swapped = t.clone();
        for node in &mut swapped.nodes {
            if let PtNode::Internal { left, right, ops } = node {
                std::mem::swap(left, right);
                std::mem::swap(&mut ops.pos.f1, &mut ops.pos.f2);
                std::mem::swap(&mut ops.neg.f1, &mut ops.neg.f2);
                ops.pos.g = ops.pos.g.transposed();
                ops.neg.g = ops.neg.g.transposed();
            }
        }
        assert_eq!(evaluate_parse_tree(&swapped), g);
    }

    #[test]
    fn dump_mentions_every_node() {
        let (t, _) = tree_for("p cnf 2 1\n1 -2 0\n");
        let dump = t.dump();
        assert!(dump.contains("leaf"));
        assert!(dump.contains("g+="));
    }

    #[test]
    fn reported_widths_match_a_full_cut_scan() {
        use crate::decomposition::width;
        use crate::families::random_decomposition;
        for seed in 0..40 {
            let g = random_signed_graph(seed, 2 + (seed as usize % 8), 0.35);
            let d = random_decomposition(seed.wrapping_mul(31), &g);
            let (_, reported) = build_parse_tree_with_widths(&d, &g);
            assert_eq!(reported, width(&d, &g).unwrap(), "seed {seed}");
        }
    }
}
