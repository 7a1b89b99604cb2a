//! Dynamic programming over parse trees.
//!
//! For a node whose subtree holds the vertex set X, an assignment of
//! the variables in X is summarized by a shape: per sign, the span of
//! the labels of variables set true (positive sign) resp. false
//! (negative sign), together with an expectation subspace per sign.
//! A table entry at shape (S+, S-, P+, P-) aggregates the assignments
//! of X with label spans (S+, S-) such that every clause in X is
//! either satisfied inside X or has a label non-orthogonal to the
//! expectation pair (P+, P-), meaning the outside may still satisfy
//! it. At the root nothing is outside, so the zero expectation pair
//! collects exactly the models.
//!
//! Entries are aggregated in a commutative semiring: counting
//! ([`Counting`], giving exact model counts) or min-plus
//! ([`Tropical`], giving the minimum number of violated clauses, and
//! from it the Max-SAT optimum).
//!
//! A join node with relabelings F1, F2 and cross matrix G combines
//! child shapes by
//!
//! ```text
//!   S_z = F1(S_x) + F2(S_y)
//!   P_x = F1^T(P_z) + G(S_y)        P_y = F2^T(P_z) + G^T(S_x)
//! ```
//!
//! per sign, where images are row-vector images and + is subspace
//! join. The engine runs three passes: realized span pairs bottom-up,
//! demanded expectation pairs top-down (the root demands only the
//! zero pair), and value tables bottom-up over realized-by-demanded
//! keys. Entry values depend only on their key, so materializing a
//! superset of what the parent reads is sound; min-plus tables are
//! dense over that key set and counting tables omit exactly the
//! zero-count keys, which keeps tables canonical and directly
//! comparable against a definition-based oracle.

use crate::formula::{build_signed_graph, CnfFormula, VertexKind};
use crate::gf2::{enumerate_subspaces, BitMatrix, BitVector, Subspace, SubspaceIndex};
use crate::parsetree::{verify_parse_tree, PtNode, SignOps, SignedParseTree};
use num_bigint::BigUint;
use std::collections::{HashMap, HashSet};

/// Commutative semiring with an explicit zero test, used to drop
/// zero-valued table entries, plus the value a clause vertex
/// contributes given how many clauses (0 or 1) the key leaves
/// violated.
pub trait Semiring: Clone + Eq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Aggregation over alternatives.
    fn add_assign(&mut self, other: &Self);
    /// Composition of independent parts.
    fn mul(&self, other: &Self) -> Self;
    /// Value of an assignment slice that violates `defect` clauses.
    fn from_defect(defect: u64) -> Self;
}

/// Exact counting semiring over arbitrary-precision naturals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counting(pub BigUint);

impl Semiring for Counting {
    fn zero() -> Self {
        Counting(BigUint::from(0u32))
    }
    fn one() -> Self {
        Counting(BigUint::from(1u32))
    }
    fn is_zero(&self) -> bool {
        self.0 == BigUint::from(0u32)
    }
    fn add_assign(&mut self, other: &Self) {
        self.0 += &other.0;
    }
    fn mul(&self, other: &Self) -> Self {
        Counting(&self.0 * &other.0)
    }
    fn from_defect(defect: u64) -> Self {
        if defect == 0 {
            Self::one()
        } else {
            Self::zero()
        }
    }
}

/// Min-plus semiring: aggregation is minimum, composition is
/// saturating addition, and `u64::MAX` plays infinity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Tropical(pub u64);

impl Semiring for Tropical {
    fn zero() -> Self {
        Tropical(u64::MAX)
    }
    fn one() -> Self {
        Tropical(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == u64::MAX
    }
    fn add_assign(&mut self, other: &Self) {
        self.0 = self.0.min(other.0);
    }
    fn mul(&self, other: &Self) -> Self {
        Tropical(self.0.saturating_add(other.0))
    }
    fn from_defect(defect: u64) -> Self {
        Tropical(defect)
    }
}

/// Subspace ids per sign, with join and matrix-image memoization.
/// Id 0 is always the zero subspace.
pub struct SignIndex {
    pub subspaces: SubspaceIndex,
    unit_id: u32,
    join_memo: HashMap<(u32, u32), u32>,
    image_memo: HashMap<(usize, u8, u32), u32>,
}

const VIA_F1: u8 = 0;
const VIA_F2: u8 = 1;
const VIA_F1_T: u8 = 2;
const VIA_F2_T: u8 = 3;
const VIA_G: u8 = 4;
const VIA_G_T: u8 = 5;

impl SignIndex {
    fn new(t: usize) -> Self {
        let mut subspaces = SubspaceIndex::new(t);
        let unit_id = if t == 0 {
            0
        } else {
            subspaces.register(&Subspace::span(&[BitVector::unit(t, 0)], t))
        };
        SignIndex { subspaces, unit_id, join_memo: HashMap::new(), image_memo: HashMap::new() }
    }

    pub fn t(&self) -> usize {
        self.subspaces.ambient_dim()
    }

    /// Id of the span of the first standard basis vector (the leaf
    /// label); the zero subspace when the dimension is zero.
    pub fn unit_span_id(&self) -> u32 {
        self.unit_id
    }

    /// True iff some vector of the subspace has first coordinate one,
    /// i.e. the leaf label e1 is non-orthogonal to it.
    pub fn unit_visible(&self, id: u32) -> bool {
        let t = self.t();
        t > 0 && !self.subspaces.get(id).is_orthogonal_to(&BitVector::unit(t, 0))
    }

    pub fn join(&mut self, a: u32, b: u32) -> u32 {
        if a == b {
            return a;
        }
        let key = (a.min(b), a.max(b));
        if let Some(&r) = self.join_memo.get(&key) {
            return r;
        }
        let joined = self.subspaces.get(a).join(self.subspaces.get(b));
        let r = self.subspaces.register(&joined);
        self.join_memo.insert(key, r);
        r
    }

    fn image_via(&mut self, node: usize, which: u8, m: &BitMatrix, transpose: bool, id: u32) -> u32 {
        if let Some(&r) = self.image_memo.get(&(node, which, id)) {
            return r;
        }
        let s = self.subspaces.get(id);
        let img = if transpose { s.image_transpose(m) } else { s.image(m) };
        let r = self.subspaces.register(&img);
        self.image_memo.insert((node, which, id), r);
        r
    }

    /// S_z-component: F1(S_x) + F2(S_y).
    fn sigma_join(&mut self, node: usize, ops: &SignOps, sx: u32, sy: u32) -> u32 {
        let a = self.image_via(node, VIA_F1, &ops.f1, false, sx);
        let b = self.image_via(node, VIA_F2, &ops.f2, false, sy);
        self.join(a, b)
    }

    /// Left expectation: F1^T(P_z) + G(S_y).
    fn pi_left(&mut self, node: usize, ops: &SignOps, pz: u32, sy: u32) -> u32 {
        let a = self.image_via(node, VIA_F1_T, &ops.f1, true, pz);
        let b = self.image_via(node, VIA_G, &ops.g, false, sy);
        self.join(a, b)
    }

    /// Right expectation: F2^T(P_z) + G^T(S_x).
    fn pi_right(&mut self, node: usize, ops: &SignOps, pz: u32, sx: u32) -> u32 {
        let a = self.image_via(node, VIA_F2_T, &ops.f2, true, pz);
        let b = self.image_via(node, VIA_G_T, &ops.g, true, sx);
        self.join(a, b)
    }
}

pub struct DpIndexes {
    pub pos: SignIndex,
    pub neg: SignIndex,
}

impl DpIndexes {
    fn new(t_pos: usize, t_neg: usize) -> Self {
        DpIndexes { pos: SignIndex::new(t_pos), neg: SignIndex::new(t_neg) }
    }
}

/// Span-pair id and expectation-pair id (positive sign first).
pub type SigmaKey = (u32, u32);
pub type PiKey = (u32, u32);

/// Canonical form of a table key: the four subspaces themselves.
pub type ShapeQuad = (Subspace, Subspace, Subspace, Subspace);

/// One node's table, grouped by span pair; inner maps go from
/// expectation pair to value. Zero values are never stored.
#[derive(Clone, Debug)]
pub struct DpTable<V> {
    pub node: usize,
    pub groups: HashMap<SigmaKey, HashMap<PiKey, V>>,
}

impl<V: Semiring> DpTable<V> {
    fn new(node: usize) -> Self {
        DpTable { node, groups: HashMap::new() }
    }

    fn add(&mut self, sigma: SigmaKey, pi: PiKey, v: V) {
        if v.is_zero() {
            return;
        }
        self.groups
            .entry(sigma)
            .or_default()
            .entry(pi)
            .and_modify(|slot| slot.add_assign(&v))
            .or_insert(v);
    }

    /// Value at a key; the semiring zero when absent.
    pub fn value(&self, sigma: SigmaKey, pi: PiKey) -> V {
        self.groups
            .get(&sigma)
            .and_then(|inner| inner.get(&pi))
            .cloned()
            .unwrap_or_else(V::zero)
    }

    /// Aggregate of every entry: the total count for counting tables,
    /// the minimum defect for min-plus tables.
    pub fn total(&self) -> V {
        let mut acc = V::zero();
        for inner in self.groups.values() {
            for v in inner.values() {
                acc.add_assign(v);
            }
        }
        acc
    }

    pub fn num_entries(&self) -> usize {
        self.groups.values().map(|inner| inner.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Entries with ids resolved to the subspaces they denote, sorted
    /// by key, for comparison independent of id assignment order.
    pub fn canonical_entries(&self, idx: &DpIndexes) -> Vec<(ShapeQuad, V)> {
        let mut out: Vec<(ShapeQuad, V)> = Vec::with_capacity(self.num_entries());
        for (&(sp, sn), inner) in &self.groups {
            for (&(pp, pn), v) in inner {
                out.push((
                    (
                        self_subspace(idx, true, sp),
                        self_subspace(idx, false, sn),
                        self_subspace(idx, true, pp),
                        self_subspace(idx, false, pn),
                    ),
                    v.clone(),
                ));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

fn self_subspace(idx: &DpIndexes, pos: bool, id: u32) -> Subspace {
    if pos {
        idx.pos.subspaces.get(id).clone()
    } else {
        idx.neg.subspaces.get(id).clone()
    }
}

fn leaf_table<V: Semiring>(
    node: usize,
    kind: VertexKind,
    demand: &[PiKey],
    idx: &DpIndexes,
) -> DpTable<V> {
    let mut t = DpTable::new(node);
    match kind {
        VertexKind::Variable(_) => {
            // setting the variable true puts its label in the positive
            // span, false in the negative span; no clause constraint
            let up = idx.pos.unit_span_id();
            let un = idx.neg.unit_span_id();
            for &pi in demand {
                t.add((up, 0), pi, V::one());
                t.add((0, un), pi, V::one());
            }
        }
        VertexKind::Clause(_) => {
            // the clause is violated unless some expectation vector
            // meets its label e1 in at least one sign
            for &pi in demand {
                let expected = idx.pos.unit_visible(pi.0) || idx.neg.unit_visible(pi.1);
                t.add((0, 0), pi, V::from_defect(u64::from(!expected)));
            }
        }
    }
    t
}

fn combine_tables<V: Semiring>(
    node: usize,
    ops: &crate::parsetree::RelabelOps,
    tx: &DpTable<V>,
    ty: &DpTable<V>,
    demand: &[PiKey],
    idx: &mut DpIndexes,
) -> DpTable<V> {
    let mut out = DpTable::new(node);
    for (&sx, inner_x) in &tx.groups {
        for (&sy, inner_y) in &ty.groups {
            let sz = (
                idx.pos.sigma_join(node, &ops.pos, sx.0, sy.0),
                idx.neg.sigma_join(node, &ops.neg, sx.1, sy.1),
            );
            for &pz in demand {
                let px = (
                    idx.pos.pi_left(node, &ops.pos, pz.0, sy.0),
                    idx.neg.pi_left(node, &ops.neg, pz.1, sy.1),
                );
                let Some(vx) = inner_x.get(&px) else { continue };
                let py = (
                    idx.pos.pi_right(node, &ops.pos, pz.0, sx.0),
                    idx.neg.pi_right(node, &ops.neg, pz.1, sx.1),
                );
                let Some(vy) = inner_y.get(&py) else { continue };
                out.add(sz, pz, vx.mul(vy));
            }
        }
    }
    out
}

/// Result of a DP run: the root table, the id registry, the
/// expectation pairs demanded at every node, and (when requested)
/// every node's table.
pub struct DpRun<V> {
    pub indexes: DpIndexes,
    pub root_table: DpTable<V>,
    pub demands: Vec<Vec<PiKey>>,
    pub tables: Option<Vec<DpTable<V>>>,
}

/// Run the three-pass DP. With `keep_tables`, every node's table is
/// retained (for diagnostics and oracle comparison); otherwise child
/// tables are dropped as soon as their parent is combined.
pub fn run_dp<V: Semiring>(tree: &SignedParseTree, keep_tables: bool) -> DpRun<V> {
    run_dp_inner(tree, keep_tables, false)
}

/// Like [`run_dp`] but demanding every expectation pair at every
/// node. Exponential in the label dimension; a diagnostic for small
/// instances.
pub fn run_dp_full_domain<V: Semiring>(tree: &SignedParseTree, keep_tables: bool) -> DpRun<V> {
    run_dp_inner(tree, keep_tables, true)
}

fn run_dp_inner<V: Semiring>(
    tree: &SignedParseTree,
    keep_tables: bool,
    full_domain: bool,
) -> DpRun<V> {
    assert!(!tree.is_empty(), "cannot run the DP on an empty tree");
    let mut idx = DpIndexes::new(tree.t_pos, tree.t_neg);
    let order = tree.postorder();
    let n_nodes = tree.len();

    // pass 1: span pairs realized by at least one assignment
    let mut sigma: Vec<HashSet<SigmaKey>> = vec![HashSet::new(); n_nodes];
    for &id in &order {
        match tree.node(id) {
            PtNode::Leaf { kind, .. } => {
                match kind {
                    VertexKind::Variable(_) => {
                        sigma[id].insert((idx.pos.unit_span_id(), 0));
                        sigma[id].insert((0, idx.neg.unit_span_id()));
                    }
                    VertexKind::Clause(_) => {
                        sigma[id].insert((0, 0));
                    }
                };
            }
            PtNode::Internal { left, right, ops } => {
                let sx: Vec<SigmaKey> = sigma[*left].iter().copied().collect();
                let sy: Vec<SigmaKey> = sigma[*right].iter().copied().collect();
                let mut here = HashSet::new();
                for &a in &sx {
                    for &b in &sy {
                        here.insert((
                            idx.pos.sigma_join(id, &ops.pos, a.0, b.0),
                            idx.neg.sigma_join(id, &ops.neg, a.1, b.1),
                        ));
                    }
                }
                sigma[id] = here;
            }
        }
    }

    // pass 2: expectation pairs demanded from above; the pairs a
    // parent derives for a child are always among these, so pass 3
    // tables are complete for every lookup
    let mut demand: Vec<HashSet<PiKey>> = vec![HashSet::new(); n_nodes];
    if full_domain {
        let all_pos: Vec<u32> =
            enumerate_subspaces(tree.t_pos).iter().map(|s| idx.pos.subspaces.register(s)).collect();
        let all_neg: Vec<u32> =
            enumerate_subspaces(tree.t_neg).iter().map(|s| idx.neg.subspaces.register(s)).collect();
        for d in demand.iter_mut() {
            for &p in &all_pos {
                for &n in &all_neg {
                    d.insert((p, n));
                }
            }
        }
    } else {
        demand[tree.root()].insert((0, 0));
        for &id in order.iter().rev() {
            if let PtNode::Internal { left, right, ops } = tree.node(id) {
                let dz: Vec<PiKey> = demand[id].iter().copied().collect();
                let sx: Vec<SigmaKey> = sigma[*left].iter().copied().collect();
                let sy: Vec<SigmaKey> = sigma[*right].iter().copied().collect();
                let mut dl = std::mem::take(&mut demand[*left]);
                let mut dr = std::mem::take(&mut demand[*right]);
                for &pz in &dz {
                    for &b in &sy {
                        dl.insert((
                            idx.pos.pi_left(id, &ops.pos, pz.0, b.0),
                            idx.neg.pi_left(id, &ops.neg, pz.1, b.1),
                        ));
                    }
                    for &a in &sx {
                        dr.insert((
                            idx.pos.pi_right(id, &ops.pos, pz.0, a.0),
                            idx.neg.pi_right(id, &ops.neg, pz.1, a.1),
                        ));
                    }
                }
                demand[*left] = dl;
                demand[*right] = dr;
            }
        }
    }
    let demands: Vec<Vec<PiKey>> = demand
        .iter()
        .map(|d| {
            let mut v: Vec<PiKey> = d.iter().copied().collect();
            v.sort_unstable();
            v
        })
        .collect();

    // pass 3: value tables over realized spans and demanded
    // expectations
    let mut tables: Vec<Option<DpTable<V>>> = (0..n_nodes).map(|_| None).collect();
    let mut kept: Vec<Option<DpTable<V>>> = (0..n_nodes).map(|_| None).collect();
    for &id in &order {
        let table = match tree.node(id) {
            PtNode::Leaf { kind, .. } => leaf_table::<V>(id, *kind, &demands[id], &idx),
            PtNode::Internal { left, right, ops } => {
                let tx = tables[*left].take().expect("child table missing");
                let ty = tables[*right].take().expect("child table missing");
                let t = combine_tables::<V>(id, ops, &tx, &ty, &demands[id], &mut idx);
                if keep_tables {
                    kept[*left] = Some(tx);
                    kept[*right] = Some(ty);
                }
                t
            }
        };
        tables[id] = Some(table);
    }

    let root_table = tables[tree.root()].take().expect("root table missing");
    let tables = if keep_tables {
        kept[tree.root()] = Some(root_table.clone());
        Some(kept.into_iter().map(|t| t.expect("kept table missing")).collect())
    } else {
        None
    };

    DpRun { indexes: idx, root_table, demands, tables }
}

#[derive(thiserror::Error, Debug, PartialEq, Eq)]
pub enum DpError {
    /// Replaying the parse tree did not reproduce the formula's
    /// signed incidence graph.
    #[error("parse tree does not regenerate the formula's signed incidence graph")]
    TreeMismatch,
}

fn checked_tree(f: &CnfFormula, tree: &SignedParseTree) -> Result<(), DpError> {
    let g = build_signed_graph(f);
    if verify_parse_tree(tree, &g) {
        Ok(())
    } else {
        Err(DpError::TreeMismatch)
    }
}

/// Exact number of satisfying assignments of `f`, computed by the
/// counting DP over `tree`. The tree is first replayed and checked
/// against the formula's signed incidence graph.
pub fn count_models(f: &CnfFormula, tree: &SignedParseTree) -> Result<BigUint, DpError> {
    checked_tree(f, tree)?;
    let run = run_dp::<Counting>(tree, false);
    Ok(run.root_table.total().0)
}

/// Maximum number of simultaneously satisfiable clauses of `f`,
/// computed by the min-plus DP over `tree` (clause count minus the
/// minimum defect).
pub fn max_sat(f: &CnfFormula, tree: &SignedParseTree) -> Result<u64, DpError> {
    checked_tree(f, tree)?;
    let run = run_dp::<Tropical>(tree, false);
    let m = run.root_table.total().0;
    let clauses = f.num_clauses() as u64;
    assert!(
        m <= clauses,
        "minimum defect {m} exceeds the clause count {clauses}; the min-plus table degenerated"
    );
    Ok(clauses - m)
}
