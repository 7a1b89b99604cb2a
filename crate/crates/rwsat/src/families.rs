//! Fixture graphs, structured formulas, and seeded random generators
//! used by tests, benchmarks, and the verification harness.

use crate::decomposition::BranchDecomposition;
use crate::formula::{CnfFormula, Lit, SignedGraph, VertexKind};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn plain_kinds(n: usize) -> Vec<VertexKind> {
    (0..n).map(|i| VertexKind::Variable(i as u32 + 1)).collect()
}

/// Cycle on `n` vertices, all edges positive.
pub fn cycle_graph(n: usize) -> SignedGraph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let edges: Vec<(u32, u32)> =
        (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)).collect();
    SignedGraph::with_edges(plain_kinds(n), &edges, &[])
}

/// Complete graph on `n` vertices, all edges positive.
pub fn complete_graph(n: usize) -> SignedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i as u32, j as u32));
        }
    }
    SignedGraph::with_edges(plain_kinds(n), &edges, &[])
}

/// Star with `leaves` rays: vertex 0 is the center. `star_graph(0)` is
/// a single isolated vertex.
pub fn star_graph(leaves: usize) -> SignedGraph {
    let edges: Vec<(u32, u32)> = (0..leaves).map(|i| (0, i as u32 + 1)).collect();
    SignedGraph::with_edges(plain_kinds(leaves + 1), &edges, &[])
}

/// The chain formula (x1 v x2) ^ (x2 v x3) ^ ... with `clauses`
/// clauses over `clauses + 1` variables. Satisfying assignments are
/// exactly the binary strings without two adjacent zeros, so the model
/// count follows the Fibonacci numbers, and the signed incidence graph
/// is a path whose every cut has rank one per sign.
pub fn chain_formula(clauses: usize) -> CnfFormula {
    assert!(clauses >= 1);
    let clause_list: Vec<Vec<Lit>> = (0..clauses)
        .map(|i| vec![Lit::pos(i as u32 + 1), Lit::pos(i as u32 + 2)])
        .collect();
    CnfFormula::new(clauses + 1, clause_list)
}

/// `clauses` copies of the full positive clause over `vars`
/// variables. The signed incidence graph is a complete bipartite
/// all-positive graph, so every cut has rank one: size grows, width
/// does not.
pub fn clique_formula(vars: u32, clauses: usize) -> CnfFormula {
    assert!(vars >= 1 && clauses >= 1);
    let clause: Vec<Lit> = (1..=vars).map(Lit::pos).collect();
    CnfFormula::new(vars as usize, vec![clause; clauses])
}

/// Seeded random CNF: variable count in `1..=max_vars`, clause count
/// in `0..=max_clauses`, clause lengths in `1..=max_len` over distinct
/// variables with independent random polarities.
pub fn random_cnf(seed: u64, max_vars: u32, max_clauses: usize, max_len: usize) -> CnfFormula {
    assert!(max_vars >= 1 && max_len >= 1);
    let mut rng = StdRng::seed_from_u64(seed);
    let num_vars = rng.gen_range(1..=max_vars);
    let num_clauses = rng.gen_range(0..=max_clauses);
    random_clauses(&mut rng, num_vars, num_clauses, max_len)
}

/// Seeded random CNF with exact variable and clause counts, for
/// benchmarking at controlled sizes.
pub fn random_fixed_cnf(seed: u64, num_vars: u32, num_clauses: usize, max_len: usize) -> CnfFormula {
    assert!(num_vars >= 1 && max_len >= 1);
    let mut rng = StdRng::seed_from_u64(seed);
    random_clauses(&mut rng, num_vars, num_clauses, max_len)
}

fn random_clauses(rng: &mut StdRng, num_vars: u32, num_clauses: usize, max_len: usize) -> CnfFormula {
    let mut vars: Vec<u32> = (1..=num_vars).collect();
    let clauses = (0..num_clauses)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.min(num_vars as usize));
            vars.shuffle(rng);
            vars[..len]
                .iter()
                .map(|&v| if rng.gen_bool(0.5) { Lit::pos(v) } else { Lit::neg(v) })
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars as usize, clauses)
}

/// Seeded random signed graph on `n` vertices: each unordered pair
/// independently gets a positive edge with probability `edge_prob` and
/// a negative edge with the same probability.
pub fn random_signed_graph(seed: u64, n: usize, edge_prob: f64) -> SignedGraph {
    assert!(n >= 1);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(edge_prob) {
                pos.push((i as u32, j as u32));
            }
            if rng.gen_bool(edge_prob) {
                neg.push((i as u32, j as u32));
            }
        }
    }
    SignedGraph::with_edges(plain_kinds(n), &pos, &neg)
}

/// Seeded random branch-decomposition of `g`: a uniformly shaped
/// binary tree obtained by repeatedly joining two random parts.
pub fn random_decomposition(seed: u64, g: &SignedGraph) -> BranchDecomposition {
    assert!(g.n() > 0);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut d = BranchDecomposition::new();
    let mut roots: Vec<usize> = (0..g.n() as u32).map(|v| d.add_leaf(v)).collect();
    roots.shuffle(&mut rng);
    while roots.len() > 1 {
        let a = roots.swap_remove(rng.gen_range(0..roots.len()));
        let b = roots.swap_remove(rng.gen_range(0..roots.len()));
        roots.push(d.add_internal(a, b));
    }
    d.set_root(roots[0]);
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Sign;

    #[test]
    fn chain_formula_shape() {
        let f = chain_formula(3);
        assert_eq!(f.num_vars(), 4);
        assert_eq!(f.num_clauses(), 3);
        assert_eq!(f.clauses()[1], vec![Lit::pos(2), Lit::pos(3)]);
    }

    #[test]
    fn fixture_graph_sizes() {
        assert_eq!(cycle_graph(5).edge_count(Sign::Pos), 5);
        assert_eq!(complete_graph(4).edge_count(Sign::Pos), 6);
        assert_eq!(star_graph(0).n(), 1);
        assert_eq!(star_graph(7).edge_count(Sign::Pos), 7);
    }

    #[test]
    fn random_generators_are_deterministic() {
        assert_eq!(random_cnf(9, 6, 8, 3), random_cnf(9, 6, 8, 3));
        assert_eq!(random_signed_graph(5, 7, 0.4), random_signed_graph(5, 7, 0.4));
        let g = random_signed_graph(5, 7, 0.4);
        assert_eq!(
            random_decomposition(3, &g).leaf_vertices(),
            random_decomposition(3, &g).leaf_vertices()
        );
    }

    #[test]
    fn random_cnf_respects_bounds() {
        for seed in 0..50 {
            let f = random_cnf(seed, 6, 8, 3);
            assert!(f.num_vars() >= 1 && f.num_vars() <= 6);
            assert!(f.num_clauses() <= 8);
            for c in f.clauses() {
                assert!(!c.is_empty() && c.len() <= 3);
            }
        }
    }

    #[test]
    fn random_decompositions_cover_all_vertices() {
        let g = random_signed_graph(11, 8, 0.5);
        for seed in 0..20 {
            let d = random_decomposition(seed, &g);
            let mut vs = d.leaf_vertices();
            vs.sort_unstable();
            assert_eq!(vs, (0..8).collect::<Vec<u32>>());
            assert!(d.validate(&g).is_ok());
        }
    }

    #[test]
    fn random_graph_has_no_self_loops_and_sorted_lists() {
        let g = random_signed_graph(2, 9, 0.6);
        for v in 0..9u32 {
            for sign in Sign::BOTH {
                let ns = g.neighbors(sign, v);
                assert!(ns.windows(2).all(|w| w[0] < w[1]));
                assert!(!ns.contains(&v));
            }
        }
    }
}
