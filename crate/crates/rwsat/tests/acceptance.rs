//! Acceptance suite: every promised property of the solver, each as
//! one test whose harness line is the pass/fail record.
//!
//! The tests take a shared lock so they run one at a time; the scaling
//! measurement must not share the machine with the randomized sweeps.

use rwsat::decomposition::{
    exact_decomposition, heuristic_decomposition, read_decomposition, write_decomposition,
    BranchDecomposition,
};
use rwsat::dp::{count_models, max_sat, run_dp, Counting, Semiring, Tropical};
use rwsat::families::{
    chain_formula, complete_graph, cycle_graph, random_cnf, random_decomposition,
    random_signed_graph,
};
use rwsat::formula::{build_signed_graph, CnfFormula, SignedGraph};
use rwsat::gf2::{enumerate_subspaces, galois_number, Subspace};
use rwsat::oracle::{brute_force_count, brute_force_max_sat, brute_force_shape_table};
use rwsat::parsetree::{
    build_parse_tree, evaluate_parse_tree, evaluate_with_labels, verify_parse_tree,
    SignedParseTree,
};
use rwsat::BigUint;
use std::sync::{Mutex, MutexGuard};
use std::time::Instant;

static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> MutexGuard<'static, ()> {
    // a poisoned lock only means an earlier test failed; proceed
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

/// Build and regeneration-check the parse tree for one decomposition.
fn tree_for(d: &BranchDecomposition, g: &SignedGraph) -> SignedParseTree {
    let tree = build_parse_tree(d, g);
    assert!(verify_parse_tree(&tree, g), "parse tree failed to regenerate the graph");
    tree
}

/// The decomposition routes a solve can take: exhaustive search when
/// the graph is within the default cap, the greedy heuristic, and the
/// heuristic round-tripped through the text format.
fn solve_routes(g: &SignedGraph) -> Vec<(&'static str, BranchDecomposition)> {
    let mut routes = Vec::new();
    if g.n() <= 10 {
        let (d, _) = exact_decomposition(g, 10).expect("within cap");
        routes.push(("exact", d));
    }
    let (heuristic, _) = heuristic_decomposition(g);
    let round_trip = read_decomposition(&write_decomposition(&heuristic, g), g)
        .expect("serialized decomposition reads back");
    routes.push(("heuristic", heuristic));
    routes.push(("file round-trip", round_trip));
    routes
}

#[test]
fn count_matches_brute_force_on_1000_random_formulas_under_all_routes() {
    let _guard = serial();
    for seed in 0..1000u64 {
        let f = random_cnf(seed, 6, 8, 3);
        let g = build_signed_graph(&f);
        let expected = brute_force_count(&f, 6).expect("at most 6 variables");
        for (route, d) in solve_routes(&g) {
            let tree = tree_for(&d, &g);
            let got = count_models(&f, &tree).expect("verified tree");
            assert_eq!(
                got,
                expected,
                "seed {seed}, {route} route, formula:\n{}",
                f.to_dimacs()
            );
        }
    }
    println!("model counts match brute force on 1000 formulas across all routes");
}

#[test]
fn max_sat_matches_brute_force_on_1000_random_formulas_under_all_routes() {
    let _guard = serial();
    for seed in 0..1000u64 {
        let f = random_cnf(seed, 6, 8, 3);
        let g = build_signed_graph(&f);
        let expected = brute_force_max_sat(&f, 6).expect("at most 6 variables");
        for (route, d) in solve_routes(&g) {
            let tree = tree_for(&d, &g);
            let got = max_sat(&f, &tree).expect("verified tree");
            assert_eq!(
                got,
                expected,
                "seed {seed}, {route} route, formula:\n{}",
                f.to_dimacs()
            );
        }
    }
    println!("max-sat values match brute force on 1000 formulas across all routes");
}

/// Every node's table must equal, key for key and value for value, the
/// table obtained by enumerating assignments against the definition.
fn assert_node_tables_match<V: Semiring>(f: &CnfFormula) {
    let g = build_signed_graph(f);
    let (d, _) = heuristic_decomposition(&g);
    let tree = tree_for(&d, &g);
    let run = run_dp::<V>(&tree, true);
    let (_, labels) = evaluate_with_labels(&tree);
    let tables = run.tables.as_ref().expect("tables kept");
    for id in tree.postorder() {
        let demand: Vec<(Subspace, Subspace)> = run.demands[id]
            .iter()
            .map(|&(p, n)| {
                (run.indexes.pos.subspaces.get(p).clone(), run.indexes.neg.subspaces.get(n).clone())
            })
            .collect();
        let reference =
            brute_force_shape_table::<V>(&g, tree.t_pos, tree.t_neg, &labels[id], &demand, 16)
                .expect("at most 10 vertices");
        assert_eq!(
            tables[id].canonical_entries(&run.indexes),
            reference,
            "node {id}, formula:\n{}",
            f.to_dimacs()
        );
    }
}

#[test]
fn node_tables_are_bit_identical_to_the_definition_on_100_instances() {
    let _guard = serial();
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 100 {
        let f = random_cnf(seed.wrapping_add(20_000), 5, 6, 3);
        seed += 1;
        let g = build_signed_graph(&f);
        if g.n() > 10 {
            continue;
        }
        assert_node_tables_match::<Counting>(&f);
        assert_node_tables_match::<Tropical>(&f);
        checked += 1;
    }
    println!("node tables bit-identical to the assignment-enumeration oracle on {checked} instances");
}

#[test]
fn parse_trees_regenerate_500_random_signed_graphs_for_every_decomposition() {
    let _guard = serial();
    for seed in 0..500u64 {
        let n = 2 + (seed as usize % 7); // 2..=8 vertices
        let edge_prob = 0.15 + 0.1 * ((seed % 8) as f64);
        let g = random_signed_graph(seed.wrapping_add(40_000), n, edge_prob);
        let mut decomps = vec![
            ("exact", exact_decomposition(&g, 10).expect("within cap").0),
            ("heuristic", heuristic_decomposition(&g).0),
        ];
        for k in 0..2u64 {
            decomps.push(("random", random_decomposition(seed ^ (k + 1), &g)));
        }
        for (kind, d) in decomps {
            let tree = build_parse_tree(&d, &g);
            assert_eq!(
                evaluate_parse_tree(&tree),
                g,
                "seed {seed}: {kind} decomposition did not regenerate the graph"
            );
        }
    }
    println!("regeneration exact on 500 random signed graphs, all decomposition kinds");
}

#[test]
fn width_fixtures_five_cycle_is_2_and_cliques_are_1_by_exhaustive_search() {
    let _guard = serial();
    let (_, w) = exact_decomposition(&cycle_graph(5), 10).expect("5 vertices");
    assert_eq!((w.t_pos, w.t_neg, w.signed), (2, 0, 2), "five-cycle widths");
    for n in 2..=7 {
        let (_, w) = exact_decomposition(&complete_graph(n), 10).expect("within cap");
        assert_eq!((w.t_pos, w.t_neg, w.signed), (1, 0, 1), "complete graph on {n} vertices");
    }
    println!("exhaustive search: five-cycle width 2, complete graphs width 1");
}

#[test]
fn subspace_counts_match_enumeration_and_stay_under_the_growth_bound() {
    let _guard = serial();
    let expected: [u64; 5] = [1, 2, 5, 16, 67];
    for (t, &e) in expected.iter().enumerate() {
        assert_eq!(galois_number(t), BigUint::from(e), "count of subspaces of dimension-{t} space");
        assert_eq!(
            enumerate_subspaces(t).len() as u64,
            e,
            "enumeration disagrees at dimension {t}"
        );
    }
    // frozen spot value, derived independently from the recurrence and
    // from the sum of Gaussian binomial coefficients
    assert_eq!(galois_number(12), BigUint::from(488_176_700_923u64));
    for t in 12..=20usize {
        // the bound 2^{t(t+1)/4} has a fractional exponent for odd t;
        // compare squares to stay in integers
        let g = galois_number(t);
        let bound_squared = BigUint::from(1u32) << (t * (t + 1) / 2);
        assert!(
            g.clone() * &g <= bound_squared,
            "galois number at t={t} exceeds 2^(t(t+1)/4)"
        );
    }
    println!("subspace counts match enumeration; growth bound holds up to dimension 20");
}

/// Independent count for the chain family: with clauses (x_i or
/// x_{i+1}), models of the m-clause chain are counted by a Fibonacci
/// recurrence, F(m+3) for F(1)=F(2)=1.
fn chain_count_reference(clauses: usize) -> BigUint {
    let mut a = BigUint::from(1u32); // F(1)
    let mut b = BigUint::from(1u32); // F(2)
    for _ in 0..clauses + 1 {
        let next = &a + &b;
        a = b;
        b = next;
    }
    b
}

fn measure_chain_doublings(sizes: &[usize]) -> Vec<f64> {
    let mut times = Vec::new();
    for &m in sizes {
        let f = chain_formula(m);
        let g = build_signed_graph(&f);
        let (d, w) = heuristic_decomposition(&g);
        assert!(w.t_pos <= 2 && w.t_neg <= 2, "chain family should stay within width 2 per sign");
        let tree = tree_for(&d, &g);
        let mut best = f64::INFINITY;
        for _ in 0..3 {
            let t0 = Instant::now();
            let count = count_models(&f, &tree).expect("verified tree");
            best = best.min(t0.elapsed().as_secs_f64() * 1e3);
            assert_eq!(count, chain_count_reference(m), "chain count at {m} clauses");
        }
        println!("chain {m} clauses: count_models best of 3 = {best:.2} ms");
        times.push(best);
    }
    times
}

#[test]
fn counting_scales_linearly_in_formula_size_on_the_chain_family() {
    let _guard = serial();
    let sizes = [1000, 2000, 4000, 8000];
    let started = Instant::now();
    let mut times = measure_chain_doublings(&sizes);
    let in_window =
        |ts: &[f64]| ts.windows(2).all(|w| (1.5..=2.5).contains(&(w[1] / w[0])));
    if !in_window(&times) {
        // wall-clock is noisy; one full re-measurement before judging
        println!("re-measuring once: first pass ratios fell outside the window");
        times = measure_chain_doublings(&sizes);
    }
    for (pair, w) in times.windows(2).enumerate() {
        let ratio = w[1] / w[0];
        println!(
            "doubling {} -> {}: ratio {ratio:.2}",
            sizes[pair],
            sizes[pair + 1]
        );
        assert!(
            (1.5..=2.5).contains(&ratio),
            "per-doubling ratio {ratio:.2} outside [1.5, 2.5]; times {times:?}"
        );
    }
    let total = started.elapsed().as_secs_f64();
    assert!(total < 300.0, "scaling run took {total:.0}s, budget is 5 minutes");
    println!("count_models doubling ratios within [1.5, 2.5]; total {total:.1}s");
}

#[test]
fn results_are_identical_across_three_distinct_decompositions_on_100_instances() {
    let _guard = serial();
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 100 {
        let f = random_cnf(seed.wrapping_add(60_000), 6, 8, 3);
        seed += 1;
        let g = build_signed_graph(&f);
        if g.n() < 4 {
            continue; // too few vertices to offer three distinct trees
        }
        let mut decomps: Vec<BranchDecomposition> = Vec::new();
        let mut shapes: Vec<String> = Vec::new();
        let push_unique = |d: BranchDecomposition, shapes: &mut Vec<String>,
                               decomps: &mut Vec<BranchDecomposition>| {
            let text = write_decomposition(&d, &g);
            if !shapes.contains(&text) {
                shapes.push(text);
                decomps.push(d);
            }
        };
        push_unique(heuristic_decomposition(&g).0, &mut shapes, &mut decomps);
        if g.n() <= 9 {
            push_unique(
                exact_decomposition(&g, 9).expect("within cap").0,
                &mut shapes,
                &mut decomps,
            );
        }
        for k in 0..10u64 {
            if decomps.len() >= 3 {
                break;
            }
            push_unique(random_decomposition(seed ^ (k + 17), &g), &mut shapes, &mut decomps);
        }
        assert!(decomps.len() >= 3, "seed {seed}: could not produce 3 distinct decompositions");

        let results: Vec<(BigUint, u64)> = decomps
            .iter()
            .map(|d| {
                let tree = tree_for(d, &g);
                (
                    count_models(&f, &tree).expect("verified tree"),
                    max_sat(&f, &tree).expect("verified tree"),
                )
            })
            .collect();
        for r in &results[1..] {
            assert_eq!(
                r,
                &results[0],
                "seed {seed}: results differ across decompositions, formula:\n{}",
                f.to_dimacs()
            );
        }
        checked += 1;
    }
    println!("counts and max-sat identical across 3+ distinct decompositions on {checked} instances");
}
