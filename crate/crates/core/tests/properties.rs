use proptest::prelude::*;

use indom::bitset::VertexSet;
use indom::canon::{canonical_code, canonical_form};
use indom::constructive::brooks::brooks_coloring;
use indom::constructive::construct_ids;
use indom::constructive::lemmas::repair_after_edge_deletion;
use indom::exact::{count_min_ids, exact_ids, min_ids_by_enumeration, SolverBudget};
use indom::io::{parse_graph6, write_graph6};
use indom::special::n_special;
use indom::{BoundParams, Graph, IdsCheck};

/// Random graph on `n` vertices from a bit string over all pairs.
fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

/// Drops edges greedily (in edge order) until every degree is at most `cap`.
fn cap_degree(g: &Graph, cap: usize) -> Graph {
    let mut deg = vec![0; g.n()];
    let mut kept = Vec::new();
    for (u, v) in g.edges() {
        if deg[u] < cap && deg[v] < cap {
            deg[u] += 1;
            deg[v] += 1;
            kept.push((u, v));
        }
    }
    Graph::new(g.n(), &kept).unwrap()
}

fn subset(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_iter_in(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

/// Independent and no outside vertex can be added.
fn is_maximal_independent(g: &Graph, s: &VertexSet) -> bool {
    let independent = s.iter().all(|u| s.iter().all(|v| !g.has_edge(u, v)));
    independent
        && (0..g.n())
            .filter(|&v| !s.contains(v))
            .all(|v| s.iter().any(|u| g.has_edge(u, v)))
}

/// `v` is on a cycle iff for some incident edge `uv` the endpoints stay
/// connected after removing that edge.
fn on_cycle_brute(g: &Graph, v: usize) -> bool {
    g.neighbors(v).iter().any(|u| {
        let h = g.delete_edges(&[(u, v)]).unwrap();
        let mut seen = vec![false; h.n()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(x) = stack.pop() {
            for y in h.neighbors(x).iter() {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen[u]
    })
}

fn permute(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::new(g.n(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ids_check_matches_definition(g in graph_strategy(9), mask in any::<u64>()) {
        let s = subset(g.n(), mask);
        prop_assert_eq!(g.is_ids(&s) == IdsCheck::Valid, is_maximal_independent(&g, &s));
    }

    #[test]
    fn cycle_vertices_match_brute_force(g in graph_strategy(8)) {
        let x = g.cycle_vertices();
        for v in 0..g.n() {
            prop_assert_eq!(x.contains(v), on_cycle_brute(&g, v), "vertex {}", v);
        }
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(12), pad in 0usize..80) {
        // pad with isolated vertices to reach the multi-byte size form
        let big = g.disjoint_union(&Graph::empty(pad));
        for h in [&g, &big] {
            let s = write_graph6(h);
            let back = parse_graph6(&s).unwrap();
            prop_assert_eq!(&back, h);
            prop_assert_eq!(write_graph6(&back), s);
        }
    }

    #[test]
    fn exact_matches_enumeration(g in graph_strategy(12)) {
        let sol = exact_ids(&g, SolverBudget::default()).unwrap();
        prop_assert!(g.is_ids(&sol.witness.set).is_valid());
        let (i, count) = min_ids_by_enumeration(&g);
        prop_assert_eq!(sol.size(), i);
        prop_assert_eq!(count_min_ids(&g, SolverBudget::default()).unwrap(), count);
    }

    #[test]
    fn construction_is_sandwiched(g in graph_strategy(13), delta in 4usize..8) {
        let g = cap_degree(&g, delta);
        let c = construct_ids(delta, &g).unwrap();
        prop_assert!(!c.discrepancy(), "{:?}", c.discrepancies);
        prop_assert!(g.is_ids(&c.witness.set).is_valid());
        let params = BoundParams::new(delta);
        prop_assert_eq!(c.bound, params.component_bound(g.n(), n_special(delta, &g)));
        prop_assert!(indom::bounds::qi(c.size()) <= c.bound);
        prop_assert!(min_ids_by_enumeration(&g).0 <= c.size());
        prop_assert_eq!(c.trace.replay(g.n()), c.witness.set);
        prop_assert!(c.trace.claims_hold());
    }

    #[test]
    fn brooks_on_random_connected(g in graph_strategy(12)) {
        prop_assume!(g.is_connected() && !g.is_complete() && !g.is_odd_cycle());
        let c = brooks_coloring(&g).unwrap();
        prop_assert!(c.is_proper(&g));
        prop_assert!(c.k() <= g.max_degree().max(2));
    }

    #[test]
    fn repair_never_grows(g in graph_strategy(10), pick in any::<(usize, usize)>()) {
        let ws: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 2).collect();
        prop_assume!(!ws.is_empty());
        let w = ws[pick.0 % ws.len()];
        let nbrs = g.neighbors(w).to_vec();
        let kept = nbrs[pick.1 % nbrs.len()];
        let dropped: Vec<_> = nbrs.iter().filter(|&&u| u != kept).map(|&u| (w, u)).collect();
        let h = g.delete_edges(&dropped).unwrap();
        // every maximal independent set of H' must be repairable
        let mut all = Vec::new();
        indom::exact::for_each_maximal_independent_set(&h, |s| all.push(s.clone()));
        for s in all {
            let out = repair_after_edge_deletion(&g, w, kept, &s).unwrap();
            prop_assert!(g.is_ids(&out.set).is_valid());
            prop_assert!(out.size() <= s.len());
        }
    }

    #[test]
    fn canonical_code_is_label_invariant(g in graph_strategy(9), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut rng = indom::families::SplitMix64::new(seed);
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.below(i + 1));
        }
        let h = permute(&g, &perm);
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }
}
