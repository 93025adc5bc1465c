//! The reduction steps used by the constructive bound, each checked on its inputs.

use num_traits::One;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::bounds::{q, qi, Q};
use crate::constructive::brooks::{color_connected, Coloring, ColoringError};
use crate::exact::{exact_ids, BudgetExhausted, SolverBudget};
use crate::families::glue;
use crate::graph::{Graph, IdsCheck, IdsWitness, WitnessKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("input set is not an independent dominating set: {0:?}")]
    InvalidWitness(IdsCheck),
    #[error("selected vertex {vertex} misses the threshold: ratio {ratio}")]
    Threshold { vertex: usize, ratio: Q },
    #[error("constructed set of size {size} exceeds the bound {bound}")]
    BoundExceeded { size: usize, bound: Q },
    #[error("isolated-vertex identity fails at {vertex}: {got} != {want}")]
    Identity { vertex: usize, got: usize, want: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
}

fn pre(msg: impl Into<String>) -> LemmaError {
    LemmaError::Precondition(msg.into())
}

/// Turns an independent dominating set of `H'` (obtained from `h` by deleting
/// every edge at `w` except `w·kept`) into one of `h` that is no larger.
pub fn repair_after_edge_deletion(
    h: &Graph,
    w: usize,
    kept: usize,
    reduced_set: &VertexSet,
) -> Result<IdsWitness, LemmaError> {
    if h.degree(w) < 2 {
        return Err(pre(format!("vertex {w} has degree {} < 2", h.degree(w))));
    }
    if !h.has_edge(w, kept) {
        return Err(pre(format!("({w}, {kept}) is not an edge")));
    }
    let dropped: Vec<(usize, usize)> = h.neighbors(w).iter().filter(|&u| u != kept).map(|u| (w, u)).collect();
    let reduced = h.delete_edges(&dropped).expect("edges exist");
    let check = reduced.is_ids(reduced_set);
    if !check.is_valid() {
        return Err(LemmaError::InvalidWitness(check));
    }
    let out = if !reduced_set.intersects(h.neighbors(w)) || !reduced_set.contains(w) {
        reduced_set.clone()
    } else {
        let mut rest = reduced_set.clone();
        rest.remove(w);
        if !rest.intersects(h.neighbors(kept)) {
            rest.insert(kept);
        }
        rest
    };
    debug_assert!(h.is_ids(&out).is_valid());
    Ok(IdsWitness::new(out, WitnessKind::ConstructiveUpper))
}

/// Glues `g1` and `g2` at `v1 ~ v2` and merges `S1 ∪ (S2 \ {v})`.
///
/// Requires `S2 ∋ v2` with `S2 \ {v2}` dominating `g2 - v2`, and both sets
/// minimum for their graphs (checked with the exact solver). Vertex ids of
/// the result follow [`glue`].
pub fn one_sum_compose(
    g1: &Graph,
    v1: usize,
    g2: &Graph,
    v2: usize,
    s1: &VertexSet,
    s2: &VertexSet,
) -> Result<(Graph, IdsWitness), LemmaError> {
    for (g, s) in [(g1, s1), (g2, s2)] {
        let check = g.is_ids(s);
        if !check.is_valid() {
            return Err(LemmaError::InvalidWitness(check));
        }
    }
    if !s2.contains(v2) {
        return Err(pre(format!("S2 does not contain the shared vertex {v2}")));
    }
    let mut rest = s2.clone();
    rest.remove(v2);
    let mut dominated = rest.clone();
    for u in rest.iter() {
        dominated.union_with(g2.neighbors(u));
    }
    if let Some(x) = (0..g2.n()).find(|&x| x != v2 && !dominated.contains(x)) {
        return Err(pre(format!("S2 without {v2} leaves {x} undominated in G2 - v")));
    }
    for (name, g, s) in [("S1", g1, s1), ("S2", g2, s2)] {
        let opt = exact_ids(g, SolverBudget::default())?.size();
        if s.len() != opt {
            return Err(pre(format!("{name} has size {} but the minimum is {opt}", s.len())));
        }
    }
    let glued = glue(g1, v1, g2, v2);
    let map = |v: usize| if v < v2 { g1.n() + v } else { g1.n() + v - 1 };
    let mut set = VertexSet::from_iter_in(glued.n(), s1.iter());
    set.union_with(&VertexSet::from_iter_in(glued.n(), rest.iter().map(map)));
    debug_assert!(glued.is_ids(&set).is_valid());
    Ok((glued, IdsWitness::new(set, WitnessKind::ExactMinimum)))
}

/// Which of the two strict inequalities hold for `1 <= x < y`, `y >= 5`:
/// `(x(y-x)+1)/y < x(y+1-x)/(y+1)` and `(x(y-x)+1)/y < (x+1)(y-x)/(y+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IneqOutcome {
    FirstHolds,
    SecondHolds,
    Both,
    Neither,
}

pub fn check_lemma_ineq(x: i64, y: i64) -> Result<IneqOutcome, LemmaError> {
    if y < 5 {
        return Err(pre(format!("y = {y} < 5")));
    }
    if !(1 <= x && x < y) {
        return Err(pre(format!("need 1 <= x < y, got x = {x}, y = {y}")));
    }
    let lhs = q(x * (y - x) + 1, y);
    let first = lhs < q(x * (y + 1 - x), y + 1);
    let second = lhs < q((x + 1) * (y - x), y + 1);
    Ok(match (first, second) {
        (true, true) => IneqOutcome::Both,
        (true, false) => IneqOutcome::FirstHolds,
        (false, true) => IneqOutcome::SecondHolds,
        (false, false) => IneqOutcome::Neither,
    })
}

/// Leaf statistics: `leaf_count[v]` is the number of degree-1 neighbors of
/// `v`, `d1` its maximum, and `uniform` whether every vertex of degree at
/// least 2 has exactly `d1` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedProfile {
    pub d1: usize,
    pub uniform: bool,
    pub leaf_set: VertexSet,
    pub leaf_count: Vec<usize>,
}

impl BalancedProfile {
    pub fn of(g: &Graph) -> Self {
        let leaf_set = VertexSet::from_iter_in(g.n(), (0..g.n()).filter(|&v| g.degree(v) == 1));
        let leaf_count: Vec<usize> = (0..g.n()).map(|v| g.neighbors(v).intersection_len(&leaf_set)).collect();
        let d1 = leaf_count.iter().copied().max().unwrap_or(0);
        let uniform = (0..g.n()).filter(|&v| g.degree(v) >= 2).all(|v| leaf_count[v] == d1);
        BalancedProfile {
            d1,
            uniform,
            leaf_set,
            leaf_count,
        }
    }
}

/// `(n0(G - N[v]) + 1) / d(v)` computed on the graph.
pub fn removal_ratio(g: &Graph, v: usize) -> (usize, Q) {
    let (rest, _) = g.delete_vertices(&g.closed_neighborhood(v));
    let n0 = rest.isolated_count();
    (n0, q(n0 as i64 + 1, g.degree(v) as i64))
}

/// Picks `v` with exactly `d1` leaf neighbors next to some `u` with fewer,
/// both of degree at least 2, and re-checks the removal-ratio threshold.
pub fn select_vertex_unbalanced(delta: usize, g: &Graph, profile: &BalancedProfile) -> Result<usize, LemmaError> {
    let big: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 2).collect();
    if big.is_empty() || !g.is_connected() {
        return Err(pre("graph must be connected with a vertex of degree >= 2"));
    }
    if let Some(&v) = big.iter().find(|&&v| profile.leaf_count[v] == 0) {
        return Err(pre(format!("vertex {v} of degree >= 2 has no leaf neighbor")));
    }
    if profile.uniform {
        return Err(pre("leaf counts are uniform"));
    }
    let v = big
        .iter()
        .copied()
        .find(|&v| {
            profile.leaf_count[v] == profile.d1
                && g.neighbors(v)
                    .iter()
                    .any(|u| g.degree(u) >= 2 && profile.leaf_count[u] < profile.d1)
        })
        .ok_or_else(|| pre("no edge between a full and a deficient vertex"))?;
    let (_, ratio) = removal_ratio(g, v);
    if ratio > threshold(delta) {
        return Err(LemmaError::Threshold { vertex: v, ratio });
    }
    Ok(v)
}

fn threshold(delta: usize) -> Q {
    let d = delta as i64;
    q(d * d / 4, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BalancedCheck {
    Passes(Q),
    Fails(Q),
}

/// Checks the removal-ratio threshold for `v` when leaf counts are uniform,
/// using `n0(G - N[v]) = d1·(d(v) - d1)` (verified against the graph).
pub fn select_check_balanced(
    delta: usize,
    g: &Graph,
    v: usize,
    profile: &BalancedProfile,
) -> Result<BalancedCheck, LemmaError> {
    let d = g.degree(v);
    let d1 = profile.d1;
    if !profile.uniform || d1 == 0 {
        return Err(pre(
            "every vertex of degree >= 2 must have exactly d1 > 0 leaf neighbors",
        ));
    }
    if d < 2 {
        return Err(pre(format!("vertex {v} has degree {d} < 2")));
    }
    let middle = d1 == delta / 2 || d1 == delta.div_ceil(2);
    if middle && d >= delta {
        return Err(pre(format!("d1 = {d1} is a middle value and d({v}) = {d} = delta")));
    }
    let (n0, ratio) = removal_ratio(g, v);
    let want = d1 * (d - d1);
    if n0 != want {
        return Err(LemmaError::Identity {
            vertex: v,
            got: n0,
            want,
        });
    }
    Ok(if ratio <= threshold(delta) {
        BalancedCheck::Passes(ratio)
    } else {
        BalancedCheck::Fails(ratio)
    })
}

/// `(d1·(d - d1) + 1) / d`, the uniform-profile removal ratio.
pub fn balanced_ratio(d: usize, d1: usize) -> Q {
    q((d1 * (d - d1)) as i64 + 1, d as i64)
}

/// `1 - (Δ-1)/((d1+1)(Δ-d1))`.
pub fn coloring_coefficient(delta: usize, d1: usize) -> Q {
    let (d, k) = (delta as i64, d1 as i64);
    Q::one() - q(d - 1, (k + 1) * (d - k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub witness: IdsWitness,
    pub coloring: Coloring,
    pub bound: Q,
}

/// Colors the non-leaf part with at most `Δ - d1` colors, grows the largest
/// class to a maximal independent set there (ascending ids), and adds every
/// leaf left undominated.
pub fn greedy_bound_ids(delta: usize, g: &Graph, profile: &BalancedProfile) -> Result<GreedyOutcome, LemmaError> {
    let d1 = profile.d1;
    if !g.is_connected() {
        return Err(pre("graph must be connected"));
    }
    if !profile.uniform || d1 == 0 || d1 >= delta {
        return Err(pre(format!("need uniform leaf count 0 < d1 < delta, got d1 = {d1}")));
    }
    if g.max_degree() > delta {
        return Err(pre("maximum degree exceeds delta"));
    }
    let (core, map) = g.delete_vertices(&profile.leaf_set);
    if core.n() == 0 {
        return Err(pre("no vertex of degree >= 2"));
    }
    let colors_allowed = delta - d1;
    if core.is_complete() && core.n() == colors_allowed + 1 {
        return Err(pre("non-leaf part is complete on delta - d1 + 1 vertices"));
    }
    if colors_allowed == 2 && core.is_odd_cycle() {
        return Err(pre("non-leaf part is an odd cycle with delta - d1 = 2"));
    }
    let coloring = color_connected(&core)?;
    if coloring.k() > colors_allowed {
        return Err(pre(format!("coloring uses {} > {colors_allowed} colors", coloring.k())));
    }
    let mut pick = coloring
        .classes
        .iter()
        .max_by_key(|c| (c.len(), std::cmp::Reverse(c.first())))
        .cloned()
        .unwrap();
    for v in 0..core.n() {
        if !pick.contains(v) && !core.neighbors(v).intersects(&pick) {
            pick.insert(v);
        }
    }
    let mut set = map.lift(&pick, g.n());
    let mut dominated = set.clone();
    for v in set.iter() {
        dominated.union_with(g.neighbors(v));
    }
    set.union_with(&profile.leaf_set.difference(&dominated));
    let bound = coloring_coefficient(delta, d1) * qi(g.n());
    if qi(set.len()) > bound {
        return Err(LemmaError::BoundExceeded { size: set.len(), bound });
    }
    Ok(GreedyOutcome {
        witness: IdsWitness::new(set, WitnessKind::ConstructiveUpper),
        coloring,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::min_ids_by_enumeration;
    use crate::families::gen_h;

    fn set(n: usize, xs: &[usize]) -> VertexSet {
        VertexSet::from_iter_in(n, xs.iter().copied())
    }

    #[test]
    fn repair_on_c5() {
        let c5 = Graph::cycle(5);
        // H' is the path 4-3-2-1-0
        let out = repair_after_edge_deletion(&c5, 0, 1, &set(5, &[0, 2, 4])).unwrap();
        assert_eq!(out.set, set(5, &[2, 4]));
        let out = repair_after_edge_deletion(&c5, 0, 1, &set(5, &[0, 2])).unwrap_err();
        assert!(matches!(out, LemmaError::InvalidWitness(_)));
        let out = repair_after_edge_deletion(&c5, 0, 1, &set(5, &[0, 3])).unwrap();
        assert!(c5.is_ids(&out.set).is_valid());
        assert!(out.size() <= 2);
        let out = repair_after_edge_deletion(&c5, 0, 1, &set(5, &[1, 3])).unwrap();
        assert_eq!(out.set, set(5, &[1, 3]));
    }

    #[test]
    fn repair_on_triangle_with_pendant() {
        // K3 on {0,1,2} with pendant 3 at 0; keep 0-3, so H' = K2{0,3} + K2{1,2}
        let h = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let out = repair_after_edge_deletion(&h, 0, 3, &set(4, &[0, 1])).unwrap();
        assert!(h.is_ids(&out.set).is_valid());
        assert!(out.size() <= 2);
        assert!(repair_after_edge_deletion(&h, 3, 0, &set(4, &[0])).is_err());
    }

    #[test]
    fn one_sum_of_two_h32() {
        let h = gen_h(3, 2);
        // leaf 3 hangs off clique vertex 0; choose clique vertex 1 and leaves of 0 and 2
        let s2 = set(9, &[1, 3, 4, 7, 8]);
        let s1 = set(9, &[0, 5, 6, 7, 8]);
        let (g, w) = one_sum_compose(&h, 3, &h, 3, &s1, &s2).unwrap();
        assert_eq!(g.n(), 17);
        assert_eq!(w.size(), 9);
        assert_eq!(min_ids_by_enumeration(&g).0, 9);
        // K1 on the left returns S2 unchanged in size
        let (g, w) = one_sum_compose(&Graph::empty(1), 0, &h, 3, &set(1, &[0]), &s2).unwrap();
        assert_eq!((g.n(), w.size()), (9, 5));
    }

    #[test]
    fn one_sum_rejects_bad_hypotheses() {
        let p3 = Graph::path(3);
        let err = one_sum_compose(&p3, 0, &p3, 0, &set(3, &[1]), &set(3, &[0, 2])).unwrap_err();
        assert!(matches!(err, LemmaError::Precondition(_)));
        let err = one_sum_compose(&p3, 0, &p3, 0, &set(3, &[1]), &set(3, &[1])).unwrap_err();
        assert!(matches!(err, LemmaError::Precondition(_)));
    }

    #[test]
    fn inequality_examples() {
        assert_eq!(check_lemma_ineq(1, 5), Ok(IneqOutcome::SecondHolds));
        assert_eq!(check_lemma_ineq(2, 6), Ok(IneqOutcome::SecondHolds));
        assert_ne!(check_lemma_ineq(2, 5), Ok(IneqOutcome::Neither));
        assert!(check_lemma_ineq(1, 4).is_err());
        assert!(check_lemma_ineq(5, 5).is_err());
    }

    #[test]
    fn unbalanced_selection() {
        // u-v, u-l1, v-l2, v-l3 with u=0, v=1
        let g = Graph::new(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        let p = BalancedProfile::of(&g);
        assert_eq!(p.d1, 2);
        assert!(!p.uniform);
        assert_eq!(select_vertex_unbalanced(4, &g, &p), Ok(1));
        assert_eq!(removal_ratio(&g, 1), (1, q(2, 3)));
        let h = gen_h(3, 2);
        assert!(select_vertex_unbalanced(4, &h, &BalancedProfile::of(&h)).is_err());
    }

    /// Path a-v-b with two leaves on each, plus two more non-leaf neighbors
    /// where needed to reach degree `d` at `v`.
    fn uniform_star(d: usize, d1: usize) -> Graph {
        let others = d - d1;
        let mut edges = Vec::new();
        let mut next = 1 + others;
        for i in 1..=others {
            edges.push((0, i));
        }
        for c in 0..=others {
            for _ in 0..d1 {
                edges.push((c, next));
                next += 1;
            }
        }
        Graph::new(next, &edges).unwrap()
    }

    #[test]
    fn balanced_checks() {
        let g = uniform_star(4, 2);
        let p = BalancedProfile::of(&g);
        assert!(p.uniform);
        assert_eq!(select_check_balanced(5, &g, 0, &p), Ok(BalancedCheck::Fails(q(5, 4))));
        assert_eq!(select_check_balanced(6, &g, 0, &p), Ok(BalancedCheck::Passes(q(5, 4))));
        let g = uniform_star(3, 1);
        let p = BalancedProfile::of(&g);
        assert_eq!(select_check_balanced(6, &g, 0, &p), Ok(BalancedCheck::Passes(q(1, 1))));
        assert_eq!(balanced_ratio(4, 2), q(5, 4));
        let h = gen_h(3, 2);
        assert!(select_check_balanced(4, &h, 0, &BalancedProfile::of(&h)).is_err());
    }

    #[test]
    fn greedy_on_leafy_c4() {
        let g = crate::families::gen_h(1, 0);
        assert!(greedy_bound_ids(4, &g, &BalancedProfile::of(&g)).is_err());
        let c4 = Graph::cycle(4);
        let mut edges = c4.edges();
        for v in 0..4 {
            edges.push((v, 4 + 2 * v));
            edges.push((v, 5 + 2 * v));
        }
        let g = Graph::new(12, &edges).unwrap();
        let out = greedy_bound_ids(4, &g, &BalancedProfile::of(&g)).unwrap();
        assert_eq!(out.bound, qi(6));
        assert_eq!(out.witness.size(), 6);
        assert!(g.is_ids(&out.witness.set).is_valid());
        let p3 = Graph::new(6, &[(0, 1), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        for delta in 3..8 {
            let out = greedy_bound_ids(delta, &p3, &BalancedProfile::of(&p3)).unwrap();
            assert_eq!(out.bound, qi(3));
            assert!(out.witness.size() <= 3);
        }
    }
}
