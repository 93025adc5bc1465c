//! Exact minimum independent dominating sets by branch and bound, plus a
//! pivoting maximal-independent-set enumerator used as a second oracle.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{Graph, IdsWitness, WitnessKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverBudget {
    pub max_nodes: u64,
    pub time_cap: Duration,
}

impl SolverBudget {
    pub fn new(max_nodes: u64, time_cap: Duration) -> Self {
        assert!(max_nodes > 0 && !time_cap.is_zero(), "budget must be positive");
        SolverBudget { max_nodes, time_cap }
    }
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget::new(200_000_000, Duration::from_secs(120))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("search budget exhausted after {nodes} nodes")]
pub struct BudgetExhausted {
    /// Best valid set seen so far; never claimed minimum.
    pub best_upper: IdsWitness,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSolution {
    pub witness: IdsWitness,
    pub nodes: u64,
}

impl ExactSolution {
    pub fn size(&self) -> usize {
        self.witness.size()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Minimize,
    Count,
}

struct Search {
    mode: Mode,
    closed: Vec<VertexSet>,
    spread: usize,
    best: usize,
    best_set: Vec<usize>,
    count: u64,
    nodes: u64,
    budget: SolverBudget,
    start: Instant,
    exhausted: bool,
}

impl Search {
    fn new(g: &Graph, mode: Mode, budget: SolverBudget, start: Instant) -> Self {
        let greedy = greedy_mis(g);
        Search {
            mode,
            closed: (0..g.n()).map(|v| g.closed_neighborhood(v)).collect(),
            spread: g.max_degree() + 1,
            best: greedy.len(),
            best_set: greedy.to_vec(),
            count: 0,
            nodes: 0,
            budget,
            start,
            exhausted: false,
        }
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.budget.max_nodes
            || (self.nodes % 1024 == 0 && self.start.elapsed() >= self.budget.time_cap)
        {
            self.exhausted = true;
        }
        self.exhausted
    }

    /// `undominated` doubles as the set of vertices still eligible for the
    /// set; `forbidden` holds earlier siblings so each set is reached once.
    fn run(&mut self, undominated: &VertexSet, forbidden: &VertexSet, chosen: &mut Vec<usize>) {
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }
        let Some(v) = undominated.first() else {
            match chosen.len().cmp(&self.best) {
                std::cmp::Ordering::Less => {
                    self.best = chosen.len();
                    self.best_set = chosen.clone();
                    self.count = 1;
                }
                std::cmp::Ordering::Equal => self.count += 1,
                std::cmp::Ordering::Greater => {}
            }
            return;
        };
        let lower = chosen.len() + undominated.len().div_ceil(self.spread);
        let prune = match self.mode {
            Mode::Minimize => lower >= self.best,
            Mode::Count => lower > self.best,
        };
        if prune {
            return;
        }
        let mut candidates = self.closed[v].intersection(undominated);
        candidates.difference_with(forbidden);
        let mut blocked = forbidden.clone();
        for u in candidates.iter() {
            chosen.push(u);
            let rest = undominated.difference(&self.closed[u]);
            self.run(&rest, &blocked, chosen);
            chosen.pop();
            if self.exhausted {
                return;
            }
            blocked.insert(u);
        }
    }
}

/// Lowest-index-first maximal independent set.
pub fn greedy_mis(g: &Graph) -> VertexSet {
    let mut set = VertexSet::new(g.n());
    let mut free = g.vertex_set();
    while let Some(v) = free.first() {
        set.insert(v);
        free.difference_with(&g.closed_neighborhood(v));
    }
    set
}

fn solve_component(g: &Graph, mode: Mode, budget: SolverBudget, start: Instant, nodes_before: u64) -> (Search, bool) {
    let mut s = Search::new(g, mode, budget, start);
    s.nodes = nodes_before;
    if mode == Mode::Count {
        // the count must include sets equal in size to the greedy start
        s.best += 1;
        s.best_set.clear();
    }
    s.run(&g.vertex_set(), &VertexSet::new(g.n()), &mut Vec::new());
    let ok = !s.exhausted;
    (s, ok)
}

/// Computes `i(G)` and a minimum independent dominating set. Components are
/// solved separately and their sets combined.
pub fn exact_ids(g: &Graph, budget: SolverBudget) -> Result<ExactSolution, BudgetExhausted> {
    let start = Instant::now();
    let mut set = VertexSet::new(g.n());
    let mut nodes = 0;
    let mut failed = false;
    for comp in g.connected_components() {
        let (h, map) = g.induced(&comp);
        if failed {
            set.union_with(&map.lift(&greedy_mis(&h), g.n()));
            continue;
        }
        let (s, ok) = solve_component(&h, Mode::Minimize, budget, start, nodes);
        nodes = s.nodes;
        let local = VertexSet::from_iter_in(h.n(), s.best_set.iter().copied());
        set.union_with(&map.lift(&local, g.n()));
        failed = !ok;
    }
    if failed {
        return Err(BudgetExhausted {
            best_upper: IdsWitness::new(set, WitnessKind::ConstructiveUpper),
            nodes,
        });
    }
    Ok(ExactSolution {
        witness: IdsWitness::new(set, WitnessKind::ExactMinimum),
        nodes,
    })
}

/// Number of distinct minimum independent dominating sets.
pub fn count_min_ids(g: &Graph, budget: SolverBudget) -> Result<u64, BudgetExhausted> {
    let start = Instant::now();
    let mut total = 1u64;
    let mut nodes = 0;
    for comp in g.connected_components() {
        let (h, _) = g.induced(&comp);
        let (s, ok) = solve_component(&h, Mode::Count, budget, start, nodes);
        nodes = s.nodes;
        if !ok {
            return Err(BudgetExhausted {
                best_upper: IdsWitness::new(greedy_mis(g), WitnessKind::ConstructiveUpper),
                nodes,
            });
        }
        total = total.saturating_mul(s.count);
    }
    Ok(total)
}

/// Calls `visit` on every maximal independent set (Bron–Kerbosch with
/// pivoting on the complement graph).
pub fn for_each_maximal_independent_set<F: FnMut(&VertexSet)>(g: &Graph, mut visit: F) {
    let closed: Vec<VertexSet> = (0..g.n()).map(|v| g.closed_neighborhood(v)).collect();
    fn rec<F: FnMut(&VertexSet)>(
        closed: &[VertexSet],
        r: &mut VertexSet,
        p: VertexSet,
        mut x: VertexSet,
        visit: &mut F,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                visit(r);
            }
            return;
        }
        // pivot: the vertex whose complement-neighborhood covers most of P
        let pivot = p
            .union(&x)
            .iter()
            .max_by_key(|&u| (p.len() - p.intersection_len(&closed[u]), std::cmp::Reverse(u)))
            .unwrap();
        let mut p = p;
        for v in p.intersection(&closed[pivot]).iter() {
            r.insert(v);
            rec(closed, r, p.difference(&closed[v]), x.difference(&closed[v]), visit);
            r.remove(v);
            p.remove(v);
            x.insert(v);
        }
    }
    if g.n() == 0 {
        visit(&VertexSet::new(0));
        return;
    }
    let mut r = VertexSet::new(g.n());
    rec(&closed, &mut r, g.vertex_set(), VertexSet::new(g.n()), &mut visit);
}

/// `(i(G), number of minimum sets)` by exhaustive maximal-set enumeration.
pub fn min_ids_by_enumeration(g: &Graph) -> (usize, u64) {
    let mut best = usize::MAX;
    let mut count = 0;
    for_each_maximal_independent_set(g, |s| {
        let k = s.len();
        if k < best {
            best = k;
            count = 1;
        } else if k == best {
            count += 1;
        }
    });
    (best, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_figure1, gen_h};

    fn i(g: &Graph) -> usize {
        let sol = exact_ids(g, SolverBudget::default()).unwrap();
        assert!(g.is_ids(&sol.witness.set).is_valid());
        sol.size()
    }

    /// Minimum over all subsets that pass the definition directly.
    fn brute(g: &Graph) -> (usize, u64) {
        let mut best = (usize::MAX, 0);
        for mask in 0u32..(1 << g.n()) {
            let s = VertexSet::from_iter_in(g.n(), (0..g.n()).filter(|v| mask >> v & 1 == 1));
            if g.is_ids(&s).is_valid() {
                let k = s.len();
                if k < best.0 {
                    best = (k, 1);
                } else if k == best.0 {
                    best.1 += 1;
                }
            }
        }
        best
    }

    #[test]
    fn known_values() {
        assert_eq!(brute(&Graph::cycle(5)), (2, 5));
        assert_eq!(i(&Graph::cycle(5)), 2);
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(i(&star), 1);
        assert_eq!(i(&gen_figure1(1)), 5);
        assert_eq!(brute(&gen_h(3, 2)).0, 5);
        assert_eq!(i(&gen_h(3, 2)), 5);
        assert_eq!(i(&Graph::empty(0)), 0);
        assert_eq!(i(&Graph::empty(3)), 3);
    }

    #[test]
    fn counts() {
        let b = SolverBudget::default();
        assert_eq!(count_min_ids(&Graph::complete(3), b), Ok(3));
        assert_eq!(count_min_ids(&Graph::cycle(5), b), Ok(5));
        assert_eq!(count_min_ids(&Graph::empty(1), b), Ok(1));
        assert_eq!(count_min_ids(&gen_h(3, 2), b).unwrap(), brute(&gen_h(3, 2)).1);
    }

    #[test]
    fn enumeration_oracle_matches_brute_force() {
        for g in [Graph::cycle(6), Graph::path(7), gen_h(3, 1), Graph::complete(4)] {
            assert_eq!(min_ids_by_enumeration(&g), brute(&g));
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let g = gen_figure1(2);
        let tight = SolverBudget::new(3, Duration::from_secs(10));
        let err = exact_ids(&g, tight).unwrap_err();
        assert_eq!(err.best_upper.kind, WitnessKind::ConstructiveUpper);
        assert!(g.is_ids(&err.best_upper.set).is_valid());
        assert!(count_min_ids(&g, tight).is_err());
    }
}
