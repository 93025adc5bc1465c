//! Immutable simple graphs over dense vertex ids with bitset adjacency.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge ({0}, {0})")]
    Loop(usize),
    #[error("edge ({u}, {v}) has a vertex outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is symmetric and loop-free; `degrees[v] == adj[v].len()`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
    degrees: Vec<usize>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Vertex relabeling produced by taking an induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    /// `old_to_new[v]` is the id of `v` in the new graph, or `None` if deleted.
    pub old_to_new: Vec<Option<usize>>,
    /// `new_to_old[i]` is the original id of new vertex `i`; ascending.
    pub new_to_old: Vec<usize>,
}

impl Relabel {
    pub fn lift(&self, set: &VertexSet, old_universe: usize) -> VertexSet {
        VertexSet::from_iter_in(old_universe, set.iter().map(|v| self.new_to_old[v]))
    }
}

/// Outcome of checking a candidate independent dominating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdsCheck {
    Valid,
    NotIndependent(usize, usize),
    NotDominating(usize),
}

impl IdsCheck {
    pub fn is_valid(self) -> bool {
        self == IdsCheck::Valid
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    ExactMinimum,
    ConstructiveUpper,
}

/// An independent dominating set together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdsWitness {
    pub set: VertexSet,
    pub kind: WitnessKind,
}

impl IdsWitness {
    pub fn new(set: VertexSet, kind: WitnessKind) -> Self {
        IdsWitness { set, kind }
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![VertexSet::new(n); n])
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| {
                let mut s = VertexSet::full(n);
                s.remove(v);
                s
            })
            .collect();
        Self::from_adjacency(adj)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).unwrap()
    }

    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        let degrees: Vec<usize> = adj.iter().map(VertexSet::len).collect();
        let m = degrees.iter().sum::<usize>() / 2;
        Graph {
            n: adj.len(),
            m,
            adj,
            degrees,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            out.extend(self.adj[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Induced subgraph on `V \ removed`, relabeled in ascending order of old id.
    pub fn delete_vertices(&self, removed: &VertexSet) -> (Graph, Relabel) {
        self.induced(&removed.complement())
    }

    /// Induced subgraph on `keep`, relabeled in ascending order of old id.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Relabel) {
        let new_to_old: Vec<usize> = keep.iter().collect();
        let mut old_to_new = vec![None; self.n];
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let k = new_to_old.len();
        let adj = new_to_old
            .iter()
            .map(|&v| VertexSet::from_iter_in(k, self.adj[v].iter().filter_map(|u| old_to_new[u])))
            .collect();
        (Graph::from_adjacency(adj), Relabel { old_to_new, new_to_old })
    }

    pub fn delete_edges(&self, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = self.adj.clone();
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(GraphError::NotAnEdge(u, v));
            }
            adj[u].remove(v);
            adj[v].remove(u);
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(u, v)| (u + self.n, v + self.n)));
        Graph::new(n, &edges).unwrap()
    }

    /// Connected components ordered by their minimum vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut frontier = VertexSet::new(self.n);
            frontier.insert(s);
            while !frontier.is_empty() {
                comp.union_with(&frontier);
                let mut next = VertexSet::new(self.n);
                for v in frontier.iter() {
                    next.union_with(&self.adj[v]);
                }
                next.difference_with(&comp);
                frontier = next;
            }
            seen.union_with(&comp);
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * self.n.saturating_sub(1) / 2
    }

    /// True iff the graph is a single cycle (connected, 2-regular).
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.degrees.iter().all(|&d| d == 2) && self.is_connected()
    }

    pub fn is_odd_cycle(&self) -> bool {
        self.n % 2 == 1 && self.is_cycle()
    }

    /// Depth-first low-link pass; returns `(bridges, articulation points)`.
    fn lowlink(&self) -> (Vec<(usize, usize)>, VertexSet) {
        const UNSEEN: usize = usize::MAX;
        let n = self.n;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut bridges = Vec::new();
        let mut cuts = VertexSet::new(n);
        let nbrs: Vec<Vec<usize>> = self.adj.iter().map(VertexSet::to_vec).collect();
        let mut time = 0;
        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, UNSEEN, 0usize)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            while let Some(top) = stack.last_mut() {
                let (v, parent) = (top.0, top.1);
                if top.2 < nbrs[v].len() {
                    let u = nbrs[v][top.2];
                    top.2 += 1;
                    if u == parent {
                        continue;
                    }
                    if disc[u] == UNSEEN {
                        disc[u] = time;
                        low[u] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((u, v, 0));
                    } else {
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if parent != UNSEEN {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            bridges.push((parent.min(v), parent.max(v)));
                        }
                        if parent != root && low[v] >= disc[parent] {
                            cuts.insert(parent);
                        }
                    }
                }
            }
            if root_children > 1 {
                cuts.insert(root);
            }
        }
        bridges.sort_unstable();
        (bridges, cuts)
    }

    /// Bridges as sorted `(u, v)` pairs with `u < v`.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        self.lowlink().0
    }

    pub fn articulation_points(&self) -> VertexSet {
        self.lowlink().1
    }

    /// Vertices lying on at least one cycle: those incident to a non-bridge edge.
    pub fn cycle_vertices(&self) -> VertexSet {
        let bridges = self.bridges();
        let mut out = VertexSet::new(self.n);
        for (u, v) in self.edges() {
            if bridges.binary_search(&(u, v)).is_err() {
                out.insert(u);
                out.insert(v);
            }
        }
        out
    }

    pub fn is_ids(&self, set: &VertexSet) -> IdsCheck {
        for u in set.iter() {
            if let Some(v) = self.adj[u].intersection(set).first() {
                return IdsCheck::NotIndependent(u.min(v), u.max(v));
            }
        }
        let mut dominated = set.clone();
        for u in set.iter() {
            dominated.union_with(&self.adj[u]);
        }
        match dominated.complement().first() {
            Some(v) => IdsCheck::NotDominating(v),
            None => IdsCheck::Valid,
        }
    }

    /// Number of degree-0 vertices.
    pub fn isolated_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 0).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> VertexSet {
        VertexSet::from_iter_in(n, xs.iter().copied())
    }

    #[test]
    fn build_rejects_bad_pairs() {
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::OutOfRange { u: 0, v: 3, n: 3 })
        );
        let g = Graph::new(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn trivial_graphs() {
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));
        assert_eq!(k1.closed_neighborhood(0).to_vec(), vec![0]);
        let c5 = Graph::cycle(5);
        assert!(c5.degrees().iter().all(|&d| d == 2));
        assert_eq!(c5.closed_neighborhood(0).to_vec(), vec![0, 1, 4]);
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.closed_neighborhood(0).len(), 5);
    }

    #[test]
    fn delete_vertices_relabels() {
        let c5 = Graph::cycle(5);
        let (p4, map) = c5.delete_vertices(&set(5, &[0]));
        assert_eq!(p4.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(map.new_to_old, vec![1, 2, 3, 4]);
        assert_eq!(map.old_to_new[0], None);
        let (same, _) = c5.delete_vertices(&VertexSet::new(5));
        assert_eq!(same, c5);
    }

    #[test]
    fn delete_edges_checks_membership() {
        let c5 = Graph::cycle(5);
        let p5 = c5.delete_edges(&[(0, 1)]).unwrap();
        assert_eq!(p5.m(), 4);
        assert!(p5.cycle_vertices().is_empty());
        assert_eq!(c5.delete_edges(&[(0, 2)]), Err(GraphError::NotAnEdge(0, 2)));
        let k4 = Graph::complete(4);
        let g = k4.delete_edges(&[(0, 2), (0, 3)]).unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.cycle_vertices().to_vec(), vec![1, 2, 3]);
    }

    #[test]
    fn components_are_ordered() {
        assert_eq!(Graph::empty(1).connected_components(), vec![set(1, &[0])]);
        assert_eq!(Graph::cycle(5).connected_components().len(), 1);
        let g = Graph::complete(3).disjoint_union(&Graph::empty(1));
        assert_eq!(g.connected_components(), vec![set(4, &[0, 1, 2]), set(4, &[3])]);
    }

    #[test]
    fn cycle_vertices_basic() {
        assert!(Graph::path(5).cycle_vertices().is_empty());
        assert_eq!(Graph::cycle(5).cycle_vertices().len(), 5);
    }

    #[test]
    fn ids_witnesses() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.is_ids(&set(5, &[0, 2])), IdsCheck::Valid);
        assert_eq!(c5.is_ids(&set(5, &[0, 1])), IdsCheck::NotIndependent(0, 1));
        assert!(matches!(
            c5.is_ids(&set(5, &[0])),
            IdsCheck::NotDominating(2) | IdsCheck::NotDominating(3)
        ));
    }

    #[test]
    fn articulation_points_of_bowtie() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(g.articulation_points().to_vec(), vec![2]);
        assert!(g.bridges().is_empty());
    }
}
