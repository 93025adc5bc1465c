//! Colorings with at most Δ(G) colors for connected graphs that are neither
//! complete nor odd cycles.

use std::collections::VecDeque;

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    /// Color classes, each independent, in color order.
    pub classes: Vec<VertexSet>,
}

impl Coloring {
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    fn from_colors(n: usize, colors: &[usize]) -> Self {
        let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut classes = vec![VertexSet::new(n); k];
        for (v, &c) in colors.iter().enumerate() {
            classes[c].insert(v);
        }
        classes.retain(|c| !c.is_empty());
        Coloring { classes }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        let mut covered = VertexSet::new(g.n());
        for c in &self.classes {
            if c.iter().any(|v| g.neighbors(v).intersects(c)) || covered.intersects(c) {
                return false;
            }
            covered.union_with(c);
        }
        covered.len() == g.n()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is complete; it needs n colors")]
    Complete,
    #[error("graph is an odd cycle; it needs 3 colors")]
    OddCycle,
    #[error("no Brooks configuration found (internal)")]
    NoConfiguration,
}

const NONE: usize = usize::MAX;

/// Greedy coloring in the given order, honoring precolored vertices.
fn greedy(g: &Graph, order: &[usize], colors: &mut [usize]) {
    for &v in order {
        let mut used = vec![false; g.degree(v) + 1];
        for u in g.neighbors(v).iter() {
            if colors[u] != NONE && colors[u] < used.len() {
                used[colors[u]] = true;
            }
        }
        colors[v] = used.iter().position(|&b| !b).unwrap();
    }
}

/// BFS discovery order from `root` within `allowed`.
fn bfs_order(g: &Graph, root: usize, allowed: &VertexSet) -> Vec<usize> {
    let mut seen = VertexSet::new(g.n());
    seen.insert(root);
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v).intersection(allowed).iter() {
            if seen.insert(u) {
                order.push(u);
                queue.push_back(u);
            }
        }
    }
    order
}

fn connected_within(g: &Graph, allowed: &VertexSet) -> bool {
    match allowed.first() {
        None => true,
        Some(r) => bfs_order(g, r, allowed).len() == allowed.len(),
    }
}

/// Two colors by BFS parity for paths and even cycles.
fn two_color(g: &Graph) -> Coloring {
    let mut colors = vec![NONE; g.n()];
    if g.n() > 0 {
        let order = bfs_order(g, 0, &g.vertex_set());
        colors[0] = 0;
        for &v in &order {
            for u in g.neighbors(v).iter() {
                if colors[u] == NONE {
                    colors[u] = 1 - colors[v];
                }
            }
        }
    }
    Coloring::from_colors(g.n(), &colors)
}

/// Colors `g` with at most `max(Δ(g), 2)` colors following Brooks' proof:
/// a vertex of degree below Δ is colored last along a BFS tree; a cut vertex
/// splits the graph into pieces where it has low degree; otherwise a vertex
/// `x` with non-adjacent neighbors `y, z` such that `g - {y, z}` is connected
/// is found, `y` and `z` share a color and `x` is colored last.
pub fn brooks_coloring(g: &Graph) -> Result<Coloring, ColoringError> {
    if !g.is_connected() {
        return Err(ColoringError::Disconnected);
    }
    if g.is_complete() {
        return Err(ColoringError::Complete);
    }
    if g.is_odd_cycle() {
        return Err(ColoringError::OddCycle);
    }
    let delta = g.max_degree();
    if delta <= 2 {
        return Ok(two_color(g));
    }
    let all = g.vertex_set();
    let mut colors = vec![NONE; g.n()];
    if let Some(r) = (0..g.n()).find(|&v| g.degree(v) < delta) {
        let mut order = bfs_order(g, r, &all);
        order.reverse();
        greedy(g, &order, &mut colors);
        return Ok(Coloring::from_colors(g.n(), &colors));
    }
    if let Some(c) = g.articulation_points().first() {
        let mut rest = all.clone();
        rest.remove(c);
        let (h, map) = g.induced(&rest);
        for comp in h.connected_components() {
            let mut piece = map.lift(&comp, g.n());
            piece.insert(c);
            let mut local = vec![NONE; g.n()];
            let mut order = bfs_order(g, c, &piece);
            order.reverse();
            greedy(g, &order, &mut local);
            // rename colors so the cut vertex gets color 0 in every piece
            let shift = local[c];
            for v in piece.iter() {
                colors[v] = match local[v] {
                    x if x == shift => 0,
                    0 => shift,
                    x => x,
                };
            }
        }
        return Ok(Coloring::from_colors(g.n(), &colors));
    }
    for x in 0..g.n() {
        let nbrs = g.neighbors(x).to_vec();
        for (i, &y) in nbrs.iter().enumerate() {
            for &z in &nbrs[i + 1..] {
                if g.has_edge(y, z) {
                    continue;
                }
                let mut rest = all.clone();
                rest.remove(y);
                rest.remove(z);
                if !connected_within(g, &rest) {
                    continue;
                }
                colors[y] = 0;
                colors[z] = 0;
                let mut order = bfs_order(g, x, &rest);
                order.reverse();
                greedy(g, &order, &mut colors);
                return Ok(Coloring::from_colors(g.n(), &colors));
            }
        }
    }
    Err(ColoringError::NoConfiguration)
}

/// A coloring with at most `χ`-bounding colors for any connected graph:
/// complete graphs use `n` colors, odd cycles 3, everything else Brooks.
pub fn color_connected(g: &Graph) -> Result<Coloring, ColoringError> {
    if g.n() == 0 {
        return Ok(Coloring { classes: Vec::new() });
    }
    if g.is_complete() {
        let classes = (0..g.n()).map(|v| VertexSet::from_iter_in(g.n(), [v])).collect();
        return Ok(Coloring { classes });
    }
    if g.is_odd_cycle() {
        let mut colors: Vec<usize> = (0..g.n()).map(|_| NONE).collect();
        let order = bfs_order(g, 0, &g.vertex_set());
        greedy(g, &order, &mut colors);
        return Ok(Coloring::from_colors(g.n(), &colors));
    }
    brooks_coloring(g)
}
