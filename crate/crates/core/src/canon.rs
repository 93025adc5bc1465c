//! Canonical labeling for small graphs (n <= 64) by individualization and
//! refinement, and the isomorph-free enumerator built on it.

use std::collections::HashSet;

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;

pub const MAX_CANON_N: usize = 64;
pub const MAX_ENUM_N: usize = 9;

/// Rows of the relabeled adjacency matrix; equal iff the graphs are isomorphic.
pub type CanonCode = Vec<u64>;

type Partition = Vec<Vec<usize>>;

fn rows(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, u| acc | 1 << u))
        .collect()
}

/// Splits every cell by neighbor counts into the other cells until stable.
fn refine(rows: &[u64], mut part: Partition) -> Partition {
    loop {
        let masks: Vec<u64> = part.iter().map(|c| c.iter().fold(0u64, |a, &v| a | 1 << v)).collect();
        let mut next: Partition = Vec::with_capacity(part.len());
        for cell in &part {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let key = masks.iter().map(|m| (rows[v] & m).count_ones()).collect();
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == part.len() {
            return next;
        }
        part = next;
    }
}

fn are_twins(rows: &[u64], u: usize, v: usize) -> bool {
    let mask = !(1u64 << u | 1u64 << v);
    rows[u] & mask == rows[v] & mask
}

fn code_of(rows: &[u64], order: &[usize]) -> CanonCode {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| {
            let mut r = 0u64;
            let mut bits = rows[v];
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                r |= 1 << (n - 1 - pos[u]);
            }
            r
        })
        .collect()
}

fn search(rows: &[u64], part: Partition, best: &mut Option<(CanonCode, Vec<usize>)>) {
    let Some(target) = part.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = part.iter().map(|c| c[0]).collect();
        let code = code_of(rows, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = &part[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        // swapping twins is an automorphism, so one representative suffices
        if tried.iter().any(|&u| are_twins(rows, u, v)) {
            continue;
        }
        tried.push(v);
        let mut child = part.clone();
        let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
        child.splice(target..=target, [vec![v], rest]);
        search(rows, refine(rows, child), best);
    }
}

/// Returns the canonical code and the order `order[position] = vertex`.
pub fn canonical_labeling(g: &Graph) -> (CanonCode, Vec<usize>) {
    assert!(g.n() <= MAX_CANON_N, "canonical labeling supports n <= 64");
    if g.n() == 0 {
        return (Vec::new(), Vec::new());
    }
    let rows = rows(g);
    let mut by_degree: Vec<usize> = (0..g.n()).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    let mut part: Partition = Vec::new();
    for v in by_degree {
        match part.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => part.push(vec![v]),
        }
    }
    let mut best = None;
    search(&rows, refine(&rows, part), &mut best);
    best.expect("search visits at least one leaf")
}

pub fn canonical_code(g: &Graph) -> CanonCode {
    canonical_labeling(g).0
}

/// The graph relabeled so that position `i` of the canonical order becomes vertex `i`.
pub fn canonical_form(g: &Graph) -> Graph {
    let (_, order) = canonical_labeling(g);
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (pos[u], pos[v])).collect();
    Graph::new(g.n(), &edges).unwrap()
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_code(a) == canonical_code(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("enumeration supports 1 <= n <= {MAX_ENUM_N}, got {0}")]
    OutOfRange(usize),
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices with maximum degree at most `max_deg`, in canonical form and
/// sorted by canonical code.
///
/// Every connected graph has a vertex whose removal leaves it connected, so
/// each class on `n` vertices arises by attaching a vertex to a class on
/// `n - 1` vertices; duplicates are removed by canonical code.
pub fn enumerate_connected(n: usize, max_deg: usize) -> Result<Vec<Graph>, EnumerateError> {
    if !(1..=MAX_ENUM_N).contains(&n) {
        return Err(EnumerateError::OutOfRange(n));
    }
    let mut level = vec![Graph::empty(1)];
    for k in 1..n {
        if max_deg == 0 {
            return Ok(Vec::new());
        }
        let mut seen: HashSet<CanonCode> = HashSet::new();
        let mut next: Vec<(CanonCode, Graph)> = Vec::new();
        for g in &level {
            let open: Vec<usize> = (0..k).filter(|&v| g.degree(v) < max_deg).collect();
            let base = g.edges();
            for mask in 1u64..(1 << open.len()) {
                if mask.count_ones() as usize > max_deg {
                    continue;
                }
                let mut edges = base.clone();
                edges.extend(
                    open.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| (v, k)),
                );
                let h = Graph::new(k + 1, &edges).unwrap();
                let (code, order) = canonical_labeling(&h);
                if seen.insert(code.clone()) {
                    next.push((code, relabel(&h, &order)));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        level = next.into_iter().map(|(_, g)| g).collect();
    }
    Ok(level)
}

fn relabel(g: &Graph, order: &[usize]) -> Graph {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj = (0..g.n())
        .map(|i| VertexSet::from_iter_in(g.n(), g.neighbors(order[i]).iter().map(|u| pos[u])))
        .collect();
    Graph::from_adjacency(adj)
}
