//! Recognition of Δ-special graphs and their minimum independent dominating sets.
//!
//! A connected graph is Δ-special when every vertex on a cycle has degree Δ,
//! every edge has an end on a cycle, and each component of the subgraph
//! induced by cycle vertices is `K_{⌈Δ/2⌉+1}`, `K_{⌊Δ/2⌋+1}`, or (Δ = 4) an
//! odd cycle. `K_1` is special.

use std::collections::VecDeque;

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::bounds::BoundParams;
use crate::graph::{Graph, IdsWitness, WitnessKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoreClass {
    CliqueBig,
    CliqueSmall,
    OddCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Rejection {
    Disconnected,
    /// A cycle vertex whose degree differs from Δ.
    CycleVertexDegree {
        vertex: usize,
        degree: usize,
    },
    EdgeWithNoCycleEnd {
        u: usize,
        v: usize,
    },
    BadCoreComponent {
        vertices: Vec<usize>,
    },
}

impl Rejection {
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::Disconnected => "disconnected",
            Rejection::CycleVertexDegree { .. } => "cycle-vertex-degree",
            Rejection::EdgeWithNoCycleEnd { .. } => "edge-with-no-cycle-end",
            Rejection::BadCoreComponent { .. } => "bad-core-component",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Special,
    Rejected(Rejection),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialCertificate {
    pub delta: usize,
    /// Vertices lying on some cycle.
    pub cycle_vertices: VertexSet,
    /// Components of the subgraph induced by `cycle_vertices`, by minimum vertex.
    pub cores: Vec<(VertexSet, CoreClass)>,
    /// Non-cycle vertices of degree at least 2 with the cores they join.
    pub gluing: Vec<(usize, Vec<usize>)>,
    pub verdict: Verdict,
}

impl SpecialCertificate {
    pub fn is_special(&self) -> bool {
        self.verdict == Verdict::Special
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("certificate does not certify this graph as {0}-special")]
    CertificateMismatch(usize),
    #[error("constructed set of size {got} misses the special value {want}")]
    Construction { got: usize, want: String },
}

fn classify(delta: usize, core: &Graph) -> Option<CoreClass> {
    let c = core.n();
    if core.is_complete() {
        if c == delta / 2 + 1 {
            return Some(CoreClass::CliqueSmall);
        }
        if c == delta.div_ceil(2) + 1 {
            return Some(CoreClass::CliqueBig);
        }
    }
    if delta == 4 && core.is_odd_cycle() {
        return Some(CoreClass::OddCycle);
    }
    None
}

/// Tests the three defining conditions in order and reports the first failure.
pub fn recognize_special(delta: usize, g: &Graph) -> SpecialCertificate {
    assert!(delta >= 4, "special graphs are defined for delta >= 4");
    let x = g.cycle_vertices();
    let mut cert = SpecialCertificate {
        delta,
        cycle_vertices: x.clone(),
        cores: Vec::new(),
        gluing: Vec::new(),
        verdict: Verdict::Special,
    };
    let reject = |mut cert: SpecialCertificate, r| {
        cert.verdict = Verdict::Rejected(r);
        cert
    };
    if g.n() == 0 || !g.is_connected() {
        return reject(cert, Rejection::Disconnected);
    }
    if let Some(v) = x.iter().find(|&v| g.degree(v) != delta) {
        let r = Rejection::CycleVertexDegree {
            vertex: v,
            degree: g.degree(v),
        };
        return reject(cert, r);
    }
    if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| !x.contains(u) && !x.contains(v)) {
        return reject(cert, Rejection::EdgeWithNoCycleEnd { u, v });
    }
    let (gx, map) = g.induced(&x);
    for comp in gx.connected_components() {
        let (core, _) = gx.induced(&comp);
        let lifted = map.lift(&comp, g.n());
        match classify(delta, &core) {
            Some(class) => cert.cores.push((lifted, class)),
            None => {
                let r = Rejection::BadCoreComponent {
                    vertices: lifted.to_vec(),
                };
                cert.cores.clear();
                return reject(cert, r);
            }
        }
    }
    for v in 0..g.n() {
        if x.contains(v) || g.degree(v) < 2 {
            continue;
        }
        let joined = cert
            .cores
            .iter()
            .enumerate()
            .filter(|(_, (c, _))| c.intersects(g.neighbors(v)))
            .map(|(i, _)| i)
            .collect();
        cert.gluing.push((v, joined));
    }
    cert
}

pub fn is_special(delta: usize, g: &Graph) -> bool {
    recognize_special(delta, g).is_special()
}

/// Number of components that are Δ-special (isolated vertices included).
pub fn n_special(delta: usize, g: &Graph) -> usize {
    g.connected_components()
        .iter()
        .filter(|c| {
            if c.len() == 1 {
                return true;
            }
            let (h, _) = g.induced(c);
            is_special(delta, &h)
        })
        .count()
}

/// Number of non-trivial special components.
pub fn n_special_nontrivial(delta: usize, g: &Graph) -> usize {
    n_special(delta, g) - g.isolated_count()
}

/// Builds a minimum independent dominating set of a special graph.
///
/// Cores are visited breadth-first from the core holding the smallest cycle
/// vertex. Each non-root core is entered through a glue vertex `a` whose
/// support in that core is `s`; the core then picks cycle vertices avoiding
/// `s` so that `a` belongs to its local set and the rest of the local set
/// dominates everything but `a`. Local sets are merged without `a`.
pub fn special_ids(delta: usize, g: &Graph, cert: &SpecialCertificate) -> Result<IdsWitness, SpecialError> {
    if !cert.is_special() || cert.delta != delta || cert.cycle_vertices.universe() != g.n() {
        return Err(SpecialError::CertificateMismatch(delta));
    }
    let x = &cert.cycle_vertices;
    let mut set = VertexSet::new(g.n());
    if x.is_empty() {
        if g.n() != 1 {
            return Err(SpecialError::CertificateMismatch(delta));
        }
        set.insert(0);
        return Ok(IdsWitness::new(set, WitnessKind::ExactMinimum));
    }
    let mut core_of = vec![usize::MAX; g.n()];
    for (i, (c, _)) in cert.cores.iter().enumerate() {
        for v in c.iter() {
            core_of[v] = i;
        }
    }
    let mut visited = vec![false; cert.cores.len()];
    let mut queue = VecDeque::from([(0usize, None::<usize>)]);
    visited[0] = true;
    while let Some((ci, attach)) = queue.pop_front() {
        let (core, class) = &cert.cores[ci];
        let support = attach.map(|a| {
            g.neighbors(a)
                .intersection(core)
                .first()
                .expect("glue vertex touches the core")
        });
        let chosen = pick_core_vertices(g, core, *class, support);
        let mut local = chosen.clone();
        for v in core.difference(&chosen).iter() {
            local.union_with(&g.neighbors(v).difference(x));
        }
        if let Some(a) = attach {
            local.remove(a);
        }
        set.union_with(&local);
        for v in core.iter() {
            for p in g.neighbors(v).difference(x).iter() {
                if Some(p) == attach {
                    continue;
                }
                for w in g.neighbors(p).iter() {
                    let cj = core_of[w];
                    if cj != usize::MAX && !visited[cj] {
                        visited[cj] = true;
                        queue.push_back((cj, Some(p)));
                    }
                }
            }
        }
    }
    let want = BoundParams::new(delta).special_value(g.n());
    if want.to_usize() != Some(set.len()) || !g.is_ids(&set).is_valid() {
        return Err(SpecialError::Construction {
            got: set.len(),
            want: want.to_string(),
        });
    }
    Ok(IdsWitness::new(set, WitnessKind::ExactMinimum))
}

/// Cycle vertices taken into the set for one core, never `avoid`.
fn pick_core_vertices(g: &Graph, core: &VertexSet, class: CoreClass, avoid: Option<usize>) -> VertexSet {
    let mut out = VertexSet::new(g.n());
    match class {
        CoreClass::CliqueBig | CoreClass::CliqueSmall => {
            let pick = core.iter().find(|&v| Some(v) != avoid).unwrap();
            out.insert(pick);
        }
        CoreClass::OddCycle => {
            let start = avoid.unwrap_or_else(|| core.first().unwrap());
            let order = walk_cycle(g, core, start);
            for v in order.iter().skip(1).step_by(2).take(order.len() / 2) {
                out.insert(*v);
            }
        }
    }
    out
}

/// Vertices of a cycle core in cyclic order starting at `start`.
fn walk_cycle(g: &Graph, core: &VertexSet, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).intersection(core).iter().find(|&w| w != prev).unwrap();
        if next == start {
            return order;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_figure1, gen_h, gen_special, Block};

    #[test]
    fn recognizes_basic_cases() {
        let c = recognize_special(4, &Graph::empty(1));
        assert!(c.is_special());
        assert!(c.cycle_vertices.is_empty());
        let c = recognize_special(4, &gen_h(3, 2));
        assert!(c.is_special());
        assert_eq!(c.cores.len(), 1);
        assert_eq!(c.cores[0].1, CoreClass::CliqueSmall);
        let c = recognize_special(4, &Graph::cycle(5));
        assert!(matches!(
            c.verdict,
            Verdict::Rejected(Rejection::CycleVertexDegree { degree: 2, .. })
        ));
        // v1 has degree 4, so the degree clause fails before the core clause
        let c = recognize_special(5, &gen_figure1(2));
        assert_eq!(
            c.verdict,
            Verdict::Rejected(Rejection::CycleVertexDegree { vertex: 0, degree: 4 })
        );
        assert_eq!(c.cycle_vertices.to_vec(), vec![0, 1, 2, 3, 4, 5]);
        // with the degree clause satisfied, the merged core is rejected
        let g = gen_figure1(2);
        let (gx, _) = g.induced(&c.cycle_vertices);
        assert!(gx.is_connected() && !gx.is_complete());
        let c = recognize_special(4, &Graph::empty(2));
        assert_eq!(c.verdict, Verdict::Rejected(Rejection::Disconnected));
        let c = recognize_special(4, &Graph::path(2));
        assert!(matches!(
            c.verdict,
            Verdict::Rejected(Rejection::EdgeWithNoCycleEnd { u: 0, v: 1 })
        ));
    }

    #[test]
    fn counts_special_components() {
        assert_eq!(n_special(4, &Graph::empty(2)), 2);
        let g = gen_h(3, 2).disjoint_union(&Graph::cycle(5));
        assert_eq!(n_special(4, &g), 1);
        assert_eq!(n_special(4, &Graph::cycle(5)), 0);
    }

    #[test]
    fn constructs_special_sets() {
        let g = gen_h(3, 2);
        let w = special_ids(4, &g, &recognize_special(4, &g)).unwrap();
        assert_eq!(w.size(), 5);
        let g = gen_special(4, &[Block::OddCycle(5)], 0).unwrap();
        let w = special_ids(4, &g, &recognize_special(4, &g)).unwrap();
        assert_eq!(w.size(), 8);
        let g = gen_special(4, &[Block::CliqueSmall, Block::CliqueSmall], 3).unwrap();
        let cert = recognize_special(4, &g);
        assert_eq!(cert.gluing.len(), 1);
        assert_eq!(special_ids(4, &g, &cert).unwrap().size(), 9);
    }

    #[test]
    fn rejects_foreign_certificates() {
        let g = Graph::cycle(5);
        let cert = recognize_special(4, &g);
        assert_eq!(special_ids(4, &g, &cert), Err(SpecialError::CertificateMismatch(4)));
        let h = gen_h(3, 2);
        assert!(special_ids(5, &h, &recognize_special(4, &h)).is_err());
    }
}
