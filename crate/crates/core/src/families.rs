//! Generators for the extremal families and seeded special-graph composition.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("block {block} is not allowed for delta = {delta}")]
    BadBlock { block: Block, delta: usize },
    #[error("base graph is trivial and has no degree-1 vertex")]
    TrivialBase,
    #[error("cannot parse block `{0}`")]
    ParseBlock(String),
}

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, then the output is `state`
/// xor-shifted by 30, multiplied by `0xBF58476D1CE4E5B9`, xor-shifted by 27,
/// multiplied by `0x94D049BB133111EB` and xor-shifted by 31.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish index in `0..bound` by reduction modulo `bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

/// Building blocks of special graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    /// `K_{⌈Δ/2⌉+1}` with pendant vertices up to degree Δ.
    CliqueBig,
    /// `K_{⌊Δ/2⌋+1}` with pendant vertices up to degree Δ.
    CliqueSmall,
    /// Odd cycle with two pendant vertices per cycle vertex (Δ = 4 only).
    OddCycle(usize),
    Trivial,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::CliqueBig => f.write_str("clique-big"),
            Block::CliqueSmall => f.write_str("clique-small"),
            Block::OddCycle(len) => write!(f, "odd-cycle:{len}"),
            Block::Trivial => f.write_str("trivial"),
        }
    }
}

impl FromStr for Block {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let bad = || FamilyError::ParseBlock(s.to_string());
        match s.trim() {
            "clique-big" => Ok(Block::CliqueBig),
            "clique-small" => Ok(Block::CliqueSmall),
            "trivial" | "k1" => Ok(Block::Trivial),
            other => {
                let len = other
                    .strip_prefix("odd-cycle:")
                    .or_else(|| other.strip_prefix("odd-cycle"))
                    .ok_or_else(bad)?;
                len.parse().map(Block::OddCycle).map_err(|_| bad())
            }
        }
    }
}

/// Parses a comma-separated block list such as `clique-small,odd-cycle:5`.
pub fn parse_blocks(s: &str) -> Result<Vec<Block>, FamilyError> {
    s.split(',').map(str::parse).collect()
}

impl Block {
    pub fn validate(self, delta: usize) -> Result<(), FamilyError> {
        let ok = match self {
            Block::OddCycle(len) => delta == 4 && len >= 3 && len % 2 == 1,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(FamilyError::BadBlock { block: self, delta })
        }
    }

    /// Vertex count of the standalone block.
    pub fn order(self, delta: usize) -> usize {
        match self {
            Block::CliqueBig | Block::CliqueSmall => (delta + 2) * (delta + 2) / 4,
            Block::OddCycle(len) => 3 * len,
            Block::Trivial => 1,
        }
    }

    /// Builds the standalone block: core vertices first, then pendants.
    fn build(self, delta: usize) -> Graph {
        match self {
            Block::CliqueBig => {
                let p = delta.div_ceil(2) + 1;
                gen_h(p, delta + 1 - p)
            }
            Block::CliqueSmall => {
                let p = delta / 2 + 1;
                gen_h(p, delta + 1 - p)
            }
            Block::OddCycle(len) => attach_leaves(&Graph::cycle(len), 2),
            Block::Trivial => Graph::empty(1),
        }
    }
}

/// Family descriptors accepted by [`FamilySpec::build`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    H {
        p: usize,
        q: usize,
    },
    Figure1 {
        k: usize,
    },
    Special {
        delta: usize,
        blocks: Vec<Block>,
        seed: u64,
    },
    SpecialMinusLeaf(Box<FamilySpec>),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph, FamilyError> {
        match self {
            FamilySpec::H { p, q } => {
                if *p == 0 {
                    return Err(FamilyError::Param("p must be at least 1".into()));
                }
                Ok(gen_h(*p, *q))
            }
            FamilySpec::Figure1 { k } => {
                if *k == 0 {
                    return Err(FamilyError::Param("k must be at least 1".into()));
                }
                Ok(gen_figure1(*k))
            }
            FamilySpec::Special { delta, blocks, seed } => gen_special(*delta, blocks, *seed),
            FamilySpec::SpecialMinusLeaf(base) => gen_special_minus_leaf(&base.build()?),
        }
    }
}

/// Attaches `q` pendant vertices to every vertex of `core`; pendants of core
/// vertex `v` are numbered `n + q·v .. n + q·v + q`.
fn attach_leaves(core: &Graph, q: usize) -> Graph {
    let n = core.n();
    let mut edges = core.edges();
    for v in 0..n {
        for j in 0..q {
            edges.push((v, n + q * v + j));
        }
    }
    Graph::new(n * (q + 1), &edges).unwrap()
}

/// `H(p, q)`: `K_p` with `q` pendant vertices at each clique vertex.
pub fn gen_h(p: usize, q: usize) -> Graph {
    attach_leaves(&Graph::complete(p), q)
}

/// Path `v_1 … v_{3k}` plus chords `v_{3i-2} v_{3i}`, two pendants per path vertex.
pub fn gen_figure1(k: usize) -> Graph {
    let len = 3 * k;
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
    edges.extend((0..k).map(|i| (3 * i, 3 * i + 2)));
    let spine = Graph::new(len, &edges).unwrap();
    attach_leaves(&spine, 2)
}

/// Composes a Δ-special graph from `blocks`, gluing each new block onto the
/// graph built so far by identifying a pendant of the new block with a
/// degree-≤1 vertex of the existing graph. Both choices come from a
/// [`SplitMix64`] seeded with `seed`, so output is a function of the inputs.
pub fn gen_special(delta: usize, blocks: &[Block], seed: u64) -> Result<Graph, FamilyError> {
    if delta < 4 {
        return Err(FamilyError::Param(format!("delta must be >= 4, got {delta}")));
    }
    if blocks.is_empty() {
        return Err(FamilyError::Param("block list is empty".into()));
    }
    for b in blocks {
        b.validate(delta)?;
    }
    let mut rng = SplitMix64::new(seed);
    let mut acc = blocks[0].build(delta);
    for block in &blocks[1..] {
        if *block == Block::Trivial {
            continue;
        }
        let piece = block.build(delta);
        if acc.n() == 1 {
            acc = piece;
            continue;
        }
        let hosts: Vec<usize> = (0..acc.n()).filter(|&v| acc.degree(v) == 1).collect();
        let ports: Vec<usize> = (0..piece.n()).filter(|&v| piece.degree(v) == 1).collect();
        let host = hosts[rng.below(hosts.len())];
        let port = ports[rng.below(ports.len())];
        acc = glue(&acc, host, &piece, port);
    }
    Ok(acc)
}

/// Identifies vertex `port` of `b` with vertex `host` of `a`; the other
/// vertices of `b` follow those of `a` in their original order.
pub fn glue(a: &Graph, host: usize, b: &Graph, port: usize) -> Graph {
    let base = a.n();
    let map = |v: usize| match v.cmp(&port) {
        std::cmp::Ordering::Less => base + v,
        std::cmp::Ordering::Equal => host,
        std::cmp::Ordering::Greater => base + v - 1,
    };
    let mut edges = a.edges();
    edges.extend(b.edges().into_iter().map(|(u, v)| (map(u), map(v))));
    Graph::new(base + b.n() - 1, &edges).unwrap()
}

/// Removes the lowest-indexed degree-1 vertex.
pub fn gen_special_minus_leaf(base: &Graph) -> Result<Graph, FamilyError> {
    let leaf = (0..base.n())
        .find(|&v| base.degree(v) == 1)
        .ok_or(FamilyError::TrivialBase)?;
    let mut drop = crate::bitset::VertexSet::new(base.n());
    drop.insert(leaf);
    Ok(base.delete_vertices(&drop).0)
}

/// Draws a block list whose composed order stays within `max_n`.
pub fn random_blocks(delta: usize, rng: &mut SplitMix64, max_n: usize) -> Vec<Block> {
    let mut menu = vec![Block::CliqueBig, Block::CliqueSmall];
    if delta == 4 {
        menu.extend([Block::OddCycle(3), Block::OddCycle(5), Block::OddCycle(7)]);
    }
    let fits = |b: &Block, used: usize| used + b.order(delta) - 1 <= max_n;
    if rng.below(16) == 0 {
        return vec![Block::Trivial];
    }
    let mut blocks = Vec::new();
    let mut used = 1;
    loop {
        let options: Vec<Block> = menu.iter().copied().filter(|b| fits(b, used)).collect();
        if options.is_empty() {
            break;
        }
        let b = options[rng.below(options.len())];
        used += b.order(delta) - 1;
        blocks.push(b);
        if rng.below(3) == 0 {
            break;
        }
    }
    if blocks.is_empty() {
        blocks.push(Block::Trivial);
    }
    blocks
}
