//! Small graph families used by the tests, the acceptance suite and the
//! verification corpus.

use crate::{Graph, SplitMix64};

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::from_edges(n, edges).expect("valid complete graph")
}

/// `C_n` on `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

/// Star `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
}

/// `G(n, prob)`: each pair `i < j`, visited in lexicographic order, is an
/// edge when the next uniform draw is below `prob`.
pub fn erdos_renyi(n: usize, prob: f64, rng: &mut SplitMix64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.bernoulli(prob) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid random graph")
}

/// Disjoint union, `b` relabelled after `a`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(i, j)| (i + off, j + off)));
    Graph::from_edges(a.n() + b.n(), edges).expect("valid union")
}

/// Named graph of a test corpus.
#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

/// `count` Erdős-Rényi graphs with `n` uniform in `4..=max_n` and edge
/// probability `prob`, all drawn from one seeded stream.
pub fn random_corpus(count: usize, max_n: usize, prob: f64, seed: u64) -> Vec<NamedGraph> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|k| {
            let n = 4 + rng.below((max_n - 3) as u64) as usize;
            NamedGraph {
                name: format!("er{k:02}_n{n}"),
                graph: erdos_renyi(n, prob, &mut rng),
            }
        })
        .collect()
}

/// Complete graphs, cycles, paths and stars with at most 12 vertices.
pub fn structured_corpus() -> Vec<NamedGraph> {
    let mut out = Vec::new();
    let mut push = |name: String, graph: Graph| out.push(NamedGraph { name, graph });
    for n in 2..=8 {
        push(format!("K{n}"), complete(n));
    }
    for n in 4..=11 {
        push(format!("C{n}"), cycle(n));
    }
    for n in 3..=10 {
        push(format!("P{n}"), path(n));
    }
    for k in 3..=8 {
        push(format!("S{k}"), star(k));
    }
    out
}

/// Seed of the default random corpus.
pub const CORPUS_SEED: u64 = 20_160_913;

/// The standard corpus: 50 seeded `G(n, 0.4)` graphs with `n <= 12` followed
/// by [`structured_corpus`].
pub fn standard_corpus() -> Vec<NamedGraph> {
    let mut out = random_corpus(50, 12, 0.4, CORPUS_SEED);
    out.extend(structured_corpus());
    out
}
