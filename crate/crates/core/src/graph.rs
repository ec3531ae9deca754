//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::{BTreeSet, VecDeque};

use crate::{Error, Rational, Result};

/// Immutable simple undirected graph.
///
/// Edges are stored normalized as `(i, j)` with `i < j`, sorted; every
/// adjacency list is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge iterator; duplicate edges (in either
    /// orientation) collapse to one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::SelfLoop { line: 0, vertex: a });
            }
            let v = a.max(b);
            if v >= n {
                return Err(Error::VertexOutOfRange { line: 0, vertex: v, n });
            }
            set.insert((a.min(b), v));
        }
        Ok(Self::from_normalized(n, set.into_iter().collect()))
    }

    fn from_normalized(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            n,
            edges,
            adjacency,
        }
    }

    /// Edge-list text: one `u v` pair per line, `#` comments, optional
    /// leading `n <count>` line. Without it `n` is one more than the largest id.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut seen_content = false;
        let mut raw: Vec<(usize, usize, usize)> = Vec::new();

        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !seen_content && fields.first() == Some(&"n") {
                seen_content = true;
                if fields.len() != 2 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected `n <count>`".into(),
                    });
                }
                let count = fields[1].parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("invalid vertex count `{}`", fields[1]),
                })?;
                declared = Some(count);
                continue;
            }
            seen_content = true;
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected two vertex ids, found {} fields", fields.len()),
                });
            }
            let parse_id = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("invalid vertex id `{s}`"),
                })
            };
            let a = parse_id(fields[0])?;
            let b = parse_id(fields[1])?;
            if a == b {
                return Err(Error::SelfLoop {
                    line: lineno,
                    vertex: a,
                });
            }
            raw.push((lineno, a, b));
        }

        let n = match declared {
            Some(n) => {
                if let Some(&(line, a, b)) = raw.iter().find(|&&(_, a, b)| a.max(b) >= n) {
                    return Err(Error::VertexOutOfRange {
                        line,
                        vertex: a.max(b),
                        n,
                    });
                }
                n
            }
            None => raw.iter().map(|&(_, a, b)| a.max(b) + 1).max().unwrap_or(0),
        };
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let set: BTreeSet<(usize, usize)> = raw.iter().map(|&(_, a, b)| (a.min(b), a.max(b))).collect();
        Ok(Self::from_normalized(n, set.into_iter().collect()))
    }

    /// Serializes in the edge-list format with an explicit `n` line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(i, j) in &self.edges {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * (self.n - 1) / 2
    }

    /// Connected, 2-regular, odd number of vertices.
    pub fn is_odd_cycle(&self) -> bool {
        self.n >= 3
            && self.n % 2 == 1
            && self.adjacency.iter().all(|a| a.len() == 2)
            && self.is_connected()
    }

    pub fn is_connected(&self) -> bool {
        self.connectivity().len() == 1
    }

    /// `(e(S), e(T), cut(S ∪ T))`.
    pub fn subset_edge_counts(&self, pair: &VertexSubsetPair) -> Result<(usize, usize, usize)> {
        let side = self.side_labels(pair)?;
        let (mut e_s, mut e_t, mut cut) = (0, 0, 0);
        for &(i, j) in &self.edges {
            match (side[i], side[j]) {
                (1, 1) => e_s += 1,
                (2, 2) => e_t += 1,
                (0, 0) => {}
                (0, _) | (_, 0) => cut += 1,
                _ => {}
            }
        }
        Ok((e_s, e_t, cut))
    }

    /// Bipartiteness ratio of one pair: `(2e(S) + 2e(T) + cut(S∪T)) / |S∪T|`.
    pub fn psi_of_pair(&self, pair: &VertexSubsetPair) -> Result<Rational> {
        if pair.is_empty() {
            return Err(Error::contract("psi of an empty pair"));
        }
        let (e_s, e_t, cut) = self.subset_edge_counts(pair)?;
        Ok(Rational::new(
            (2 * e_s + 2 * e_t + cut) as i64,
            pair.len() as i64,
        ))
    }

    /// Per-vertex side label: 0 outside, 1 in S, 2 in T.
    fn side_labels(&self, pair: &VertexSubsetPair) -> Result<Vec<u8>> {
        let mut side = vec![0u8; self.n];
        for (set, label) in [(&pair.s, 1u8), (&pair.t, 2u8)] {
            for &v in set {
                if v >= self.n {
                    return Err(Error::contract(format!(
                        "vertex {v} out of range for n = {}",
                        self.n
                    )));
                }
                if side[v] != 0 {
                    return Err(Error::contract(format!("vertex {v} lies in both S and T")));
                }
                side[v] = label;
            }
        }
        Ok(side)
    }

    /// Connected components via breadth-first search, each with either a
    /// proper two-colouring or an odd closed walk witness.
    pub fn connectivity(&self) -> Vec<Component> {
        let mut comp = vec![usize::MAX; self.n];
        let mut color = vec![0u8; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        let mut out = Vec::new();

        for root in 0..self.n {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut vertices = Vec::new();
            let mut conflict: Option<(usize, usize)> = None;
            let mut queue = VecDeque::from([root]);
            comp[root] = id;
            while let Some(u) = queue.pop_front() {
                vertices.push(u);
                for &w in &self.adjacency[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        color[w] = 1 - color[u];
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    } else if color[w] == color[u] && conflict.is_none() {
                        conflict = Some((u, w));
                    }
                }
            }
            vertices.sort_unstable();
            let (coloring, odd_cycle) = match conflict {
                None => {
                    let (a, b): (Vec<usize>, Vec<usize>) =
                        vertices.iter().partition(|&&v| color[v] == color[root]);
                    (Some((a, b)), None)
                }
                Some((u, w)) => (None, Some(tree_cycle(u, w, &parent, &depth))),
            };
            out.push(Component {
                vertices,
                coloring,
                odd_cycle,
            });
        }
        out
    }

    /// Same vertex set with `drop` removed from the edge set.
    pub fn remove_edges(&self, drop: &[(usize, usize)]) -> Result<Graph> {
        let mut removed = BTreeSet::new();
        for &(a, b) in drop {
            let e = (a.min(b), a.max(b));
            if !self.has_edge(e.0, e.1) {
                return Err(Error::contract(format!("edge {a}-{b} is not in the graph")));
            }
            removed.insert(e);
        }
        let kept = self
            .edges
            .iter()
            .copied()
            .filter(|e| !removed.contains(e))
            .collect();
        Ok(Self::from_normalized(self.n, kept))
    }

    /// Vertex-induced subgraph after deleting `removed`, relabelled to
    /// `0..n - |removed|` in increasing order.
    pub fn delete_vertices(&self, removed: &[usize]) -> Option<Graph> {
        let mut keep = vec![true; self.n];
        for &v in removed {
            keep[v] = false;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut k = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = k;
                k += 1;
            }
        }
        if k == 0 {
            return None;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| keep[i] && keep[j])
            .map(|&(i, j)| (map[i], map[j]))
            .collect();
        Some(Self::from_normalized(k, edges))
    }

    /// True when the graph restricted to `mask`-selected vertices is bipartite.
    pub fn induced_is_bipartite(&self, mask: &[bool]) -> bool {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if !mask[root] || color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if !mask[w] {
                        continue;
                    }
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn tree_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    // Walk both endpoints up the BFS tree to their common ancestor; the two
    // paths plus the edge u-w form an odd cycle (equal colours, equal parity).
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// One connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    /// Colour classes when the component is bipartite.
    pub coloring: Option<(Vec<usize>, Vec<usize>)>,
    /// Vertices of an odd cycle `v_0, ..., v_k` (closing edge `v_k v_0`)
    /// when the component is not bipartite.
    pub odd_cycle: Option<Vec<usize>>,
}

impl Component {
    pub fn is_bipartite(&self) -> bool {
        self.coloring.is_some()
    }
}

/// Disjoint vertex sets `(S, T)`, each kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSubsetPair {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

impl VertexSubsetPair {
    pub fn new(mut s: Vec<usize>, mut t: Vec<usize>) -> Result<Self> {
        s.sort_unstable();
        s.dedup();
        t.sort_unstable();
        t.dedup();
        if let Some(v) = s.iter().find(|v| t.binary_search(v).is_ok()) {
            return Err(Error::contract(format!("vertex {v} lies in both S and T")));
        }
        Ok(Self { s, t })
    }

    /// `|S ∪ T|`.
    pub fn len(&self) -> usize {
        self.s.len() + self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty() && self.t.is_empty()
    }

    pub fn swapped(&self) -> Self {
        Self {
            s: self.t.clone(),
            t: self.s.clone(),
        }
    }

    /// Edges inside S or inside T: deleting them makes the graph induced on
    /// `S ∪ T` bipartite.
    pub fn removal_certificate(&self, g: &Graph) -> Vec<(usize, usize)> {
        let mut side = vec![0u8; g.n()];
        for &v in &self.s {
            side[v] = 1;
        }
        for &v in &self.t {
            side[v] = 2;
        }
        g.edges()
            .iter()
            .copied()
            .filter(|&(i, j)| side[i] != 0 && side[i] == side[j])
            .collect()
    }
}
