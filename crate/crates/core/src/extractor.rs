//! Rounding a vertex vector to a near-bipartite pair.
//!
//! For `t >= 0` let `S_t = {i : x_i > t}` and `T_t = {i : x_i < -t}`. The
//! sweep scores every distinct level set by the exact bipartiteness ratio
//! `(2e(S_t) + 2e(T_t) + cut(S_t ∪ T_t)) / |S_t ∪ T_t|` and keeps the best.

use std::cmp::Ordering;

use crate::{Error, Graph, Rational, Result, Scalar, SpectralResult, SplitMix64, VertexSubsetPair};

/// Magnitudes closer than this share a threshold bucket; magnitudes at or
/// below it count as zero.
pub const MERGE_TOL: f64 = 1e-12;

const GREEDY_SEED: u64 = 0x9E11_D5EE;
const GREEDY_RANDOM_STARTS: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdStep<T> {
    pub t: T,
    pub s_size: usize,
    pub t_size: usize,
    pub psi: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSweepResult<T> {
    pub best_pair: VertexSubsetPair,
    pub best_threshold: T,
    pub psi_x: Rational,
    /// One entry per candidate threshold, increasing `t`.
    pub trace: Vec<ThresholdStep<T>>,
}

/// Numerator weight of an edge whose endpoints carry side labels `a`, `b`
/// (0 outside, 1 in S, 2 in T).
#[inline]
fn edge_weight(a: u8, b: u8) -> i64 {
    match (a, b) {
        (0, 0) => 0,
        (0, _) | (_, 0) => 1,
        _ if a == b => 2,
        _ => 0,
    }
}

/// `(S_t, T_t)` under the bucketing rule of [`threshold_sweep`].
pub fn pair_at_threshold<T: Scalar>(x: &[T], t: T) -> VertexSubsetPair {
    let cut = t + T::lit(MERGE_TOL);
    let s = (0..x.len()).filter(|&i| x[i] > cut).collect();
    let tt = (0..x.len()).filter(|&i| x[i] < -cut).collect();
    VertexSubsetPair { s, t: tt }
}

/// Best threshold pair of `x`.
///
/// Vertices are inserted in decreasing `|x_i|` order; each insertion updates
/// the numerator by scanning one neighbour list, so a sweep costs
/// `O((n + m) log n)`. Among thresholds with equal ratio the smallest `t`
/// wins.
pub fn threshold_sweep<T: Scalar>(g: &Graph, x: &[T]) -> Result<ThresholdSweepResult<T>> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    let eps = T::lit(MERGE_TOL);
    let mut order: Vec<usize> = (0..x.len()).filter(|&i| x[i].abs() > eps).collect();
    if order.is_empty() {
        return Err(Error::ZeroVector);
    }
    order.sort_by(|&a, &b| {
        x[b].abs()
            .partial_cmp(&x[a].abs())
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });

    let mut side = vec![0u8; g.n()];
    let (mut num, mut s_size, mut t_size) = (0i64, 0usize, 0usize);
    // (t, prefix length, s_size, t_size, num) in decreasing t.
    let mut levels: Vec<(T, usize, usize, usize, i64)> = Vec::new();
    for (k, &v) in order.iter().enumerate() {
        if k > 0 {
            let prev = x[order[k - 1]].abs();
            let cur = x[v].abs();
            if prev - cur > eps {
                levels.push((cur, k, s_size, t_size, num));
            }
        }
        let label = if x[v] > T::zero() { 1 } else { 2 };
        for &w in g.neighbors(v) {
            num += edge_weight(label, side[w]) - edge_weight(0, side[w]);
        }
        side[v] = label;
        if label == 1 {
            s_size += 1;
        } else {
            t_size += 1;
        }
    }
    levels.push((T::zero(), order.len(), s_size, t_size, num));
    levels.reverse();

    let trace: Vec<ThresholdStep<T>> = levels
        .iter()
        .map(|&(t, _, s, tt, num)| ThresholdStep {
            t,
            s_size: s,
            t_size: tt,
            psi: Rational::new(num, (s + tt) as i64),
        })
        .collect();
    let mut best = 0;
    for (k, step) in trace.iter().enumerate() {
        if step.psi < trace[best].psi {
            best = k;
        }
    }
    let prefix = &order[..levels[best].1];
    let mut s: Vec<usize> = prefix.iter().copied().filter(|&i| x[i] > T::zero()).collect();
    let mut t: Vec<usize> = prefix.iter().copied().filter(|&i| x[i] < T::zero()).collect();
    s.sort_unstable();
    t.sort_unstable();
    Ok(ThresholdSweepResult {
        best_pair: VertexSubsetPair { s, t },
        best_threshold: trace[best].t,
        psi_x: trace[best].psi,
        trace,
    })
}

/// `(p, psi(x(p)))` for each result of a continuation sweep.
pub fn psi_limit_trace<T: Scalar>(results: &[SpectralResult<T>], g: &Graph) -> Result<Vec<(T, Rational)>> {
    if results.windows(2).any(|w| w[1].p >= w[0].p) {
        return Err(Error::contract("sweep results must be ordered by decreasing p"));
    }
    results
        .iter()
        .map(|r| Ok((r.p, threshold_sweep(g, &r.vector)?.psi_x)))
        .collect()
}

fn ratio_less(a: (i64, i64), b: (i64, i64)) -> bool {
    (a.0 as i128) * (b.1 as i128) < (b.0 as i128) * (a.1 as i128)
}

/// Local-search state: side labels with running numerator and size.
struct PairState<'g> {
    g: &'g Graph,
    side: Vec<u8>,
    num: i64,
    size: i64,
}

impl<'g> PairState<'g> {
    fn new(g: &'g Graph) -> Self {
        Self {
            g,
            side: vec![0; g.n()],
            num: 0,
            size: 0,
        }
    }

    fn delta(&self, v: usize, to: u8) -> (i64, i64) {
        let from = self.side[v];
        let dnum = self
            .g
            .neighbors(v)
            .iter()
            .map(|&w| edge_weight(to, self.side[w]) - edge_weight(from, self.side[w]))
            .sum();
        let dsize = i64::from(to != 0) - i64::from(from != 0);
        (dnum, dsize)
    }

    fn set(&mut self, v: usize, to: u8) {
        let (dn, ds) = self.delta(v, to);
        self.num += dn;
        self.size += ds;
        self.side[v] = to;
    }

    /// Best-improvement moves until no single relabelling lowers the ratio.
    fn improve(&mut self) {
        let n = self.g.n();
        for _ in 0..4 * n + 4 {
            let mut best: Option<(usize, u8, (i64, i64))> = None;
            for v in 0..n {
                for to in 0..3u8 {
                    if to == self.side[v] {
                        continue;
                    }
                    let (dn, ds) = self.delta(v, to);
                    let cand = (self.num + dn, self.size + ds);
                    if cand.1 == 0 {
                        continue;
                    }
                    let bar = best.map_or((self.num, self.size), |b| b.2);
                    if ratio_less(cand, bar) {
                        best = Some((v, to, cand));
                    }
                }
            }
            match best {
                Some((v, to, _)) => self.set(v, to),
                None => break,
            }
        }
    }

    fn pair(&self) -> VertexSubsetPair {
        let pick = |label| (0..self.g.n()).filter(|&v| self.side[v] == label).collect();
        VertexSubsetPair {
            s: pick(1),
            t: pick(2),
        }
    }
}

/// Cheap upper bound on `psi(G)` with a witness pair.
///
/// A bipartite component yields its colour classes (ratio 0). Otherwise a
/// best-improvement local search over `{S, T, outside}` labels runs from
/// single low-degree vertices and from a breadth-first two-colouring of the
/// whole graph, and from a fixed batch of random labellings.
pub fn greedy_psi_pair(g: &Graph) -> (Rational, VertexSubsetPair) {
    let comps = g.connectivity();
    if let Some(c) = comps.iter().find(|c| c.is_bipartite()) {
        let (a, b) = c.coloring.clone().expect("bipartite component has a colouring");
        return (Rational::from(0), VertexSubsetPair { s: a, t: b });
    }

    let mut seeds: Vec<usize> = (0..g.n()).collect();
    seeds.sort_by_key(|&v| (g.degree(v), v));
    seeds.truncate(if g.n() <= 64 { g.n() } else { 16 });

    let mut best: Option<((i64, i64), VertexSubsetPair)> = None;
    let mut consider = |state: &PairState| {
        let r = (state.num, state.size);
        if best.as_ref().is_none_or(|(b, _)| ratio_less(r, *b)) {
            best = Some((r, state.pair()));
        }
    };

    for &v in &seeds {
        let mut st = PairState::new(g);
        st.set(v, 1);
        st.improve();
        consider(&st);
    }

    let mut st = PairState::new(g);
    let mut color = vec![u8::MAX; g.n()];
    for c in &comps {
        let root = c.vertices[0];
        color[root] = 1;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 3 - color[u];
                    queue.push_back(w);
                }
            }
        }
    }
    for v in 0..g.n() {
        st.set(v, color[v]);
    }
    st.improve();
    consider(&st);

    let mut rng = SplitMix64::new(GREEDY_SEED);
    for _ in 0..GREEDY_RANDOM_STARTS {
        let mut st = PairState::new(g);
        for v in 0..g.n() {
            st.set(v, rng.below(3) as u8);
        }
        if st.size == 0 {
            st.set(0, 1);
        }
        st.improve();
        consider(&st);
    }

    let ((num, size), pair) = best.expect("graph has at least one vertex");
    (Rational::new(num, size), pair)
}
