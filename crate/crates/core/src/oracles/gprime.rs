//! The doubled-edge graph `G'` attached to a vector `x`.
//!
//! With `S = {x_i > 0}`, `T = {x_i < 0}`, the vertex set is `V ∪ S' ∪ T'`
//! (one primed copy per vertex of `S ∪ T`). Every edge `ij` with both ends in
//! S, or both in T, is replaced by `ij'` and `i'j`; all other edges are
//! kept. With `g_i = |x_i|` on `S ∪ T` and 0 elsewhere, the signless sum
//! `sum_E |x_i + x_j|^p` dominates the difference sum `sum_E' |g_i - g_j|^p`
//! and level sets of `g` in `G'` have cut equal to the bipartiteness
//! numerator of the matching pair in `G`.

use crate::{Error, Graph, Rational, Result, Scalar, VertexSubsetPair, VertexVector};

#[derive(Debug, Clone, PartialEq)]
pub struct GPrime<T> {
    pub base: Graph,
    pub gprime: Graph,
    /// Positive support of `x`.
    pub s: Vec<usize>,
    /// Negative support of `x`.
    pub t: Vec<usize>,
    /// `primed[i]`: index of `i'` in `gprime` for `i ∈ S ∪ T`.
    pub primed: Vec<Option<usize>>,
    /// `origin[k]`: base vertex a `gprime` vertex copies (itself for `k < n`).
    pub origin: Vec<usize>,
    pub g_vec: VertexVector<T>,
}

pub fn build_gprime<T: Scalar>(g: &Graph, x: &[T]) -> Result<GPrime<T>> {
    let n = g.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if x.iter().all(|v| v.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let sign: Vec<i8> = x
        .iter()
        .map(|&v| {
            if v > T::zero() {
                1
            } else if v < T::zero() {
                -1
            } else {
                0
            }
        })
        .collect();
    let mut primed = vec![None; n];
    let mut origin: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if sign[v] != 0 {
            primed[v] = Some(origin.len());
            origin.push(v);
        }
    }
    let mut edges = Vec::with_capacity(2 * g.m());
    for &(i, j) in g.edges() {
        if sign[i] != 0 && sign[i] == sign[j] {
            edges.push((i, primed[j].expect("supported vertex")));
            edges.push((primed[i].expect("supported vertex"), j));
        } else {
            edges.push((i, j));
        }
    }
    let gprime = Graph::from_edges(origin.len(), edges)?;
    if gprime.max_degree() != g.max_degree() {
        return Err(Error::Internal(format!(
            "max degree changed from {} to {}",
            g.max_degree(),
            gprime.max_degree()
        )));
    }
    let mut g_vec = vec![T::zero(); origin.len()];
    for v in 0..n {
        g_vec[v] = x[v].abs();
    }
    Ok(GPrime {
        base: g.clone(),
        gprime,
        s: (0..n).filter(|&v| sign[v] > 0).collect(),
        t: (0..n).filter(|&v| sign[v] < 0).collect(),
        primed,
        origin,
        g_vec: VertexVector::new(g_vec)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GxCheck<T> {
    /// `sum_{ij in E'} |g_i - g_j|^p`.
    pub lhs: T,
    /// `sum_{ij in E} |x_i + x_j|^p`.
    pub rhs: T,
    pub holds: bool,
}

fn difference_sum<T: Scalar>(gp: &GPrime<T>, p: T) -> T {
    let g = &gp.g_vec;
    gp.gprime
        .edges()
        .iter()
        .fold(T::zero(), |acc, &(i, j)| acc + (g[i] - g[j]).abs().powf(p))
}

/// Evaluates both sides of `sum_E' |g_i - g_j|^p <= sum_E |x_i + x_j|^p`.
pub fn verify_gx_inequality<T: Scalar>(gp: &GPrime<T>, x: &[T], p: T) -> Result<GxCheck<T>> {
    if x.len() != gp.base.n() {
        return Err(Error::DimensionMismatch {
            expected: gp.base.n(),
            got: x.len(),
        });
    }
    let lhs = difference_sum(gp, p);
    let rhs = gp
        .base
        .edges()
        .iter()
        .fold(T::zero(), |acc, &(i, j)| acc + (x[i] + x[j]).abs().powf(p));
    let holds = lhs <= rhs + T::lit(1e-12) * rhs.max(T::one());
    Ok(GxCheck { lhs, rhs, holds })
}

/// One level set `C^t = {g_i > t}` of the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct HgStep<T> {
    pub t: T,
    pub size: usize,
    /// `cut_{G'}(C^t)`.
    pub cut_gprime: usize,
    /// `2 e_G(S^t) + 2 e_G(T^t) + cut_G(S^t ∪ T^t)` for `S^t = C^t ∩ S`,
    /// `T^t = C^t ∩ T`.
    pub numerator_g: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HgSweep<T> {
    /// `min_t cut_{G'}(C^t) / |C^t|`.
    pub h_g: Rational,
    pub steps: Vec<HgStep<T>>,
    /// The two cut counts agree at every threshold.
    pub identity_holds: bool,
}

/// `h_g(S ∪ T)` over thresholds `0` and every distinct positive `g` value
/// below the maximum, recounting each level set from scratch in both graphs.
pub fn h_g_sweep<T: Scalar>(gp: &GPrime<T>) -> Result<HgSweep<T>> {
    let g = &gp.g_vec;
    let n = gp.base.n();
    let mut levels: Vec<T> = g.iter().copied().filter(|&v| v > T::zero()).collect();
    if levels.is_empty() {
        return Err(Error::ZeroVector);
    }
    levels.sort_by(|a, b| a.partial_cmp(b).expect("finite g"));
    levels.dedup();
    levels.pop();
    levels.insert(0, T::zero());
    levels.dedup();

    let mut steps = Vec::with_capacity(levels.len());
    let mut best: Option<Rational> = None;
    let mut identity_holds = true;
    let mut inside = vec![false; gp.gprime.n()];
    for &t in &levels {
        for (k, flag) in inside.iter_mut().enumerate() {
            *flag = g[k] > t;
        }
        let size = inside.iter().filter(|&&b| b).count();
        let cut_gprime = gp
            .gprime
            .edges()
            .iter()
            .filter(|&&(i, j)| inside[i] != inside[j])
            .count();
        let pair = VertexSubsetPair {
            s: gp.s.iter().copied().filter(|&v| inside[v]).collect(),
            t: gp.t.iter().copied().filter(|&v| inside[v]).collect(),
        };
        debug_assert!(inside[n..].iter().all(|&b| !b));
        let (e_s, e_t, cut) = gp.base.subset_edge_counts(&pair)?;
        let numerator_g = 2 * e_s + 2 * e_t + cut;
        identity_holds &= numerator_g == cut_gprime;
        let ratio = Rational::new(cut_gprime as i64, size as i64);
        if best.is_none_or(|b| ratio < b) {
            best = Some(ratio);
        }
        steps.push(HgStep {
            t,
            size,
            cut_gprime,
            numerator_g,
        });
    }
    Ok(HgSweep {
        h_g: best.expect("at least one threshold"),
        steps,
        identity_holds,
    })
}

/// Both sides of `(2/Δ(G'))^(p-1) (h_g/p)^p ||g||_p^p <= sum_E' |g_i - g_j|^p`.
pub fn level_set_bound_check<T: Scalar>(gp: &GPrime<T>, h_g: Rational, p: T) -> GxCheck<T> {
    let delta = T::lit(gp.gprime.max_degree() as f64);
    let h = T::lit(*h_g.numer() as f64 / *h_g.denom() as f64);
    let lhs = (T::lit(2.0) / delta).powf(p - T::one()) * (h / p).powf(p) * gp.g_vec.p_norm_pow(p);
    let rhs = difference_sum(gp, p);
    GxCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + T::lit(1e-9),
    }
}
