//! Extremal eigenvalues of `Q_p` on the unit p-sphere.
//!
//! - [`maximize_lambda`]: nonlinear power iteration
//!   `x <- normalize(Phi(grad_q(x)))` with `Phi(y)_i = sg(y_i)|y_i|^(1/(p-1))`.
//!   `Phi(grad_q(x))` maximizes `<grad_q(x), y>` over the sphere (Hölder), so
//!   convexity of `Q_p` makes every step an ascent step.
//! - [`minimize_q`]: projected gradient descent with Armijo backtracking from
//!   several starts; every reported value is attained by the returned vector
//!   and therefore bounds `q_p` from above.
//! - [`continuation_sweep`]: `minimize_q` along a decreasing schedule of `p`,
//!   warm-started from the previous minimizer.

use std::cmp::Ordering;

use log::warn;

use crate::extractor::greedy_psi_pair;
use crate::pfunctional::{grad_into, inverse_sgn_pow, q_unchecked, residual_from_grad, sgn_pow};
use crate::{Error, Graph, Result, Scalar, SplitMix64, VertexVector};

/// Smallest admissible `p - 1` for the iterative solvers.
pub const MIN_P_GAP: f64 = 1e-9;
/// Allowed violation of monotonicity, relative to `max(1, |R|)`.
pub const MONOTONE_SLACK: f64 = 1e-12;
/// Values closer than this are considered tied across restarts.
pub const TIE_TOL: f64 = 1e-10;

const ARMIJO_C: f64 = 1e-4;
const MIN_LINE_STEP: f64 = 1e-18;
/// Width, in ulps of `R_p`, of the band treated as flat by the line search.
const PRECISION_ULPS: f64 = 8.0;
/// Residual reduction a flat step has to achieve.
const FLAT_STEP_RESIDUAL_RATIO: f64 = 0.9;
/// Entries below this fraction of the largest one count as zero when
/// comparing sign patterns.
const SIGN_CUTOFF: f64 = 1e-8;
const MAX_STEP_FACTOR: f64 = 1e3;
const MIN_TRIAL_STEP: f64 = 1e-10;
const LAMBDA_STREAM: u64 = 0x5EED_1A4B;
const RESTART_STREAM: u64 = 0x5EED_0000;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub tol_residual: f64,
    pub tol_step: f64,
    pub max_iters: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Strictly decreasing schedule of `p` values, all `> 1`.
    pub continuation: Vec<f64>,
    /// Backtracking shrink factor in `(0, 1)`.
    pub shrink: f64,
    pub initial_step: f64,
    /// Worker threads for independent restarts; `1` runs inline.
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol_residual: 1e-8,
            tol_step: 1e-10,
            max_iters: 5000,
            restarts: 8,
            seed: 0,
            continuation: vec![2.0, 1.8, 1.6, 1.4, 1.3, 1.2, 1.1, 1.05],
            shrink: 0.5,
            initial_step: 1.0,
            threads: 1,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol_residual > 0.0 && self.tol_step > 0.0 && self.initial_step > 0.0) {
            return Err(Error::contract("tolerances and initial step must be positive"));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::contract("shrink factor must lie in (0, 1)"));
        }
        validate_schedule(&self.continuation)
    }
}

/// Schedule check: non-empty, strictly decreasing, every `p >= 1 + 1e-9`.
pub fn validate_schedule(schedule: &[f64]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::contract("continuation schedule is empty"));
    }
    if let Some(&p) = schedule.iter().find(|&&p| !(p >= 1.0 + MIN_P_GAP) || !p.is_finite()) {
        return Err(Error::InvalidP(p));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::contract("continuation schedule must be strictly decreasing"));
    }
    Ok(())
}

/// Outcome of one extremal solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult<T> {
    pub p: T,
    /// `R_p(vector)`.
    pub value: T,
    /// Unit p-norm.
    pub vector: VertexVector<T>,
    /// Max-norm eigen-residual of `(vector, value)`.
    pub residual: T,
    pub iterations: usize,
    pub converged: bool,
    /// `R_p` after every accepted iterate, starting value first.
    pub trace: Vec<T>,
}

fn check_p<T: Scalar>(p: T) -> Result<()> {
    if !(p >= T::one() + T::lit(MIN_P_GAP)) || !p.is_finite() {
        return Err(Error::InvalidP(p.to_f64_lossy()));
    }
    Ok(())
}

fn edgeless<T: Scalar>(g: &Graph, p: T) -> SpectralResult<T> {
    SpectralResult {
        p,
        value: T::zero(),
        vector: VertexVector::basis(g.n(), 0),
        residual: T::zero(),
        iterations: 0,
        converged: true,
        trace: vec![T::zero()],
    }
}

fn slack<T: Scalar>(v: T) -> T {
    let floor = T::lit(MONOTONE_SLACK).max(T::epsilon() * T::lit(64.0));
    floor * v.abs().max(T::one())
}

fn normalize_in_place<T: Scalar>(x: &mut [T], p: T) -> bool {
    let norm_pow = x
        .iter()
        .fold(T::zero(), |acc, &v| if v.is_zero() { acc } else { acc + v.abs().powf(p) });
    if !(norm_pow > T::zero()) || !norm_pow.is_finite() {
        return false;
    }
    let scale = norm_pow.powf(-p.recip());
    x.iter_mut().for_each(|v| *v = *v * scale);
    true
}

fn max_diff<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&u, &v)| acc.max((u - v).abs()))
}

/// `lambda_p(G)` by nonlinear power iteration from a positive seeded start.
pub fn maximize_lambda<T: Scalar>(g: &Graph, p: T, cfg: &SolverConfig) -> Result<SpectralResult<T>> {
    check_p(p)?;
    if g.m() == 0 {
        return Ok(edgeless(g, p));
    }
    let n = g.n();
    let mut rng = SplitMix64::fork(cfg.seed, LAMBDA_STREAM);
    let mut x: Vec<T> = (0..n).map(|_| T::lit(1.0 + 0.1 * rng.next_f64())).collect();
    normalize_in_place(&mut x, p);

    let tol = T::lit(cfg.tol_residual);
    let tol_step = T::lit(cfg.tol_step);
    let mut grad = vec![T::zero(); n];
    let mut next = vec![T::zero(); n];
    let mut value = q_unchecked(g, &x, p);
    let mut trace = vec![value];
    let mut iterations = 0;
    let mut converged = false;

    grad_into(g, &x, p, &mut grad);
    let mut res = residual_from_grad(&x, &grad, value, p);
    while iterations < cfg.max_iters {
        if res < tol {
            converged = true;
            break;
        }
        // Phi is homogeneous, so dividing by max|grad| only guards the range.
        let scale = grad.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
        if scale.is_zero() || !scale.is_finite() {
            return Err(Error::NumericalFailure("power iteration gradient vanished".into()));
        }
        for (y, &gi) in next.iter_mut().zip(&grad) {
            *y = inverse_sgn_pow(gi / scale, p);
        }
        if !normalize_in_place(&mut next, p) {
            return Err(Error::NumericalFailure("power iterate left the sphere".into()));
        }
        let new_value = q_unchecked(g, &next, p);
        if !new_value.is_finite() {
            return Err(Error::NumericalFailure("non-finite Rayleigh quotient".into()));
        }
        if new_value < value - slack(value) {
            return Err(Error::Internal(format!(
                "power iteration decreased R_p from {value} to {new_value} at step {iterations}"
            )));
        }
        let step = max_diff(&x, &next);
        std::mem::swap(&mut x, &mut next);
        value = new_value;
        trace.push(value);
        iterations += 1;
        grad_into(g, &x, p, &mut grad);
        res = residual_from_grad(&x, &grad, value, p);
        if step < tol_step {
            converged = res < tol;
            break;
        }
    }
    if res < tol {
        converged = true;
    }
    if x.iter().fold(T::zero(), |a, &v| a + v) < T::zero() {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(SpectralResult {
        p,
        value,
        vector: VertexVector::new(x)?,
        residual: res,
        iterations,
        converged,
        trace,
    })
}

/// Projected descent of `R_p` from a single start. `None` when the start is
/// zero or the iteration produced non-finite values.
fn descend<T: Scalar>(
    g: &Graph,
    p: T,
    start: &[T],
    cfg: &SolverConfig,
) -> Result<Option<SpectralResult<T>>> {
    let n = g.n();
    let mut x = start.to_vec();
    if !normalize_in_place(&mut x, p) {
        return Ok(None);
    }
    let tol = T::lit(cfg.tol_residual);
    let tol_step = T::lit(cfg.tol_step);
    let shrink = T::lit(cfg.shrink);
    let c = T::lit(ARMIJO_C);
    let max_step = T::lit(cfg.initial_step * MAX_STEP_FACTOR);

    let mut grad = vec![T::zero(); n];
    let mut dir = vec![T::zero(); n];
    let mut cand = vec![T::zero(); n];
    let mut scratch_grad = vec![T::zero(); n];
    let mut scratch_dir = vec![T::zero(); n];
    let mut prev_dir = vec![T::zero(); n];
    let mut value = q_unchecked(g, &x, p);
    if !value.is_finite() {
        return Ok(None);
    }
    let mut trace = vec![value];
    let mut alpha = T::lit(cfg.initial_step);
    let mut iterations = 0;

    let tangent = |x: &[T], value: T, grad: &mut [T], dir: &mut [T]| -> T {
        grad_into(g, x, p, grad);
        let mut res = T::zero();
        for i in 0..x.len() {
            dir[i] = grad[i] - value * sgn_pow(x[i], p);
            res = res.max(dir[i].abs());
        }
        res
    };
    let mut res = tangent(&x, value, &mut grad, &mut dir);

    while iterations < cfg.max_iters && res >= tol {
        let dir_sq = dir.iter().fold(T::zero(), |acc, &d| acc + d * d);
        let noise = T::lit(PRECISION_ULPS) * T::epsilon() * value.abs().max(T::one());
        let mut a = alpha;
        let mut accepted = None;
        while a > T::lit(MIN_LINE_STEP) {
            for i in 0..n {
                cand[i] = x[i] - a * dir[i];
            }
            if normalize_in_place(&mut cand, p) {
                let v = q_unchecked(g, &cand, p);
                if !v.is_finite() {
                    return Ok(None);
                }
                if v < value && v <= value - c * a * dir_sq {
                    accepted = Some(v);
                    break;
                }
                // The sufficient decrease is below the resolution of R_p:
                // fall back to a flat step that shrinks the residual.
                if c * a * dir_sq <= noise
                    && v <= value + noise
                    && tangent(&cand, v, &mut scratch_grad, &mut scratch_dir) <= T::lit(FLAT_STEP_RESIDUAL_RATIO) * res
                {
                    accepted = Some(v);
                    break;
                }
            }
            a = a * shrink;
        }
        let Some(new_value) = accepted else {
            break;
        };
        if new_value > value + slack(value) {
            return Err(Error::Internal(format!(
                "descent step increased R_p from {value} to {new_value}"
            )));
        }
        let step = max_diff(&x, &cand);
        std::mem::swap(&mut x, &mut cand);
        prev_dir.copy_from_slice(&dir);
        value = new_value;
        trace.push(value);
        iterations += 1;
        res = tangent(&x, value, &mut grad, &mut dir);
        // Barzilai-Borwein trial step from the last displacement, falling
        // back to gentle growth when the curvature estimate is not positive.
        let (mut sy, mut yy) = (T::zero(), T::zero());
        for i in 0..n {
            let yi = dir[i] - prev_dir[i];
            sy = sy + (x[i] - cand[i]) * yi;
            yy = yy + yi * yi;
        }
        alpha = if sy > T::zero() && yy > T::zero() {
            (sy / yy).max(T::lit(MIN_TRIAL_STEP)).min(max_step)
        } else {
            (a / shrink).min(max_step)
        };
        if step < tol_step {
            break;
        }
    }
    canonical_sign(&mut x);
    Ok(Some(SpectralResult {
        p,
        value,
        vector: VertexVector::new(x)?,
        residual: res,
        iterations,
        converged: res < tol,
        trace,
    }))
}

/// Flips `x` so that its first non-negligible entry is positive.
fn canonical_sign<T: Scalar>(x: &mut [T]) {
    let cutoff = x.iter().fold(T::zero(), |a, v| a.max(v.abs())) * T::lit(SIGN_CUTOFF);
    if let Some(&first) = x.iter().find(|v| v.abs() > cutoff) {
        if first < T::zero() {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

fn sign_pattern<T: Scalar>(x: &[T]) -> Vec<i8> {
    let cutoff = x.iter().fold(T::zero(), |a, v| a.max(v.abs())) * T::lit(SIGN_CUTOFF);
    x.iter()
        .map(|&v| {
            if v > cutoff {
                1
            } else if v < -cutoff {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// Deterministic best-of reduction: smaller value, ties broken by the
/// lexicographically smallest sign pattern.
fn prefer<T: Scalar>(cand: &SpectralResult<T>, best: &SpectralResult<T>) -> bool {
    let tie = T::lit(TIE_TOL);
    if cand.value < best.value - tie {
        return true;
    }
    if cand.value > best.value + tie {
        return false;
    }
    sign_pattern(&cand.vector).cmp(&sign_pattern(&best.vector)) == Ordering::Less
}

/// `q_p(G)` from the default starts.
pub fn minimize_q<T: Scalar>(g: &Graph, p: T, cfg: &SolverConfig) -> Result<SpectralResult<T>> {
    minimize_q_with_starts(g, p, cfg, &[])
}

/// Start vectors used by [`minimize_q_with_starts`] after the warm starts:
/// the signed indicator of a greedy bipartiteness pair, the basis vector of a
/// minimum-degree vertex, and `cfg.restarts` seeded uniform vectors in
/// `[-1, 1]^n`.
pub fn default_starts<T: Scalar>(g: &Graph, cfg: &SolverConfig) -> Vec<Vec<T>> {
    let n = g.n();
    let mut starts = Vec::with_capacity(cfg.restarts + 2);
    let (_, pair) = greedy_psi_pair(g);
    starts.push(VertexVector::<T>::signed_indicator(n, &pair).into_inner());
    let argmin = (0..n).min_by_key(|&v| g.degree(v)).unwrap_or(0);
    starts.push(VertexVector::<T>::basis(n, argmin).into_inner());
    for k in 0..cfg.restarts {
        let mut rng = SplitMix64::fork(cfg.seed, RESTART_STREAM + k as u64);
        starts.push((0..n).map(|_| T::lit(rng.uniform(-1.0, 1.0))).collect());
    }
    starts
}

/// `q_p(G)` by descent from `warm` followed by [`default_starts`].
pub fn minimize_q_with_starts<T: Scalar>(
    g: &Graph,
    p: T,
    cfg: &SolverConfig,
    warm: &[VertexVector<T>],
) -> Result<SpectralResult<T>> {
    check_p(p)?;
    if g.m() == 0 {
        return Ok(edgeless(g, p));
    }
    for w in warm {
        if w.len() != g.n() {
            return Err(Error::DimensionMismatch {
                expected: g.n(),
                got: w.len(),
            });
        }
    }
    let mut starts: Vec<Vec<T>> = warm.iter().map(|w| w.to_vec()).collect();
    starts.extend(default_starts::<T>(g, cfg));

    let outcomes = run_starts(g, p, cfg, &starts)?;
    let mut best: Option<SpectralResult<T>> = None;
    for r in outcomes.into_iter().flatten() {
        best = match best {
            Some(b) if !prefer(&r, &b) => Some(b),
            _ => Some(r),
        };
    }
    best.ok_or_else(|| Error::NumericalFailure("every start diverged".into()))
}

fn run_starts<T: Scalar>(
    g: &Graph,
    p: T,
    cfg: &SolverConfig,
    starts: &[Vec<T>],
) -> Result<Vec<Option<SpectralResult<T>>>> {
    let threads = cfg.threads.max(1).min(starts.len().max(1));
    if threads == 1 {
        return starts.iter().map(|s| descend(g, p, s, cfg)).collect();
    }
    let mut slots: Vec<Result<Option<SpectralResult<T>>>> = Vec::with_capacity(starts.len());
    slots.resize_with(starts.len(), || Ok(None));
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                scope.spawn(move || {
                    (w..starts.len())
                        .step_by(threads)
                        .map(|k| (k, descend(g, p, &starts[k], cfg)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (k, r) in h.join().expect("restart worker panicked") {
                slots[k] = r;
            }
        }
    });
    slots.into_iter().collect()
}

/// `minimize_q` at every `p` of `cfg.continuation`, each solve warm-started
/// from the previous minimizer.
pub fn continuation_sweep<T: Scalar>(g: &Graph, cfg: &SolverConfig) -> Result<Vec<SpectralResult<T>>> {
    validate_schedule(&cfg.continuation)?;
    if !g.is_connected() {
        warn!("continuation sweep on a disconnected graph ({} vertices)", g.n());
    }
    let mut out: Vec<SpectralResult<T>> = Vec::with_capacity(cfg.continuation.len());
    for &p in &cfg.continuation {
        let warm: Vec<VertexVector<T>> = out.last().map(|r| vec![r.vector.clone()]).unwrap_or_default();
        out.push(minimize_q_with_starts(g, T::lit(p), cfg, &warm)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};
    use crate::pfunctional::{rayleigh, residual};

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let mut cfg = SolverConfig::default();
        cfg.continuation = vec![2.0, 2.0];
        assert!(cfg.validate().is_err());
        cfg.continuation = vec![2.0, 1.0];
        assert!(matches!(cfg.validate(), Err(Error::InvalidP(_))));
        cfg.continuation = vec![1.5];
        cfg.shrink = 1.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn rejects_p_at_most_one() {
        let g = complete(3);
        let cfg = SolverConfig::default();
        assert!(matches!(minimize_q(&g, 1.0, &cfg), Err(Error::InvalidP(_))));
        assert!(matches!(maximize_lambda(&g, 0.5, &cfg), Err(Error::InvalidP(_))));
    }

    #[test]
    fn edgeless_degenerate() {
        let g = Graph::from_edges(4, []).unwrap();
        let cfg = SolverConfig::default();
        for r in [minimize_q(&g, 2.0, &cfg).unwrap(), maximize_lambda(&g, 1.5, &cfg).unwrap()] {
            assert_eq!(r.value, 0.0);
            assert_eq!(r.iterations, 0);
            assert!(r.converged);
            assert_eq!(&*r.vector, &[1.0, 0.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn lambda_complete_p3() {
        let r = maximize_lambda(&complete(4), 3.0, &SolverConfig::default()).unwrap();
        assert!((r.value - 12.0f64).abs() < 1e-8, "{}", r.value);
        assert!(r.converged);
    }

    #[test]
    fn lambda_odd_cycle() {
        let r = maximize_lambda(&cycle(5), 2.5, &SolverConfig::default()).unwrap();
        assert!((r.value - 2f64.powf(2.5)).abs() < 1e-8);
    }

    #[test]
    fn lambda_regular_is_ones() {
        let g = cycle(6);
        let r = maximize_lambda(&g, 2.0, &SolverConfig::default()).unwrap();
        assert!((r.value - 4.0f64).abs() < 1e-8);
        let target = (6f64).powf(-0.5);
        for &v in r.vector.iter() {
            assert!((v - target).abs() < 1e-6);
        }
    }

    #[test]
    fn lambda_trace_is_monotone() {
        let g = path(7);
        let r = maximize_lambda(&g, 1.7, &SolverConfig::default()).unwrap();
        for w in r.trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
    }

    #[test]
    fn q_bipartite_component_is_zero() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)]).unwrap();
        for p in [1.1, 2.0, 3.0] {
            let r = minimize_q::<f64>(&g, p, &SolverConfig::default()).unwrap();
            assert!(r.value.abs() < 1e-10);
            let v = &r.vector;
            assert!(v[0].abs() < 1e-12 && v[1].abs() < 1e-12 && v[2].abs() < 1e-12);
            assert!((v[3] + v[4]).abs() < 1e-12 && (v[4] + v[5]).abs() < 1e-12);
        }
    }

    #[test]
    fn q_triangle_p2() {
        let r = minimize_q(&complete(3), 2.0, &SolverConfig::default()).unwrap();
        assert!((r.value - 1.0f64).abs() < 1e-9);
    }

    #[test]
    fn q_five_cycle_p2() {
        // Smallest eigenvalue of D + A on C_5: 2 - 2 cos(pi / 5).
        let target = 2.0 - 2.0 * (std::f64::consts::PI / 5.0).cos();
        let r = minimize_q(&cycle(5), 2.0, &SolverConfig::default()).unwrap();
        assert!((r.value - target).abs() < 1e-8, "{} vs {target}", r.value);
    }

    #[test]
    fn result_invariants() {
        let g = cycle(7);
        let cfg = SolverConfig::default();
        for r in [minimize_q::<f64>(&g, 1.6, &cfg).unwrap(), maximize_lambda(&g, 1.6, &cfg).unwrap()] {
            let p = r.p;
            assert!((r.vector.p_norm(p) - 1.0).abs() < 1e-12);
            assert!((rayleigh(&g, &r.vector, p).unwrap() - r.value).abs() < 1e-10);
            let res = residual(&g, &r.vector, r.value, p).unwrap();
            assert!((res - r.residual).abs() < 1e-10);
        }
    }

    #[test]
    fn descent_trace_is_monotone() {
        let g = complete(5);
        let r = minimize_q(&g, 1.4, &SolverConfig::default()).unwrap();
        for w in r.trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn threads_do_not_change_result() {
        let g = cycle(9);
        let cfg = SolverConfig::with_seed(11);
        let a = minimize_q(&g, 1.5, &cfg).unwrap();
        let b = minimize_q(
            &g,
            1.5,
            &SolverConfig {
                threads: 4,
                ..cfg.clone()
            },
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn warm_start_dimension_checked() {
        let g = cycle(5);
        let w = VertexVector::ones(4);
        assert!(matches!(
            minimize_q_with_starts(&g, 2.0, &SolverConfig::default(), &[w]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sweep_bipartite_all_zero() {
        let rs = continuation_sweep::<f64>(&cycle(6), &SolverConfig::default()).unwrap();
        assert_eq!(rs.len(), 8);
        assert!(rs.iter().all(|r| r.value.abs() < 1e-10));
    }

    #[test]
    fn single_precision_lambda() {
        let cfg = SolverConfig {
            tol_residual: 1e-4,
            tol_step: 1e-7,
            ..SolverConfig::default()
        };
        let r = maximize_lambda(&complete(4), 2.0f32, &cfg).unwrap();
        assert!((r.value - 6.0).abs() < 1e-3);
    }
}
