//! The signless p-Laplacian functional and its first-order quantities.
//!
//! For a graph `G` and `x ∈ R^V`:
//!
//! ```text
//! Q_p(x)        = sum_{ij in E} |x_i + x_j|^p
//! grad_q(x)_i   = sum_{j ~ i} phi_p(x_i + x_j)       (= (1/p) dQ_p/dx_i)
//! R_p(x)        = Q_p(x) / ||x||_p^p
//! phi_p(t)      = sg(t) |t|^(p-1),   phi_p(0) = 0
//! ```
//!
//! `(x, mu)` is an eigenpair when `grad_q(x)_i = mu * phi_p(x_i)` for every
//! vertex.

use std::ops::Deref;

use crate::{Error, Graph, Result, Scalar};

/// Below this distance from 1 the exponent `p - 1` is treated as zero and
/// `phi_p` degenerates to the sign function.
pub const P_ONE_EPS: f64 = 1e-9;

/// Real-valued function on the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VertexVector<T>(Vec<T>);

impl<T: Scalar> VertexVector<T> {
    /// Rejects NaN and infinite entries.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NumericalFailure(format!(
                "non-finite entry at vertex {i}"
            )));
        }
        Ok(Self(values))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![T::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![T::zero(); n];
        v[i] = T::one();
        Self(v)
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![T::one(); n])
    }

    /// `+1` on S, `-1` on T, `0` elsewhere.
    pub fn signed_indicator(n: usize, pair: &crate::VertexSubsetPair) -> Self {
        let mut v = vec![T::zero(); n];
        for &i in &pair.s {
            v[i] = T::one();
        }
        for &i in &pair.t {
            v[i] = -T::one();
        }
        Self(v)
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }

    /// `sum_i |x_i|^p`.
    pub fn p_norm_pow(&self, p: T) -> T {
        self.0
            .iter()
            .fold(T::zero(), |acc, &v| acc + abs_pow(v, p))
    }

    pub fn p_norm(&self, p: T) -> T {
        self.p_norm_pow(p).powf(p.recip())
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn scaled(&self, c: T) -> Self {
        Self(self.0.iter().map(|&v| v * c).collect())
    }

    /// Rescaled onto the unit p-sphere.
    pub fn normalized(&self, p: T) -> Result<Self> {
        let norm = self.p_norm(p);
        if norm.is_zero() || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(self.scaled(norm.recip()))
    }

    pub fn dot(&self, other: &[T]) -> T {
        self.0
            .iter()
            .zip(other)
            .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }
}

impl<T> Deref for VertexVector<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> From<VertexVector<T>> for Vec<T> {
    fn from(v: VertexVector<T>) -> Self {
        v.0
    }
}

/// Exponent `p >= 1` with its Hölder conjugate `q = p / (p - 1)` (p > 1 only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PValue<T> {
    p: T,
    q: Option<T>,
}

impl<T: Scalar> PValue<T> {
    pub fn new(p: T) -> Result<Self> {
        if !(p >= T::one()) || !p.is_finite() {
            return Err(Error::InvalidP(p.to_f64_lossy()));
        }
        let q = (p > T::one()).then(|| p / (p - T::one()));
        Ok(Self { p, q })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn conjugate(&self) -> Option<T> {
        self.q
    }
}

/// `|t|^p`, with `0^p = 0`.
#[inline]
fn abs_pow<T: Scalar>(t: T, p: T) -> T {
    let a = t.abs();
    if a.is_zero() {
        T::zero()
    } else if p == T::one() {
        a
    } else {
        a.powf(p)
    }
}

/// `phi_p(t) = sg(t) |t|^(p-1)`; zero at `t = 0` for every `p`.
///
/// The power is evaluated as `exp((p-1) ln|t|)`, which flushes to zero on
/// underflow.
#[inline]
pub fn sgn_pow<T: Scalar>(t: T, p: T) -> T {
    if t.is_zero() {
        return T::zero();
    }
    let e = p - T::one();
    if e < T::lit(P_ONE_EPS) {
        return t.signum();
    }
    let mag = (e * t.abs().ln()).exp();
    if t > T::zero() {
        mag
    } else {
        -mag
    }
}

/// Inverse of [`sgn_pow`]: `sg(y) |y|^(1/(p-1))`, for `p > 1`.
#[inline]
pub fn inverse_sgn_pow<T: Scalar>(y: T, p: T) -> T {
    if y.is_zero() {
        return T::zero();
    }
    let mag = (y.abs().ln() / (p - T::one())).exp();
    if y > T::zero() {
        mag
    } else {
        -mag
    }
}

fn check_dim<T>(g: &Graph, x: &[T]) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    Ok(())
}

/// `Q_p(x) = sum_{ij in E} |x_i + x_j|^p`.
pub fn q_functional<T: Scalar>(g: &Graph, x: &[T], p: T) -> Result<T> {
    check_dim(g, x)?;
    Ok(q_unchecked(g, x, p))
}

pub(crate) fn q_unchecked<T: Scalar>(g: &Graph, x: &[T], p: T) -> T {
    g.edges()
        .iter()
        .fold(T::zero(), |acc, &(i, j)| acc + abs_pow(x[i] + x[j], p))
}

/// `(1/p) ∇Q_p(x)`; at `p = 1` this is the subgradient selected by `sg(0) = 0`.
pub fn grad_q<T: Scalar>(g: &Graph, x: &[T], p: T) -> Result<VertexVector<T>> {
    check_dim(g, x)?;
    let mut out = vec![T::zero(); g.n()];
    grad_into(g, x, p, &mut out);
    Ok(VertexVector(out))
}

pub(crate) fn grad_into<T: Scalar>(g: &Graph, x: &[T], p: T, out: &mut [T]) {
    out.iter_mut().for_each(|v| *v = T::zero());
    for &(i, j) in g.edges() {
        let f = sgn_pow(x[i] + x[j], p);
        out[i] = out[i] + f;
        out[j] = out[j] + f;
    }
}

/// `R_p(x) = Q_p(x) / ||x||_p^p`.
pub fn rayleigh<T: Scalar>(g: &Graph, x: &[T], p: T) -> Result<T> {
    check_dim(g, x)?;
    let denom = x.iter().fold(T::zero(), |acc, &v| acc + abs_pow(v, p));
    if denom.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(q_unchecked(g, x, p) / denom)
}

/// Max-norm eigen-residual `max_i |grad_q(x)_i - mu * phi_p(x_i)|` after
/// rescaling `x` onto the unit p-sphere.
pub fn residual<T: Scalar>(g: &Graph, x: &[T], mu: T, p: T) -> Result<T> {
    check_dim(g, x)?;
    let x = VertexVector(x.to_vec()).normalized(p)?;
    let mut grad = vec![T::zero(); g.n()];
    grad_into(g, &x, p, &mut grad);
    Ok(residual_from_grad(&x, &grad, mu, p))
}

pub(crate) fn residual_from_grad<T: Scalar>(x: &[T], grad: &[T], mu: T, p: T) -> T {
    x.iter().zip(grad).fold(T::zero(), |acc, (&xi, &gi)| {
        acc.max((gi - mu * sgn_pow(xi, p)).abs())
    })
}
