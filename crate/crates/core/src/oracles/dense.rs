use super::check_cap;
use crate::{Error, Graph, Result, Scalar};

/// Largest graph the dense eigensolver accepts.
pub const DENSE_CAP: usize = 2000;
const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of `D + A`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSpectrum<T> {
    /// Ascending.
    pub values: Vec<T>,
    /// `vectors[k]` belongs to `values[k]`; orthonormal.
    pub vectors: Vec<Vec<T>>,
}

impl<T: Scalar> DenseSpectrum<T> {
    pub fn smallest(&self) -> T {
        self.values[0]
    }

    pub fn largest(&self) -> T {
        *self.values.last().expect("non-empty spectrum")
    }
}

/// Row-major `D + A`.
pub fn signless_laplacian_matrix<T: Scalar>(g: &Graph) -> Vec<Vec<T>> {
    let n = g.n();
    let mut a = vec![vec![T::zero(); n]; n];
    for v in 0..n {
        a[v][v] = T::lit(g.degree(v) as f64);
    }
    for &(i, j) in g.edges() {
        a[i][j] = T::one();
        a[j][i] = T::one();
    }
    a
}

/// Full spectrum of `D + A` by cyclic Jacobi plane rotations.
///
/// Sweeps run over all pairs `(r, c)`, `r < c`, until the off-diagonal
/// Frobenius mass falls below `1e-12 ||D + A||_F` (or a few ulps for
/// single precision).
pub fn dense_q2_spectrum<T: Scalar>(g: &Graph) -> Result<DenseSpectrum<T>> {
    check_cap("dense spectrum", g, DENSE_CAP)?;
    let n = g.n();
    let mut a = signless_laplacian_matrix::<T>(g);
    let mut v = vec![vec![T::zero(); n]; n];
    for (k, row) in v.iter_mut().enumerate() {
        row[k] = T::one();
    }

    let frob = a
        .iter()
        .flatten()
        .fold(T::zero(), |acc, &x| acc + x * x)
        .sqrt();
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(16.0)) * frob;
    let off = |a: &[Vec<T>]| {
        let mut s = T::zero();
        for r in 0..n {
            for c in r + 1..n {
                s = s + a[r][c] * a[r][c];
            }
        }
        (s + s).sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NumericalFailure(format!(
                "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for r in 0..n {
            for c in r + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                rotate(&mut a, &mut v, r, c);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).expect("finite eigenvalues"));
    let values: Vec<T> = order.iter().map(|&k| a[k][k]).collect();
    if let Some(&neg) = values.iter().find(|&&x| x < T::lit(-1e-9)) {
        return Err(Error::NumericalFailure(format!(
            "signless Laplacian eigenvalue {neg} is negative"
        )));
    }
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|row| v[row][k]).collect())
        .collect();
    Ok(DenseSpectrum { values, vectors })
}

/// Annihilates `a[r][c]` with one plane rotation, accumulating it into `v`.
fn rotate<T: Scalar>(a: &mut [Vec<T>], v: &mut [Vec<T>], r: usize, c: usize) {
    let two = T::lit(2.0);
    let theta = (a[c][c] - a[r][r]) / (two * a[r][c]);
    let sign = if theta < T::zero() { -T::one() } else { T::one() };
    let t = sign / (theta.abs() + (theta * theta + T::one()).sqrt());
    let cos = (t * t + T::one()).sqrt().recip();
    let sin = t * cos;
    let n = a.len();

    let arc = a[r][c];
    a[r][r] = a[r][r] - t * arc;
    a[c][c] = a[c][c] + t * arc;
    a[r][c] = T::zero();
    a[c][r] = T::zero();
    for k in 0..n {
        if k == r || k == c {
            continue;
        }
        let akr = a[k][r];
        let akc = a[k][c];
        a[k][r] = cos * akr - sin * akc;
        a[r][k] = a[k][r];
        a[k][c] = sin * akr + cos * akc;
        a[c][k] = a[k][c];
    }
    for row in v.iter_mut() {
        let vr = row[r];
        let vc = row[c];
        row[r] = cos * vr - sin * vc;
        row[c] = sin * vr + cos * vc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};

    fn close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-10, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn triangle() {
        let s = dense_q2_spectrum::<f64>(&complete(3)).unwrap();
        close(&s.values, &[1.0, 1.0, 4.0]);
    }

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        close(&dense_q2_spectrum::<f64>(&g).unwrap().values, &[0.0, 2.0]);
    }

    #[test]
    fn even_cycle_has_zero() {
        let s = dense_q2_spectrum::<f64>(&cycle(4)).unwrap();
        assert!(s.smallest().abs() < 1e-12);
    }

    #[test]
    fn path_three() {
        // D + A = [[1,1,0],[1,2,1],[0,1,1]]: eigenvectors (1,-1,1), (1,0,-1), (1,2,1).
        let s = dense_q2_spectrum::<f64>(&path(3)).unwrap();
        close(&s.values, &[0.0, 1.0, 3.0]);
    }

    #[test]
    fn eigenpairs_and_orthonormality() {
        let g = cycle(7);
        let s = dense_q2_spectrum::<f64>(&g).unwrap();
        let q = signless_laplacian_matrix::<f64>(&g);
        for (val, vec) in s.values.iter().zip(&s.vectors) {
            for r in 0..g.n() {
                let qv: f64 = (0..g.n()).map(|c| q[r][c] * vec[c]).sum();
                assert!((qv - val * vec[r]).abs() < 1e-10);
            }
        }
        for i in 0..g.n() {
            for j in 0..g.n() {
                let d: f64 = (0..g.n()).map(|k| s.vectors[i][k] * s.vectors[j][k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn single_precision() {
        let s = dense_q2_spectrum::<f32>(&complete(4)).unwrap();
        assert!((s.smallest() - 2.0).abs() < 1e-5);
        assert!((s.largest() - 6.0).abs() < 1e-5);
    }
}
