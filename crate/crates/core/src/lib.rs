//! Signless p-Laplacian spectra of simple graphs.
//!
//! The signless p-Laplacian functional of a graph `G = (V, E)` is
//!
//! ```text
//! Q_p(x) = sum_{ij in E} |x_i + x_j|^p,      p >= 1
//! ```
//!
//! and its extremal values on the unit p-sphere are the smallest
//! eigenvalue `q_p(G)` and the largest eigenvalue `lambda_p(G)`. For `p = 2`
//! these are the extreme eigenvalues of the signless Laplacian matrix `D + A`.
//!
//! The crate provides
//!
//! - [`graph`]: simple undirected graphs, edge-list parsing and the exact
//!   subset counts `e(S)`, `e(S,T)`, `cut(S)`;
//! - [`pfunctional`]: `Q_p`, its gradient, the Rayleigh quotient and the
//!   eigen-residual;
//! - [`solver`]: nonlinear power iteration for `lambda_p` and multi-start
//!   projected gradient descent for `q_p`, with p-continuation toward `p = 1`;
//! - [`extractor`]: threshold sweeps that turn a vector into a near-bipartite
//!   pair `(S, T)` scored by the exact bipartiteness ratio `psi`;
//! - [`oracles`]: exponential-time ground truth (`psi(G)`, the dense `p = 2`
//!   spectrum, chromatic number, vertex bipartiteness) and the auxiliary
//!   doubled-edge graph used to relate `Q_p` to cut sparsity;
//! - [`registry`]: a catalogue of spectral inequalities checked against
//!   solver output and oracle values.
//!
//! Numerical code is generic over the scalar type through [`Scalar`]; the
//! `*64` / `*32` aliases below fix the common choices. Combinatorial
//! quantities are exact [`Rational`]s.

pub mod error;
pub mod extractor;
pub mod generators;
pub mod graph;
pub mod oracles;
pub mod pfunctional;
pub mod registry;
pub mod rng;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use extractor::{psi_limit_trace, threshold_sweep, ThresholdSweepResult, ThresholdStep};
pub use graph::{Component, Graph, VertexSubsetPair};
pub use pfunctional::{PValue, VertexVector};
pub use rng::SplitMix64;
pub use scalar::Scalar;
pub use solver::{continuation_sweep, maximize_lambda, minimize_q, SolverConfig, SpectralResult};

/// Exact rational used for every combinatorial ratio (`psi`, `h_g`).
pub type Rational = num_rational::Ratio<i64>;

pub type VertexVector64 = VertexVector<f64>;
pub type VertexVector32 = VertexVector<f32>;
pub type SpectralResult64 = SpectralResult<f64>;
pub type SpectralResult32 = SpectralResult<f32>;
pub type ThresholdSweepResult64 = ThresholdSweepResult<f64>;
pub type GPrime64 = oracles::GPrime<f64>;
