//! Exact, exponential-time ground truth for small graphs.

mod bipartiteness;
mod chromatic;
mod dense;
mod gprime;
mod psi;

pub use bipartiteness::{vertex_bipartiteness, NU_CAP};
pub use chromatic::{chromatic_number, CHI_CAP};
pub use dense::{dense_q2_spectrum, signless_laplacian_matrix, DenseSpectrum, DENSE_CAP};
pub use gprime::{build_gprime, h_g_sweep, level_set_bound_check, verify_gx_inequality, GPrime, GxCheck, HgStep, HgSweep};
pub use psi::{brute_force_psi, brute_force_psi_capped, PSI_CAP};

use crate::{Error, Graph, Result};

pub(crate) fn check_cap(oracle: &'static str, g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::OracleCap {
            oracle,
            n: g.n(),
            cap,
        });
    }
    Ok(())
}
