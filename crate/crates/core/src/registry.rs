//! Catalogue of spectral inequalities for `q_p` and `lambda_p`, evaluated on
//! solver output with exact oracle values wherever the graph is small enough.
//!
//! Every check is stated as `lhs <= rhs + tol` unless it is an equivalence
//! (`*_iff_*`), in which case `lhs`/`rhs` carry the compared quantities and
//! the verdict is recorded directly.

use crate::oracles::{
    brute_force_psi, build_gprime, chromatic_number, dense_q2_spectrum, h_g_sweep, level_set_bound_check,
    verify_gx_inequality, vertex_bipartiteness, CHI_CAP, NU_CAP, PSI_CAP,
};
use crate::solver::minimize_q_with_starts;
use crate::{
    maximize_lambda, minimize_q, threshold_sweep, Error, Graph, Rational, Result, SolverConfig,
    SpectralResult, SplitMix64, VertexSubsetPair,
};

/// Solver-facing tolerance of the registry.
pub const SOLVER_TOL: f64 = 1e-6;
/// Slack on lower bounds that the solver can only overshoot.
pub const LOWER_TOL: f64 = 1e-9;

const SUBGRAPH_STREAM: u64 = 0x5B_6EA9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub p: Option<f64>,
    pub status: Status,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
    /// Both sides agree within `tol` (the bound is attained).
    pub equality: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn bound(name: &'static str, p: Option<f64>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let status = if lhs <= rhs + tol { Status::Pass } else { Status::Fail };
        Self {
            name,
            p,
            status,
            lhs,
            rhs,
            tol,
            equality: (lhs - rhs).abs() <= tol,
            detail: String::new(),
        }
    }

    fn verdict(name: &'static str, p: Option<f64>, ok: bool, lhs: f64, rhs: f64, detail: String) -> Self {
        Self {
            name,
            p,
            status: if ok { Status::Pass } else { Status::Fail },
            lhs,
            rhs,
            tol: 0.0,
            equality: lhs == rhs,
            detail,
        }
    }

    fn skipped(name: &'static str, p: Option<f64>, detail: impl Into<String>) -> Self {
        Self {
            name,
            p,
            status: Status::Skipped,
            lhs: f64::NAN,
            rhs: f64::NAN,
            tol: 0.0,
            equality: false,
            detail: detail.into(),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegistryConfig {
    /// Exponents to check, each `> 1`.
    pub p_list: Vec<f64>,
    /// Random edge-deletion subgraphs per exponent.
    pub subgraph_trials: usize,
    pub solver: SolverConfig,
}

impl Default for RegistryConfig {
    fn default() -> Self {
        Self {
            p_list: vec![1.1, 1.5, 2.0, 3.0],
            subgraph_trials: 20,
            solver: SolverConfig::default(),
        }
    }
}

/// Solver output at one exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct PRecord {
    pub p: f64,
    pub q: SpectralResult<f64>,
    pub lambda: SpectralResult<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegistryReport {
    pub psi: Option<(Rational, VertexSubsetPair)>,
    pub chi: Option<usize>,
    pub nu: Option<usize>,
    pub records: Vec<PRecord>,
    pub checks: Vec<CheckOutcome>,
}

impl RegistryReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn all_hold(&self) -> bool {
        self.failures().next().is_none()
    }
}

fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn oracle<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::OracleCap { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `(chi - 2)^(p-1) + 2^(p-1)` over `(chi - 1)^(p-1) + 1`.
fn chromatic_factor(chi: f64, p: f64) -> f64 {
    ((chi - 2.0).powf(p - 1.0) + 2f64.powf(p - 1.0)) / ((chi - 1.0).powf(p - 1.0) + 1.0)
}

/// Runs every check on `g`.
pub fn run_registry(g: &Graph, cfg: &RegistryConfig) -> Result<RegistryReport> {
    if let Some(&p) = cfg.p_list.iter().find(|&&p| !(p > 1.0) || !p.is_finite()) {
        return Err(Error::InvalidP(p));
    }
    let psi = oracle(brute_force_psi(g))?;
    let chi = oracle(chromatic_number(g))?;
    let nu = oracle(vertex_bipartiteness(g))?.map(|(k, _)| k);
    let connected = g.is_connected();
    let n = g.n() as f64;
    let m = g.m() as f64;
    let delta_min = g.min_degree() as f64;
    let delta_max = g.max_degree() as f64;
    let regular = g.is_regular();

    let mut checks = Vec::new();
    let mut records = Vec::new();

    // Combinatorial limits of the chromatic and bipartiteness bounds.
    match (&psi, nu) {
        (Some((psi, _)), Some(nu)) => checks.push(CheckOutcome::verdict(
            "psi_le_vertex_bipartiteness",
            None,
            *psi <= Rational::from(nu as i64),
            ratio_f64(*psi),
            nu as f64,
            format!("psi = {psi}, nu = {nu}"),
        )),
        _ => checks.push(CheckOutcome::skipped("psi_le_vertex_bipartiteness", None, oracle_skip(g))),
    }
    match (&psi, chi) {
        (Some((psi, _)), Some(chi)) if connected && chi >= 3 => {
            let bound = Rational::new(2 * g.m() as i64 * (chi as i64 - 2), g.n() as i64 * (chi as i64 - 1));
            checks.push(CheckOutcome::verdict(
                "psi_chromatic_upper",
                None,
                *psi <= bound,
                ratio_f64(*psi),
                ratio_f64(bound),
                format!("psi = {psi}, bound = {bound}"),
            ));
        }
        (Some(_), Some(_)) => checks.push(CheckOutcome::skipped(
            "psi_chromatic_upper",
            None,
            "needs a connected graph with chi >= 3",
        )),
        _ => checks.push(CheckOutcome::skipped("psi_chromatic_upper", None, oracle_skip(g))),
    }
    match &psi {
        Some((psi, _)) if g.m() > 0 => {
            let bound = Rational::from(g.max_degree() as i64 - 1);
            checks.push(CheckOutcome::verdict(
                "psi_le_max_degree_minus_one",
                None,
                *psi <= bound,
                ratio_f64(*psi),
                ratio_f64(bound),
                format!("psi = {psi}"),
            ));
        }
        Some(_) => checks.push(CheckOutcome::skipped(
            "psi_le_max_degree_minus_one",
            None,
            "graph has no edges",
        )),
        None => checks.push(CheckOutcome::skipped(
            "psi_le_max_degree_minus_one",
            None,
            oracle_skip(g),
        )),
    }

    let dense = if cfg.p_list.contains(&2.0) {
        oracle(dense_q2_spectrum::<f64>(g))?
    } else {
        None
    };

    for (pi, &p) in cfg.p_list.iter().enumerate() {
        let sp = Some(p);
        let two = 2f64.powf(p - 1.0);
        let q = minimize_q(g, p, &cfg.solver)?;
        let lam = maximize_lambda(g, p, &cfg.solver)?;

        checks.push(CheckOutcome::bound("q_le_min_degree", sp, q.value, delta_min, SOLVER_TOL));
        checks.push(CheckOutcome::bound("lambda_ge_max_degree", sp, delta_max, lam.value, SOLVER_TOL));

        checks.extend(subgraph_checks(g, p, pi, &q, &lam, cfg)?);

        checks.push(CheckOutcome::bound(
            "lambda_ge_average_degree",
            sp,
            two * 2.0 * m / n,
            lam.value,
            SOLVER_TOL,
        ));
        checks.push(CheckOutcome::bound(
            "lambda_le_max_degree",
            sp,
            lam.value,
            two * delta_max,
            SOLVER_TOL,
        ));
        if connected {
            let eq_upper = (lam.value - two * delta_max).abs() <= SOLVER_TOL;
            let eq_lower = (lam.value - two * 2.0 * m / n).abs() <= SOLVER_TOL;
            let mut c = CheckOutcome::verdict(
                "degree_equality_iff_regular",
                sp,
                eq_upper == regular && eq_lower == regular,
                lam.value,
                two * delta_max,
                format!("regular = {regular}, upper attained = {eq_upper}, lower attained = {eq_lower}"),
            );
            c.equality = regular;
            checks.push(c);
        } else {
            checks.push(CheckOutcome::skipped(
                "degree_equality_iff_regular",
                sp,
                "graph is disconnected",
            ));
        }

        if g.m() > 0 {
            let conj = p / (p - 1.0);
            let worst = g
                .edges()
                .iter()
                .map(|&(i, j)| {
                    let di = g.degree(i) as f64;
                    let dj = g.degree(j) as f64;
                    ((di.powf(conj) + dj.powf(conj)) / 2.0).powf(1.0 / conj)
                })
                .fold(0.0, f64::max);
            checks.push(CheckOutcome::bound("holder_degree_bound", sp, lam.value, two * worst, SOLVER_TOL));
        } else {
            checks.push(CheckOutcome::skipped("holder_degree_bound", sp, "graph has no edges"));
        }

        if let Some((psi_val, _)) = &psi {
            let psi_f = ratio_f64(*psi_val);
            let lower = if delta_max > 0.0 {
                (2.0 / delta_max).powf(p - 1.0) * (psi_f / p).powf(p)
            } else {
                0.0
            };
            checks.push(CheckOutcome::bound("psi_sandwich_lower", sp, lower, q.value, LOWER_TOL));
            checks.push(CheckOutcome::bound("psi_sandwich_upper", sp, q.value, two * psi_f, SOLVER_TOL));
            let sweep = threshold_sweep(g, &q.vector)?;
            checks.push(CheckOutcome::verdict(
                "extractor_feasibility",
                sp,
                sweep.psi_x >= *psi_val,
                ratio_f64(*psi_val),
                ratio_f64(sweep.psi_x),
                format!("psi(x) = {}, psi(G) = {psi_val}", sweep.psi_x),
            ));
        } else {
            for name in ["psi_sandwich_lower", "psi_sandwich_upper", "extractor_feasibility"] {
                checks.push(CheckOutcome::skipped(name, sp, oracle_skip(g)));
            }
        }

        if let Some(chi) = chi {
            let chi_f = chi as f64;
            let wilf = two * (chi_f - 1.0);
            let c = CheckOutcome::bound("wilf_chromatic_lower", sp, wilf, lam.value, SOLVER_TOL);
            let attained = c.equality;
            checks.push(c);
            if connected {
                let special = g.is_complete() || g.is_odd_cycle();
                checks.push(CheckOutcome::verdict(
                    "wilf_equality_iff_complete_or_odd_cycle",
                    sp,
                    attained == special,
                    wilf,
                    lam.value,
                    format!("attained = {attained}, complete or odd cycle = {special}"),
                ));
            } else {
                checks.push(CheckOutcome::skipped(
                    "wilf_equality_iff_complete_or_odd_cycle",
                    sp,
                    "graph is disconnected",
                ));
            }
            if connected && chi >= 3 {
                let bound = 2.0 * m / n * (chi_f - 2.0) / (chi_f - 1.0) * chromatic_factor(chi_f, p);
                checks.push(CheckOutcome::bound("chromatic_q_upper", sp, q.value, bound, SOLVER_TOL));
            } else {
                checks.push(CheckOutcome::skipped(
                    "chromatic_q_upper",
                    sp,
                    "needs a connected graph with chi >= 3",
                ));
            }
            if connected && chi >= 2 {
                let bound = wilf - (chi_f - 2.0) * chromatic_factor(chi_f, p);
                checks.push(CheckOutcome::bound(
                    "chromatic_spread",
                    sp,
                    bound,
                    lam.value - q.value,
                    SOLVER_TOL,
                ));
            } else {
                checks.push(CheckOutcome::skipped("chromatic_spread", sp, "needs a connected graph with chi >= 2"));
            }
        } else {
            for name in [
                "wilf_chromatic_lower",
                "wilf_equality_iff_complete_or_odd_cycle",
                "chromatic_q_upper",
                "chromatic_spread",
            ] {
                checks.push(CheckOutcome::skipped(name, sp, oracle_skip(g)));
            }
        }
        match nu {
            Some(nu) => checks.push(CheckOutcome::bound("q_le_vertex_bipartiteness", sp, q.value, nu as f64, SOLVER_TOL)),
            None => checks.push(CheckOutcome::skipped("q_le_vertex_bipartiteness", sp, oracle_skip(g))),
        }

        checks.extend(gprime_checks(g, &q, psi.as_ref().map(|(r, _)| *r))?);

        if p == 2.0 {
            match &dense {
                Some(spec) => {
                    let gap = q.value - spec.smallest();
                    let ok = (-LOWER_TOL..=SOLVER_TOL).contains(&gap);
                    checks.push(CheckOutcome::verdict(
                        "oracle_q2_agreement",
                        sp,
                        ok,
                        q.value,
                        spec.smallest(),
                        format!("solver - dense = {gap:e}"),
                    ));
                    checks.push(
                        CheckOutcome::bound(
                            "oracle_lambda2_agreement",
                            sp,
                            (lam.value - spec.largest()).abs(),
                            0.0,
                            SOLVER_TOL,
                        )
                        .with_detail(format!("dense largest = {}", spec.largest())),
                    );
                }
                None => {
                    for name in ["oracle_q2_agreement", "oracle_lambda2_agreement"] {
                        checks.push(CheckOutcome::skipped(name, sp, "graph exceeds the dense cap"));
                    }
                }
            }
        }

        records.push(PRecord { p, q, lambda: lam });
    }

    Ok(RegistryReport {
        psi,
        chi,
        nu,
        records,
        checks,
    })
}

fn oracle_skip(g: &Graph) -> String {
    format!(
        "n = {} exceeds an oracle cap (psi {PSI_CAP}, chi {CHI_CAP}, nu {NU_CAP})",
        g.n()
    )
}

/// Random edge-deletion subgraphs never raise `q_p` or `lambda_p`.
///
/// Each trial drops every edge independently with probability 1/2 (at least
/// one edge). The subgraph solve is warm-started from the minimizer of `g`,
/// whose quotient can only drop when edges disappear.
fn subgraph_checks(
    g: &Graph,
    p: f64,
    p_index: usize,
    q: &SpectralResult<f64>,
    lam: &SpectralResult<f64>,
    cfg: &RegistryConfig,
) -> Result<Vec<CheckOutcome>> {
    if g.m() == 0 || cfg.subgraph_trials == 0 {
        return Ok(["subgraph_monotone_q", "subgraph_monotone_lambda"]
            .map(|n| CheckOutcome::skipped(n, Some(p), "no edges to delete"))
            .to_vec());
    }
    let mut rng = SplitMix64::fork(cfg.solver.seed ^ SUBGRAPH_STREAM, p_index as u64);
    let sub_cfg = SolverConfig {
        restarts: 0,
        ..cfg.solver.clone()
    };
    let (mut worst_q, mut worst_lam) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for _ in 0..cfg.subgraph_trials {
        let mut drop: Vec<(usize, usize)> = g.edges().iter().copied().filter(|_| rng.bernoulli(0.5)).collect();
        if drop.is_empty() {
            drop.push(g.edges()[rng.below(g.m() as u64) as usize]);
        }
        let h = g.remove_edges(&drop)?;
        let qh = minimize_q_with_starts(&h, p, &sub_cfg, std::slice::from_ref(&q.vector))?;
        let lh = maximize_lambda(&h, p, &cfg.solver)?;
        worst_q = worst_q.max(qh.value);
        worst_lam = worst_lam.max(lh.value);
    }
    Ok(vec![
        CheckOutcome::bound("subgraph_monotone_q", Some(p), worst_q, q.value, SOLVER_TOL)
            .with_detail(format!("max over {} subgraphs", cfg.subgraph_trials)),
        CheckOutcome::bound("subgraph_monotone_lambda", Some(p), worst_lam, lam.value, SOLVER_TOL)
            .with_detail(format!("max over {} subgraphs", cfg.subgraph_trials)),
    ])
}

/// Checks on the doubled-edge graph built from the minimizer.
fn gprime_checks(g: &Graph, q: &SpectralResult<f64>, psi: Option<Rational>) -> Result<Vec<CheckOutcome>> {
    let p = q.p;
    let sp = Some(p);
    if g.m() == 0 {
        return Ok(["gprime_max_degree", "gprime_difference_sum", "gprime_cut_identity", "level_set_ratio_ge_psi", "gprime_level_set_bound"]
            .map(|n| CheckOutcome::skipped(n, sp, "graph has no edges"))
            .to_vec());
    }
    let gp = build_gprime(g, &q.vector)?;
    let mut out = vec![CheckOutcome::verdict(
        "gprime_max_degree",
        sp,
        gp.gprime.max_degree() == g.max_degree(),
        gp.gprime.max_degree() as f64,
        g.max_degree() as f64,
        String::new(),
    )];
    let gx = verify_gx_inequality(&gp, &q.vector, p)?;
    out.push(CheckOutcome::verdict("gprime_difference_sum", sp, gx.holds, gx.lhs, gx.rhs, String::new()));
    let sweep = h_g_sweep(&gp)?;
    out.push(CheckOutcome::verdict(
        "gprime_cut_identity",
        sp,
        sweep.identity_holds,
        sweep.steps.len() as f64,
        sweep.steps.iter().filter(|s| s.cut_gprime == s.numerator_g).count() as f64,
        format!("{} thresholds", sweep.steps.len()),
    ));
    match psi {
        Some(psi) => out.push(CheckOutcome::verdict(
            "level_set_ratio_ge_psi",
            sp,
            sweep.h_g >= psi,
            ratio_f64(psi),
            ratio_f64(sweep.h_g),
            format!("h_g = {}, psi = {psi}", sweep.h_g),
        )),
        None => out.push(CheckOutcome::skipped("level_set_ratio_ge_psi", sp, oracle_skip(g))),
    }
    let est = level_set_bound_check(&gp, sweep.h_g, p);
    out.push(CheckOutcome::bound("gprime_level_set_bound", sp, est.lhs, est.rhs, LOWER_TOL));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, star};

    fn quick() -> RegistryConfig {
        RegistryConfig {
            p_list: vec![1.5, 2.0, 3.0],
            subgraph_trials: 3,
            solver: SolverConfig::default(),
        }
    }

    fn find<'a>(r: &'a RegistryReport, name: &str, p: f64) -> &'a CheckOutcome {
        r.checks
            .iter()
            .find(|c| c.name == name && c.p == Some(p))
            .unwrap_or_else(|| panic!("missing {name} at p = {p}"))
    }

    #[test]
    fn complete_graph_all_hold() {
        let r = run_registry(&complete(4), &quick()).unwrap();
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
        let c = find(&r, "lambda_le_max_degree", 2.0);
        assert!(c.equality);
        assert!(find(&r, "wilf_chromatic_lower", 2.0).equality);
    }

    #[test]
    fn odd_cycle_wilf_equality() {
        let r = run_registry(&cycle(5), &quick()).unwrap();
        assert!(r.all_hold(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert!(find(&r, "wilf_chromatic_lower", 2.0).equality);
    }

    #[test]
    fn star_not_regular() {
        let r = run_registry(&star(4), &quick()).unwrap();
        assert!(r.all_hold(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert!(!find(&r, "lambda_le_max_degree", 2.0).equality);
        assert!(!find(&r, "wilf_chromatic_lower", 3.0).equality);
    }

    #[test]
    fn disconnected_skips_connected_checks() {
        let g = crate::generators::disjoint_union(&complete(3), &path(2));
        let r = run_registry(&g, &quick()).unwrap();
        assert!(r.all_hold());
        assert_eq!(find(&r, "chromatic_spread", 2.0).status, Status::Skipped);
    }

    #[test]
    fn oversized_graph_skips_oracles() {
        let g = cycle(21);
        let cfg = RegistryConfig {
            p_list: vec![2.0],
            subgraph_trials: 1,
            solver: SolverConfig::default(),
        };
        let r = run_registry(&g, &cfg).unwrap();
        assert!(r.psi.is_none() && r.chi.is_none() && r.nu.is_none());
        assert_eq!(find(&r, "psi_sandwich_upper", 2.0).status, Status::Skipped);
        assert!(r.all_hold());
    }

    #[test]
    fn rejects_p_one() {
        let cfg = RegistryConfig {
            p_list: vec![1.0],
            ..quick()
        };
        assert!(matches!(run_registry(&cycle(5), &cfg), Err(Error::InvalidP(_))));
    }
}
