use std::collections::BTreeMap;
use std::time::Instant;

use plap_core::oracles::{brute_force_psi, chromatic_number, dense_q2_spectrum, vertex_bipartiteness, PSI_CAP};
use plap_core::registry::{run_registry, RegistryConfig, Status};
use plap_core::{
    continuation_sweep, maximize_lambda, minimize_q, psi_limit_trace, solver::validate_schedule, threshold_sweep,
    Graph, Rational, SolverConfig, SpectralResult64, VertexVector,
};

use crate::report::{
    finite, sig12, vector_out, CheckOut, ConfigEcho, ExactKind, Extremum, GraphInfo, PairOut, Payload,
    RationalOut, RunReport, SweepRow, VerifyRecord, SCHEMA_VERSION,
};
use crate::{Cli, CliError, Command, Common, Outcome, What, Which, EXIT_OK, EXIT_VERIFY_FAILED};

struct Clock {
    enabled: bool,
    last: Instant,
    phases: BTreeMap<String, f64>,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Self {
            enabled,
            last: Instant::now(),
            phases: BTreeMap::new(),
        }
    }

    fn lap(&mut self, phase: &str) {
        let now = Instant::now();
        if self.enabled {
            let ms = now.duration_since(self.last).as_secs_f64() * 1e3;
            *self.phases.entry(phase.to_owned()).or_default() += ms;
        }
        self.last = now;
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.enabled.then_some(self.phases)
    }
}

fn solver_config(c: &Common) -> Result<SolverConfig, CliError> {
    if c.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    if c.max_iters == 0 {
        return Err(CliError::Usage("--max-iters must be at least 1".into()));
    }
    Ok(SolverConfig {
        seed: c.seed,
        threads: c.threads,
        max_iters: c.max_iters,
        restarts: c.restarts,
        ..SolverConfig::default()
    })
}

fn check_p(p: f64) -> Result<(), CliError> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("p must be a finite number >= 1, got {p}")))
    }
}

fn extremum(r: &SpectralResult64, force_vector: bool) -> Extremum {
    Extremum {
        value: r.value,
        exact: None,
        exact_kind: None,
        residual: finite(r.residual),
        iterations: r.iterations,
        converged: r.converged,
        witness: None,
        vector: vector_out(&r.vector, force_vector),
    }
}

/// Normalized signed indicator; attains `psi` in the `p = 1` quotient.
fn indicator_vector(g: &Graph, pair: &plap_core::VertexSubsetPair) -> Vec<f64> {
    let x = VertexVector::<f64>::signed_indicator(g.n(), pair);
    match x.normalized(1.0) {
        Ok(v) => v.into_inner(),
        Err(_) => x.into_inner(),
    }
}

/// `q_1`: the exact bipartiteness ratio when the oracle fits, otherwise the
/// rounded continuation minimizer, which only bounds it from above.
fn q_one(g: &Graph, cfg: &SolverConfig, force_vector: bool) -> Result<Extremum, CliError> {
    if g.n() <= PSI_CAP {
        let (psi, w) = brute_force_psi(g)?;
        return Ok(Extremum {
            value: RationalOut::from(psi).float,
            exact: Some(psi.into()),
            exact_kind: Some(ExactKind::Oracle),
            residual: None,
            iterations: 0,
            converged: true,
            witness: Some((&w).into()),
            vector: vector_out(&indicator_vector(g, &w), force_vector),
        });
    }
    let results = continuation_sweep::<f64>(g, cfg)?;
    let last = results.last().expect("non-empty schedule");
    let sweep = threshold_sweep(g, &last.vector)?;
    Ok(Extremum {
        value: RationalOut::from(sweep.psi_x).float,
        exact: Some(sweep.psi_x.into()),
        exact_kind: Some(ExactKind::UpperBound),
        residual: None,
        iterations: results.iter().map(|r| r.iterations).sum(),
        converged: results.iter().all(|r| r.converged),
        witness: Some((&sweep.best_pair).into()),
        vector: vector_out(&indicator_vector(g, &sweep.best_pair), force_vector),
    })
}

/// `lambda_1 = max_i Q_1(e_i)`, attained at a vertex of maximum degree.
fn lambda_one(g: &Graph, force_vector: bool) -> Extremum {
    let v = (0..g.n()).find(|&v| g.degree(v) == g.max_degree()).unwrap_or(0);
    let delta = g.max_degree() as i64;
    Extremum {
        value: delta as f64,
        exact: Some(Rational::from(delta).into()),
        exact_kind: Some(ExactKind::Formula),
        residual: None,
        iterations: 0,
        converged: true,
        witness: None,
        vector: vector_out(&VertexVector::<f64>::basis(g.n(), v), force_vector),
    }
}

fn schedule_down_to(p: f64, default: &[f64]) -> Vec<f64> {
    let mut s: Vec<f64> = default.iter().copied().filter(|&q| q > p).collect();
    s.push(p);
    s
}

/// Reads the graph, runs the command, and assembles the report.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let common = &cli.common;
    let mut cfg = solver_config(common)?;
    let mut clock = Clock::new(common.timings);
    let path = cli.command.graph_path();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.clone(),
        source,
    })?;
    let g = Graph::parse_edge_list(&text)?;
    clock.lap("parse");
    let force = common.vector;
    let mut exit_code = EXIT_OK;
    let mut schedule_echo = None;

    let payload = match &cli.command {
        Command::Spectrum { p, which, .. } => {
            let p = *p;
            check_p(p)?;
            let want_min = matches!(which, Which::Min | Which::Both);
            let want_max = matches!(which, Which::Max | Which::Both);
            let (min, max) = if p == 1.0 {
                (
                    want_min.then(|| q_one(&g, &cfg, force)).transpose()?,
                    want_max.then(|| lambda_one(&g, force)),
                )
            } else {
                (
                    want_min
                        .then(|| minimize_q::<f64>(&g, p, &cfg).map(|r| extremum(&r, force)))
                        .transpose()?,
                    want_max
                        .then(|| maximize_lambda::<f64>(&g, p, &cfg).map(|r| extremum(&r, force)))
                        .transpose()?,
                )
            };
            clock.lap("solve");
            Payload::Spectrum { p, min, max }
        }
        Command::Sweep { schedule, .. } => {
            if let Some(s) = schedule {
                validate_schedule(s).map_err(|e| CliError::Usage(format!("bad schedule: {e}")))?;
                cfg.continuation = s.clone();
            }
            schedule_echo = Some(cfg.continuation.clone());
            let results = continuation_sweep::<f64>(&g, &cfg)?;
            clock.lap("solve");
            let trace = psi_limit_trace(&results, &g)?;
            clock.lap("round");
            let rows: Vec<SweepRow> = results
                .iter()
                .zip(&trace)
                .map(|(r, &(_, psi))| SweepRow {
                    p: r.p,
                    q_p_estimate: r.value,
                    psi_x: psi.into(),
                    residual: r.residual,
                    iterations: r.iterations,
                    converged: r.converged,
                })
                .collect();
            let non_increasing = trace.windows(2).filter(|w| w[1].1 <= w[0].1).count();
            Payload::Sweep {
                final_psi: trace.last().expect("non-empty schedule").1.into(),
                non_increasing_steps: non_increasing,
                steps: trace.len().saturating_sub(1),
                rows,
            }
        }
        Command::Extract { p, .. } => {
            let p = *p;
            check_p(p)?;
            if p == 1.0 && g.n() <= PSI_CAP {
                let (psi, w) = brute_force_psi(&g)?;
                clock.lap("oracle");
                Payload::Extract {
                    p,
                    q_p_estimate: None,
                    removal_certificate: w.removal_certificate(&g).into_iter().map(|(a, b)| [a, b]).collect(),
                    pair: (&w).into(),
                    threshold: None,
                    psi_x: psi.into(),
                    exact: true,
                    vector: None,
                }
            } else {
                let target = if p == 1.0 { *cfg.continuation.last().expect("schedule") } else { p };
                cfg.continuation = schedule_down_to(target, &cfg.continuation);
                validate_schedule(&cfg.continuation).map_err(|e| CliError::Usage(format!("bad p: {e}")))?;
                schedule_echo = Some(cfg.continuation.clone());
                let results = continuation_sweep::<f64>(&g, &cfg)?;
                clock.lap("solve");
                let last = results.last().expect("non-empty schedule");
                let sweep = threshold_sweep(&g, &last.vector)?;
                clock.lap("round");
                Payload::Extract {
                    p: last.p,
                    q_p_estimate: Some(last.value),
                    removal_certificate: sweep
                        .best_pair
                        .removal_certificate(&g)
                        .into_iter()
                        .map(|(a, b)| [a, b])
                        .collect(),
                    pair: (&sweep.best_pair).into(),
                    threshold: Some(sig12(sweep.best_threshold)),
                    psi_x: sweep.psi_x.into(),
                    exact: false,
                    vector: vector_out(&last.vector, force),
                }
            }
        }
        Command::Verify { p_list, subgraphs, .. } => {
            if let Some(&p) = p_list.iter().find(|&&p| !(p > 1.0 && p.is_finite())) {
                return Err(CliError::Usage(format!("--p-list entries must exceed 1, got {p}")));
            }
            let rcfg = RegistryConfig {
                p_list: p_list.clone(),
                subgraph_trials: *subgraphs,
                solver: cfg.clone(),
            };
            let r = run_registry(&g, &rcfg)?;
            clock.lap("verify");
            let failures = r.failures().count();
            if failures > 0 {
                exit_code = EXIT_VERIFY_FAILED;
            }
            Payload::Verify {
                p_list: p_list.clone(),
                psi: r.psi.as_ref().map(|(v, _)| (*v).into()),
                psi_witness: r.psi.as_ref().map(|(_, w)| w.into()),
                chi: r.chi,
                nu: r.nu,
                records: r
                    .records
                    .iter()
                    .map(|rec| VerifyRecord {
                        p: rec.p,
                        q_p: rec.q.value,
                        lambda_p: rec.lambda.value,
                        q_residual: rec.q.residual,
                        lambda_residual: rec.lambda.residual,
                    })
                    .collect(),
                skipped: r.checks.iter().filter(|c| c.status == Status::Skipped).count(),
                checks: r
                    .checks
                    .iter()
                    .map(|c| CheckOut {
                        name: c.name.to_owned(),
                        p: c.p,
                        status: c.status.as_str().to_owned(),
                        lhs: finite(c.lhs),
                        rhs: finite(c.rhs),
                        tol: c.tol,
                        equality: c.equality,
                        detail: c.detail.clone(),
                    })
                    .collect(),
                failures,
                all_hold: failures == 0,
            }
        }
        Command::Oracle { what, .. } => {
            let mut out = OracleOut::default();
            match what {
                What::Psi => {
                    let (psi, w) = brute_force_psi(&g)?;
                    out.exact = Some(psi.into());
                    out.value = Some(RationalOut::from(psi).float);
                    out.witness = Some((&w).into());
                }
                What::Q2 => {
                    let spec = dense_q2_spectrum::<f64>(&g)?;
                    let scale = spec.largest().abs().max(1.0);
                    let snap = |v: f64| if v.abs() <= 1e-12 * scale { 0.0 } else { sig12(v) };
                    out.value = Some(snap(spec.smallest()));
                    out.spectrum = Some(spec.values.iter().map(|&v| snap(v)).collect());
                    out.vector = vector_out(&spec.vectors[0], force);
                }
                What::Chi => {
                    let chi = chromatic_number(&g)?;
                    out.exact = Some(Rational::from(chi as i64).into());
                    out.value = Some(chi as f64);
                }
                What::Nu => {
                    let (nu, removed) = vertex_bipartiteness(&g)?;
                    out.exact = Some(Rational::from(nu as i64).into());
                    out.value = Some(nu as f64);
                    out.removed = Some(removed);
                }
            }
            clock.lap("oracle");
            Payload::Oracle {
                what: what.as_str().to_owned(),
                exact: out.exact,
                value: out.value,
                witness: out.witness,
                removed: out.removed,
                spectrum: out.spectrum,
                vector: out.vector,
            }
        }
    };

    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        command: cli.command.name().to_owned(),
        graph: GraphInfo::of(&g),
        config: ConfigEcho {
            seed: cfg.seed,
            threads: cfg.threads,
            tol_residual: cfg.tol_residual,
            tol_step: cfg.tol_step,
            max_iters: cfg.max_iters,
            restarts: cfg.restarts,
            schedule: schedule_echo,
        },
        payload,
        timings_ms: clock.finish(),
    };
    Ok(Outcome { report, exit_code })
}

#[derive(Default)]
struct OracleOut {
    exact: Option<RationalOut>,
    value: Option<f64>,
    witness: Option<PairOut>,
    removed: Option<Vec<usize>>,
    spectrum: Option<Vec<f64>>,
    vector: Option<Vec<f64>>,
}
