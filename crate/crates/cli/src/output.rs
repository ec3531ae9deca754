use std::fmt::Write as _;

use crate::report::{Extremum, Payload, RunReport};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn from_flags(csv: bool, text: bool) -> Self {
        if csv {
            Format::Csv
        } else if text {
            Format::Text
        } else {
            Format::Json
        }
    }
}

pub fn render(report: &RunReport, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).map_err(|e| CliError::Write(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => csv_bytes(report),
        Format::Text => Ok(text(report).into_bytes()),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn csv_bytes(report: &RunReport) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Write(e.to_string());
    match &report.payload {
        Payload::Spectrum { p, min, max } => {
            w.write_record(["which", "p", "value", "exact_num", "exact_den", "residual", "iterations", "converged"])
                .map_err(err)?;
            for (name, e) in [("min", min), ("max", max)] {
                if let Some(e) = e {
                    w.write_record([
                        name.to_owned(),
                        p.to_string(),
                        e.value.to_string(),
                        opt(&e.exact.map(|r| r.num)),
                        opt(&e.exact.map(|r| r.den)),
                        opt(&e.residual),
                        e.iterations.to_string(),
                        e.converged.to_string(),
                    ])
                    .map_err(err)?;
                }
            }
        }
        Payload::Sweep { rows, .. } => {
            w.write_record(["p", "q_p_estimate", "psi_x_num", "psi_x_den", "residual", "iterations"])
                .map_err(err)?;
            for r in rows {
                w.write_record([
                    r.p.to_string(),
                    r.q_p_estimate.to_string(),
                    r.psi_x.num.to_string(),
                    r.psi_x.den.to_string(),
                    r.residual.to_string(),
                    r.iterations.to_string(),
                ])
                .map_err(err)?;
            }
        }
        Payload::Extract {
            p,
            pair,
            threshold,
            psi_x,
            removal_certificate,
            ..
        } => {
            w.write_record(["p", "threshold", "psi_x_num", "psi_x_den", "s", "t", "removal_certificate"])
                .map_err(err)?;
            let cert = removal_certificate
                .iter()
                .map(|[a, b]| format!("{a}-{b}"))
                .collect::<Vec<_>>()
                .join(" ");
            w.write_record([
                p.to_string(),
                opt(threshold),
                psi_x.num.to_string(),
                psi_x.den.to_string(),
                join(&pair.s),
                join(&pair.t),
                cert,
            ])
            .map_err(err)?;
        }
        Payload::Verify { checks, .. } => {
            w.write_record(["name", "p", "status", "lhs", "rhs", "tol", "equality"])
                .map_err(err)?;
            for c in checks {
                w.write_record([
                    c.name.clone(),
                    opt(&c.p),
                    c.status.clone(),
                    opt(&c.lhs),
                    opt(&c.rhs),
                    c.tol.to_string(),
                    c.equality.to_string(),
                ])
                .map_err(err)?;
            }
        }
        Payload::Oracle {
            what,
            exact,
            value,
            witness,
            removed,
            ..
        } => {
            w.write_record(["what", "value", "exact_num", "exact_den", "s", "t", "removed"])
                .map_err(err)?;
            w.write_record([
                what.clone(),
                opt(value),
                opt(&exact.map(|r| r.num)),
                opt(&exact.map(|r| r.den)),
                witness.as_ref().map(|x| join(&x.s)).unwrap_or_default(),
                witness.as_ref().map(|x| join(&x.t)).unwrap_or_default(),
                removed.as_deref().map(join).unwrap_or_default(),
            ])
            .map_err(err)?;
        }
    }
    w.into_inner().map_err(|e| CliError::Write(e.to_string()))
}

fn extremum_line(out: &mut String, label: &str, p: f64, e: &Extremum) {
    let _ = write!(out, "{label}_{p} = {}", e.value);
    if let (Some(x), Some(kind)) = (e.exact, e.exact_kind) {
        let _ = write!(out, " (exact {x}, {kind:?})");
    }
    if let Some(r) = e.residual {
        let _ = write!(out, " residual {r:.3e}");
    }
    let _ = writeln!(out, " iterations {} converged {}", e.iterations, e.converged);
    if let Some(w) = &e.witness {
        let _ = writeln!(out, "  S = {:?} T = {:?}", w.s, w.t);
    }
    if let Some(v) = &e.vector {
        let _ = writeln!(out, "  x = {v:?}");
    }
}

fn text(report: &RunReport) -> String {
    let g = &report.graph;
    let mut out = format!(
        "graph: n = {} m = {} degrees {}..{} connected {} bipartite components {}\n",
        g.n, g.m, g.min_degree, g.max_degree, g.connected, g.bipartite_components
    );
    match &report.payload {
        Payload::Spectrum { p, min, max } => {
            if let Some(e) = min {
                extremum_line(&mut out, "q", *p, e);
            }
            if let Some(e) = max {
                extremum_line(&mut out, "lambda", *p, e);
            }
        }
        Payload::Sweep {
            rows,
            final_psi,
            non_increasing_steps,
            steps,
        } => {
            for r in rows {
                let _ = writeln!(
                    out,
                    "p = {:<6} q = {:.10} psi(x) = {} residual {:.2e} iterations {}",
                    r.p, r.q_p_estimate, r.psi_x, r.residual, r.iterations
                );
            }
            let _ = writeln!(out, "final psi(x) = {final_psi}; non-increasing {non_increasing_steps}/{steps}");
        }
        Payload::Extract {
            p,
            pair,
            threshold,
            psi_x,
            exact,
            removal_certificate,
            ..
        } => {
            let _ = writeln!(out, "p = {p} psi(x) = {psi_x} exact {exact} threshold {}", opt(threshold));
            let _ = writeln!(out, "S = {:?}\nT = {:?}", pair.s, pair.t);
            let _ = writeln!(out, "remove {} edges: {removal_certificate:?}", removal_certificate.len());
        }
        Payload::Verify {
            checks,
            failures,
            skipped,
            ..
        } => {
            for c in checks {
                let p = c.p.map(|p| format!(" p={p}")).unwrap_or_default();
                let eq = if c.equality && c.status == "pass" { " [equality]" } else { "" };
                let _ = writeln!(
                    out,
                    "{:<7} {}{p}{eq} {} <= {} {}",
                    c.status.to_uppercase(),
                    c.name,
                    opt(&c.lhs),
                    opt(&c.rhs),
                    c.detail
                );
            }
            let _ = writeln!(out, "{} checks, {failures} failed, {skipped} skipped", checks.len());
        }
        Payload::Oracle {
            what,
            exact,
            value,
            witness,
            removed,
            spectrum,
            ..
        } => {
            match exact {
                Some(x) => {
                    let _ = writeln!(out, "{what} = {x}");
                }
                None => {
                    let _ = writeln!(out, "{what} = {}", opt(value));
                }
            }
            if let Some(w) = witness {
                let _ = writeln!(out, "S = {:?} T = {:?}", w.s, w.t);
            }
            if let Some(r) = removed {
                let _ = writeln!(out, "removed = {r:?}");
            }
            if let Some(s) = spectrum {
                let _ = writeln!(out, "spectrum = {s:?}");
            }
        }
    }
    out
}
