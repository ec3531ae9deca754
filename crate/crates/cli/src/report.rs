//! Serializable run report, schema version 1.

use std::collections::BTreeMap;

use plap_core::{Graph, Rational, VertexSubsetPair};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Vectors longer than this are left out unless asked for.
pub const VECTOR_PRINT_LIMIT: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub graph: GraphInfo,
    pub config: ConfigEcho,
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub connected: bool,
    pub components: usize,
    pub bipartite_components: usize,
}

impl GraphInfo {
    pub fn of(g: &Graph) -> Self {
        let comps = g.connectivity();
        Self {
            n: g.n(),
            m: g.m(),
            min_degree: g.min_degree(),
            max_degree: g.max_degree(),
            connected: comps.len() == 1,
            components: comps.len(),
            bipartite_components: comps.iter().filter(|c| c.is_bipartite()).count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub threads: usize,
    pub tol_residual: f64,
    pub tol_step: f64,
    pub max_iters: usize,
    pub restarts: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RationalOut {
    pub num: i64,
    pub den: i64,
    pub float: f64,
}

impl From<Rational> for RationalOut {
    fn from(r: Rational) -> Self {
        Self {
            num: *r.numer(),
            den: *r.denom(),
            float: *r.numer() as f64 / *r.denom() as f64,
        }
    }
}

impl RationalOut {
    pub fn to_rational(self) -> Rational {
        Rational::new(self.num, self.den)
    }
}

impl std::fmt::Display for RationalOut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOut {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

impl From<&VertexSubsetPair> for PairOut {
    fn from(p: &VertexSubsetPair) -> Self {
        Self {
            s: p.s.clone(),
            t: p.t.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactKind {
    /// Exact value from the combinatorial oracle.
    Oracle,
    /// Closed form.
    Formula,
    /// Rounded continuation result; only bounds the true value from above.
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<RationalOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_kind: Option<ExactKind>,
    pub residual: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<PairOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub q_p_estimate: f64,
    pub psi_x: RationalOut,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOut {
    pub name: String,
    pub p: Option<f64>,
    pub status: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub tol: f64,
    pub equality: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub p: f64,
    pub q_p: f64,
    pub lambda_p: f64,
    pub q_residual: f64,
    pub lambda_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Spectrum {
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        min: Option<Extremum>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max: Option<Extremum>,
    },
    Sweep {
        rows: Vec<SweepRow>,
        final_psi: RationalOut,
        non_increasing_steps: usize,
        steps: usize,
    },
    Extract {
        p: f64,
        q_p_estimate: Option<f64>,
        pair: PairOut,
        threshold: Option<f64>,
        psi_x: RationalOut,
        /// `true` when the pair comes from the exact oracle rather than a sweep.
        exact: bool,
        removal_certificate: Vec<[usize; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vector: Option<Vec<f64>>,
    },
    Verify {
        p_list: Vec<f64>,
        psi: Option<RationalOut>,
        psi_witness: Option<PairOut>,
        chi: Option<usize>,
        nu: Option<usize>,
        records: Vec<VerifyRecord>,
        checks: Vec<CheckOut>,
        failures: usize,
        skipped: usize,
        all_hold: bool,
    },
    Oracle {
        what: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exact: Option<RationalOut>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<PairOut>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        removed: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        spectrum: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vector: Option<Vec<f64>>,
    },
}

/// Rounds to 12 significant digits.
pub fn sig12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

pub fn vector_out(x: &[f64], force: bool) -> Option<Vec<f64>> {
    (force || x.len() <= VECTOR_PRINT_LIMIT).then(|| x.iter().copied().map(sig12).collect())
}

pub fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.1234567890123456), 0.123456789012);
        assert_eq!(sig12(-98765.43210987654), -98765.4321099);
        assert_eq!(sig12(0.0), 0.0);
    }

    #[test]
    fn rational_fields() {
        let r = RationalOut::from(Rational::new(4, 10));
        assert_eq!((r.num, r.den, r.float), (2, 5, 0.4));
        assert_eq!(r.to_string(), "2/5");
        assert_eq!(RationalOut::from(Rational::from(3)).to_string(), "3");
        assert_eq!(r.to_rational(), Rational::new(2, 5));
    }

    #[test]
    fn vectors_respect_limit() {
        let long = vec![1.0; VECTOR_PRINT_LIMIT + 1];
        assert!(vector_out(&long, false).is_none());
        assert_eq!(vector_out(&long, true).unwrap().len(), VECTOR_PRINT_LIMIT + 1);
        assert!(vector_out(&long[..VECTOR_PRINT_LIMIT], false).is_some());
    }
}
