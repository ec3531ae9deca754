use std::path::PathBuf;
use std::process::{Command, Output};

use plap_cli::report::RunReport;
use plap_cli::{Payload, SCHEMA_VERSION};
use plap_core::generators::{complete, cycle, path, star};
use plap_core::Graph;
use serde_json::Value;

struct Files {
    dir: tempfile::TempDir,
}

impl Files {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn graph(&self, name: &str, g: &Graph) -> PathBuf {
        self.text(name, &g.to_edge_list())
    }

    fn text(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn plap(args: &[&str], file: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plap"))
        .args(args)
        .arg(file)
        .env_remove("PLAP_SEED")
        .output()
        .unwrap()
}

fn report(out: &Output) -> RunReport {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn spectrum_complete_four() {
    let f = Files::new();
    let r = report(&plap(&["spectrum", "--p", "2", "--which", "both"], &f.graph("k4", &complete(4))));
    assert_eq!(r.schema_version, 1);
    assert_eq!(r.schema_version, SCHEMA_VERSION);
    let Payload::Spectrum { min: Some(q), max: Some(l), .. } = r.payload else {
        panic!("spectrum payload");
    };
    // D + A = 2I + J on K_4: eigenvalues 2 (three times) and 6.
    assert!((q.value - 2.0).abs() < 1e-9);
    assert!((l.value - 6.0).abs() < 1e-9);
    assert!(q.converged && l.converged);
    assert_eq!(q.vector.unwrap().len(), 4);
}

#[test]
fn spectrum_p_one_is_exact() {
    let f = Files::new();
    let r = report(&plap(&["spectrum", "--p", "1"], &f.graph("c5", &cycle(5))));
    let Payload::Spectrum { min: Some(q), max: Some(l), .. } = r.payload else {
        panic!("spectrum payload");
    };
    let exact = q.exact.unwrap();
    assert_eq!((exact.num, exact.den), (2, 5));
    assert_eq!(l.exact.unwrap().num, 2);
    let raw: Value = serde_json::from_slice(&plap(&["spectrum", "--p", "1"], &f.graph("c5b", &cycle(5))).stdout).unwrap();
    let min = &raw["payload"]["spectrum"]["min"];
    assert_eq!(min["exact"]["num"], 2);
    assert_eq!(min["exact"]["den"], 5);
    assert_eq!(min["exact"]["float"], 0.4);
    assert_eq!(min["exact_kind"], "oracle");
}

#[test]
fn spectrum_edgeless() {
    let f = Files::new();
    let file = f.text("empty", "n 4\n");
    for p in ["1", "1.5", "3"] {
        let r = report(&plap(&["spectrum", "--p", p], &file));
        let Payload::Spectrum { min: Some(q), max: Some(l), .. } = r.payload else {
            panic!("spectrum payload");
        };
        assert_eq!((q.value, l.value), (0.0, 0.0));
    }
}

#[test]
fn sweep_csv_columns_and_values() {
    let f = Files::new();
    let out = plap(&["sweep", "--csv"], &f.graph("c5", &cycle(5)));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "p,q_p_estimate,psi_x_num,psi_x_den,residual,iterations");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows.last().unwrap()[0], "1.05");
    assert_eq!(&rows.last().unwrap()[2..4], &["2", "5"]);
}

#[test]
fn sweep_bipartite_rows_zero() {
    let f = Files::new();
    let r = report(&plap(&["sweep", "--schedule", "2,1.5,1.2"], &f.graph("c6", &cycle(6))));
    let Payload::Sweep { rows, final_psi, .. } = r.payload else {
        panic!("sweep payload");
    };
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|row| row.psi_x.num == 0));
    assert_eq!(final_psi.num, 0);
    assert_eq!(r.config.schedule, Some(vec![2.0, 1.5, 1.2]));
}

#[test]
fn sweep_triangle_rows() {
    let f = Files::new();
    let r = report(&plap(&["sweep"], &f.graph("k3", &complete(3))));
    let Payload::Sweep { rows, .. } = r.payload else {
        panic!("sweep payload");
    };
    // psi(K_3) = 2/3, attained by one vertex against the other two.
    assert!(rows.iter().all(|row| (row.psi_x.num, row.psi_x.den) == (2, 3)));
}

#[test]
fn sweep_is_deterministic_and_thread_invariant() {
    let f = Files::new();
    let mut rng = plap_core::SplitMix64::new(5);
    let file = f.graph("er", &plap_core::generators::erdos_renyi(11, 0.4, &mut rng));
    let a = plap(&["sweep", "--seed", "17"], &file);
    let b = plap(&["sweep", "--seed", "17"], &file);
    assert_eq!(a.stdout, b.stdout);
    let c = report(&plap(&["sweep", "--seed", "17", "--threads", "4"], &file));
    assert_eq!(report(&a).payload, c.payload);
}

#[test]
fn seed_from_environment() {
    let f = Files::new();
    let file = f.graph("p4", &path(4));
    let out = Command::new(env!("CARGO_BIN_EXE_plap"))
        .args(["spectrum", "--p", "2"])
        .arg(&file)
        .env("PLAP_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(report(&out).config.seed, 99);
    let flag = Command::new(env!("CARGO_BIN_EXE_plap"))
        .args(["spectrum", "--p", "2", "--seed", "3"])
        .arg(&file)
        .env("PLAP_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(report(&flag).config.seed, 3);
}

#[test]
fn report_round_trips() {
    let f = Files::new();
    for args in [
        vec!["spectrum", "--p", "1.7"],
        vec!["sweep"],
        vec!["extract"],
        vec!["verify", "--p-list", "2", "--subgraphs", "2"],
        vec!["oracle", "--what", "psi"],
    ] {
        let out = plap(&args, &f.graph("c7", &cycle(7)));
        let r = report(&out);
        let again = serde_json::to_vec_pretty(&r).unwrap();
        assert_eq!(serde_json::from_slice::<RunReport>(&again).unwrap(), r);
        assert_eq!(&out.stdout[..out.stdout.len() - 1], &again[..]);
    }
}

#[test]
fn extract_bipartite_and_odd_cycle() {
    let f = Files::new();
    let r = report(&plap(&["extract", "--p", "1.5"], &f.graph("p5", &path(5))));
    let Payload::Extract { pair, psi_x, removal_certificate, .. } = r.payload else {
        panic!("extract payload");
    };
    assert_eq!(psi_x.num, 0);
    assert!(removal_certificate.is_empty());
    let mut all: Vec<usize> = pair.s.iter().chain(&pair.t).copied().collect();
    all.sort();
    assert_eq!(all, vec![0, 1, 2, 3, 4]);
    assert!(pair.s.iter().all(|v| v % 2 == pair.s[0] % 2));

    let r = report(&plap(&["extract"], &f.graph("c5", &cycle(5))));
    let Payload::Extract { pair, psi_x, removal_certificate, .. } = r.payload else {
        panic!("extract payload");
    };
    assert_eq!((psi_x.num, psi_x.den), (2, 5));
    assert_eq!(pair.s.len() + pair.t.len(), 5);
    assert_eq!(removal_certificate.len(), 1);
}

#[test]
fn extract_complete_four() {
    let f = Files::new();
    let r = report(&plap(&["extract", "--p", "1.05"], &f.graph("k4", &complete(4))));
    let Payload::Extract { pair, psi_x, removal_certificate, .. } = r.payload else {
        panic!("extract payload");
    };
    // Two against two: 2 e(S) + 2 e(T) = 4 over four vertices.
    assert_eq!((psi_x.num, psi_x.den), (1, 1));
    assert_eq!((pair.s.len(), pair.t.len()), (2, 2));
    assert_eq!(removal_certificate.len(), 2);
}

#[test]
fn oracle_values() {
    let f = Files::new();
    let r = report(&plap(&["oracle", "--what", "psi"], &f.graph("k4", &complete(4))));
    let Payload::Oracle { exact, witness, .. } = r.payload else {
        panic!("oracle payload");
    };
    assert_eq!(exact.unwrap().num, 1);
    assert_eq!(witness.unwrap().s.len() + 2, 4);

    let r = report(&plap(&["oracle", "--what", "nu"], &f.graph("c5", &cycle(5))));
    let Payload::Oracle { exact, removed, .. } = r.payload else {
        panic!("oracle payload");
    };
    assert_eq!(exact.unwrap().num, 1);
    assert_eq!(removed.unwrap().len(), 1);

    let r = report(&plap(&["oracle", "--what", "q2"], &f.graph("p3", &path(3))));
    let Payload::Oracle { value, spectrum, .. } = r.payload else {
        panic!("oracle payload");
    };
    assert_eq!(value, Some(0.0));
    assert_eq!(spectrum.unwrap(), vec![0.0, 1.0, 3.0]);

    let r = report(&plap(&["oracle", "--what", "chi"], &f.graph("c7", &cycle(7))));
    let Payload::Oracle { exact, .. } = r.payload else {
        panic!("oracle payload");
    };
    assert_eq!(exact.unwrap().num, 3);
}

#[test]
fn verify_flags_equality_cases() {
    let f = Files::new();
    let r = report(&plap(&["verify", "--p-list", "2"], &f.graph("k4", &complete(4))));
    let Payload::Verify { checks, all_hold, .. } = &r.payload else {
        panic!("verify payload");
    };
    assert!(all_hold);
    let find = |name: &str| checks.iter().find(|c| c.name == name).unwrap();
    assert!(find("lambda_le_max_degree").equality);
    assert!(find("wilf_chromatic_lower").equality);

    let r = report(&plap(&["verify", "--p-list", "2"], &f.graph("c5", &cycle(5))));
    let Payload::Verify { checks, .. } = &r.payload else {
        panic!("verify payload");
    };
    assert!(checks.iter().any(|c| c.name == "wilf_chromatic_lower" && c.equality));

    let r = report(&plap(&["verify", "--p-list", "2"], &f.graph("s4", &star(4))));
    let Payload::Verify { checks, .. } = &r.payload else {
        panic!("verify payload");
    };
    assert!(!checks.iter().any(|c| c.name == "lambda_le_max_degree" && c.equality));
}

#[test]
fn verify_text_has_verdict_lines() {
    let f = Files::new();
    let out = plap(&["verify", "--p-list", "1.5", "--text"], &f.graph("c5", &cycle(5)));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains("psi_sandwich_upper")));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn verify_skips_oracles_over_cap() {
    let f = Files::new();
    let out = plap(&["verify", "--p-list", "2", "--subgraphs", "1"], &f.graph("c23", &cycle(23)));
    let r = report(&out);
    let Payload::Verify { checks, psi, skipped, .. } = &r.payload else {
        panic!("verify payload");
    };
    assert!(psi.is_none());
    assert!(*skipped > 0);
    assert!(checks.iter().any(|c| c.name == "psi_sandwich_lower" && c.status == "skipped"));
}

#[test]
fn exit_codes() {
    let f = Files::new();
    let k3 = f.graph("k3", &complete(3));
    assert_eq!(plap(&["spectrum", "--p", "0.5"], &k3).status.code(), Some(1));
    assert_eq!(plap(&["sweep", "--schedule", "1.5,2"], &k3).status.code(), Some(1));
    assert_eq!(plap(&["sweep", "--schedule", "2,1"], &k3).status.code(), Some(1));
    assert_eq!(plap(&["oracle", "--what", "nope"], &k3).status.code(), Some(1));
    assert_eq!(plap(&["spectrum", "--threads", "0"], &k3).status.code(), Some(1));

    let looped = f.text("loop", "0 1\n1 1\n");
    let out = plap(&["spectrum"], &looped);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(plap(&["spectrum"], &f.text("junk", "0 x\n")).status.code(), Some(2));
    assert_eq!(plap(&["spectrum"], &f.dir.path().join("missing.txt")).status.code(), Some(2));

    let out = plap(&["oracle", "--what", "psi"], &f.graph("p17", &path(17)));
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("16"));
}

#[test]
fn vectors_hidden_on_large_graphs() {
    let f = Files::new();
    let file = f.graph("c61", &cycle(61));
    let r = report(&plap(&["spectrum", "--p", "2", "--which", "max"], &file));
    let Payload::Spectrum { max: Some(l), .. } = r.payload else {
        panic!("spectrum payload");
    };
    assert!(l.vector.is_none());
    let r = report(&plap(&["spectrum", "--p", "2", "--which", "max", "--vector"], &file));
    let Payload::Spectrum { max: Some(l), .. } = r.payload else {
        panic!("spectrum payload");
    };
    assert_eq!(l.vector.unwrap().len(), 61);
}

#[test]
fn out_file_and_timings() {
    let f = Files::new();
    let target = f.dir.path().join("report.json");
    let out = plap(
        &["spectrum", "--timings", "--out", target.to_str().unwrap()],
        &f.graph("k3", &complete(3)),
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: RunReport = serde_json::from_slice(&std::fs::read(&target).unwrap()).unwrap();
    assert!(r.timings_ms.unwrap().contains_key("solve"));
}
