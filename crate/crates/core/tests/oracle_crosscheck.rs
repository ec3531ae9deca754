use plap_core::oracles::{brute_force_psi, chromatic_number, dense_q2_spectrum, vertex_bipartiteness};
use plap_core::{generators, Graph, Rational, SplitMix64, VertexSubsetPair};

/// Plain base-3 enumeration with no pruning or incremental counts.
fn psi_by_enumeration(g: &Graph) -> Rational {
    let n = g.n();
    let mut best: Option<Rational> = None;
    for code in 1..3usize.pow(n as u32) {
        let mut c = code;
        let (mut s, mut t) = (Vec::new(), Vec::new());
        for v in 0..n {
            match c % 3 {
                1 => s.push(v),
                2 => t.push(v),
                _ => {}
            }
            c /= 3;
        }
        let r = g.psi_of_pair(&VertexSubsetPair::new(s, t).unwrap()).unwrap();
        if best.is_none_or(|b| r < b) {
            best = Some(r);
        }
    }
    best.unwrap()
}

fn odd_cycle_transversal(g: &Graph) -> usize {
    let n = g.n();
    (0..1u32 << n)
        .filter(|mask| {
            let keep: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 0).collect();
            g.induced_is_bipartite(&keep)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

fn proper_colouring_exists(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let mut col = vec![0usize; n];
    loop {
        if g.edges().iter().all(|&(a, b)| col[a] != col[b]) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            col[i] += 1;
            if col[i] < k {
                break;
            }
            col[i] = 0;
            i += 1;
        }
    }
}

fn random_graphs(count: usize) -> Vec<Graph> {
    let mut rng = SplitMix64::new(4242);
    (0..count)
        .map(|_| {
            let n = 2 + rng.below(6) as usize;
            let prob = rng.uniform(0.2, 0.9);
            generators::erdos_renyi(n, prob, &mut rng)
        })
        .collect()
}

#[test]
fn psi_matches_plain_enumeration() {
    for g in random_graphs(120) {
        let (psi, w) = brute_force_psi(&g).unwrap();
        assert_eq!(psi, psi_by_enumeration(&g), "{}", g.to_edge_list());
        assert_eq!(g.psi_of_pair(&w).unwrap(), psi);
    }
}

#[test]
fn nu_matches_subset_scan() {
    for g in random_graphs(80) {
        let (nu, removed) = vertex_bipartiteness(&g).unwrap();
        assert_eq!(nu, odd_cycle_transversal(&g));
        assert_eq!(removed.len(), nu);
    }
}

#[test]
fn chi_matches_exhaustive_colouring() {
    for g in random_graphs(60) {
        let chi = chromatic_number(&g).unwrap();
        assert!(proper_colouring_exists(&g, chi));
        if chi > 1 {
            assert!(!proper_colouring_exists(&g, chi - 1));
        }
    }
}

#[test]
fn dense_spectrum_traces() {
    // trace(D + A) = 2m and trace((D + A)^2) = sum d_i^2 + 2m.
    for g in random_graphs(40) {
        let spec = dense_q2_spectrum::<f64>(&g).unwrap();
        let m = g.m() as f64;
        let tr: f64 = spec.values.iter().sum();
        let tr2: f64 = spec.values.iter().map(|v| v * v).sum();
        let d2: f64 = g.degrees().iter().map(|&d| (d * d) as f64).sum();
        assert!((tr - 2.0 * m).abs() < 1e-9);
        assert!((tr2 - d2 - 2.0 * m).abs() < 1e-8);
    }
}
