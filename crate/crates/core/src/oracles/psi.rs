use super::check_cap;
use crate::{Error, Graph, Rational, Result, VertexSubsetPair};

/// Default vertex cap of [`brute_force_psi`] (3^16 labellings).
pub const PSI_CAP: usize = 16;

/// Exact `psi(G)` with the lexicographically smallest minimizing pair.
pub fn brute_force_psi(g: &Graph) -> Result<(Rational, VertexSubsetPair)> {
    brute_force_psi_capped(g, PSI_CAP)
}

struct Search<'g> {
    g: &'g Graph,
    side: Vec<u8>,
    num: i64,
    size: i64,
    best: Option<(i64, i64)>,
    witness: VertexSubsetPair,
}

impl Search<'_> {
    fn weight(a: u8, b: u8) -> i64 {
        match (a, b) {
            (0, 0) => 0,
            (0, _) | (_, 0) => 1,
            _ if a == b => 2,
            _ => 0,
        }
    }

    fn assign(&mut self, v: usize, label: u8) {
        for &w in self.g.neighbors(v) {
            self.num += Self::weight(label, self.side[w]) - Self::weight(self.side[v], self.side[w]);
        }
        self.size += i64::from(label != 0) - i64::from(self.side[v] != 0);
        self.side[v] = label;
    }

    fn current_pair(&self) -> VertexSubsetPair {
        let pick = |l| (0..self.side.len()).filter(|&v| self.side[v] == l).collect();
        VertexSubsetPair { s: pick(1), t: pick(2) }
    }

    fn leaf(&mut self) {
        if self.size == 0 {
            return;
        }
        let ord = match self.best {
            None => std::cmp::Ordering::Less,
            Some((bn, bs)) => ((self.num as i128) * (bs as i128)).cmp(&((bn as i128) * (self.size as i128))),
        };
        match ord {
            std::cmp::Ordering::Less => {
                self.best = Some((self.num, self.size));
                self.witness = self.current_pair();
            }
            std::cmp::Ordering::Equal => {
                let pair = self.current_pair();
                if pair < self.witness {
                    self.witness = pair;
                }
            }
            std::cmp::Ordering::Greater => {}
        }
    }

    /// Assigns vertices `v..n`; the lowest labelled vertex always goes to S.
    fn run(&mut self, v: usize) {
        if v == self.side.len() {
            self.leaf();
            return;
        }
        self.run(v + 1);
        self.assign(v, 1);
        self.run(v + 1);
        if self.size > 1 {
            self.assign(v, 2);
            self.run(v + 1);
        }
        self.assign(v, 0);
    }
}

/// [`brute_force_psi`] with an explicit vertex cap.
///
/// Enumerates every labelling of the vertices with {outside, S, T}, keeping
/// only those whose first labelled vertex is in S (the ratio is symmetric in
/// S and T). Counts are updated incrementally along the search tree.
pub fn brute_force_psi_capped(g: &Graph, cap: usize) -> Result<(Rational, VertexSubsetPair)> {
    check_cap("psi", g, cap)?;
    let mut search = Search {
        g,
        side: vec![0; g.n()],
        num: 0,
        size: 0,
        best: None,
        witness: VertexSubsetPair::default(),
    };
    search.run(0);
    let (num, size) = search
        .best
        .ok_or_else(|| Error::Internal("psi search visited no pair".into()))?;
    Ok((Rational::new(num, size), search.witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, star};

    #[test]
    fn known_values() {
        // K_3: one vertex against the other two, ratio 2e(T) / 3 = 2/3.
        let (psi, w) = brute_force_psi(&complete(3)).unwrap();
        assert_eq!(psi, Rational::new(2, 3));
        assert_eq!(w, VertexSubsetPair::new(vec![0], vec![1, 2]).unwrap());
        // K_4: two disjoint edges as S and T give (2 + 2) / 4 = 1.
        let (psi, w) = brute_force_psi(&complete(4)).unwrap();
        assert_eq!(psi, Rational::from(1));
        assert_eq!(complete(4).psi_of_pair(&w).unwrap(), psi);
        // C_5: alternating signs on all five vertices leave one monochromatic edge.
        let (psi, w) = brute_force_psi(&cycle(5)).unwrap();
        assert_eq!(psi, Rational::new(2, 5));
        assert_eq!(w.len(), 5);
    }

    #[test]
    fn bipartite_is_zero() {
        for g in [path(5), cycle(6), star(4)] {
            assert_eq!(brute_force_psi(&g).unwrap().0, Rational::from(0));
        }
    }

    #[test]
    fn cap_refusal() {
        let g = path(17);
        assert_eq!(
            brute_force_psi(&g),
            Err(Error::OracleCap {
                oracle: "psi",
                n: 17,
                cap: 16
            })
        );
        assert!(brute_force_psi_capped(&path(6), 5).is_err());
    }
}
