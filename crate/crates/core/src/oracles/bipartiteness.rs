use super::check_cap;
use crate::{Graph, Result};

pub const NU_CAP: usize = 20;

/// Vertex bipartiteness `nu(G)`: the fewest vertices whose deletion leaves a
/// bipartite graph, with the lexicographically first witness of that size.
pub fn vertex_bipartiteness(g: &Graph) -> Result<(usize, Vec<usize>)> {
    check_cap("vertex bipartiteness", g, NU_CAP)?;
    let n = g.n();
    let mut keep = vec![true; n];
    for k in 0..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            keep.iter_mut().for_each(|b| *b = true);
            for &v in &combo {
                keep[v] = false;
            }
            if g.induced_is_bipartite(&keep) {
                return Ok((k, combo));
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("deleting every vertex leaves a bipartite graph")
}

/// Advances `combo` (sorted k-subset of `0..n`) in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};

    #[test]
    fn families() {
        assert_eq!(vertex_bipartiteness(&path(6)).unwrap(), (0, vec![]));
        assert_eq!(vertex_bipartiteness(&cycle(5)).unwrap(), (1, vec![0]));
        let (nu, w) = vertex_bipartiteness(&complete(4)).unwrap();
        assert_eq!(nu, 2);
        assert_eq!(w.len(), 2);
        assert_eq!(vertex_bipartiteness(&complete(6)).unwrap().0, 4);
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
