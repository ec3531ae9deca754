use super::check_cap;
use crate::{Graph, Result};

pub const CHI_CAP: usize = 16;

/// Exact chromatic number by backtracking.
///
/// Vertices are coloured in descending-degree order. A greedy colouring gives
/// the upper bound, a greedy clique the lower bound, and each intermediate
/// `k` is decided by a search that only opens a new colour class when every
/// existing one is blocked.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    check_cap("chromatic", g, CHI_CAP)?;
    if g.m() == 0 {
        return Ok(1);
    }
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let upper = greedy_colors(g, &order);
    let lower = greedy_clique(g, &order);
    if lower == upper {
        return Ok(upper);
    }
    for k in lower..upper {
        let mut color = vec![usize::MAX; n];
        if colorable(g, &order, 0, k, 0, &mut color) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn greedy_colors(g: &Graph, order: &[usize]) -> usize {
    let mut color = vec![usize::MAX; g.n()];
    let mut used = 0;
    for &v in order {
        let mut c = 0;
        while g.neighbors(v).iter().any(|&w| color[w] == c) {
            c += 1;
        }
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn greedy_clique(g: &Graph, order: &[usize]) -> usize {
    let mut best = 1;
    for &seed in order {
        let mut clique = vec![seed];
        for &v in order {
            if v != seed && clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

fn colorable(g: &Graph, order: &[usize], idx: usize, k: usize, opened: usize, color: &mut [usize]) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    for c in 0..k.min(opened + 1) {
        if g.neighbors(v).iter().all(|&w| color[w] != c) {
            color[v] = c;
            if colorable(g, order, idx + 1, k, opened.max(c + 1), color) {
                return true;
            }
            color[v] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, star};
    use crate::Error;

    #[test]
    fn families() {
        assert_eq!(chromatic_number(&complete(5)).unwrap(), 5);
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(8)).unwrap(), 2);
        assert_eq!(chromatic_number(&path(2)).unwrap(), 2);
        assert_eq!(chromatic_number(&star(6)).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::from_edges(3, []).unwrap()).unwrap(), 1);
    }

    #[test]
    fn clique_bound_not_tight() {
        // The 5-wheel (hub + C_5) has clique number 3
        // and chromatic number 4.
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, 5)));
        let w5 = Graph::from_edges(6, e).unwrap();
        assert_eq!(chromatic_number(&w5).unwrap(), 4);
    }

    #[test]
    fn cap() {
        assert!(matches!(
            chromatic_number(&path(17)),
            Err(Error::OracleCap { cap: 16, .. })
        ));
    }
}
