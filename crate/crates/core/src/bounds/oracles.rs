//! Exhaustive oracles for small graphs. Each has a hard size cap; larger
//! inputs are rejected with [`Error::SizeCap`], never truncated.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const BISECTION_MAX_N: usize = 18;
pub const ARBORICITY_MAX_M: usize = 16;
pub const TREEWIDTH_MAX_N: usize = 12;
pub const SEPARATOR_MAX_N: usize = 14;

fn cap(what: &'static str, cap: usize, actual: usize, hint: &'static str) -> Result<()> {
    if actual > cap {
        return Err(Error::SizeCap {
            what,
            cap,
            actual,
            hint,
        });
    }
    Ok(())
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Next larger integer with the same popcount.
fn gosper(x: u32) -> u32 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Minimum number of edges between the halves of a bisection
/// (`ceil(n/2)` and `floor(n/2)` vertices).
pub fn bisection_width_exact(graph: &Graph) -> Result<u64> {
    let n = graph.n();
    cap(
        "vertex count",
        BISECTION_MAX_N,
        n,
        "bisection width is enumerated over all balanced splits",
    )?;
    if n < 2 {
        return Ok(0);
    }
    let adj = adjacency_masks(graph);
    let full = (1u32 << n) - 1;
    let k = n / 2;
    let mut best = u64::MAX;
    let mut s: u32 = (1 << k) - 1;
    while s <= full {
        let cut: u32 = (0..n)
            .filter(|&v| s >> v & 1 == 1)
            .map(|v| (adj[v] & !s & full).count_ones())
            .sum();
        best = best.min(cut as u64);
        if k == 0 {
            break;
        }
        s = gosper(s);
    }
    Ok(best)
}

/// Minimum number of linear forests partitioning the edges.
pub fn linear_arboricity_exact(graph: &Graph) -> Result<u64> {
    let m = graph.m();
    cap(
        "edge count",
        ARBORICITY_MAX_M,
        m,
        "linear arboricity is found by exhaustive partition search",
    )?;
    if m == 0 {
        return Ok(0);
    }
    let lower = graph.max_degree().div_ceil(2).max(1);
    (lower..=m)
        .find(|&k| LinearForests::new(graph, k).search(0))
        .map(|k| k as u64)
        .ok_or_else(|| Error::Integrity("no linear forest partition found".into()))
}

struct LinearForests<'a> {
    graph: &'a Graph,
    k: usize,
    deg: Vec<Vec<u8>>,
    parent: Vec<Vec<usize>>,
    used: usize,
}

impl<'a> LinearForests<'a> {
    fn new(graph: &'a Graph, k: usize) -> Self {
        let n = graph.n();
        LinearForests {
            graph,
            k,
            deg: vec![vec![0; n]; k],
            parent: vec![(0..n).collect(); k],
            used: 0,
        }
    }

    fn root(&self, f: usize, mut v: usize) -> usize {
        while self.parent[f][v] != v {
            v = self.parent[f][v];
        }
        v
    }

    fn search(&mut self, e: usize) -> bool {
        if e == self.graph.m() {
            return true;
        }
        let (u, v) = self.graph.edges()[e];
        // forests are interchangeable, so only open one new forest per step
        for f in 0..self.k.min(self.used + 1) {
            if self.deg[f][u] >= 2 || self.deg[f][v] >= 2 {
                continue;
            }
            let (ru, rv) = (self.root(f, u), self.root(f, v));
            if ru == rv {
                continue;
            }
            self.deg[f][u] += 1;
            self.deg[f][v] += 1;
            self.parent[f][ru] = rv;
            let opened = f == self.used;
            if opened {
                self.used += 1;
            }
            if self.search(e + 1) {
                return true;
            }
            if opened {
                self.used -= 1;
            }
            self.parent[f][ru] = ru;
            self.deg[f][u] -= 1;
            self.deg[f][v] -= 1;
        }
        false
    }
}

/// Exact treewidth by dynamic programming over vertex subsets:
/// `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)`, where `Q(S, v)` is the
/// set of vertices outside `S + v` reachable from `v` through `S`.
pub fn treewidth_exact(graph: &Graph) -> Result<u64> {
    let n = graph.n();
    cap(
        "vertex count",
        TREEWIDTH_MAX_N,
        n,
        "treewidth is computed by a dynamic program over all vertex subsets",
    )?;
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency_masks(graph);
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[u] & !seen;
            seen |= nb;
            out |= nb & !s;
            frontier |= nb & s;
        }
        out.count_ones()
    };
    let size = 1usize << n;
    let mut tw = vec![u32::MAX; size];
    tw[0] = 0;
    for s in 1..size as u32 {
        let mut best = u32::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            best = best.min(tw[without as usize].max(q(without, v)));
        }
        tw[s as usize] = best;
    }
    Ok(tw[size - 1] as u64)
}

/// A strongly balanced separator: removing `set` splits `W - set` into two
/// sides, each with at most `|W|/2` vertices, joined by no path avoiding `set`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separator {
    pub set: Vec<usize>,
    pub sides: [Vec<usize>; 2],
}

impl Separator {
    pub fn size(&self) -> u64 {
        self.set.len() as u64
    }

    /// Independent check of the separator conditions.
    pub fn is_valid(&self, graph: &Graph, w: &[usize]) -> bool {
        let half = w.len() / 2;
        let mut removed = vec![false; graph.n()];
        for &v in &self.set {
            removed[v] = true;
        }
        let comps = graph.components_avoiding(&removed);
        let comp_of = |v: usize| comps.iter().position(|c| c.contains(&v));
        let mut covered: Vec<usize> = self.sides.concat();
        covered.sort_unstable();
        let mut expect: Vec<usize> = w.iter().copied().filter(|&v| !removed[v]).collect();
        expect.sort_unstable();
        covered == expect
            && self.sides.iter().all(|s| s.len() <= half)
            && self.sides[0]
                .iter()
                .all(|&a| self.sides[1].iter().all(|&b| comp_of(a) != comp_of(b)))
    }
}

/// Minimum strongly balanced `W`-separator, found over subsets of increasing size.
pub fn sep_star_exact(graph: &Graph, w: &[usize]) -> Result<Separator> {
    let n = graph.n();
    cap(
        "vertex count",
        SEPARATOR_MAX_N,
        n,
        "separators are enumerated over all vertex subsets",
    )?;
    let mut in_w = vec![false; n];
    for &v in w {
        if v >= n || in_w[v] {
            return Err(Error::validation(format!(
                "bad or repeated vertex {v} in W"
            )));
        }
        in_w[v] = true;
    }
    let half = w.len() / 2;
    for size in 0..=n {
        let mut s: u32 = (1u32 << size) - 1;
        while s < 1 << n {
            if let Some(sep) = balanced_split(graph, &in_w, s, half) {
                return Ok(sep);
            }
            if size == 0 {
                break;
            }
            s = gosper(s);
        }
    }
    Err(Error::Integrity(
        "removing every vertex must separate".into(),
    ))
}

fn balanced_split(graph: &Graph, in_w: &[bool], s: u32, half: usize) -> Option<Separator> {
    let n = graph.n();
    let removed: Vec<bool> = (0..n).map(|v| s >> v & 1 == 1).collect();
    let comps: Vec<Vec<usize>> = graph
        .components_avoiding(&removed)
        .into_iter()
        .map(|c| c.into_iter().filter(|&v| in_w[v]).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    let total: usize = comps.iter().map(Vec::len).sum();
    if total > 2 * half {
        return None;
    }
    // subset sum over component weights, remembering one witness per sum
    let mut reach: Vec<Option<Vec<usize>>> = vec![None; total + 1];
    reach[0] = Some(Vec::new());
    for (i, c) in comps.iter().enumerate() {
        for t in (c.len()..=total).rev() {
            if reach[t].is_none() {
                if let Some(prev) = &reach[t - c.len()] {
                    let mut next = prev.clone();
                    next.push(i);
                    reach[t] = Some(next);
                }
            }
        }
    }
    let t = (total.saturating_sub(half)..=half.min(total)).find(|&t| reach[t].is_some())?;
    let pick = reach[t].as_ref().unwrap();
    let mut sides = [Vec::new(), Vec::new()];
    for (i, c) in comps.iter().enumerate() {
        sides[usize::from(!pick.contains(&i))].extend(c);
    }
    for side in &mut sides {
        side.sort_unstable();
    }
    Some(Separator {
        set: (0..n).filter(|&v| removed[v]).collect(),
        sides,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, path, platonic, Platonic};

    #[test]
    fn bisection_small() {
        assert_eq!(bisection_width_exact(&complete(4).unwrap()).unwrap(), 4);
        assert_eq!(
            bisection_width_exact(&complete_bipartite(3, 3).unwrap()).unwrap(),
            5
        );
        assert_eq!(bisection_width_exact(&cycle(4).unwrap()).unwrap(), 2);
        assert_eq!(bisection_width_exact(&complete(2).unwrap()).unwrap(), 1);
        assert_eq!(bisection_width_exact(&complete(1).unwrap()).unwrap(), 0);
        assert!(matches!(
            bisection_width_exact(&Graph::empty(19)),
            Err(Error::SizeCap { cap: 18, .. })
        ));
    }

    #[test]
    fn arboricity_small() {
        assert_eq!(linear_arboricity_exact(&complete(4).unwrap()).unwrap(), 2);
        assert_eq!(linear_arboricity_exact(&path(5).unwrap()).unwrap(), 1);
        assert_eq!(linear_arboricity_exact(&complete(5).unwrap()).unwrap(), 3);
        assert_eq!(linear_arboricity_exact(&cycle(5).unwrap()).unwrap(), 2);
        assert!(linear_arboricity_exact(&complete(7).unwrap()).is_err());
    }

    #[test]
    fn treewidth_small() {
        assert_eq!(treewidth_exact(&path(6).unwrap()).unwrap(), 1);
        assert_eq!(treewidth_exact(&complete(5).unwrap()).unwrap(), 4);
        assert_eq!(treewidth_exact(&cycle(7).unwrap()).unwrap(), 2);
        assert_eq!(
            treewidth_exact(platonic(Platonic::Octahedron).graph()).unwrap(),
            4
        );
        assert_eq!(treewidth_exact(&Graph::empty(3)).unwrap(), 0);
    }

    #[test]
    fn separators_small() {
        let all = |n: usize| (0..n).collect::<Vec<_>>();
        let k5 = complete(5).unwrap();
        let s = sep_star_exact(&k5, &all(5)).unwrap();
        assert_eq!(s.size(), 3);
        assert!(s.is_valid(&k5, &all(5)));
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(sep_star_exact(&two, &all(4)).unwrap().size(), 0);
        let c6 = cycle(6).unwrap();
        let s = sep_star_exact(&c6, &all(6)).unwrap();
        assert_eq!(s.size(), 2);
        assert!(s.is_valid(&c6, &all(6)));
    }
}
