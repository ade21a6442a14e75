//! Closed-form bounds, evaluated in exact integer arithmetic.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::isqrt_ceil;

fn ceil_div(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}

/// Smallest `k >= 1` with `(2k - 1)^2 >= t`, i.e. `ceil((1 + sqrt(t)) / 2)`.
fn half_one_plus_sqrt(t: u128) -> u64 {
    let r = isqrt_ceil(t);
    ((r + 2) / 2).max(1) as u64
}

/// Lower bound on the number of circles (any dimension) from vertex degrees:
/// a vertex of degree `d` needs `ceil(d/2)` circles through it, and two circles
/// meet at most twice.
///
/// Edgeless graphs get 0; otherwise the value is
/// `ceil((1 + sqrt(1 + 2 * sum c_v (c_v - 1))) / 2)` with `c_v = ceil(deg v / 2)`.
pub fn sigma_lower_degree(graph: &Graph) -> u64 {
    if graph.m() == 0 {
        return 0;
    }
    let s: u128 = (0..graph.n())
        .map(|v| {
            let c = graph.degree(v).div_ceil(2) as u128;
            c * c.saturating_sub(1)
        })
        .sum();
    half_one_plus_sqrt(1 + 2 * s)
}

/// Density bound `ceil((1 + sqrt(2m^2/n - 2m + 1)) / 2)` for `m >= n >= 1`.
pub fn sigma_lower_density(n: u64, m: u64) -> Result<u64> {
    if n == 0 || m < n {
        return Err(Error::validation(format!(
            "density bound needs m >= n >= 1, got n = {n}, m = {m}"
        )));
    }
    let (n, m) = (n as u128, m as u128);
    // n (2k-1)^2 >= 2m^2 - 2mn + n  <=>  (2k-1)^2 >= ceil((2m^2 - 2mn + n) / n)
    let num = 2 * m * m - 2 * m * n + n;
    Ok(half_one_plus_sqrt(ceil_div(num, n)))
}

/// `ceil(bw / 2)`: a hyperplane bisecting the vertices crosses each circle at most twice.
pub fn sigma_lower_from_bisection(bw: u64) -> u64 {
    bw.div_ceil(2)
}

/// Smallest `s >= 0` with `ceil(3s/2) >= la`.
pub fn sigma_lower_la(la: u64) -> u64 {
    (0..).find(|&s: &u64| (3 * s).div_ceil(2) >= la).unwrap()
}

/// `ceil(sep / 2)`.
pub fn sigma_lower_from_separator(sep: u64) -> u64 {
    sep.div_ceil(2)
}

/// `ceil(tw / 6)`.
pub fn sigma_lower_from_treewidth(tw: u64) -> u64 {
    tw.div_ceil(6)
}

/// Sphere cover of `K_n` in 3-space: `(floor((n+7)/6), ceil(n/4))`, from its
/// thickness and book thickness.
pub fn kn_sigma23_bounds(n: u64) -> Result<(u64, u64)> {
    if n < 3 {
        return Err(Error::validation("sphere cover bounds of K_n need n >= 3"));
    }
    Ok(((n + 7) / 6, n.div_ceil(4)))
}

/// Sphere cover of `K_{p,q}` in 3-space, as `(lower, upper, exact)`.
///
/// Arguments are swapped so that `p <= q`. The lower bound is
/// `ceil(pq / (2p + 2q - 4))` and the upper bound `p`; when `q > p(p-1)` both
/// collapse to `ceil(p/2)`.
pub fn kpq_sigma23_bounds(p: u64, q: u64) -> Result<(u64, u64, bool)> {
    if p == 0 || q == 0 {
        return Err(Error::validation(
            "sphere cover bounds of K_{p,q} need p, q >= 1",
        ));
    }
    let (p, q) = (p.min(q), p.max(q));
    if q > p * (p - 1) {
        let v = p.div_ceil(2);
        return Ok((v, v, true));
    }
    Ok(((p * q).div_ceil(2 * p + 2 * q - 4), p, false))
}

/// Circle cover of `K_n` in 3-space: `(floor(n^2/8), floor((n^2 + 5n + 6)/6))`.
pub fn kn_sigma13_bounds(n: u64) -> (u64, u64) {
    (n * n / 8, (n * n + 5 * n + 6) / 6)
}

/// Circle cover of `K_{p,q}` in 3-space: `(ceil(pq/4), ceil(p/2) ceil(q/2))`.
pub fn kpq_sigma13_bounds(p: u64, q: u64) -> (u64, u64) {
    ((p * q).div_ceil(4), p.div_ceil(2) * q.div_ceil(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path, platonic, Platonic};

    #[test]
    fn degree_bound_on_solids() {
        let got: Vec<u64> = Platonic::ALL
            .iter()
            .map(|&p| sigma_lower_degree(platonic(p).graph()))
            .collect();
        assert_eq!(got, vec![3, 3, 4, 5, 7]);
        assert_eq!(sigma_lower_degree(&path(2).unwrap()), 1);
        assert_eq!(sigma_lower_degree(&Graph::empty(3)), 0);
    }

    #[test]
    fn density_bound() {
        assert_eq!(sigma_lower_density(5, 10).unwrap(), 3);
        assert_eq!(sigma_lower_density(3, 3).unwrap(), 1);
        assert_eq!(sigma_lower_density(12, 30).unwrap(), 6);
        assert!(sigma_lower_density(4, 3).is_err());
    }

    #[test]
    fn la_inversion() {
        assert_eq!(sigma_lower_la(0), 0);
        assert_eq!(sigma_lower_la(1), 1);
        assert_eq!(sigma_lower_la(2), 1);
        assert_eq!(sigma_lower_la(3), 2);
        assert_eq!(sigma_lower_la(4), 3);
    }

    #[test]
    fn complete_families() {
        assert_eq!(kn_sigma23_bounds(5).unwrap(), (2, 2));
        assert_eq!(kn_sigma23_bounds(3).unwrap(), (1, 1));
        assert_eq!(kn_sigma23_bounds(24).unwrap(), (5, 6));
        assert!(kn_sigma23_bounds(2).is_err());
        assert_eq!(kpq_sigma23_bounds(3, 7).unwrap(), (2, 2, true));
        assert_eq!(kpq_sigma23_bounds(7, 3).unwrap(), (2, 2, true));
        assert_eq!(kpq_sigma23_bounds(1, 1).unwrap(), (1, 1, true));
        assert_eq!(kpq_sigma23_bounds(4, 4).unwrap(), (2, 4, false));
        assert_eq!(kn_sigma13_bounds(4), (2, 7));
        assert_eq!(kn_sigma13_bounds(1), (0, 2));
        assert_eq!(kpq_sigma13_bounds(2, 2), (1, 1));
    }
}
