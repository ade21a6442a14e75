use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::model::{AngleModel, ModelSize};
use crate::error::{Error, Result};
use crate::lp::{LpStatus, Tableau};
use crate::rational::Rational;

/// Limits for [`solve_mip`]. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MipStatus {
    Optimal,
    /// Budget ran out; `ang_pi` is the best incumbent, `ang_pi_upper` a proven bound.
    BudgetExhausted,
    /// No assignment satisfies the angle equations in the chosen domain.
    Infeasible,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MipResult {
    pub status: MipStatus,
    /// Objective of the best assignment found.
    pub ang_pi: usize,
    /// Proven upper bound on the optimum (equals `ang_pi` when optimal).
    pub ang_pi_upper: usize,
    /// `|E| - ang_pi_upper`, a lower bound on the segment number.
    pub seg_lower: i64,
    pub node_count: u64,
    pub lp_count: u64,
    pub wall_time_secs: f64,
    /// Pair indices with `s = 1`.
    pub chosen: Vec<usize>,
    /// Values of all columns `[x | y | s]`.
    #[serde(skip)]
    pub assignment: Vec<Rational>,
    pub size: ModelSize,
}

impl MipResult {
    pub fn nonoptimal(&self) -> bool {
        self.status == MipStatus::BudgetExhausted
    }
}

/// Feasible region of the angle equations plus chosen `y = 1` rows, with a
/// pool of known points used to answer range queries without an LP.
#[derive(Clone)]
struct Region {
    tab: Tableau,
    pool: Vec<Vec<Rational>>,
    open: bool,
}

const POOL_CAP: usize = 24;

impl Region {
    fn record(&mut self) {
        if self.pool.len() == POOL_CAP {
            self.pool.remove(0);
        }
        self.pool.push(self.tab.values());
    }

    fn run_sum(point: &[Rational], run: &[usize]) -> Rational {
        run.iter().map(|&k| &point[k]).sum()
    }

    /// Whether adding `sum(run) = 1` keeps the region (strictly, if open) nonempty.
    fn admits(&mut self, run: &[usize], nx: usize, lps: &mut u64) -> bool {
        let one = Rational::one();
        let (mut below, mut above, mut at) = (false, false, false);
        for p in &self.pool {
            match Self::run_sum(p, run).cmp(&one) {
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Equal => at = true,
            }
        }
        if !self.open && at {
            return true;
        }
        if below && above {
            return true;
        }
        let mut c = vec![Rational::zero(); nx];
        for &k in run {
            c[k] = Rational::one();
        }
        let (mut min_ge, mut max_le) = (false, false);
        if !below {
            *lps += 1;
            let st = self.tab.optimize(&c, false);
            debug_assert_eq!(st, LpStatus::Optimal);
            let v = self.tab.objective(&c);
            self.record();
            match v.cmp(&one) {
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => {
                    min_ge = true;
                    at = true;
                }
                std::cmp::Ordering::Greater => return false,
            }
        }
        if !above {
            *lps += 1;
            let st = self.tab.optimize(&c, true);
            debug_assert_eq!(st, LpStatus::Optimal);
            let v = self.tab.objective(&c);
            self.record();
            match v.cmp(&one) {
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Equal => {
                    max_le = true;
                    at = true;
                }
                std::cmp::Ordering::Less => return false,
            }
        }
        if self.open {
            (below && above) || (min_ge && max_le)
        } else {
            at || (below && above)
        }
    }

    /// Points whose average lies strictly inside `(0, 2)` in every coordinate,
    /// or `None` if some coordinate is pinned to a bound on the whole region.
    fn strict_witnesses(&mut self, nx: usize, lps: &mut u64) -> Option<Vec<Vec<Rational>>> {
        let two = Rational::from(2);
        let mut pts: Vec<Vec<Rational>> = vec![self.tab.values()];
        for upper_side in [false, true] {
            loop {
                let open: Vec<usize> = (0..nx)
                    .filter(|&i| {
                        !pts.iter().any(|p| {
                            if upper_side {
                                p[i] < two
                            } else {
                                p[i].is_positive()
                            }
                        })
                    })
                    .collect();
                if open.is_empty() {
                    break;
                }
                let c = {
                    let mut c = vec![Rational::zero(); nx];
                    for &i in &open {
                        c[i] = Rational::one();
                    }
                    c
                };
                *lps += 1;
                // lower side: maximize the sum; upper side: minimize it
                self.tab.optimize(&c, !upper_side);
                let v = self.tab.objective(&c);
                let pinned = if upper_side {
                    v == &two * &Rational::from(open.len())
                } else {
                    v.is_zero()
                };
                if pinned {
                    return None;
                }
                pts.push(self.tab.values());
            }
        }
        Some(pts)
    }
}

struct Search<'a> {
    model: &'a AngleModel,
    nx: usize,
    order: Vec<usize>,
    vorder: Vec<usize>,
    vertex_pairs: Vec<Vec<usize>>,
    /// Position of each pair in its vertex list.
    local: Vec<usize>,
    compatible: Vec<Vec<u64>>,
    memo: HashMap<(usize, u64), usize>,
    /// Pairwise conflicts found at the root, as bitsets over pairs.
    conflicts: Vec<Vec<u64>>,
    forbids_zero: bool,
    best: Option<Vec<usize>>,
    best_len: i64,
    nodes: u64,
    lps: u64,
    started: Instant,
    budget: Budget,
    aborted: bool,
    open_bound: usize,
}

fn vertex_order(model: &AngleModel) -> Vec<usize> {
    let nv = model.num_vertices;
    // breadth first over shared faces, from the outer face corners
    let mut faces_of = vec![Vec::new(); nv];
    let mut verts_of = vec![Vec::new(); model.num_faces];
    for a in &model.x {
        faces_of[a.vertex].push(a.face);
        verts_of[a.face].push(a.vertex);
    }
    let mut seen = vec![false; nv];
    let mut out = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for &v in &verts_of[model.outer_face] {
        if !seen[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        out.push(v);
        for &f in &faces_of[v] {
            for &w in &verts_of[f] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let (i, j) = a;
    let (k, l) = b;
    (i < k && k < j && j < l) || (k < i && i < l && l < j)
}

impl<'a> Search<'a> {
    fn new(model: &'a AngleModel, budget: Budget) -> Self {
        let nv = model.num_vertices;
        let mut vertex_pairs = vec![Vec::new(); nv];
        let mut local = vec![0; model.pairs.len()];
        for (p, pair) in model.pairs.iter().enumerate() {
            local[p] = vertex_pairs[pair.vertex].len();
            vertex_pairs[pair.vertex].push(p);
        }
        let forbids_zero = model.strictness.forbids_zero();
        let compatible = vertex_pairs
            .iter()
            .map(|ps| {
                ps.iter()
                    .map(|&p| {
                        let mut mask = 0u64;
                        for (b, &q) in ps.iter().enumerate() {
                            let (a, c) = (&model.pairs[p], &model.pairs[q]);
                            if p != q
                                && (!forbids_zero || interleave((a.i, a.j), (c.i, c.j)))
                                && b < 64
                            {
                                mask |= 1 << b;
                            }
                        }
                        mask
                    })
                    .collect()
            })
            .collect();
        let vorder = vertex_order(model);
        let order = vorder
            .iter()
            .flat_map(|&v| vertex_pairs[v].clone())
            .collect();
        Search {
            model,
            nx: model.x.len(),
            order,
            vorder,
            vertex_pairs,
            local,
            compatible,
            memo: HashMap::new(),
            conflicts: Vec::new(),
            forbids_zero,
            best: None,
            best_len: -1,
            nodes: 0,
            lps: 0,
            started: Instant::now(),
            budget,
            aborted: false,
            open_bound: 0,
        }
    }

    /// Largest set of pairwise compatible pairs among `mask` at vertex `v`.
    fn max_compatible(&mut self, v: usize, mask: u64) -> usize {
        if mask == 0 {
            return 0;
        }
        if !self.forbids_zero {
            return mask.count_ones() as usize;
        }
        if let Some(&r) = self.memo.get(&(v, mask)) {
            return r;
        }
        let b = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << b);
        let with = 1 + self.max_compatible(v, rest & self.compatible[v][b]);
        let without = self.max_compatible(v, rest);
        let r = with.max(without);
        self.memo.insert((v, mask), r);
        r
    }

    fn vertex_mask(&self, v: usize, viable: &[bool]) -> u64 {
        let mut m = 0u64;
        for (b, &p) in self.vertex_pairs[v].iter().enumerate() {
            if viable[p] && b < 64 {
                m |= 1 << b;
            }
        }
        m
    }

    /// `chosen` plus the best completion per vertex from still-viable pairs.
    fn bound(&mut self, chosen: usize, viable: &[bool]) -> usize {
        let mut total = 0;
        for v in 0..self.vertex_pairs.len() {
            let m = self.vertex_mask(v, viable);
            total += self.max_compatible(v, m);
        }
        if !self.conflicts.is_empty() {
            total = total.min(self.clique_cover(viable));
        }
        chosen + total
    }

    /// Greedy cover of the candidates by cliques of the conflict graph; at most
    /// one pair per clique can be chosen.
    fn clique_cover(&self, viable: &[bool]) -> usize {
        let mut commons: Vec<Vec<u64>> = Vec::new();
        for &p in &self.order {
            if !viable[p] {
                continue;
            }
            let (w, b) = (p / 64, p % 64);
            match commons.iter_mut().find(|c| c[w] >> b & 1 == 1) {
                Some(c) => {
                    for (x, y) in c.iter_mut().zip(&self.conflicts[p]) {
                        *x &= y;
                    }
                }
                None => commons.push(self.conflicts[p].clone()),
            }
        }
        commons.len()
    }

    /// First viable pair at the vertex with the fewest viable pairs.
    fn pick(&self, viable: &[bool]) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for &v in &self.vorder {
            let c = self.vertex_pairs[v].iter().filter(|&&p| viable[p]).count();
            if c > 0 && best.is_none_or(|(bc, _)| c < bc) {
                best = Some((c, v));
            }
        }
        best.and_then(|(_, v)| self.vertex_pairs[v].iter().copied().find(|&p| viable[p]))
    }

    fn out_of_budget(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        if let Some(n) = self.budget.max_nodes {
            if self.nodes >= n {
                self.aborted = true;
            }
        }
        if let Some(t) = self.budget.time_limit {
            if self.started.elapsed() >= t {
                self.aborted = true;
            }
        }
        self.aborted
    }

    /// `viable[p]` for undecided `p`: `p` is compatible with the chosen pairs
    /// at its vertex and admissible in `region`. Decided pairs are `false`.
    fn dfs(&mut self, region: &mut Region, chosen: &mut Vec<usize>, viable: &mut Vec<bool>) {
        self.nodes += 1;
        let bound = self.bound(chosen.len(), viable);
        if (bound as i64) <= self.best_len {
            return;
        }
        if self.out_of_budget() {
            self.open_bound = self.open_bound.max(bound);
            return;
        }
        let Some(q) = self.pick(viable) else {
            self.best_len = chosen.len() as i64;
            self.best = Some(chosen.clone());
            return;
        };

        // include q
        let mut child_viable = viable.clone();
        child_viable[q] = false;
        if !self.conflicts.is_empty() {
            for (r, cv) in child_viable.iter_mut().enumerate() {
                if self.conflicts[q][r / 64] >> (r % 64) & 1 == 1 {
                    *cv = false;
                }
            }
        }
        let v = self.model.pairs[q].vertex;
        let compat_q = self.compatible[v][self.local[q]];
        for (b, &r) in self.vertex_pairs[v].iter().enumerate() {
            if compat_q & (1 << b) == 0 {
                child_viable[r] = false;
            }
        }
        if (self.bound(chosen.len() + 1, &child_viable) as i64) > self.best_len {
            let mut child = region.clone();
            let row: Vec<(usize, Rational)> = self.model.pairs[q]
                .run
                .iter()
                .map(|&k| (k, Rational::one()))
                .collect();
            self.lps += 1;
            let ok = child.tab.add_equality(&row, &Rational::one());
            debug_assert!(ok, "admissible pair must keep the region nonempty");
            child.pool.clear();
            child.record();
            chosen.push(q);
            let mut alive = true;
            for t in 0..self.order.len() {
                let r = self.order[t];
                if !child_viable[r] {
                    continue;
                }
                if !child.admits(&self.model.pairs[r].run, self.nx, &mut self.lps) {
                    child_viable[r] = false;
                    if (self.bound(chosen.len(), &child_viable) as i64) <= self.best_len {
                        alive = false;
                        break;
                    }
                }
            }
            if alive {
                self.dfs(&mut child, chosen, &mut child_viable);
            }
            chosen.pop();
            if self.aborted {
                self.open_bound = self.open_bound.max(bound);
                return;
            }
        }

        // exclude q
        viable[q] = false;
        self.dfs(region, chosen, viable);
        viable[q] = true;
    }
}

fn root_conflicts(search: &Search, root: &Region, viable: &[bool], lps: &mut u64) -> Vec<Vec<u64>> {
    let model = search.model;
    let np = model.pairs.len();
    let words = np.div_ceil(64);
    let mut conf = vec![vec![0u64; words]; np];
    let set = |conf: &mut Vec<Vec<u64>>, a: usize, b: usize| {
        conf[a][b / 64] |= 1 << (b % 64);
        conf[b][a / 64] |= 1 << (a % 64);
    };
    for p in 0..np {
        let v = model.pairs[p].vertex;
        let cp = search.compatible[v][search.local[p]];
        for (b, &q) in search.vertex_pairs[v].iter().enumerate() {
            if q != p && cp >> b & 1 == 0 {
                set(&mut conf, p, q);
            }
        }
    }
    for p in 0..np {
        if !viable[p] {
            continue;
        }
        let mut child = root.clone();
        let row: Vec<_> = model.pairs[p]
            .run
            .iter()
            .map(|&k| (k, Rational::one()))
            .collect();
        child.tab.add_equality(&row, &Rational::one());
        child.pool.clear();
        child.record();
        for q in p + 1..np {
            if !viable[q] || conf[p][q / 64] >> (q % 64) & 1 == 1 {
                continue;
            }
            if !child.admits(&model.pairs[q].run, search.nx, lps) {
                set(&mut conf, p, q);
            }
        }
    }
    conf
}

fn root_region(model: &AngleModel) -> Option<Region> {
    let nx = model.x.len();
    let (lo, hi) = model.x_bounds();
    let rows: Vec<_> = model
        .angle_rows()
        .map(|(xs, rhs)| {
            (
                xs.into_iter().map(|k| (k, Rational::one())).collect(),
                Rational::from(rhs),
            )
        })
        .collect();
    let tab = Tableau::new(vec![lo; nx], vec![Some(hi); nx], &rows)?;
    let mut region = Region {
        tab,
        pool: Vec::new(),
        open: model.strictness.is_open(),
    };
    region.record();
    Some(region)
}

/// Builds the full `[x | y | s]` assignment for a chosen pair set.
fn assignment(model: &AngleModel, chosen: &[usize], lps: &mut u64) -> Result<Vec<Rational>> {
    let nx = model.x.len();
    let mut region =
        root_region(model).ok_or_else(|| Error::Integrity("root region vanished".into()))?;
    for &q in chosen {
        let row: Vec<_> = model.pairs[q]
            .run
            .iter()
            .map(|&k| (k, Rational::one()))
            .collect();
        if !region.tab.add_equality(&row, &Rational::one()) {
            return Err(Error::Integrity(
                "chosen pairs are jointly infeasible".into(),
            ));
        }
    }
    let x: Vec<Rational> = if region.open {
        let pts = region
            .strict_witnesses(nx, lps)
            .ok_or_else(|| Error::Integrity("chosen pairs admit no strict assignment".into()))?;
        let count = Rational::from(pts.len());
        (0..nx)
            .map(|i| &pts.iter().map(|p| &p[i]).sum::<Rational>() / &count)
            .collect()
    } else {
        region.tab.values()
    };
    let mut values = x.clone();
    for pair in &model.pairs {
        values.push(pair.run.iter().map(|&k| &x[k]).sum());
    }
    let mut s = vec![Rational::zero(); model.pairs.len()];
    for &q in chosen {
        s[q] = Rational::one();
    }
    values.extend(s);
    model.check_assignment(&values)?;
    Ok(values)
}

/// Exact maximum number of pairs with `y = 1` over all assignments in the
/// model's domain.
///
/// Depth-first search over the `s` variables in vertex order, include branch
/// first. Every node carries the exact region of its chosen rows; a pair stays
/// a candidate only while the region admits `y = 1` for it, which is decided
/// from the range of `y` over the region (two warm-started LPs at most, often
/// none thanks to a pool of previously found points). The bound is the chosen
/// count plus, per vertex, the largest set of mutually interleaving candidates.
pub fn solve_mip(model: &AngleModel, budget: Budget) -> Result<MipResult> {
    let started = Instant::now();
    let nx = model.x.len();
    let m = model.num_edges as i64;
    let mut search = Search::new(model, budget);
    let empty = |status, nodes, lps| MipResult {
        status,
        ang_pi: 0,
        ang_pi_upper: 0,
        seg_lower: m,
        node_count: nodes,
        lp_count: lps,
        wall_time_secs: started.elapsed().as_secs_f64(),
        chosen: Vec::new(),
        assignment: Vec::new(),
        size: model.size(),
    };
    let Some(mut root) = root_region(model) else {
        return Ok(empty(MipStatus::Infeasible, 0, 1));
    };
    if root.open && root.strict_witnesses(nx, &mut search.lps).is_none() {
        return Ok(empty(MipStatus::Infeasible, 0, search.lps));
    }
    let mut viable = vec![false; model.pairs.len()];
    for p in 0..model.pairs.len() {
        viable[p] = root.admits(&model.pairs[p].run, nx, &mut search.lps);
    }
    let mut lps = search.lps;
    search.conflicts = root_conflicts(&search, &root, &viable, &mut lps);
    search.lps = lps;
    let mut chosen = Vec::new();
    search.dfs(&mut root, &mut chosen, &mut viable);

    let best = search.best.clone().unwrap_or_default();
    let ang = best.len();
    let (status, upper) = if search.aborted {
        (MipStatus::BudgetExhausted, search.open_bound.max(ang))
    } else {
        (MipStatus::Optimal, ang)
    };
    let mut lps = search.lps;
    let values = assignment(model, &best, &mut lps)?;
    Ok(MipResult {
        status,
        ang_pi: ang,
        ang_pi_upper: upper,
        seg_lower: m - upper as i64,
        node_count: search.nodes,
        lp_count: lps,
        wall_time_secs: started.elapsed().as_secs_f64(),
        chosen: best,
        assignment: values,
        size: model.size(),
    })
}
