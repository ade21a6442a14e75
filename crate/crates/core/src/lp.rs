//! Exact linear programming over [`Rational`].
//!
//! [`Tableau`] is a dense bounded-variable primal simplex with Bland's rule.
//! It keeps its basis between calls, so a sequence of objectives over the same
//! feasible region (or a region that only gains equality rows) re-optimizes
//! from the previous vertex. [`solve`] is the one-shot front end for general
//! problems with inequality rows and free variables.

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Sparse row: `(column, coefficient)` pairs.
pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
pub struct Tableau {
    /// `rows[i]` is row `i` of `B^-1 A`.
    rows: Vec<Vec<Rational>>,
    /// Value of the basic variable of each row.
    beta: Vec<Rational>,
    basis: Vec<usize>,
    /// Row index of each basic column.
    row_of: Vec<Option<usize>>,
    lower: Vec<Rational>,
    upper: Vec<Option<Rational>>,
    at_upper: Vec<bool>,
    /// Columns that may never enter the basis (spent artificials).
    structural: usize,
    pivots: u64,
}

impl Tableau {
    /// Builds `{x : A x = b, lower <= x <= upper}` and runs phase one.
    /// Returns `None` if the region is empty.
    pub fn new(
        lower: Vec<Rational>,
        upper: Vec<Option<Rational>>,
        rows: &[(SparseRow, Rational)],
    ) -> Option<Self> {
        let n = lower.len();
        assert_eq!(upper.len(), n);
        let mut t = Tableau {
            rows: Vec::new(),
            beta: Vec::new(),
            basis: Vec::new(),
            row_of: vec![None; n],
            lower,
            upper,
            at_upper: vec![false; n],
            structural: n,
            pivots: 0,
        };
        for j in 0..n {
            if let Some(u) = &t.upper[j] {
                if *u < t.lower[j] {
                    return None;
                }
            }
        }
        for (row, rhs) in rows {
            if !t.add_equality(row, rhs) {
                return None;
            }
        }
        Some(t)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Total pivots performed so far.
    pub fn pivots(&self) -> u64 {
        self.pivots
    }

    fn ncols(&self) -> usize {
        self.lower.len()
    }

    fn nonbasic_value(&self, j: usize) -> &Rational {
        if self.at_upper[j] {
            self.upper[j].as_ref().expect("at upper implies finite")
        } else {
            &self.lower[j]
        }
    }

    /// Current values of the structural variables.
    pub fn values(&self) -> Vec<Rational> {
        (0..self.structural).map(|j| self.value(j)).collect()
    }

    pub fn value(&self, j: usize) -> Rational {
        match self.row_of[j] {
            Some(r) => self.beta[r].clone(),
            None => self.nonbasic_value(j).clone(),
        }
    }

    /// Appends the row `a . x = rhs` over structural columns. Returns `false`
    /// (leaving the tableau unusable) if the enlarged region is empty.
    pub fn add_equality(&mut self, a: &SparseRow, rhs: &Rational) -> bool {
        let ncols = self.ncols();
        let mut row = vec![Rational::zero(); ncols];
        for (j, c) in a {
            row[*j] += c;
        }
        let mut activity = Rational::zero();
        for (j, c) in a {
            if !c.is_zero() {
                activity += &(c * &self.value(*j));
            }
        }
        // eliminate basic columns
        for (i, &b) in self.basis.iter().enumerate() {
            let f = row[b].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&self.rows[i]) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        let resid = rhs - &activity;
        let sign = if resid.is_negative() { -1 } else { 1 };
        // artificial column, basic in the new row
        let art = ncols;
        for r in &mut self.rows {
            r.push(Rational::zero());
        }
        row.push(Rational::from(sign));
        if sign < 0 {
            for x in &mut row {
                *x = -&*x;
            }
        }
        self.rows.push(row);
        self.beta.push(resid.abs());
        self.basis.push(art);
        self.row_of.push(Some(self.rows.len() - 1));
        self.lower.push(Rational::zero());
        self.upper.push(None);
        self.at_upper.push(false);

        if !resid.is_zero() {
            let mut cost = vec![Rational::zero(); art + 1];
            cost[art] = Rational::one();
            self.optimize_full(&cost);
            if !self.value(art).is_zero() {
                return false;
            }
        }
        self.retire_artificial(art);
        true
    }

    /// Removes an artificial column at value zero, dropping its row if redundant.
    fn retire_artificial(&mut self, art: usize) {
        if let Some(r) = self.row_of[art] {
            let enter = (0..art).find(|&j| self.row_of[j].is_none() && !self.rows[r][j].is_zero());
            match enter {
                Some(j) => {
                    let v = self.nonbasic_value(j).clone();
                    self.pivot(r, j);
                    self.beta[r] = v;
                    self.at_upper[j] = false;
                }
                None => {
                    // redundant row
                    self.rows.remove(r);
                    self.beta.remove(r);
                    self.basis.remove(r);
                    self.row_of[art] = None;
                    for (i, &b) in self.basis.iter().enumerate() {
                        self.row_of[b] = Some(i);
                    }
                }
            }
        }
        // drop the (nonbasic, zero) column; it is always the last one
        debug_assert_eq!(art, self.ncols() - 1);
        for r in &mut self.rows {
            r.pop();
        }
        self.lower.pop();
        self.upper.pop();
        self.at_upper.pop();
        self.row_of.pop();
    }

    fn pivot(&mut self, r: usize, s: usize) {
        self.pivots += 1;
        let p = self.rows[r][s].clone();
        if p != Rational::one() {
            let inv = p.recip();
            for x in &mut self.rows[r] {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..pivot_row.len())
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[s].clone();
            if f.is_zero() {
                continue;
            }
            for &j in &nz {
                row[j] -= &(&f * &pivot_row[j]);
            }
        }
        self.rows[r] = pivot_row;
        let old = self.basis[r];
        self.row_of[old] = None;
        self.basis[r] = s;
        self.row_of[s] = Some(r);
    }

    /// Minimizes (or maximizes) `c . x` over structural columns.
    pub fn optimize(&mut self, c: &[Rational], maximize: bool) -> LpStatus {
        let mut cost = vec![Rational::zero(); self.ncols()];
        for (j, v) in c.iter().enumerate() {
            cost[j] = if maximize { -v } else { v.clone() };
        }
        self.optimize_full(&cost)
    }

    /// Objective value `c . x` at the current vertex.
    pub fn objective(&self, c: &[Rational]) -> Rational {
        c.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| v * &self.value(j))
            .sum()
    }

    /// Primal simplex on a full cost vector (minimization), Bland's rule.
    fn optimize_full(&mut self, cost: &[Rational]) -> LpStatus {
        let ncols = self.ncols();
        // reduced costs d_j = c_j - c_B . T_j
        let mut d: Vec<Rational> = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (dj, t) in d.iter_mut().zip(&self.rows[i]) {
                if !t.is_zero() {
                    *dj -= &(cb * t);
                }
            }
        }
        loop {
            let enter = (0..ncols).find(|&j| {
                if self.row_of[j].is_some() || d[j].is_zero() {
                    return false;
                }
                if let Some(u) = &self.upper[j] {
                    if *u == self.lower[j] {
                        return false;
                    }
                }
                if self.at_upper[j] {
                    d[j].is_positive()
                } else {
                    d[j].is_negative()
                }
            });
            let Some(s) = enter else {
                return LpStatus::Optimal;
            };
            let dir: i32 = if self.at_upper[s] { -1 } else { 1 };

            // ratio test: (theta, tie-break column, row or None for a bound flip)
            let mut best: Option<(Rational, usize, Option<usize>)> = None;
            let mut consider = |theta: Rational, col: usize, row: Option<usize>| {
                let better = match &best {
                    None => true,
                    Some((t, c, _)) => theta < *t || (theta == *t && col < *c),
                };
                if better {
                    best = Some((theta, col, row));
                }
            };
            if let Some(u) = &self.upper[s] {
                consider(u - &self.lower[s], s, None);
            }
            for i in 0..self.rows.len() {
                let a = &self.rows[i][s];
                if a.is_zero() {
                    continue;
                }
                let b = self.basis[i];
                // basic value moves by -dir * a * theta
                let decreasing = (dir > 0) == a.is_positive();
                if decreasing {
                    let theta = &(&self.beta[i] - &self.lower[b]) / &a.abs();
                    consider(theta, b, Some(i));
                } else if let Some(u) = &self.upper[b] {
                    let theta = &(u - &self.beta[i]) / &a.abs();
                    consider(theta, b, Some(i));
                }
            }
            let Some((theta, _, leave)) = best else {
                return LpStatus::Unbounded;
            };
            if !theta.is_zero() {
                let step = if dir > 0 { theta.clone() } else { -&theta };
                for i in 0..self.rows.len() {
                    let a = &self.rows[i][s];
                    if !a.is_zero() {
                        let delta = a * &step;
                        self.beta[i] -= &delta;
                    }
                }
            }
            match leave {
                None => {
                    self.at_upper[s] = !self.at_upper[s];
                }
                Some(r) => {
                    let b = self.basis[r];
                    let entering_value = if dir > 0 {
                        &self.lower[s] + &theta
                    } else {
                        self.upper[s].as_ref().expect("finite") - &theta
                    };
                    // leaving variable sits at the bound it hit
                    let hit_lower = self.beta[r] == self.lower[b];
                    self.at_upper[b] = !hit_lower;
                    self.pivot(r, s);
                    self.beta[r] = entering_value;
                    self.at_upper[s] = false;
                    let ds = d[s].clone();
                    for (dj, t) in d.iter_mut().zip(&self.rows[r]) {
                        if !t.is_zero() {
                            *dj -= &(&ds * t);
                        }
                    }
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// A general linear program over rational data.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    /// Per-variable bounds; `None` means unbounded in that direction.
    pub bounds: Vec<(Option<Rational>, Option<Rational>)>,
    pub rows: Vec<(SparseRow, Relation, Rational)>,
    pub objective: Vec<Rational>,
    pub maximize: bool,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            bounds: vec![(Some(Rational::zero()), None); num_vars],
            rows: Vec::new(),
            objective: vec![Rational::zero(); num_vars],
            maximize: false,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub x: Vec<Rational>,
}

/// Solves a general LP exactly.
pub fn solve(lp: &LinearProgram) -> LpSolution {
    let n = lp.num_vars();
    // Column layout: for each variable either one shifted column
    // (finite lower bound, or finite upper only and mirrored) or a split pair.
    enum Map {
        Shift(usize),
        Mirror(usize),
        Split(usize, usize),
    }
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut maps = Vec::with_capacity(n);
    for (l, u) in &lp.bounds {
        match (l, u) {
            (Some(l), u) => {
                maps.push(Map::Shift(lower.len()));
                lower.push(l.clone());
                upper.push(u.clone());
            }
            (None, Some(u)) => {
                // x = -z with z >= -u
                maps.push(Map::Mirror(lower.len()));
                lower.push(-u);
                upper.push(None);
            }
            (None, None) => {
                maps.push(Map::Split(lower.len(), lower.len() + 1));
                lower.extend([Rational::zero(), Rational::zero()]);
                upper.extend([None, None]);
            }
        }
    }
    let expand = |row: &SparseRow| -> SparseRow {
        let mut out = Vec::new();
        for (j, c) in row {
            match maps[*j] {
                Map::Shift(k) => out.push((k, c.clone())),
                Map::Mirror(k) => out.push((k, -c)),
                Map::Split(p, q) => {
                    out.push((p, c.clone()));
                    out.push((q, -c));
                }
            }
        }
        out
    };
    let mut eqs = Vec::new();
    for (row, rel, rhs) in &lp.rows {
        let mut r = expand(row);
        match rel {
            Relation::Eq => {}
            Relation::Le | Relation::Ge => {
                let k = lower.len();
                lower.push(Rational::zero());
                upper.push(None);
                let sign = if *rel == Relation::Le { 1 } else { -1 };
                r.push((k, Rational::from(sign)));
            }
        }
        eqs.push((r, rhs.clone()));
    }
    let mut cost = vec![Rational::zero(); lower.len()];
    for (j, c) in lp.objective.iter().enumerate() {
        for (k, v) in expand(&vec![(j, c.clone())]) {
            cost[k] += &v;
        }
    }
    let Some(mut t) = Tableau::new(lower, upper, &eqs) else {
        return LpSolution {
            status: LpStatus::Infeasible,
            value: None,
            x: Vec::new(),
        };
    };
    let status = t.optimize(&cost, lp.maximize);
    let vals = t.values();
    let x: Vec<Rational> = maps
        .iter()
        .map(|m| match *m {
            Map::Shift(k) => vals[k].clone(),
            Map::Mirror(k) => -&vals[k],
            Map::Split(p, q) => &vals[p] - &vals[q],
        })
        .collect();
    let value = (status == LpStatus::Optimal).then(|| {
        lp.objective
            .iter()
            .zip(&x)
            .map(|(c, v)| c * v)
            .sum::<Rational>()
    });
    LpSolution { status, value, x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn trivial_max() {
        let mut lp = LinearProgram::new(1);
        lp.rows.push((vec![(0, r(1))], Relation::Le, r(1)));
        lp.objective = vec![r(1)];
        lp.maximize = true;
        let s = solve(&lp);
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, Some(r(1)));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.rows.push((vec![(0, r(1))], Relation::Ge, r(3)));
        lp.rows.push((vec![(0, r(1))], Relation::Le, r(2)));
        assert_eq!(solve(&lp).status, LpStatus::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.rows
            .push((vec![(0, r(1)), (1, r(-1))], Relation::Le, r(1)));
        lp.objective = vec![r(1), r(0)];
        lp.maximize = true;
        assert_eq!(solve(&lp).status, LpStatus::Unbounded);
    }

    #[test]
    fn fractional_vertex() {
        // max x + y, 2x + y <= 4, x + 3y <= 6
        let mut lp = LinearProgram::new(2);
        lp.rows
            .push((vec![(0, r(2)), (1, r(1))], Relation::Le, r(4)));
        lp.rows
            .push((vec![(0, r(1)), (1, r(3))], Relation::Le, r(6)));
        lp.objective = vec![r(1), r(1)];
        lp.maximize = true;
        let s = solve(&lp);
        assert_eq!(s.value, Some(Rational::new(14, 5)));
        assert_eq!(s.x, vec![Rational::new(6, 5), Rational::new(8, 5)]);
    }

    #[test]
    fn free_and_mirrored_variables() {
        // min x subject to x >= -5 as a row, x free; and y <= 3 only, max y
        let mut lp = LinearProgram::new(2);
        lp.bounds = vec![(None, None), (None, Some(r(3)))];
        lp.rows.push((vec![(0, r(1))], Relation::Ge, r(-5)));
        lp.objective = vec![r(1), r(-1)];
        let s = solve(&lp);
        assert_eq!(s.value, Some(r(-8)));
    }

    #[test]
    fn warm_reoptimize_and_add_rows() {
        let lower = vec![r(0); 3];
        let upper = vec![Some(r(2)); 3];
        let rows = vec![(vec![(0, r(1)), (1, r(1)), (2, r(1))], r(3))];
        let mut t = Tableau::new(lower, upper, &rows).unwrap();
        assert_eq!(t.optimize(&[r(1), r(0), r(0)], true), LpStatus::Optimal);
        assert_eq!(t.value(0), r(2));
        assert_eq!(t.optimize(&[r(1), r(0), r(0)], false), LpStatus::Optimal);
        assert_eq!(t.value(0), r(0));
        assert!(t.add_equality(&vec![(0, r(1)), (1, r(-1))], &r(0)));
        t.optimize(&[r(0), r(0), r(1)], true);
        assert_eq!(t.value(2), r(2));
        assert_eq!(t.value(0), Rational::new(1, 2));
        // redundant row keeps feasibility
        assert!(t.add_equality(&vec![(0, r(2)), (1, r(2)), (2, r(2))], &r(6)));
        assert!(!t.add_equality(&vec![(2, r(1))], &r(5)));
    }
}
