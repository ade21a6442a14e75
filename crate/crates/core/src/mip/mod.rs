//! The angle-assignment integer program and its exact solver.
//!
//! Angles are measured in units of pi: `x[v, f]` is the angle at `v` inside
//! face `f`, `y[v, i, j]` the clockwise angle between anchored neighbors `i`
//! and `j`, and `s[v, i, j] = 1` marks `y = 1`, a straight angle.

mod model;
mod search;

pub use model::{
    build_model, AngleModel, AngleVar, ModelRow, ModelSize, PairVar, RowKind, Sense, Strictness,
};
pub use search::{solve_mip, Budget, MipResult, MipStatus};

use crate::error::Result;
use crate::graph::EmbeddedGraph;
use crate::lp::{self, LinearProgram, LpSolution, Relation};
use crate::rational::Rational;

/// LP relaxation of the model with `s` in `[0, 1]`. The open domain is
/// relaxed to its closure.
pub fn solve_relaxation(model: &AngleModel) -> LpSolution {
    let ncols = model.num_columns();
    let mut prog = LinearProgram::new(ncols);
    let (lo, hi) = model.x_bounds();
    for j in 0..model.x.len() {
        prog.bounds[j] = (Some(lo.clone()), Some(hi.clone()));
    }
    for p in 0..model.pairs.len() {
        let (a, b) = model.y_bounds(p);
        prog.bounds[model.y_index(p)] = (Some(a), Some(b));
        prog.bounds[model.s_index(p)] = (Some(Rational::zero()), Some(Rational::one()));
        prog.objective[model.s_index(p)] = Rational::one();
    }
    for row in &model.rows {
        let coeffs = row
            .coeffs
            .iter()
            .map(|&(j, c)| (j, Rational::from(c)))
            .collect();
        let rel = match row.sense {
            Sense::Eq => Relation::Eq,
            Sense::Le => Relation::Le,
        };
        prog.rows.push((coeffs, rel, Rational::from(row.rhs)));
    }
    prog.maximize = true;
    lp::solve(&prog)
}

/// `|E|` minus the exact optimum: a lower bound on the segment number.
pub fn segment_lower_bound(
    emb: &EmbeddedGraph,
    strictness: Strictness,
    budget: Budget,
) -> Result<(i64, MipResult)> {
    let model = build_model(emb, strictness)?;
    let res = solve_mip(&model, budget)?;
    Ok((res.seg_lower, res))
}

#[cfg(test)]
mod tests;
