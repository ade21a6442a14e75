//! Lower and upper bounds on cover numbers, each tagged with the rule that
//! produced it.

mod aggregate;
mod formulas;
mod nesting;
mod oracles;

pub use aggregate::{
    aggregate_all, aggregate_bounds, AggregateOptions, BoundReport, BoundsInput, Provenance,
    Quantity,
};
pub use formulas::{
    kn_sigma13_bounds, kn_sigma23_bounds, kpq_sigma13_bounds, kpq_sigma23_bounds,
    sigma_lower_degree, sigma_lower_density, sigma_lower_from_bisection,
    sigma_lower_from_separator, sigma_lower_from_treewidth, sigma_lower_la,
};
pub use nesting::{nested_cycles_lower, NestingReport};
pub use oracles::{
    bisection_width_exact, linear_arboricity_exact, sep_star_exact, treewidth_exact, Separator,
    ARBORICITY_MAX_M, BISECTION_MAX_N, SEPARATOR_MAX_N, TREEWIDTH_MAX_N,
};

use crate::error::Result;
use crate::graph::Graph;

/// `ceil(bw / 2)` for a graph within the bisection cap.
pub fn sigma_lower_bisection(graph: &Graph) -> Result<u64> {
    Ok(sigma_lower_from_bisection(bisection_width_exact(graph)?))
}

/// `ceil(sep*_W / 2)` for a graph within the separator cap.
pub fn sigma_lower_sep(graph: &Graph, w: &[usize]) -> Result<u64> {
    Ok(sigma_lower_from_separator(sep_star_exact(graph, w)?.size()))
}

/// `ceil(tw / 6)` for a graph within the treewidth cap.
pub fn sigma_lower_treewidth(graph: &Graph) -> Result<u64> {
    Ok(sigma_lower_from_treewidth(treewidth_exact(graph)?))
}
