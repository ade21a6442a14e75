//! Combining every applicable rule into one report per quantity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::formulas::*;
use super::oracles::*;
use crate::error::{Error, Result};
use crate::graph::{Family, Graph, Platonic};

/// Cover numbers and drawing complexities tracked by the aggregator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Sigma12,
    Sigma13,
    Sigma23,
    Seg,
    Arc,
    Rho12,
    Rho13,
    Rho23,
}

impl Quantity {
    pub const ALL: [Quantity; 8] = [
        Quantity::Sigma12,
        Quantity::Sigma13,
        Quantity::Sigma23,
        Quantity::Seg,
        Quantity::Arc,
        Quantity::Rho12,
        Quantity::Rho13,
        Quantity::Rho23,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Sigma12 => "sigma12",
            Quantity::Sigma13 => "sigma13",
            Quantity::Sigma23 => "sigma23",
            Quantity::Seg => "seg",
            Quantity::Arc => "arc",
            Quantity::Rho12 => "rho12",
            Quantity::Rho13 => "rho13",
            Quantity::Rho23 => "rho23",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Quantity::Sigma12 => "σ¹₂",
            Quantity::Sigma13 => "σ¹₃",
            Quantity::Sigma23 => "σ²₃",
            Quantity::Seg => "seg",
            Quantity::Arc => "arc",
            Quantity::Rho12 => "ρ¹₂",
            Quantity::Rho13 => "ρ¹₃",
            Quantity::Rho23 => "ρ²₃",
        }
    }

    /// Defined only through plane drawings, hence only for planar graphs.
    pub fn needs_planar(self) -> bool {
        matches!(
            self,
            Quantity::Sigma12 | Quantity::Seg | Quantity::Arc | Quantity::Rho12
        )
    }

    fn idx(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s.to_ascii_lowercase() || q.symbol() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "quantity",
                name: s.to_string(),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub rule: String,
    pub value: u64,
}

/// Best known bounds on one quantity. Rule identifiers are prefixed with
/// `lower:` or `upper:`; `param:` entries record intermediate graph parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: Quantity,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub provenance: Vec<Provenance>,
}

/// A graph together with what is known about it structurally.
#[derive(Clone, Debug)]
pub struct BoundsInput {
    pub graph: Graph,
    pub family: Option<Family>,
    /// `None` when planarity is unknown.
    pub planar: Option<bool>,
}

impl BoundsInput {
    pub fn from_family(family: Family) -> Result<Self> {
        Ok(BoundsInput {
            graph: family.graph()?,
            family: Some(family),
            planar: Some(family.planar()),
        })
    }

    /// Planarity is settled only by a given embedding or by edge density.
    pub fn from_graph(graph: Graph, embedded: bool) -> Self {
        let (n, m) = (graph.n(), graph.m());
        let planar = if embedded || m <= 2 {
            Some(true)
        } else if n >= 3 && m > 3 * n - 6 {
            Some(false)
        } else {
            None
        };
        BoundsInput {
            graph,
            family: None,
            planar,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AggregateOptions {
    /// Run the exhaustive oracles on graphs within their size caps.
    pub oracles: bool,
    /// Fail instead of skipping an oracle whose cap is exceeded.
    pub strict_caps: bool,
}

impl Default for AggregateOptions {
    fn default() -> Self {
        AggregateOptions {
            oracles: true,
            strict_caps: false,
        }
    }
}

/// `(smaller, larger, needs planarity, rule)`.
const RELATIONS: [(Quantity, Quantity, bool, &str); 9] = [
    (Quantity::Sigma23, Quantity::Rho23, false, "inversion"),
    (Quantity::Sigma13, Quantity::Rho13, false, "inversion"),
    (Quantity::Sigma12, Quantity::Rho12, true, "inversion"),
    (Quantity::Rho23, Quantity::Sigma13, false, "circle-planes"),
    (Quantity::Sigma13, Quantity::Sigma12, true, "plane-in-space"),
    (Quantity::Rho13, Quantity::Rho12, true, "plane-in-space"),
    (Quantity::Sigma12, Quantity::Arc, true, "arc-supports"),
    (Quantity::Rho12, Quantity::Seg, true, "segment-supports"),
    (Quantity::Arc, Quantity::Seg, true, "segments-as-arcs"),
];

struct Table {
    planar: Option<bool>,
    lower: [Option<u64>; 8],
    upper: [Option<u64>; 8],
    prov: [Vec<Provenance>; 8],
}

impl Table {
    fn new(planar: Option<bool>) -> Self {
        Table {
            planar,
            lower: [None; 8],
            upper: [None; 8],
            prov: Default::default(),
        }
    }

    fn applies(&self, q: Quantity) -> bool {
        !(q.needs_planar() && self.planar == Some(false))
    }

    fn note(&mut self, q: Quantity, rule: String, value: u64) {
        self.prov[q.idx()].push(Provenance { rule, value });
    }

    fn param(&mut self, qs: &[Quantity], name: &str, value: u64) {
        for &q in qs {
            if self.applies(q) {
                self.note(q, format!("param:{name}"), value);
            }
        }
    }

    fn lower(&mut self, q: Quantity, rule: &str, v: u64) -> bool {
        if !self.applies(q) {
            return false;
        }
        self.note(q, format!("lower:{rule}"), v);
        let cur = &mut self.lower[q.idx()];
        if cur.is_none_or(|c| v > c) {
            *cur = Some(v);
            return true;
        }
        false
    }

    fn upper(&mut self, q: Quantity, rule: &str, v: u64) -> bool {
        if !self.applies(q) {
            return false;
        }
        self.note(q, format!("upper:{rule}"), v);
        let cur = &mut self.upper[q.idx()];
        if cur.is_none_or(|c| v < c) {
            *cur = Some(v);
            return true;
        }
        false
    }

    fn both(&mut self, q: Quantity, rule: &str, lo: u64, hi: u64) {
        self.lower(q, rule, lo);
        self.upper(q, rule, hi);
    }

    /// Pushes bounds along the inequality chains until nothing changes.
    fn propagate(&mut self) {
        loop {
            let mut changed = false;
            for (a, b, planar, rule) in RELATIONS {
                if planar && self.planar != Some(true) {
                    continue;
                }
                if let Some(l) = self.lower[a.idx()] {
                    if self.lower[b.idx()].is_none_or(|c| l > c) {
                        changed |= self.lower(b, &format!("{rule}<-{a}"), l);
                    }
                }
                if let Some(u) = self.upper[b.idx()] {
                    if self.upper[a.idx()].is_none_or(|c| u < c) {
                        changed |= self.upper(a, &format!("{rule}<-{b}"), u);
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn report(&self, q: Quantity) -> Result<BoundReport> {
        let (lower, upper) = (self.lower[q.idx()], self.upper[q.idx()]);
        if let (Some(l), Some(u)) = (lower, upper) {
            if l > u {
                return Err(Error::Integrity(format!(
                    "{q}: lower bound {l} exceeds upper bound {u} ({:?})",
                    self.prov[q.idx()]
                )));
            }
        }
        Ok(BoundReport {
            quantity: q,
            lower,
            upper,
            provenance: self.prov[q.idx()].clone(),
        })
    }
}

fn oracle<T>(res: Result<T>, opts: &AggregateOptions) -> Result<Option<T>> {
    match res {
        Ok(v) => Ok(Some(v)),
        Err(Error::SizeCap { .. }) if !opts.strict_caps => Ok(None),
        Err(e) => Err(e),
    }
}

const CIRCLES: [Quantity; 2] = [Quantity::Sigma12, Quantity::Sigma13];

fn build(input: &BoundsInput, opts: &AggregateOptions) -> Result<Table> {
    let g = &input.graph;
    let (n, m) = (g.n() as u64, g.m() as u64);
    let mut t = Table::new(input.planar);

    if m == 0 {
        for q in Quantity::ALL {
            t.both(q, "no-edges", 0, 0);
        }
        return Ok(t);
    }
    for q in Quantity::ALL {
        t.lower(q, "has-edge", 1);
    }
    t.upper(Quantity::Rho13, "line-per-edge", m);
    if input.planar == Some(true) {
        t.upper(Quantity::Seg, "straight-line-drawing", m);
    }
    if n >= 3 {
        t.upper(Quantity::Sigma23, "complete-supergraph", n.div_ceil(4));
    }

    for q in CIRCLES {
        t.lower(q, "degree-count", sigma_lower_degree(g));
        if m >= n {
            t.lower(q, "density-count", sigma_lower_density(n, m)?);
        }
    }

    if opts.oracles {
        if let Some(bw) = oracle(bisection_width_exact(g), opts)? {
            t.param(&CIRCLES, "bisection-width", bw);
            for q in CIRCLES {
                t.lower(q, "bisection-width", sigma_lower_from_bisection(bw));
            }
        }
        if let Some(la) = oracle(linear_arboricity_exact(g), opts)? {
            t.param(&CIRCLES, "linear-arboricity", la);
            for q in CIRCLES {
                t.lower(q, "linear-arboricity", sigma_lower_la(la));
            }
        }
        let all: Vec<usize> = (0..g.n()).collect();
        if let Some(sep) = oracle(sep_star_exact(g, &all), opts)? {
            t.param(&CIRCLES, "separator", sep.size());
            for q in CIRCLES {
                t.lower(q, "separator", sigma_lower_from_separator(sep.size()));
            }
        }
        if let Some(tw) = oracle(treewidth_exact(g), opts)? {
            t.param(&CIRCLES, "treewidth", tw);
            for q in CIRCLES {
                t.lower(q, "treewidth", sigma_lower_from_treewidth(tw));
            }
        }
    }

    match input.family {
        Some(Family::Complete(n)) => complete_rules(&mut t, n as u64)?,
        Some(Family::Bipartite(p, q)) => bipartite_rules(&mut t, p as u64, q as u64)?,
        Some(Family::Platonic(p)) => platonic_rules(&mut t, p),
        _ => {}
    }
    t.propagate();
    Ok(t)
}

fn complete_rules(t: &mut Table, n: u64) -> Result<()> {
    if n >= 3 {
        // thickness (Duncan 2011) and book thickness (Bernhart and Kainen 1979)
        let (lo, hi) = kn_sigma23_bounds(n)?;
        t.param(
            &[Quantity::Sigma23],
            "book-thickness",
            if n <= 3 { 1 } else { n.div_ceil(2) },
        );
        t.lower(Quantity::Sigma23, "thickness", lo);
        t.upper(Quantity::Sigma23, "book-thickness", hi);
    }
    let (lo, hi) = kn_sigma13_bounds(n);
    t.lower(Quantity::Sigma13, "complete-bisection", lo);
    t.upper(Quantity::Sigma13, "triangle-partition", hi);
    // affine covers of complete graphs, cited
    let edges = n * (n - 1) / 2;
    t.both(Quantity::Rho13, "cited:complete-lines", edges, edges);
    t.lower(
        Quantity::Rho23,
        "cited:complete-planes",
        (n * n - n).div_ceil(12),
    );
    t.upper(
        Quantity::Rho23,
        "cited:complete-planes",
        (n * n + 5 * n + 6) / 6,
    );
    Ok(())
}

fn bipartite_rules(t: &mut Table, p: u64, q: u64) -> Result<()> {
    let (lo, hi, exact) = kpq_sigma23_bounds(p, q)?;
    let rule = if exact {
        "thickness-book-thickness"
    } else {
        "thickness"
    };
    t.lower(Quantity::Sigma23, rule, lo);
    t.upper(Quantity::Sigma23, "book-thickness", hi);
    let (lo, hi) = kpq_sigma13_bounds(p, q);
    t.lower(Quantity::Sigma13, "complete-bisection", lo);
    t.upper(Quantity::Sigma13, "paired-circles", hi);
    if p >= 3 && q >= 3 {
        let lines = p * q - p / 2 - q / 2;
        t.both(Quantity::Rho13, "cited:bipartite-lines", lines, lines);
        let planes = p.min(q).div_ceil(2);
        t.both(Quantity::Rho23, "cited:bipartite-planes", planes, planes);
    }
    Ok(())
}

/// Literature values for the solids, in [`Platonic::ALL`] order.
struct SolidFixture {
    seg: u64,
    arc: (u64, u64),
    rho1: (u64, u64),
    sigma1_upper: u64,
}

const SOLIDS: [SolidFixture; 5] = [
    SolidFixture {
        seg: 6,
        arc: (3, 3),
        rho1: (6, 6),
        sigma1_upper: 3,
    },
    SolidFixture {
        seg: 9,
        arc: (3, 3),
        rho1: (9, 9),
        sigma1_upper: 3,
    },
    SolidFixture {
        seg: 7,
        arc: (4, 4),
        rho1: (7, 7),
        sigma1_upper: 4,
    },
    SolidFixture {
        seg: 13,
        arc: (10, 10),
        rho1: (9, 10),
        sigma1_upper: 5,
    },
    SolidFixture {
        seg: 15,
        arc: (7, 7),
        rho1: (13, 15),
        sigma1_upper: 7,
    },
];

fn platonic_rules(t: &mut Table, solid: Platonic) {
    let i = Platonic::ALL.iter().position(|&p| p == solid).unwrap();
    let f = &SOLIDS[i];
    t.both(Quantity::Seg, "cited:segment-number", f.seg, f.seg);
    t.both(Quantity::Arc, "cited:arc-number", f.arc.0, f.arc.1);
    for q in [Quantity::Rho12, Quantity::Rho13] {
        t.both(q, "cited:line-cover", f.rho1.0, f.rho1.1);
    }
    t.upper(Quantity::Sigma12, "cited:circle-drawing", f.sigma1_upper);
}

/// Best bounds on one quantity.
pub fn aggregate_bounds(
    input: &BoundsInput,
    quantity: Quantity,
    opts: &AggregateOptions,
) -> Result<BoundReport> {
    if quantity.needs_planar() && input.planar == Some(false) {
        return Err(Error::validation(format!(
            "{quantity} is defined only for planar graphs"
        )));
    }
    build(input, opts)?.report(quantity)
}

/// Reports for every quantity defined on the input.
pub fn aggregate_all(input: &BoundsInput, opts: &AggregateOptions) -> Result<Vec<BoundReport>> {
    let t = build(input, opts)?;
    Quantity::ALL
        .into_iter()
        .filter(|&q| t.applies(q))
        .map(|q| t.report(q))
        .collect()
}
