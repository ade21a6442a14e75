use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;
use crate::rational::Rational;

/// Domain of the angle variables `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "epsilon")]
#[derive(Default)]
pub enum Strictness {
    /// The open interval `(0, 2)`, decided exactly.
    #[default]
    Open,
    /// The closed relaxation `[0, 2]`.
    Closed,
    /// `[eps, 2 - eps]` for a rational `0 <= eps < 1`.
    Epsilon(Rational),
}

impl Strictness {
    /// Closed-interval margin; `Open` uses 0 with strict comparisons.
    pub fn margin(&self) -> Rational {
        match self {
            Strictness::Epsilon(e) => e.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn is_open(&self) -> bool {
        matches!(self, Strictness::Open)
    }

    /// Whether no angle may be 0 (so pairs at a vertex must interleave).
    pub(crate) fn forbids_zero(&self) -> bool {
        match self {
            Strictness::Open => true,
            Strictness::Closed => false,
            Strictness::Epsilon(e) => e.is_positive(),
        }
    }
}

/// Angle at vertex `vertex` inside face `face`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleVar {
    pub vertex: usize,
    pub face: usize,
}

/// Index `(v, i, j)` shared by `y` and `s`; `run` lists the `x` indices
/// summed by `y`, clockwise from anchored neighbor `i` to `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVar {
    pub vertex: usize,
    pub i: usize,
    pub j: usize,
    pub run: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    VertexSum,
    FaceSum,
    OuterFaceSum,
    YLink,
    SLeY,
    SLeTwoMinusY,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Eq,
    Le,
}

/// A row over the full variable vector `[x | y | s]`.
#[derive(Clone, Debug)]
pub struct ModelRow {
    pub kind: RowKind,
    pub coeffs: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

/// Problem size in the counting convention of the published experiments:
/// `y` is substituted out, so variables are `|x| + |s|`; constraints count
/// vertex and face equations, the two `s` rows per pair, two domain bounds
/// per `x`, and one per outer-face corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSize {
    pub variables: usize,
    pub constraints: usize,
    pub x_vars: usize,
    pub y_vars: usize,
    pub s_vars: usize,
    pub rows: usize,
}

#[derive(Clone, Debug)]
pub struct AngleModel {
    pub x: Vec<AngleVar>,
    pub pairs: Vec<PairVar>,
    pub rows: Vec<ModelRow>,
    pub strictness: Strictness,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_faces: usize,
    pub outer_face: usize,
    pub outer_degree: usize,
    /// Set when the embedding is not 3-connected, so `f(v, t)` may be ambiguous.
    pub not_three_connected: bool,
}

impl AngleModel {
    pub fn y_index(&self, p: usize) -> usize {
        self.x.len() + p
    }

    pub fn s_index(&self, p: usize) -> usize {
        self.x.len() + self.pairs.len() + p
    }

    pub fn num_columns(&self) -> usize {
        self.x.len() + 2 * self.pairs.len()
    }

    pub fn size(&self) -> ModelSize {
        let (x, s) = (self.x.len(), self.pairs.len());
        ModelSize {
            variables: x + s,
            constraints: self.num_vertices + self.num_faces + 2 * s + 2 * x + self.outer_degree,
            x_vars: x,
            y_vars: s,
            s_vars: s,
            rows: self.rows.len(),
        }
    }

    /// Vertex and face equations only, as `(x indices, rhs)`.
    pub fn angle_rows(&self) -> impl Iterator<Item = (Vec<usize>, i64)> + '_ {
        self.rows
            .iter()
            .filter(|r| {
                matches!(
                    r.kind,
                    RowKind::VertexSum | RowKind::FaceSum | RowKind::OuterFaceSum
                )
            })
            .map(|r| (r.coeffs.iter().map(|&(j, _)| j).collect(), r.rhs))
    }

    /// Bounds of `x` (closed form; `Open` reports `[0, 2]`).
    pub fn x_bounds(&self) -> (Rational, Rational) {
        let e = self.strictness.margin();
        let hi = &Rational::from(2) - &e;
        (e, hi)
    }

    /// Bounds implied for `y` of pair `p`.
    pub fn y_bounds(&self, p: usize) -> (Rational, Rational) {
        let e = self.strictness.margin();
        let pair = &self.pairs[p];
        let k = pair.run.len() as i64;
        let rest = self.pairs_degree(pair.vertex) as i64 - k;
        (
            &e * &Rational::from(k),
            &Rational::from(2) - &(&e * &Rational::from(rest)),
        )
    }

    fn pairs_degree(&self, v: usize) -> usize {
        self.x.iter().filter(|a| a.vertex == v).count()
    }

    /// Checks an assignment of all columns against every row and domain, exactly.
    pub fn check_assignment(&self, values: &[Rational]) -> Result<()> {
        if values.len() != self.num_columns() {
            return Err(Error::Integrity(format!(
                "assignment has {} values, model has {} columns",
                values.len(),
                self.num_columns()
            )));
        }
        for (k, row) in self.rows.iter().enumerate() {
            let lhs: Rational = row
                .coeffs
                .iter()
                .map(|&(j, c)| &values[j] * &Rational::from(c))
                .sum();
            let rhs = Rational::from(row.rhs);
            let ok = match row.sense {
                Sense::Eq => lhs == rhs,
                Sense::Le => lhs <= rhs,
            };
            if !ok {
                return Err(Error::Integrity(format!(
                    "row {k} ({:?}) violated",
                    row.kind
                )));
            }
        }
        let (lo, hi) = self.x_bounds();
        for (i, v) in values[..self.x.len()].iter().enumerate() {
            let ok = if self.strictness.is_open() {
                *v > lo && *v < hi
            } else {
                *v >= lo && *v <= hi
            };
            if !ok {
                return Err(Error::Integrity(format!("x[{i}] = {v} outside its domain")));
            }
        }
        for v in &values[self.x.len() + self.pairs.len()..] {
            if !(v.is_zero() || *v == Rational::one()) {
                return Err(Error::Integrity(format!("s value {v} is not binary")));
            }
        }
        Ok(())
    }

    fn col_name(&self, j: usize) -> String {
        let nx = self.x.len();
        let np = self.pairs.len();
        if j < nx {
            format!("x_{}_{}", self.x[j].vertex, self.x[j].face)
        } else if j < nx + np {
            let p = &self.pairs[j - nx];
            format!("y_{}_{}_{}", p.vertex, p.i + 1, p.j + 1)
        } else {
            let p = &self.pairs[j - nx - np];
            format!("s_{}_{}_{}", p.vertex, p.i + 1, p.j + 1)
        }
    }

    /// CPLEX LP format text. The open domain is written as its closure.
    pub fn to_lp_format(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "\\ angle assignment model, strictness {:?}",
            self.strictness
        );
        if self.strictness.is_open() {
            let _ = writeln!(out, "\\ x is open in (0, 2); bounds below are its closure");
        }
        out.push_str("Maximize\n obj:");
        for p in 0..self.pairs.len() {
            let _ = write!(out, " + {}", self.col_name(self.s_index(p)));
        }
        out.push_str("\nSubject To\n");
        for (k, row) in self.rows.iter().enumerate() {
            let _ = write!(out, " r{k}:");
            for &(j, c) in &row.coeffs {
                let sign = if c < 0 { "-" } else { "+" };
                let mag = c.abs();
                if mag == 1 {
                    let _ = write!(out, " {sign} {}", self.col_name(j));
                } else {
                    let _ = write!(out, " {sign} {mag} {}", self.col_name(j));
                }
            }
            let op = match row.sense {
                Sense::Eq => "=",
                Sense::Le => "<=",
            };
            let _ = writeln!(out, " {op} {}", row.rhs);
        }
        out.push_str("Bounds\n");
        let (lo, hi) = self.x_bounds();
        for j in 0..self.x.len() {
            let _ = writeln!(
                out,
                " {} <= {} <= {}",
                lo.to_f64(),
                self.col_name(j),
                hi.to_f64()
            );
        }
        for p in 0..self.pairs.len() {
            let (a, b) = self.y_bounds(p);
            let _ = writeln!(
                out,
                " {} <= {} <= {}",
                a.to_f64(),
                self.col_name(self.y_index(p)),
                b.to_f64()
            );
        }
        out.push_str("Binaries\n");
        for p in 0..self.pairs.len() {
            let _ = writeln!(out, " {}", self.col_name(self.s_index(p)));
        }
        out.push_str("End\n");
        out
    }
}

/// Builds the angle-assignment model of an embedded graph.
pub fn build_model(emb: &EmbeddedGraph, strictness: Strictness) -> Result<AngleModel> {
    if let Strictness::Epsilon(e) = &strictness {
        if e.is_negative() || *e >= Rational::one() {
            return Err(Error::validation(format!("epsilon {e} outside [0, 1)")));
        }
    }
    let g = emb.graph();
    let faces = emb.faces();
    let outer = emb.outer();

    let mut x = Vec::new();
    let mut x_of_dart = std::collections::HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for &(u, v) in &f.darts {
            x_of_dart.insert((u, v), x.len());
            x.push(AngleVar {
                vertex: v,
                face: fi,
            });
        }
    }

    let mut pairs = Vec::new();
    for v in 0..g.n() {
        let lv = emb.anchored_rotation(v);
        let xs: Vec<usize> = lv.iter().map(|&u| x_of_dart[&(u, v)]).collect();
        for i in 0..lv.len() {
            for j in i + 1..lv.len() {
                pairs.push(PairVar {
                    vertex: v,
                    i,
                    j,
                    run: xs[i..j].to_vec(),
                });
            }
        }
    }

    let mut rows = Vec::new();
    let mut vertex_rhs = 0i64;
    for v in 0..g.n() {
        let coeffs: Vec<_> = (0..x.len())
            .filter(|&k| x[k].vertex == v)
            .map(|k| (k, 1))
            .collect();
        vertex_rhs += 2;
        rows.push(ModelRow {
            kind: RowKind::VertexSum,
            coeffs,
            sense: Sense::Eq,
            rhs: 2,
        });
    }
    let mut face_rhs = 0i64;
    for (fi, f) in faces.iter().enumerate() {
        let coeffs: Vec<_> = (0..x.len())
            .filter(|&k| x[k].face == fi)
            .map(|k| (k, 1))
            .collect();
        let (kind, rhs) = if fi == outer {
            (RowKind::OuterFaceSum, f.degree() as i64 + 2)
        } else {
            (RowKind::FaceSum, f.degree() as i64 - 2)
        };
        face_rhs += rhs;
        rows.push(ModelRow {
            kind,
            coeffs,
            sense: Sense::Eq,
            rhs,
        });
    }
    if vertex_rhs != face_rhs {
        return Err(Error::Integrity(format!(
            "vertex equations sum to {vertex_rhs} but face equations to {face_rhs}"
        )));
    }
    let nx = x.len();
    let np = pairs.len();
    for (p, pair) in pairs.iter().enumerate() {
        let y = nx + p;
        let s = nx + np + p;
        let mut coeffs = vec![(y, 1)];
        coeffs.extend(pair.run.iter().map(|&k| (k, -1)));
        rows.push(ModelRow {
            kind: RowKind::YLink,
            coeffs,
            sense: Sense::Eq,
            rhs: 0,
        });
        rows.push(ModelRow {
            kind: RowKind::SLeY,
            coeffs: vec![(s, 1), (y, -1)],
            sense: Sense::Le,
            rhs: 0,
        });
        rows.push(ModelRow {
            kind: RowKind::SLeTwoMinusY,
            coeffs: vec![(s, 1), (y, 1)],
            sense: Sense::Le,
            rhs: 2,
        });
    }

    Ok(AngleModel {
        x,
        pairs,
        rows,
        strictness,
        num_vertices: g.n(),
        num_edges: g.m(),
        num_faces: faces.len(),
        outer_face: outer,
        outer_degree: faces[outer].degree(),
        not_three_connected: !g.is_three_connected(),
    })
}
