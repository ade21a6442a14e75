use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    complete, complete_bipartite, cycle, nested_triangulation, path, platonic, EmbeddedGraph,
    Graph, Platonic, RotationSystem,
};
use crate::error::{Error, Result};

/// A named graph family with parameters, written `name:params`:
/// `platonic:cube`, `complete:5`, `bipartite:3x7`, `nested-tri:4`,
/// `path:6`, `cycle:5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Family {
    Platonic(Platonic),
    Complete(usize),
    Bipartite(usize, usize),
    NestedTri(usize),
    Path(usize),
    Cycle(usize),
}

impl Family {
    pub fn graph(&self) -> Result<Graph> {
        match *self {
            Family::Platonic(p) => Ok(platonic(p).graph().clone()),
            Family::Complete(n) => complete(n),
            Family::Bipartite(p, q) => complete_bipartite(p, q),
            Family::NestedTri(k) => Ok(nested_triangulation(k)?.graph().clone()),
            Family::Path(n) => path(n),
            Family::Cycle(n) => cycle(n),
        }
    }

    /// The canonical embedding, for families that carry one.
    pub fn embedded(&self) -> Result<Option<EmbeddedGraph>> {
        Ok(match *self {
            Family::Platonic(p) => Some(platonic(p)),
            Family::NestedTri(k) => Some(nested_triangulation(k)?),
            Family::Cycle(n) | Family::Complete(n @ 3) => {
                let g = cycle(n)?;
                let lists = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
                Some(EmbeddedGraph::new(g, RotationSystem::new(lists), 0)?)
            }
            _ => None,
        })
    }

    /// Whether every member of the family is planar.
    pub fn planar(&self) -> bool {
        match *self {
            Family::Platonic(_) | Family::NestedTri(_) | Family::Path(_) | Family::Cycle(_) => true,
            Family::Complete(n) => n <= 4,
            Family::Bipartite(p, q) => p.min(q) <= 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Platonic(p) => write!(f, "platonic:{p}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Bipartite(p, q) => write!(f, "bipartite:{p}x{q}"),
            Family::NestedTri(k) => write!(f, "nested-tri:{k}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::validation(format!("malformed family descriptor `{s}`"));
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let fam = match name.trim().to_ascii_lowercase().as_str() {
            "platonic" => Family::Platonic(arg.trim().parse()?),
            "complete" => Family::Complete(num(arg)?),
            "bipartite" => {
                let (p, q) = arg.split_once(['x', 'X', ',']).ok_or_else(bad)?;
                Family::Bipartite(num(p)?, num(q)?)
            }
            "nested-tri" => Family::NestedTri(num(arg)?),
            "path" => Family::Path(num(arg)?),
            "cycle" => Family::Cycle(num(arg)?),
            other => {
                return Err(Error::Unknown {
                    kind: "graph family",
                    name: other.to_string(),
                })
            }
        };
        Ok(fam)
    }
}

impl TryFrom<String> for Family {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.to_string()
    }
}
