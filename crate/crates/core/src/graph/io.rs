use serde::{Deserialize, Serialize};

use super::{EmbeddedGraph, Graph, RotationSystem};
use crate::error::{Error, Result};

/// Wire format for graphs, optionally carrying an embedding.
///
/// ```json
/// {"n": 4, "edges": [[0,1],[0,2]], "rotation": [[1,2],[0],[0],[]], "outer_face": 0}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<usize>,
}

impl GraphJson {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().copied())
    }

    pub fn is_embedded(&self) -> bool {
        self.rotation.is_some()
    }

    /// Requires a rotation; the outer face defaults to face 0.
    pub fn to_embedded(&self) -> Result<EmbeddedGraph> {
        let rotation = self
            .rotation
            .clone()
            .ok_or_else(|| Error::validation("graph has no rotation system"))?;
        EmbeddedGraph::new(
            self.to_graph()?,
            RotationSystem::new(rotation),
            self.outer_face.unwrap_or(0),
        )
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().to_vec(),
            rotation: None,
            outer_face: None,
        }
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson::from(&g)
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        j.to_graph()
    }
}

impl From<&EmbeddedGraph> for GraphJson {
    fn from(e: &EmbeddedGraph) -> Self {
        GraphJson {
            rotation: Some(e.rotation().lists().to_vec()),
            outer_face: Some(e.outer()),
            ..GraphJson::from(e.graph())
        }
    }
}
