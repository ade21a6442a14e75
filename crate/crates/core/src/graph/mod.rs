//! Simple graphs, rotation systems, and face tracing.
//!
//! Vertices are dense indices `0..n`. An [`EmbeddedGraph`] couples a graph
//! with a clockwise rotation system and a designated outer face; faces are
//! traced once at construction and identified by their index in the traced
//! list.

mod family;
mod generators;
mod io;

pub use family::Family;
pub use generators::{
    complete, complete_bipartite, cycle, nested_triangle_coords, nested_triangulation, path,
    platonic, Platonic, GENERATOR_MAX_EDGES,
};
pub use io::GraphJson;

/// Largest vertex count accepted by [`Graph::new`].
pub const MAX_VERTICES: usize = 1 << 22;

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates, and out-of-range endpoints.
    /// Edges are stored normalized (`u < v`) and sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeCap {
                what: "vertex count",
                cap: MAX_VERTICES,
                actual: n,
                hint: "graphs this large are out of scope",
            });
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::validation(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::validation(format!("self-loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::validation(format!("duplicate edge ({u}, {v})")));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    /// Connected components of the subgraph induced by vertices not in `removed`.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components_avoiding(&vec![false; self.n]).len() == 1
    }

    /// Whether removing any set of fewer than three vertices leaves the graph connected.
    pub fn is_three_connected(&self) -> bool {
        if self.n < 4 || !self.is_connected() {
            return false;
        }
        let mut removed = vec![false; self.n];
        for a in 0..self.n {
            removed[a] = true;
            if self.components_avoiding(&removed).len() != 1 {
                return false;
            }
            for b in a + 1..self.n {
                removed[b] = true;
                let ok = self.components_avoiding(&removed).len() == 1;
                removed[b] = false;
                if !ok {
                    return false;
                }
            }
            removed[a] = false;
        }
        true
    }
}

/// Per-vertex cyclic neighbor order, clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationSystem(Vec<Vec<usize>>);

impl RotationSystem {
    pub fn new(lists: Vec<Vec<usize>>) -> Self {
        RotationSystem(lists)
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn around(&self, v: usize) -> &[usize] {
        &self.0[v]
    }

    /// Checks that every list is a permutation of the adjacency of its vertex.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        if self.0.len() != graph.n() {
            return Err(Error::validation(format!(
                "rotation system lists {} vertices, graph has {}",
                self.0.len(),
                graph.n()
            )));
        }
        for (v, list) in self.0.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted.as_slice() != graph.neighbors(v) {
                return Err(Error::validation(format!(
                    "rotation at vertex {v} is {list:?}, which is not a permutation of its neighbors {:?}",
                    graph.neighbors(v)
                )));
            }
        }
        Ok(())
    }

    /// Neighbor that follows `u` clockwise around `v`.
    fn successor(&self, v: usize, u: usize) -> usize {
        let list = &self.0[v];
        let pos = list
            .iter()
            .position(|&w| w == u)
            .expect("validated rotation");
        list[(pos + 1) % list.len()]
    }
}

/// A closed walk of directed edges bounding one face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub darts: Vec<(usize, usize)>,
}

impl Face {
    /// Number of edge slots on the walk.
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    /// Corner vertices in walk order (the head of every dart).
    pub fn corners(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|&(_, v)| v)
    }
}

/// Traces all faces of a rotation system.
///
/// The walk continues from dart `u -> v` with `v -> w`, where `w` follows `u`
/// clockwise around `v`. Walks start from the lexicographically smallest
/// unvisited dart, so face indices are reproducible.
pub fn trace_faces(graph: &Graph, rotation: &RotationSystem) -> Result<Vec<Face>> {
    rotation.validate(graph)?;
    let mut darts: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    darts.sort_unstable();
    let mut visited = std::collections::HashSet::with_capacity(darts.len());
    let mut faces = Vec::new();
    for &start in &darts {
        if visited.contains(&start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start;
        while visited.insert(cur) {
            walk.push(cur);
            let (u, v) = cur;
            cur = (v, rotation.successor(v, u));
        }
        if cur != start {
            return Err(Error::validation(format!(
                "face walk from {start:?} does not close"
            )));
        }
        faces.push(Face { darts: walk });
    }
    Ok(faces)
}

/// Extra labels attached to generated embeddings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingMeta {
    pub name: Option<String>,
    /// Nested triangles from outermost to innermost (nested triangulations only).
    pub nested_triangles: Vec<[usize; 3]>,
}

/// A connected planar graph with a fixed genus-0 embedding and outer face.
#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    graph: Graph,
    rotation: RotationSystem,
    faces: Vec<Face>,
    dart_face: std::collections::HashMap<(usize, usize), usize>,
    outer: usize,
    meta: EmbeddingMeta,
}

impl EmbeddedGraph {
    pub fn new(graph: Graph, rotation: RotationSystem, outer: usize) -> Result<Self> {
        if graph.m() == 0 {
            return Err(Error::validation("an embedding needs at least one edge"));
        }
        if !graph.is_connected() {
            return Err(Error::validation("embedded graphs must be connected"));
        }
        let faces = trace_faces(&graph, &rotation)?;
        let euler = graph.n() as i64 - graph.m() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(Error::validation(format!(
                "rotation system has Euler characteristic {euler}, not a planar embedding"
            )));
        }
        if outer >= faces.len() {
            return Err(Error::validation(format!(
                "outer face {outer} out of range (0..{})",
                faces.len()
            )));
        }
        let mut dart_face = std::collections::HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            for &d in &f.darts {
                dart_face.insert(d, i);
            }
        }
        Ok(EmbeddedGraph {
            graph,
            rotation,
            faces,
            dart_face,
            outer,
            meta: EmbeddingMeta::default(),
        })
    }

    pub fn with_meta(mut self, meta: EmbeddingMeta) -> Self {
        self.meta = meta;
        self
    }

    /// Same embedding with a different outer face.
    pub fn with_outer(&self, outer: usize) -> Result<Self> {
        if outer >= self.faces.len() {
            return Err(Error::validation(format!(
                "outer face {outer} out of range"
            )));
        }
        let mut e = self.clone();
        e.outer = outer;
        Ok(e)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    pub fn meta(&self) -> &EmbeddingMeta {
        &self.meta
    }

    /// Face whose walk contains dart `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }

    /// Clockwise neighbor list of `v` rotated to start at its lowest neighbor.
    pub fn anchored_rotation(&self, v: usize) -> Vec<usize> {
        let list = self.rotation.around(v);
        let start = list
            .iter()
            .enumerate()
            .min_by_key(|&(_, &w)| w)
            .map_or(0, |(i, _)| i);
        list[start..]
            .iter()
            .chain(&list[..start])
            .copied()
            .collect()
    }

    /// Faces at the corners of `v`, in anchored clockwise order: entry `t` is
    /// the face between the `t`-th and `(t+1)`-th anchored neighbors.
    pub fn corner_faces(&self, v: usize) -> Vec<usize> {
        self.anchored_rotation(v)
            .iter()
            .map(|&u| self.dart_face[&(u, v)])
            .collect()
    }
}
