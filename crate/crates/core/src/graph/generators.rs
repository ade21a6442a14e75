use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{EmbeddedGraph, EmbeddingMeta, Graph, RotationSystem};
use crate::error::{Error, Result};

/// The five Platonic solids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Platonic {
    Tetrahedron,
    Octahedron,
    Cube,
    Dodecahedron,
    Icosahedron,
}

impl Platonic {
    pub const ALL: [Platonic; 5] = [
        Platonic::Tetrahedron,
        Platonic::Octahedron,
        Platonic::Cube,
        Platonic::Dodecahedron,
        Platonic::Icosahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Platonic::Tetrahedron => "tetrahedron",
            Platonic::Octahedron => "octahedron",
            Platonic::Cube => "cube",
            Platonic::Dodecahedron => "dodecahedron",
            Platonic::Icosahedron => "icosahedron",
        }
    }

    /// Clockwise rotation (seen from outside the solid), each list starting at
    /// its lowest neighbor.
    fn rotation(self) -> &'static [&'static [usize]] {
        match self {
            Platonic::Tetrahedron => &[&[1, 3, 2], &[0, 2, 3], &[0, 3, 1], &[0, 1, 2]],
            Platonic::Cube => &[
                &[1, 4, 2],
                &[0, 3, 5],
                &[0, 6, 3],
                &[1, 2, 7],
                &[0, 5, 6],
                &[1, 7, 4],
                &[2, 4, 7],
                &[3, 6, 5],
            ],
            Platonic::Octahedron => &[
                &[2, 5, 3, 4],
                &[2, 4, 3, 5],
                &[0, 4, 1, 5],
                &[0, 5, 1, 4],
                &[0, 3, 1, 2],
                &[0, 2, 1, 3],
            ],
            Platonic::Dodecahedron => &[
                &[8, 10, 9],
                &[9, 16, 11],
                &[10, 14, 12],
                &[12, 17, 16],
                &[8, 15, 13],
                &[11, 19, 15],
                &[13, 18, 14],
                &[17, 18, 19],
                &[0, 4, 14],
                &[0, 1, 15],
                &[0, 2, 16],
                &[1, 17, 5],
                &[2, 18, 3],
                &[4, 19, 6],
                &[2, 8, 6],
                &[4, 9, 5],
                &[1, 10, 3],
                &[3, 7, 11],
                &[6, 7, 12],
                &[5, 7, 13],
            ],
            Platonic::Icosahedron => &[
                &[1, 7, 5, 6, 2],
                &[0, 2, 8, 3, 7],
                &[0, 6, 4, 8, 1],
                &[1, 8, 9, 11, 7],
                &[2, 6, 10, 9, 8],
                &[0, 7, 11, 10, 6],
                &[0, 5, 10, 4, 2],
                &[0, 1, 3, 11, 5],
                &[1, 2, 4, 9, 3],
                &[3, 8, 4, 10, 11],
                &[4, 6, 5, 11, 9],
                &[3, 9, 10, 5, 7],
            ],
        }
    }
}

impl fmt::Display for Platonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Platonic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Platonic::ALL
            .into_iter()
            .find(|p| p.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Unknown {
                kind: "platonic solid",
                name: s.to_string(),
            })
    }
}

fn from_rotation(lists: Vec<Vec<usize>>) -> Result<Graph> {
    let n = lists.len();
    let edges = lists
        .iter()
        .enumerate()
        .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::new(n, edges)
}

/// Embedded Platonic solid. The outer face is face 0, the first face traced.
pub fn platonic(solid: Platonic) -> EmbeddedGraph {
    let lists: Vec<Vec<usize>> = solid.rotation().iter().map(|l| l.to_vec()).collect();
    let graph = from_rotation(lists.clone()).expect("static table");
    EmbeddedGraph::new(graph, RotationSystem::new(lists), 0)
        .expect("static table")
        .with_meta(EmbeddingMeta {
            name: Some(solid.name().to_string()),
            ..Default::default()
        })
}

/// Largest edge count a generator will materialize.
pub const GENERATOR_MAX_EDGES: usize = 1 << 20;

fn edge_cap(m: usize) -> Result<()> {
    if m > GENERATOR_MAX_EDGES {
        return Err(Error::SizeCap {
            what: "generated edge count",
            cap: GENERATOR_MAX_EDGES,
            actual: m,
            hint: "pass a smaller family parameter",
        });
    }
    Ok(())
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::validation("complete graph needs n >= 1"));
    }
    edge_cap(n.saturating_mul(n - 1) / 2)?;
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{p,q}` with parts `0..p` and `p..p+q`.
pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph> {
    if p == 0 || q == 0 {
        return Err(Error::validation(
            "complete bipartite graph needs p, q >= 1",
        ));
    }
    edge_cap(p.saturating_mul(q))?;
    Graph::new(p + q, (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v))))
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::validation("path needs n >= 1"));
    }
    edge_cap(n - 1)?;
    Graph::new(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::validation("cycle needs n >= 3"));
    }
    edge_cap(n)?;
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// Planar coordinates of the nested-triangle drawing.
///
/// Triangle `i` (0 is outermost) holds vertices `3i, 3i+1, 3i+2` at radius
/// `0.4^i`, rotated by `i * 60` degrees, counterclockwise within the triangle.
pub fn nested_triangle_coords(k: usize) -> Vec<[f64; 2]> {
    let mut pts = Vec::with_capacity(3 * k);
    for i in 0..k {
        let r = 0.4f64.powi(i as i32);
        for j in 0..3 {
            let a = PI / 2.0 + (i as f64) * PI / 3.0 + (j as f64) * 2.0 * PI / 3.0;
            pts.push([r * a.cos(), r * a.sin()]);
        }
    }
    pts
}

/// The nested-triangles graph `G_k`: `k` concentric triangles, where inner
/// vertex `3(i+1)+j` is joined to outer vertices `3i+j` and `3i+(j+1)%3`.
/// The outer face is bounded by triangle `{0, 1, 2}`.
pub fn nested_triangulation(k: usize) -> Result<EmbeddedGraph> {
    if k < 2 {
        return Err(Error::validation("nested triangulation needs k >= 2"));
    }
    edge_cap(k.saturating_mul(9))?;
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..3 {
            edges.push((3 * i + j, 3 * i + (j + 1) % 3));
            if i + 1 < k {
                edges.push((3 * (i + 1) + j, 3 * i + j));
                edges.push((3 * (i + 1) + j, 3 * i + (j + 1) % 3));
            }
        }
    }
    let graph = Graph::new(3 * k, edges)?;
    let pts = nested_triangle_coords(k);
    let lists = (0..graph.n())
        .map(|v| {
            let mut nb = graph.neighbors(v).to_vec();
            let ang = |w: usize| (pts[w][1] - pts[v][1]).atan2(pts[w][0] - pts[v][0]);
            // clockwise = decreasing angle
            nb.sort_by(|&a, &b| ang(b).total_cmp(&ang(a)));
            let s = nb.iter().enumerate().min_by_key(|&(_, &w)| w).unwrap().0;
            nb.rotate_left(s);
            nb
        })
        .collect();
    let rotation = RotationSystem::new(lists);
    let tmp = EmbeddedGraph::new(graph.clone(), rotation.clone(), 0)?;
    // The outer triangle is counterclockwise, so the unbounded face walks it clockwise.
    let outer = tmp.face_of_dart(0, 2).expect("outer triangle edge");
    Ok(
        EmbeddedGraph::new(graph, rotation, outer)?.with_meta(EmbeddingMeta {
            name: Some(format!("nested-tri:{k}")),
            nested_triangles: (0..k).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect(),
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn platonic_counts() {
        let expect = [
            (4, 6, 4),
            (6, 12, 8),
            (8, 12, 6),
            (20, 30, 12),
            (12, 30, 20),
        ];
        for (p, (n, m, f)) in Platonic::ALL.into_iter().zip(expect) {
            let e = platonic(p);
            assert_eq!(
                (e.graph().n(), e.graph().m(), e.faces().len()),
                (n, m, f),
                "{p}"
            );
            assert!(e.graph().is_three_connected());
        }
    }

    #[test]
    fn platonic_faces_regular() {
        for (p, d) in Platonic::ALL.into_iter().zip([3, 3, 4, 5, 3]) {
            assert!(platonic(p).faces().iter().all(|f| f.degree() == d), "{p}");
        }
    }

    #[test]
    fn nested_counts() {
        for k in 2..=6 {
            let g = nested_triangulation(k).unwrap();
            assert_eq!(g.graph().n(), 3 * k);
            assert_eq!(g.graph().m(), 9 * k - 6);
            assert_eq!(g.faces().len(), 6 * k - 4);
            let outer = &g.faces()[g.outer()];
            let mut vs: Vec<_> = outer.corners().collect();
            vs.sort();
            assert_eq!(vs, vec![0, 1, 2]);
            assert!(g.graph().is_three_connected());
        }
    }

    #[test]
    fn complete_families() {
        assert_eq!(complete(5).unwrap().m(), 10);
        assert_eq!(complete_bipartite(3, 4).unwrap().m(), 12);
        assert!(complete(0).is_err());
        assert!("Cube".parse::<Platonic>().is_ok());
        assert!("prism".parse::<Platonic>().is_err());
    }
}
