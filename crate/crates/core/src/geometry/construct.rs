//! Explicit drawings: each builder returns a drawing that `verify_drawing`
//! accepts at the default tolerance.

use std::f64::consts::PI;

use super::drawing::{sweep_between, Arc, Circle3, Drawing, Sphere, Support};
use super::kernel::*;
use crate::error::{Error, Result};
use crate::graph::{complete_bipartite, nested_triangle_coords, nested_triangulation, Graph};

fn polar(angle: f64, radius: f64) -> [f64; 2] {
    [radius * angle.cos(), radius * angle.sin()]
}

/// Straight-line drawing with one line support per edge.
pub fn segment_drawing(graph: &Graph, coords: &[[f64; 2]]) -> Result<Drawing> {
    if coords.len() != graph.n() {
        return Err(Error::validation(format!(
            "{} coordinates for {} vertices",
            coords.len(),
            graph.n()
        )));
    }
    let mut d = Drawing {
        dim: 2,
        graph: graph.clone(),
        vertices: coords.iter().map(|c| c.to_vec()).collect(),
        supports: Vec::new(),
        arcs: Vec::new(),
    };
    for &(u, v) in graph.edges() {
        let (a, b) = (coords[u], coords[v]);
        let len = (b[0] - a[0]).hypot(b[1] - a[1]);
        if len == 0.0 {
            return Err(Error::validation(format!("vertices {u} and {v} coincide")));
        }
        let support = Support::Line {
            point: a,
            dir: [(b[0] - a[0]) / len, (b[1] - a[1]) / len],
        };
        d.arcs.push(Arc {
            edge: [u, v],
            support: d.supports.len(),
            sweep: sweep_between(&support.carrier().unwrap(), lift(a), lift(b), None),
        });
        d.supports.push(support);
    }
    Ok(d)
}

/// Adds a chain of edges along one support: `path` lists vertices in the
/// order they are met along the sweep from `path[0]`, and each consecutive
/// pair becomes an arc; the first three vertices fix the direction.
fn add_chain(d: &mut Drawing, support: usize, path: &[usize], closed: bool) {
    let carrier = d.supports[support].carrier().expect("curve support");
    let n = path.len();
    let steps = if closed { n } else { n - 1 };
    // direction from the order of the first three points
    let t0 = carrier.param(d.vertex(path[0]));
    let off = |v: usize| (carrier.param(d.vertex(v)) - t0).rem_euclid(2.0 * PI);
    let ccw = n < 3 || off(path[1]) < off(path[2]);
    for i in 0..steps {
        let (u, v) = (path[i], path[(i + 1) % n]);
        let (tu, tv) = (carrier.param(d.vertex(u)), carrier.param(d.vertex(v)));
        let gap = (tv - tu).rem_euclid(2.0 * PI);
        let extent = if ccw { gap } else { gap - 2.0 * PI };
        d.arcs.push(Arc {
            edge: [u, v],
            support,
            sweep: super::Sweep::Angular { start: tu, extent },
        });
    }
}

/// Vertices met along the sweep from `from` to `to` on `carrier`, including
/// both ends, taking the larger of the two arcs.
fn larger_arc_order(
    carrier: &Carrier,
    pts: &[P3],
    on: &[usize],
    from: usize,
    to: usize,
) -> Vec<usize> {
    let t = |v: usize| carrier.param(pts[v]);
    let ccw = (t(to) - t(from)).rem_euclid(2.0 * PI);
    let sign = if ccw > PI { 1.0 } else { -1.0 };
    let pos = |v: usize| ((t(v) - t(from)) * sign).rem_euclid(2.0 * PI);
    let mut inner: Vec<usize> = on
        .iter()
        .copied()
        .filter(|&v| v != from && v != to)
        .collect();
    inner.sort_by(|&a, &b| pos(a).total_cmp(&pos(b)));
    let mut out = vec![from];
    out.extend(inner);
    out.push(to);
    out
}

/// The icosahedron on seven circles: the unit circle `K`, three circles `L_i`
/// and three circles `M_i`.
///
/// Vertices (polar angle, radius), `i = 0, 1, 2`, labeled `A_i = i`,
/// `B_i = 3 + i`, `C_i = 6 + i`, `D_i = 9 + i`:
/// `A_i = (pi/3 + 2 pi i/3, (1+sqrt3)/2)`, `B_i = (pi/3 + 2 pi i/3, 1)`,
/// `C_i = (pi/6 + 2 pi i/3, 1)`, `D_i = (-pi/6 + 2 pi i/3, (sqrt3-1)/2)`.
/// These are the triple points of the seven circles. `L_i` carries the larger
/// arc from `A_i` to `B_i`, `M_i` the larger arc from `C_{i+1}` to `D_{i+2}`,
/// and `K` the 6-cycle through all `B_i` and `C_i`.
pub fn icosahedron_seven_circles() -> Drawing {
    let s3 = 3f64.sqrt();
    let third = 2.0 * PI / 3.0;
    let mut coords = [[0.0; 2]; 12];
    for i in 0..3 {
        let a = i as f64 * third;
        coords[i] = polar(PI / 3.0 + a, (1.0 + s3) / 2.0);
        coords[3 + i] = polar(PI / 3.0 + a, 1.0);
        coords[6 + i] = polar(PI / 6.0 + a, 1.0);
        coords[9 + i] = polar(-PI / 6.0 + a, (s3 - 1.0) / 2.0);
    }
    let mut supports = vec![Support::Circle {
        center: [0.0, 0.0],
        radius: 1.0,
    }];
    for i in 0..3 {
        supports.push(Support::Circle {
            center: polar(i as f64 * third, (3.0 + s3) / 2.0),
            radius: (2.5 + s3).sqrt(),
        });
    }
    for i in 0..3 {
        supports.push(Support::Circle {
            center: polar(PI / 2.0 + i as f64 * third, (3.0 - s3) / 2.0),
            radius: (2.5 - s3).sqrt(),
        });
    }
    let pts: Vec<P3> = coords.iter().map(|&c| lift(c)).collect();
    let (a, b, c, dd) = (
        |i: usize| i % 3,
        |i: usize| 3 + i % 3,
        |i: usize| 6 + i % 3,
        |i: usize| 9 + i % 3,
    );
    let mut chains: Vec<(usize, Vec<usize>, bool)> = Vec::new();
    for i in 0..3 {
        let l = supports[1 + i].carrier().unwrap();
        let on = [a(i), a(i + 2), b(i), b(i + 2), dd(i)];
        chains.push((1 + i, larger_arc_order(&l, &pts, &on, a(i), b(i)), false));
        let m = supports[4 + i].carrier().unwrap();
        let on = [a(i), c(i), c(i + 1), dd(i), dd(i + 2)];
        chains.push((
            4 + i,
            larger_arc_order(&m, &pts, &on, c(i + 1), dd(i + 2)),
            false,
        ));
    }
    let mut ring: Vec<usize> = (0..3).flat_map(|i| [b(i), c(i)]).collect();
    ring.sort_by(|&u, &v| {
        let ang = |w: usize| coords[w][1].atan2(coords[w][0]).rem_euclid(2.0 * PI);
        ang(u).total_cmp(&ang(v))
    });
    chains.push((0, ring, true));

    let mut edges = Vec::new();
    for (_, path, closed) in &chains {
        let k = path.len();
        for i in 0..if *closed { k } else { k - 1 } {
            edges.push((path[i], path[(i + 1) % k]));
        }
    }
    let graph = Graph::new(12, edges).expect("icosahedron edges are simple");
    let mut d = Drawing {
        dim: 2,
        graph,
        vertices: coords.iter().map(|c| c.to_vec()).collect(),
        supports,
        arcs: Vec::new(),
    };
    for (s, path, closed) in &chains {
        add_chain(&mut d, *s, path, *closed);
    }
    d
}

/// The cube on four circles. Outer square `a_i` (vertices 0..3) at angle
/// `90 i` degrees and radius 1, inner square `b_i` (4..7) at angle `90 i + 90`
/// and radius 1/2; circle `i` carries the path `a_i a_{i+1} b_{i+1} b_{i+2}`.
pub fn cube_four_arcs() -> Drawing {
    let mut coords = Vec::with_capacity(8);
    for i in 0..4 {
        coords.push(polar(i as f64 * PI / 2.0, 1.0));
    }
    for i in 0..4 {
        coords.push(polar((i + 1) as f64 * PI / 2.0, 0.5));
    }
    let paths: Vec<[usize; 4]> = (0..4)
        .map(|i| [i, (i + 1) % 4, 4 + (i + 1) % 4, 4 + (i + 2) % 4])
        .collect();
    let mut supports = Vec::new();
    let mut edges = Vec::new();
    for p in &paths {
        let g = circle_through(coords[p[0]], coords[p[1]], coords[p[3]]).expect("distinct points");
        supports.push(Support::from(g));
        edges.extend(p.windows(2).map(|w| (w[0], w[1])));
    }
    let mut d = Drawing {
        dim: 2,
        graph: Graph::new(8, edges).expect("cube edges are simple"),
        vertices: coords.iter().map(|c| c.to_vec()).collect(),
        supports,
        arcs: Vec::new(),
    };
    for (i, p) in paths.iter().enumerate() {
        add_chain(&mut d, i, p, false);
    }
    d
}

/// Straight-line drawing of the nested triangulation `G_k`.
pub fn nested_triangles_drawing(k: usize) -> Result<Drawing> {
    let e = nested_triangulation(k)?;
    segment_drawing(e.graph(), &nested_triangle_coords(k))
}

/// `K_{p,q}` in space on `ceil(p/2) ceil(q/2)` circles.
///
/// All spheres share the unit circle `C` in the plane `z = 0`. Sphere `j` has
/// center `(0, 0, j/2)`; its poles are the `P`-vertices `2j` (top) and `2j+1`
/// (bottom). The `Q`-vertices `p + 2k` and `p + 2k + 1` are antipodal points of
/// `C` at angle `k pi / ceil(q/2)`. Circle `(j, k)` is sphere `j` cut by the
/// vertical plane through that antipodal pair and carries the four edges
/// between the two pairs. With odd `p` or `q` the last vertex is dropped.
pub fn kpq_circle_drawing(p: usize, q: usize) -> Result<Drawing> {
    if p == 0 || q == 0 {
        return Err(Error::validation("both sides need at least one vertex"));
    }
    let (pp, qq) = (p.div_ceil(2), q.div_ceil(2));
    let graph = complete_bipartite(p, q)?;
    let mut vertices = vec![Vec::new(); p + q];
    let mut supports = Vec::new();
    for j in 0..pp {
        let c = j as f64 * 0.5;
        let r = (1.0 + c * c).sqrt();
        for (s, v) in [(1.0, 2 * j), (-1.0, 2 * j + 1)] {
            if v < p {
                vertices[v] = vec![0.0, 0.0, c + s * r];
            }
        }
        supports.push(Support::Sphere(Sphere {
            center: [0.0, 0.0, c],
            radius: r,
        }));
    }
    for k in 0..qq {
        let phi = k as f64 * PI / qq as f64;
        let (x, y) = (phi.cos(), phi.sin());
        for (s, v) in [(1.0, p + 2 * k), (-1.0, p + 2 * k + 1)] {
            if v < p + q {
                vertices[v] = vec![s * x, s * y, 0.0];
            }
        }
    }
    let mut d = Drawing {
        dim: 3,
        graph,
        vertices,
        supports,
        arcs: Vec::new(),
    };
    for j in 0..pp {
        let Support::Sphere(sp) = d.supports[j] else {
            unreachable!()
        };
        for k in 0..qq {
            let phi = k as f64 * PI / qq as f64;
            let circle = Circle3 {
                center: sp.center,
                radius: sp.radius,
                normal: [-phi.sin(), phi.cos(), 0.0],
                sphere: Some(j),
            };
            let carrier = Carrier::circle(circle.center, circle.radius, circle.normal);
            let idx = d.supports.len();
            d.supports.push(Support::Circle3(circle));
            for u in [2 * j, 2 * j + 1].into_iter().filter(|&u| u < p) {
                for w in [p + 2 * k, p + 2 * k + 1]
                    .into_iter()
                    .filter(|&w| w < p + q)
                {
                    d.arcs.push(Arc {
                        edge: [u, w],
                        support: idx,
                        sweep: sweep_between(&carrier, d.vertex(u), d.vertex(w), None),
                    });
                }
            }
        }
    }
    Ok(d)
}

fn interleave(e: (usize, usize), f: (usize, usize)) -> bool {
    let (a, b) = (e.0.min(e.1), e.0.max(e.1));
    let (c, d) = (f.0.min(f.1), f.0.max(f.1));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// A book embedding of `K_n` with spine order `0..n` on `max(1, ceil(n/2))`
/// pages (one page for `n <= 3`). For even `n`, page `i` holds the edges
/// whose endpoint sum is `2i` or `2i+1` modulo `n`, a zigzag Hamiltonian path.
pub fn complete_book(n: usize) -> Vec<Vec<(usize, usize)>> {
    let all = || (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)));
    if n <= 3 {
        return vec![all().collect()];
    }
    if n % 2 == 1 {
        return complete_book(n + 1)
            .into_iter()
            .map(|page| page.into_iter().filter(|&(a, b)| a < n && b < n).collect())
            .collect();
    }
    let mut pages = vec![Vec::new(); n / 2];
    for (a, b) in all() {
        pages[(a + b) % n / 2].push((a, b));
    }
    pages
}

/// Checks that `pages` partition the edges of `K_n` with no two edges of one
/// page interleaving along the spine.
pub fn validate_book(n: usize, pages: &[Vec<(usize, usize)>]) -> Result<()> {
    let mut seen = vec![vec![false; n]; n];
    for (i, page) in pages.iter().enumerate() {
        for (x, &e) in page.iter().enumerate() {
            let (a, b) = (e.0.min(e.1), e.0.max(e.1));
            if b >= n || a == b {
                return Err(Error::validation(format!("page {i} has a bad edge {e:?}")));
            }
            if seen[a][b] {
                return Err(Error::validation(format!("edge ({a}, {b}) appears twice")));
            }
            seen[a][b] = true;
            if let Some(&f) = page[..x].iter().find(|&&f| interleave(e, f)) {
                return Err(Error::validation(format!(
                    "edges {f:?} and {e:?} interleave on page {i}; not a book embedding"
                )));
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if !seen[a][b] {
                return Err(Error::validation(format!("edge ({a}, {b}) is on no page")));
            }
        }
    }
    Ok(())
}

/// Inversion in the sphere through the unit circle `C` whose center height is
/// `tan(atan(c) / 2)`; it swaps the unit sphere with the sphere through `C`
/// centered at height `c`.
fn pencil_inversion(x: P3, c: f64) -> P3 {
    let t = (c.atan() / 2.0).tan();
    let o = [0.0, 0.0, t];
    let v = sub(x, o);
    add(o, scale(v, (1.0 + t * t) / dot(v, v)))
}

/// `K_n` in space on `ceil(pages/2)` spheres from a book embedding.
///
/// Vertex `i` sits on the unit circle `C` in `z = 0` at angle `2 pi i / n`.
/// Sphere `s` has center `(0, 0, s/2)` and passes through `C`. Pages `2s` and
/// `2s + 1` are first drawn on the upper and lower unit hemispheres, each edge
/// a half circle over its chord, then carried onto sphere `s` by inversion in
/// the sphere through `C` that bisects the angle between the two. The
/// inversion fixes `C` pointwise and maps circles to circles, so the two caps
/// of sphere `s` stay crossing-free even though they are not hemispheres.
pub fn book_to_spheres(n: usize, pages: &[Vec<(usize, usize)>]) -> Result<Drawing> {
    validate_book(n, pages)?;
    let mut edges = Vec::new();
    for page in pages {
        edges.extend(page.iter().copied());
    }
    let graph = Graph::new(n, edges)?;
    let vertices: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let [x, y] = polar(2.0 * PI * i as f64 / n as f64, 1.0);
            vec![x, y, 0.0]
        })
        .collect();
    let mut d = Drawing {
        dim: 3,
        graph,
        vertices,
        supports: Vec::new(),
        arcs: Vec::new(),
    };
    let used = pages
        .iter()
        .rposition(|p| !p.is_empty())
        .map_or(0, |i| i / 2 + 1);
    for s in 0..used {
        let c = s as f64 * 0.5;
        d.supports.push(Support::Sphere(Sphere {
            center: [0.0, 0.0, c],
            radius: (1.0 + c * c).sqrt(),
        }));
    }
    for (i, page) in pages.iter().enumerate() {
        let s = i / 2;
        let up = if i % 2 == 0 { 1.0 } else { -1.0 };
        let Some(&Support::Sphere(sp)) = d.supports.get(s) else {
            continue;
        };
        for &(u, v) in page {
            let (a, b) = (d.vertex(u), d.vertex(v));
            let mid = scale(add(a, b), 0.5);
            let half = dist(a, b) / 2.0;
            let apex = pencil_inversion(add(mid, [0.0, 0.0, up * half]), sp.center[2]);
            let (center, radius, normal) = circle_through3(a, apex, b)?;
            let carrier = Carrier::circle(center, radius, normal);
            let idx = d.supports.len();
            d.supports.push(Support::Circle3(Circle3 {
                center,
                radius,
                normal,
                sphere: Some(s),
            }));
            d.arcs.push(Arc {
                edge: [u, v],
                support: idx,
                sweep: sweep_between(&carrier, a, b, Some(apex)),
            });
        }
    }
    Ok(d)
}

/// Builds a named construction: `ico7`, `cube4`, `kpq P Q`, `book N`
/// (the complete graph from [`complete_book`]) or `nested-tri K`.
pub fn construction(name: &str, params: &[usize]) -> Result<Drawing> {
    let want = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "{name} takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "ico7" => want(0).map(|_| icosahedron_seven_circles()),
        "cube4" => want(0).map(|_| cube_four_arcs()),
        "kpq" => want(2).and_then(|_| kpq_circle_drawing(params[0], params[1])),
        "book" => want(1).and_then(|_| book_to_spheres(params[0], &complete_book(params[0]))),
        "nested-tri" => want(1).and_then(|_| nested_triangles_drawing(params[0])),
        other => Err(Error::Unknown {
            kind: "construction",
            name: other.into(),
        }),
    }
}
