use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Drawing, P3};

/// Samples per arc when closing a cycle into a polygon.
const SAMPLES: usize = 64;

/// Outcome of [`nested_cycles_lower`]: `lower` circles are needed for the
/// drawing, one per verified nesting level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestingReport {
    pub lower: u64,
    pub claimed: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Polyline of a cycle, following its arcs in cycle order.
fn polygon(drawing: &Drawing, cycle: &[usize]) -> Result<Vec<[f64; 2]>> {
    let k = cycle.len();
    let mut out = Vec::with_capacity(k * SAMPLES);
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        let arc = drawing
            .arcs
            .iter()
            .find(|a| a.edge == [u, v] || a.edge == [v, u])
            .ok_or_else(|| {
                Error::validation(format!("edge ({u}, {v}) has no arc in the drawing"))
            })?;
        let curve = drawing.curve(arc).ok_or_else(|| {
            Error::validation(format!("arc of ({u}, {v}) does not fit its support"))
        })?;
        let mut pts: Vec<P3> = curve.sample(SAMPLES);
        if arc.edge[0] != u {
            pts.reverse();
        }
        out.extend(pts[..SAMPLES].iter().map(|p| [p[0], p[1]]));
    }
    Ok(out)
}

/// Even-odd test, `None` when `q` lies on the boundary within `tol`.
fn inside(poly: &[[f64; 2]], q: [f64; 2], tol: f64) -> Option<bool> {
    let n = poly.len();
    let mut odd = false;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        let len2 = dx * dx + dy * dy;
        let t = if len2 > 0.0 {
            (((q[0] - a[0]) * dx + (q[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        if (q[0] - a[0] - t * dx).hypot(q[1] - a[1] - t * dy) <= tol {
            return None;
        }
        if (a[1] > q[1]) != (b[1] > q[1]) && q[0] < a[0] + (q[1] - a[1]) / dy * dx {
            odd = !odd;
        }
    }
    Some(odd)
}

/// Certified lower bound on the circles covering a plane drawing from a
/// sequence of claimed nested cycles, each strictly inside the previous one.
///
/// A cycle not in the graph is an error. When a claim fails geometrically the
/// verified prefix is returned with a note saying why.
pub fn nested_cycles_lower(
    drawing: &Drawing,
    cycles: &[Vec<usize>],
    tol: f64,
) -> Result<NestingReport> {
    if drawing.dim != 2 {
        return Err(Error::UnsupportedDimension(drawing.dim));
    }
    let g = &drawing.graph;
    for c in cycles {
        let ok = c.len() >= 3
            && c.iter().all(|&v| v < g.n())
            && {
                let mut s = c.clone();
                s.sort_unstable();
                s.windows(2).all(|w| w[0] != w[1])
            }
            && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]));
        if !ok {
            return Err(Error::validation(format!(
                "{c:?} is not a cycle of the graph"
            )));
        }
    }
    let polys = cycles
        .iter()
        .map(|c| polygon(drawing, c))
        .collect::<Result<Vec<_>>>()?;
    let mut note = None;
    let mut lower = cycles.len().min(1);
    for i in 1..cycles.len() {
        if cycles[i].iter().any(|v| cycles[i - 1].contains(v)) {
            note = Some(format!("cycle {i} shares a vertex with cycle {}", i - 1));
            break;
        }
        match polys[i]
            .iter()
            .position(|&q| inside(&polys[i - 1], q, tol) != Some(true))
        {
            None => lower = i + 1,
            Some(j) => {
                let q = polys[i][j];
                note = Some(format!(
                    "cycle {i} is not strictly inside cycle {}: point ({:.6}, {:.6}) is outside or on it",
                    i - 1,
                    q[0],
                    q[1]
                ));
                break;
            }
        }
    }
    Ok(NestingReport {
        lower: lower as u64,
        claimed: cycles.len(),
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{nested_triangles_drawing, segment_drawing};
    use crate::graph::Graph;

    fn triangles(k: usize) -> Vec<Vec<usize>> {
        (0..k).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect()
    }

    #[test]
    fn nested_triangles_count() {
        let d = nested_triangles_drawing(3).unwrap();
        let r = nested_cycles_lower(&d, &triangles(3), 1e-9).unwrap();
        assert_eq!((r.lower, r.note), (3, None));
        let r = nested_cycles_lower(&d, &triangles(1), 1e-9).unwrap();
        assert_eq!(r.lower, 1);
        // inner-to-outer order is not nested
        let mut rev = triangles(3);
        rev.reverse();
        let r = nested_cycles_lower(&d, &rev, 1e-9).unwrap();
        assert_eq!(r.lower, 1);
        assert!(r.note.is_some());
    }

    #[test]
    fn side_by_side_triangles() {
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let pts = [
            [0.0, 0.0],
            [1.0, 0.0],
            [0.5, 1.0],
            [2.0, 0.0],
            [3.0, 0.0],
            [2.5, 1.0],
        ];
        let d = segment_drawing(&g, &pts).unwrap();
        let r = nested_cycles_lower(&d, &[vec![0, 1, 2], vec![3, 4, 5]], 1e-9).unwrap();
        assert_eq!(r.lower, 1);
        assert!(r.note.unwrap().contains("not strictly inside"));
        assert!(nested_cycles_lower(&d, &[vec![0, 1, 3]], 1e-9).is_err());
    }
}
