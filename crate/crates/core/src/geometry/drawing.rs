use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::kernel::*;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A circle in space, optionally lying on one of the drawing's spheres.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle3 {
    pub center: P3,
    pub radius: f64,
    pub normal: P3,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sphere: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sphere {
    pub center: P3,
    pub radius: f64,
}

/// A supporting curve or surface. Plane drawings use circles and lines;
/// space drawings use `circle3` supports, which may name a `sphere` support.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Support {
    Circle { center: [f64; 2], radius: f64 },
    Line { point: [f64; 2], dir: [f64; 2] },
    Circle3(Circle3),
    Sphere(Sphere),
}

impl Support {
    pub fn kind(&self) -> &'static str {
        match self {
            Support::Circle { .. } => "circle",
            Support::Line { .. } => "line",
            Support::Circle3(_) => "circle3",
            Support::Sphere(_) => "sphere",
        }
    }

    pub fn dim(&self) -> u8 {
        match self {
            Support::Circle { .. } | Support::Line { .. } => 2,
            _ => 3,
        }
    }

    /// The curve of a circle or line support; spheres have none.
    pub fn carrier(&self) -> Option<Carrier> {
        match *self {
            Support::Circle { center, radius } => {
                Some(GenCircle2::Circle { center, radius }.carrier())
            }
            Support::Line { point, dir } => Some(GenCircle2::Line { point, dir }.carrier()),
            Support::Circle3(c) => Some(Carrier::circle(c.center, c.radius, c.normal)),
            Support::Sphere(_) => None,
        }
    }
}

impl From<GenCircle2> for Support {
    fn from(g: GenCircle2) -> Self {
        match g {
            GenCircle2::Circle { center, radius } => Support::Circle { center, radius },
            GenCircle2::Line { point, dir } => Support::Line { point, dir },
        }
    }
}

/// Where along its support an arc runs: a signed angular extent from `start`
/// (counterclockwise when positive, in the support's frame) or a parameter
/// interval along a line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sweep {
    Angular { start: f64, extent: f64 },
    Linear { t0: f64, t1: f64 },
}

/// The drawing of one edge, running from `edge[0]` to `edge[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub edge: [usize; 2],
    pub support: usize,
    pub sweep: Sweep,
}

/// A curve piece: carrier plus parameter range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Curve {
    pub carrier: Carrier,
    pub start: f64,
    pub extent: f64,
}

impl Curve {
    /// Point at relative position `s` in `[0, 1]`.
    pub fn at(&self, s: f64) -> P3 {
        self.carrier.at(self.start + s * self.extent)
    }

    pub fn tangent(&self, s: f64) -> P3 {
        self.carrier.tangent(self.start + s * self.extent)
    }

    fn is_circle(&self) -> bool {
        matches!(self.carrier, Carrier::Circle { .. })
    }

    /// Relative position of `q` when it lies on the curve within `tol`.
    pub fn locate(&self, q: P3, tol: f64) -> Option<f64> {
        if self.carrier.distance(q) > tol {
            return None;
        }
        let t = self.carrier.param(q);
        if self.is_circle() {
            let r = self.carrier.scale_hint();
            let len = self.extent.abs();
            let off = ((t - self.start) * self.extent.signum()).rem_euclid(2.0 * PI);
            let slack = tol / r;
            if off <= len + slack {
                Some((off / len).min(1.0))
            } else if off >= 2.0 * PI - slack {
                Some(0.0)
            } else {
                None
            }
        } else {
            let s = (t - self.start) / self.extent;
            let slack = tol / self.extent.abs();
            (s >= -slack && s <= 1.0 + slack).then(|| s.clamp(0.0, 1.0))
        }
    }

    /// Polyline approximation with `n` segments.
    pub fn sample(&self, n: usize) -> Vec<P3> {
        (0..=n).map(|i| self.at(i as f64 / n as f64)).collect()
    }
}

/// A drawing of a graph with one arc per edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Drawing {
    pub dim: u8,
    pub graph: Graph,
    pub vertices: Vec<Vec<f64>>,
    pub supports: Vec<Support>,
    pub arcs: Vec<Arc>,
}

impl Drawing {
    pub fn empty(dim: u8) -> Self {
        Drawing {
            dim,
            graph: Graph::empty(0),
            vertices: Vec::new(),
            supports: Vec::new(),
            arcs: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("drawing serializes")
    }

    pub fn vertex(&self, v: usize) -> P3 {
        let c = &self.vertices[v];
        [c[0], c[1], c.get(2).copied().unwrap_or(0.0)]
    }

    /// The curve of an arc, if its support and sweep fit together.
    pub fn curve(&self, arc: &Arc) -> Option<Curve> {
        let carrier = self.supports.get(arc.support)?.carrier()?;
        match (carrier, arc.sweep) {
            (Carrier::Circle { .. }, Sweep::Angular { start, extent }) => Some(Curve {
                carrier,
                start,
                extent,
            }),
            (Carrier::Line { .. }, Sweep::Linear { t0, t1 }) => Some(Curve {
                carrier,
                start: t0,
                extent: t1 - t0,
            }),
            _ => None,
        }
    }

    /// Number of distinct supports carrying arcs.
    pub fn support_count(&self) -> usize {
        let mut used: Vec<usize> = self.arcs.iter().map(|a| a.support).collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }
}

/// Sweep on `carrier` from `a` to `b` whose interior contains `via`, or the
/// shorter way round when `via` is `None`. Lines always take the segment.
pub fn sweep_between(carrier: &Carrier, a: P3, b: P3, via: Option<P3>) -> Sweep {
    let (ta, tb) = (carrier.param(a), carrier.param(b));
    match carrier {
        Carrier::Line { .. } => Sweep::Linear { t0: ta, t1: tb },
        Carrier::Circle { .. } => {
            let ccw = (tb - ta).rem_euclid(2.0 * PI);
            let cw = ccw - 2.0 * PI;
            let extent = match via {
                Some(v) => {
                    let tv = (carrier.param(v) - ta).rem_euclid(2.0 * PI);
                    if tv < ccw {
                        ccw
                    } else {
                        cw
                    }
                }
                None => {
                    if ccw <= PI {
                        ccw
                    } else {
                        cw
                    }
                }
            };
            Sweep::Angular { start: ta, extent }
        }
    }
}

fn invert_point(x: P3, c: P3, rho: f64) -> P3 {
    let v = sub(x, c);
    add(c, scale(v, rho * rho / dot(v, v)))
}

/// Image of a sphere or circle `(center o, radius r)` not through `c`:
/// center `c + s (o - c)`, radius `|s| r`, with `s = rho^2 / (|o - c|^2 - r^2)`.
fn invert_round(o: P3, r: f64, c: P3, rho: f64, tol: f64) -> Result<(P3, f64)> {
    let pow = dot(sub(o, c), sub(o, c)) - r * r;
    if pow.abs() <= tol * r.max(1.0) {
        return Err(through_center());
    }
    let s = rho * rho / pow;
    Ok((add(c, scale(sub(o, c), s)), s.abs() * r))
}

fn through_center() -> Error {
    Error::Precondition(
        "a support passes through the inversion center; choose a center off every support".into(),
    )
}

/// Inversion `x -> c + rho^2 (x - c) / |x - c|^2` of the whole drawing. In
/// the plane, lines off the center become circles through it and back; the
/// support count is unchanged. Arcs and vertices must avoid the center, and
/// so must circles in space and spheres.
pub fn invert(drawing: &Drawing, center: P3, rho: f64, tol: f64) -> Result<Drawing> {
    if rho <= 0.0 {
        return Err(Error::validation("inversion radius must be positive"));
    }
    if drawing.dim == 2 && center[2] != 0.0 {
        return Err(Error::validation(
            "plane drawings invert about a center in the plane",
        ));
    }
    let c = center;
    let verts: Vec<P3> = (0..drawing.vertices.len())
        .map(|v| drawing.vertex(v))
        .collect();
    if verts.iter().any(|&x| dist(x, c) <= tol) {
        return Err(Error::Precondition(
            "a vertex sits at the inversion center".into(),
        ));
    }
    for arc in &drawing.arcs {
        let curve = drawing
            .curve(arc)
            .ok_or_else(|| Error::validation("arc does not fit its support"))?;
        if curve.locate(c, tol).is_some() {
            return Err(Error::Precondition(format!(
                "the arc of edge ({}, {}) passes through the inversion center",
                arc.edge[0], arc.edge[1]
            )));
        }
    }
    let mut supports = Vec::with_capacity(drawing.supports.len());
    for s in &drawing.supports {
        let img = match *s {
            Support::Circle { center: o, radius } => {
                let off = sub(lift(o), c);
                let d = norm(off);
                if (d - radius).abs() <= tol * radius.max(1.0) {
                    // through the center: the far point lands at distance rho^2 / 2r
                    let u = scale(off, 1.0 / d);
                    let foot = add(c, scale(u, rho * rho / (2.0 * radius)));
                    Support::Line {
                        point: [foot[0], foot[1]],
                        dir: [-u[1], u[0]],
                    }
                } else {
                    let (o2, r2) = invert_round(lift(o), radius, c, rho, tol)?;
                    Support::Circle {
                        center: [o2[0], o2[1]],
                        radius: r2,
                    }
                }
            }
            Support::Line { point, dir } => {
                let car = GenCircle2::Line { point, dir }.carrier();
                let foot = car.at(car.param(c));
                let delta = dist(foot, c);
                if delta <= tol {
                    // a line through the center maps onto itself
                    supports.push(*s);
                    continue;
                }
                let far = invert_point(foot, c, rho);
                let mid = scale(add(c, far), 0.5);
                Support::Circle {
                    center: [mid[0], mid[1]],
                    radius: rho * rho / (2.0 * delta),
                }
            }
            Support::Circle3(circ) => {
                let car = Carrier::circle(circ.center, circ.radius, circ.normal);
                if (dist(circ.center, c).powi(2) - circ.radius.powi(2)).abs() <= tol
                    && car.distance(c) <= tol
                {
                    return Err(through_center());
                }
                let pts: Vec<P3> = (0..3)
                    .map(|i| invert_point(car.at(i as f64 * 2.0 * PI / 3.0), c, rho))
                    .collect();
                let (o2, r2, n2) = circle_through3(pts[0], pts[1], pts[2])?;
                Support::Circle3(Circle3 {
                    center: o2,
                    radius: r2,
                    normal: n2,
                    sphere: circ.sphere,
                })
            }
            Support::Sphere(sp) => {
                let (o2, r2) = invert_round(sp.center, sp.radius, c, rho, tol)?;
                Support::Sphere(Sphere {
                    center: o2,
                    radius: r2,
                })
            }
        };
        supports.push(img);
    }
    let vertices: Vec<Vec<f64>> = verts
        .iter()
        .map(|&x| {
            let y = invert_point(x, c, rho);
            y[..drawing.dim as usize].to_vec()
        })
        .collect();
    let mut out = Drawing {
        dim: drawing.dim,
        graph: drawing.graph.clone(),
        vertices,
        supports,
        arcs: Vec::with_capacity(drawing.arcs.len()),
    };
    for arc in &drawing.arcs {
        let curve = drawing
            .curve(arc)
            .ok_or_else(|| Error::validation("arc does not fit its support"))?;
        let mid = invert_point(curve.at(0.5), c, rho);
        let carrier = out.supports[arc.support]
            .carrier()
            .ok_or_else(|| Error::validation("arc on a sphere support"))?;
        let [u, v] = arc.edge;
        let sweep = sweep_between(&carrier, out.vertex(u), out.vertex(v), Some(mid));
        out.arcs.push(Arc { sweep, ..*arc });
    }
    Ok(out)
}
