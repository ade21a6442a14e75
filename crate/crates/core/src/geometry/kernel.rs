//! Vector helpers and the intersection kernel. Everything works in 3-space;
//! plane drawings live in `z = 0`.

use crate::error::{Error, Result};

pub type P3 = [f64; 3];

pub fn add(a: P3, b: P3) -> P3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(a: P3, s: f64) -> P3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn dot(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: P3) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: P3, b: P3) -> f64 {
    norm(sub(a, b))
}

pub fn normalize(a: P3) -> P3 {
    scale(a, 1.0 / norm(a))
}

pub fn lift(p: [f64; 2]) -> P3 {
    [p[0], p[1], 0.0]
}

/// Orthonormal frame `(e1, e2)` of the plane with unit normal `n`, chosen
/// deterministically; for `n = +z` it is `(x, y)`, so angles agree with `atan2`.
pub fn frame(n: P3) -> (P3, P3) {
    let a = if n[0].abs() > 0.9 {
        [0.0, 1.0, 0.0]
    } else {
        [1.0, 0.0, 0.0]
    };
    let e1 = normalize(sub(a, scale(n, dot(a, n))));
    (e1, cross(n, e1))
}

/// A full circle or line in 3-space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Carrier {
    Circle {
        c: P3,
        r: f64,
        n: P3,
        e1: P3,
        e2: P3,
    },
    Line {
        p: P3,
        d: P3,
    },
}

impl Carrier {
    pub fn circle(c: P3, r: f64, n: P3) -> Self {
        let n = normalize(n);
        let (e1, e2) = frame(n);
        Carrier::Circle { c, r, n, e1, e2 }
    }

    pub fn line(p: P3, d: P3) -> Self {
        Carrier::Line { p, d: normalize(d) }
    }

    /// Point at angle (circles) or arclength parameter (lines).
    pub fn at(&self, t: f64) -> P3 {
        match *self {
            Carrier::Circle { c, r, e1, e2, .. } => {
                add(c, add(scale(e1, r * t.cos()), scale(e2, r * t.sin())))
            }
            Carrier::Line { p, d } => add(p, scale(d, t)),
        }
    }

    /// Parameter of the nearest carrier point.
    pub fn param(&self, q: P3) -> f64 {
        match *self {
            Carrier::Circle { c, e1, e2, .. } => {
                let v = sub(q, c);
                dot(v, e2).atan2(dot(v, e1))
            }
            Carrier::Line { p, d } => dot(sub(q, p), d),
        }
    }

    pub fn distance(&self, q: P3) -> f64 {
        match *self {
            Carrier::Circle { c, r, n, .. } => {
                let v = sub(q, c);
                let h = dot(v, n);
                let inplane = norm(sub(v, scale(n, h)));
                (h * h + (inplane - r) * (inplane - r)).sqrt()
            }
            Carrier::Line { p, d } => {
                let v = sub(q, p);
                norm(sub(v, scale(d, dot(v, d))))
            }
        }
    }

    pub fn tangent(&self, t: f64) -> P3 {
        match *self {
            Carrier::Circle { e1, e2, .. } => add(scale(e1, -t.sin()), scale(e2, t.cos())),
            Carrier::Line { d, .. } => d,
        }
    }

    pub fn scale_hint(&self) -> f64 {
        match *self {
            Carrier::Circle { r, .. } => r,
            Carrier::Line { .. } => 1.0,
        }
    }
}

/// Common points of two carriers.
#[derive(Clone, Debug, PartialEq)]
pub enum Meet {
    Points(Vec<P3>),
    Coincident,
}

/// `t` with `|p + t d - c| = r` for unit `d`; near-tangent discriminants snap to one root.
fn line_sphere(p: P3, d: P3, c: P3, r: f64, tol: f64) -> Vec<f64> {
    let w = sub(p, c);
    let b = dot(d, w);
    let disc = b * b - (dot(w, w) - r * r);
    if disc < -2.0 * tol * r.max(1.0) {
        Vec::new()
    } else if disc <= 0.0 {
        vec![-b]
    } else {
        let s = disc.sqrt();
        vec![-b - s, -b + s]
    }
}

pub fn meet(a: &Carrier, b: &Carrier, tol: f64) -> Meet {
    use Carrier::*;
    match (*a, *b) {
        (Line { p: p1, d: d1 }, Line { p: p2, d: d2 }) => {
            let w0 = sub(p1, p2);
            let bb = dot(d1, d2);
            let denom = 1.0 - bb * bb;
            if denom <= 1e-15 {
                let off = norm(sub(w0, scale(d1, dot(w0, d1))));
                return if off <= tol {
                    Meet::Coincident
                } else {
                    Meet::Points(vec![])
                };
            }
            let (dd, ee) = (dot(d1, w0), dot(d2, w0));
            let s = (bb * ee - dd) / denom;
            let t = (ee - bb * dd) / denom;
            let q1 = add(p1, scale(d1, s));
            let q2 = add(p2, scale(d2, t));
            if dist(q1, q2) <= tol {
                Meet::Points(vec![scale(add(q1, q2), 0.5)])
            } else {
                Meet::Points(vec![])
            }
        }
        (Circle { c, r, n, .. }, Line { p, d }) | (Line { p, d }, Circle { c, r, n, .. }) => {
            let dn = dot(d, n);
            if dn.abs() <= 1e-12 {
                if dot(sub(p, c), n).abs() > tol {
                    return Meet::Points(vec![]);
                }
                let pts = line_sphere(p, d, c, r, tol)
                    .into_iter()
                    .map(|t| add(p, scale(d, t)))
                    .collect();
                return Meet::Points(pts);
            }
            let t = dot(sub(c, p), n) / dn;
            let q = add(p, scale(d, t));
            if (dist(q, c) - r).abs() <= tol {
                Meet::Points(vec![q])
            } else {
                Meet::Points(vec![])
            }
        }
        (
            Circle {
                c: c1,
                r: r1,
                n: n1,
                ..
            },
            Circle {
                c: c2,
                r: r2,
                n: n2,
                ..
            },
        ) => {
            let axis = cross(n1, n2);
            if norm(axis) <= 1e-12 {
                if dot(sub(c2, c1), n1).abs() > tol {
                    return Meet::Points(vec![]);
                }
                let dv = sub(c2, c1);
                let d = norm(dv);
                if d <= tol {
                    return if (r1 - r2).abs() <= tol {
                        Meet::Coincident
                    } else {
                        Meet::Points(vec![])
                    };
                }
                let u = scale(dv, 1.0 / d);
                let w = cross(n1, u);
                let along = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
                let h2 = r1 * r1 - along * along;
                let base = add(c1, scale(u, along));
                if h2 < -2.0 * tol * r1.max(1.0) {
                    return Meet::Points(vec![]);
                }
                if h2 <= 0.0 {
                    return Meet::Points(vec![base]);
                }
                let h = h2.sqrt();
                return Meet::Points(vec![add(base, scale(w, h)), sub(base, scale(w, h))]);
            }
            // line shared by the two planes
            let l2 = dot(axis, axis);
            let (k1, k2) = (dot(n1, c1), dot(n2, c2));
            let p0 = scale(
                add(scale(cross(n2, axis), k1), scale(cross(axis, n1), k2)),
                1.0 / l2,
            );
            let d = normalize(axis);
            let pts = line_sphere(p0, d, c1, r1, tol)
                .into_iter()
                .map(|t| add(p0, scale(d, t)))
                .filter(|&q| (dist(q, c2) - r2).abs() <= 10.0 * tol)
                .collect();
            Meet::Points(pts)
        }
    }
}

/// A generalized circle in the plane: a circle or a line.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GenCircle2 {
    Circle { center: [f64; 2], radius: f64 },
    Line { point: [f64; 2], dir: [f64; 2] },
}

impl GenCircle2 {
    pub fn carrier(&self) -> Carrier {
        match *self {
            GenCircle2::Circle { center, radius } => {
                Carrier::circle(lift(center), radius, [0.0, 0.0, 1.0])
            }
            GenCircle2::Line { point, dir } => Carrier::line(lift(point), lift(dir)),
        }
    }

    /// Distance from `q` to the curve.
    pub fn residual(&self, q: [f64; 2]) -> f64 {
        self.carrier().distance(lift(q))
    }
}

/// The unique circle through three distinct points, or their line when collinear.
pub fn circle_through(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Result<GenCircle2> {
    let (pa, pb, pc) = (lift(a), lift(b), lift(c));
    let scale_len = dist(pa, pb).max(dist(pa, pc)).max(dist(pb, pc));
    if dist(pa, pb).min(dist(pa, pc)).min(dist(pb, pc)) <= 1e-12 * scale_len.max(1.0) {
        return Err(Error::Precondition(
            "circle through coincident points".into(),
        ));
    }
    let (ab, ac) = (sub(pb, pa), sub(pc, pa));
    let z = cross(ab, ac)[2];
    if z.abs() <= 1e-12 * norm(ab) * norm(ac) {
        let d = normalize(ab);
        return Ok(GenCircle2::Line {
            point: a,
            dir: [d[0], d[1]],
        });
    }
    let circ = circle_through3(pa, pb, pc)?;
    Ok(GenCircle2::Circle {
        center: [circ.0[0], circ.0[1]],
        radius: circ.1,
    })
}

/// Center, radius and unit normal of the circle through three points in space.
pub fn circle_through3(a: P3, b: P3, c: P3) -> Result<(P3, f64, P3)> {
    let (ab, ac) = (sub(b, a), sub(c, a));
    let w = cross(ab, ac);
    let w2 = dot(w, w);
    if w2 <= 1e-24 * dot(ab, ab) * dot(ac, ac) {
        return Err(Error::Precondition(
            "points are collinear or coincident; no circle through them".into(),
        ));
    }
    let off = scale(
        add(
            scale(cross(w, ab), dot(ac, ac)),
            scale(cross(ac, w), dot(ab, ab)),
        ),
        0.5 / w2,
    );
    Ok((add(a, off), norm(off), normalize(w)))
}
