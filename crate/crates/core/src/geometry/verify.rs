use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::drawing::{Curve, Drawing, Support};
use super::kernel::*;

/// Default absolute tolerance for unit-scale drawings.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IssueKind {
    BadVertex,
    BadSupport,
    MissingArc,
    DuplicateArc,
    UnknownEdge,
    KindMismatch,
    BadSweep,
    OffSphere,
    OffSupport,
    EndpointMismatch,
    VertexOnArc,
    Overlap,
    Touching,
    Crossing,
}

/// One failed check, located as precisely as the check allows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Issue {
    pub kind: IssueKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arcs: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<f64>>,
    pub detail: String,
}

/// Outcome of [`verify_drawing`]. `cover_number` is the number of distinct
/// supports carrying arcs, certified only when `valid`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub dim: u8,
    pub tolerance: f64,
    pub vertices: usize,
    pub edges: usize,
    pub supports_used: usize,
    pub circles: usize,
    pub lines: usize,
    /// Distinct spheres named by the circles in use.
    pub spheres: usize,
    pub cover_number: usize,
    pub crossings: usize,
    pub issues: Vec<Issue>,
}

impl VerificationReport {
    pub fn summary(&self) -> String {
        let what = match (self.circles, self.lines) {
            (_, 0) => format!("{} circles", self.circles),
            (0, _) => format!("{} lines", self.lines),
            (c, l) => format!("{} supports ({c} circles, {l} lines)", c + l),
        };
        let spheres = if self.spheres > 0 {
            format!(" on {} spheres", self.spheres)
        } else {
            String::new()
        };
        if self.valid {
            format!("valid: {what}{spheres}")
        } else {
            format!(
                "invalid: {} issues ({} crossings), {what}{spheres}",
                self.issues.len(),
                self.crossings
            )
        }
    }
}

struct Checker<'a> {
    d: &'a Drawing,
    tol: f64,
    issues: Vec<Issue>,
}

impl Checker<'_> {
    fn push(
        &mut self,
        kind: IssueKind,
        arcs: Vec<usize>,
        vertex: Option<usize>,
        point: Option<P3>,
        detail: String,
    ) {
        let dim = self.d.dim as usize;
        self.issues.push(Issue {
            kind,
            arcs,
            vertex,
            point: point.map(|p| p[..dim.min(3)].to_vec()),
            detail,
        });
    }

    fn vertices_ok(&mut self) -> bool {
        let d = self.d;
        let mut ok = true;
        if d.vertices.len() != d.graph.n() {
            self.push(
                IssueKind::BadVertex,
                vec![],
                None,
                None,
                format!(
                    "{} coordinates for {} vertices",
                    d.vertices.len(),
                    d.graph.n()
                ),
            );
            return false;
        }
        for (v, c) in d.vertices.iter().enumerate() {
            if c.len() != d.dim as usize || c.iter().any(|x| !x.is_finite()) {
                self.push(
                    IssueKind::BadVertex,
                    vec![],
                    Some(v),
                    None,
                    format!("vertex needs {} finite coordinates", d.dim),
                );
                ok = false;
            }
        }
        ok
    }

    fn supports(&mut self) {
        let d = self.d;
        for (i, s) in d.supports.iter().enumerate() {
            let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
            let fault = match *s {
                Support::Circle { center, radius } => {
                    (!(radius > 0.0 && radius.is_finite() && finite(&center)))
                        .then_some("needs a finite center and positive radius")
                }
                Support::Line { point, dir } => {
                    if !finite(&point) || !finite(&dir) {
                        Some("has non-finite coordinates")
                    } else if (dir[0].hypot(dir[1]) - 1.0).abs() > 1e-6 {
                        Some("needs a unit direction")
                    } else {
                        None
                    }
                }
                Support::Circle3(c) => {
                    if !(c.radius > 0.0 && c.radius.is_finite() && finite(&c.center)) {
                        Some("needs a finite center and positive radius")
                    } else if (norm(c.normal) - 1.0).abs() > 1e-6 {
                        Some("needs a unit normal")
                    } else {
                        None
                    }
                }
                Support::Sphere(sp) => {
                    (!(sp.radius > 0.0 && sp.radius.is_finite() && finite(&sp.center)))
                        .then_some("needs a finite center and positive radius")
                }
            };
            let wrong_dim = s.dim() != d.dim;
            if fault.is_some() || wrong_dim {
                self.push(
                    IssueKind::BadSupport,
                    vec![],
                    None,
                    None,
                    format!(
                        "support {i} ({}) {}",
                        s.kind(),
                        if wrong_dim {
                            "does not match the drawing dimension"
                        } else {
                            fault.unwrap_or_default()
                        }
                    ),
                );
                continue;
            }
            if let Support::Circle3(c) = *s {
                let Some(k) = c.sphere else { continue };
                match d.supports.get(k) {
                    Some(Support::Sphere(sp)) => {
                        let off = sub(c.center, sp.center);
                        let h = dot(off, c.normal);
                        let lateral = norm(sub(off, scale(c.normal, h)));
                        let power = (dot(off, off) + c.radius * c.radius).sqrt() - sp.radius;
                        if lateral > self.tol || power.abs() > self.tol {
                            self.push(
                                IssueKind::OffSphere,
                                vec![],
                                None,
                                None,
                                format!("circle support {i} does not lie on sphere {k}"),
                            );
                        }
                    }
                    _ => self.push(
                        IssueKind::BadSupport,
                        vec![],
                        None,
                        None,
                        format!("circle support {i} names {k}, which is not a sphere"),
                    ),
                }
            }
        }
    }

    /// Structural checks; returns the curve of each arc that passed them.
    fn arcs(&mut self) -> Vec<Option<Curve>> {
        let d = self.d;
        let mut seen = vec![None; d.graph.m()];
        let mut curves = Vec::with_capacity(d.arcs.len());
        for (i, a) in d.arcs.iter().enumerate() {
            let [u, v] = a.edge;
            let Some(e) = d.graph.edge_index(u, v) else {
                self.push(
                    IssueKind::UnknownEdge,
                    vec![i],
                    None,
                    None,
                    format!("({u}, {v}) is not an edge"),
                );
                curves.push(None);
                continue;
            };
            if let Some(j) = seen[e] {
                self.push(
                    IssueKind::DuplicateArc,
                    vec![j, i],
                    None,
                    None,
                    format!("edge ({u}, {v}) drawn twice"),
                );
            } else {
                seen[e] = Some(i);
            }
            let Some(s) = d.supports.get(a.support) else {
                self.push(
                    IssueKind::BadSupport,
                    vec![i],
                    None,
                    None,
                    format!("no support {}", a.support),
                );
                curves.push(None);
                continue;
            };
            if matches!(s, Support::Sphere(_)) {
                self.push(
                    IssueKind::BadSupport,
                    vec![i],
                    None,
                    None,
                    "arcs must lie on circles or lines, not spheres".into(),
                );
                curves.push(None);
                continue;
            }
            let Some(curve) = d.curve(a) else {
                self.push(
                    IssueKind::KindMismatch,
                    vec![i],
                    None,
                    None,
                    format!("sweep does not fit a {} support", s.kind()),
                );
                curves.push(None);
                continue;
            };
            let len = curve.extent.abs();
            if !curve.start.is_finite() || !(len > 0.0) || (s.kind() != "line" && len >= 2.0 * PI) {
                self.push(
                    IssueKind::BadSweep,
                    vec![i],
                    None,
                    None,
                    "sweep must be a proper nonempty arc".into(),
                );
                curves.push(None);
                continue;
            }
            let mut ok = true;
            for (end, w) in [(0.0, u), (1.0, v)] {
                let x = d.vertex(w);
                let off = curve.carrier.distance(x);
                if off > self.tol {
                    self.push(
                        IssueKind::OffSupport,
                        vec![i],
                        Some(w),
                        Some(x),
                        format!("vertex is {off:.3e} off the support"),
                    );
                    ok = false;
                } else {
                    let gap = dist(curve.at(end), x);
                    if gap > self.tol {
                        self.push(
                            IssueKind::EndpointMismatch,
                            vec![i],
                            Some(w),
                            Some(curve.at(end)),
                            format!("arc end is {gap:.3e} from its vertex"),
                        );
                        ok = false;
                    }
                }
            }
            curves.push(ok.then_some(curve));
        }
        for (e, s) in seen.iter().enumerate() {
            if s.is_none() {
                let (u, v) = d.graph.edges()[e];
                self.push(
                    IssueKind::MissingArc,
                    vec![],
                    None,
                    None,
                    format!("edge ({u}, {v}) has no arc"),
                );
            }
        }
        curves
    }

    fn vertices_on_arcs(&mut self, curves: &[Option<Curve>]) {
        let d = self.d;
        for (i, c) in curves.iter().enumerate() {
            let Some(c) = c else { continue };
            let [u, v] = d.arcs[i].edge;
            for w in (0..d.graph.n()).filter(|&w| w != u && w != v) {
                let x = d.vertex(w);
                if c.locate(x, self.tol).is_some() {
                    self.push(
                        IssueKind::VertexOnArc,
                        vec![i],
                        Some(w),
                        Some(x),
                        "arc passes through a vertex".into(),
                    );
                }
            }
        }
    }

    fn near_endpoint(&self, q: P3, arcs: [usize; 2]) -> bool {
        let r = 1e3 * self.tol;
        arcs.iter()
            .flat_map(|&i| self.d.arcs[i].edge)
            .any(|w| dist(self.d.vertex(w), q) <= r)
    }

    /// Relative position strictly inside `c`, away from both ends.
    fn inside(&self, c: &Curve, q: P3) -> bool {
        c.locate(q, self.tol).is_some()
            && dist(q, c.at(0.0)) > 1e3 * self.tol
            && dist(q, c.at(1.0)) > 1e3 * self.tol
    }

    fn pairs(&mut self, curves: &[Option<Curve>]) {
        for i in 0..curves.len() {
            let Some(a) = curves[i] else { continue };
            for j in i + 1..curves.len() {
                let Some(b) = curves[j] else { continue };
                match meet(&a.carrier, &b.carrier, self.tol) {
                    Meet::Coincident => {
                        let probes = [
                            (a.at(0.0), &b),
                            (a.at(1.0), &b),
                            (a.at(0.5), &b),
                            (b.at(0.0), &a),
                            (b.at(1.0), &a),
                            (b.at(0.5), &a),
                        ];
                        if let Some(&(q, _)) = probes.iter().find(|(q, c)| self.inside(c, *q)) {
                            self.push(
                                IssueKind::Overlap,
                                vec![i, j],
                                None,
                                Some(q),
                                "arcs overlap along a shared support".into(),
                            );
                        }
                    }
                    Meet::Points(pts) => {
                        for q in pts {
                            if self.near_endpoint(q, [i, j]) {
                                continue;
                            }
                            let (Some(sa), Some(sb)) =
                                (a.locate(q, self.tol), b.locate(q, self.tol))
                            else {
                                continue;
                            };
                            let turn = norm(cross(a.tangent(sa), b.tangent(sb)));
                            let (kind, what) = if turn <= self.tol.sqrt() {
                                (IssueKind::Touching, "arcs touch")
                            } else {
                                (IssueKind::Crossing, "arcs cross")
                            };
                            self.push(
                                kind,
                                vec![i, j],
                                None,
                                Some(q),
                                format!("{what} away from a shared vertex"),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Checks that every edge has one arc on a declared support, that arcs end at
/// their vertices, and that arcs meet only at shared endpoints. Failures are
/// reported, never raised.
pub fn verify_drawing(drawing: &Drawing, tolerance: f64) -> VerificationReport {
    let mut ck = Checker {
        d: drawing,
        tol: tolerance,
        issues: Vec::new(),
    };
    if drawing.dim != 2 && drawing.dim != 3 {
        ck.push(
            IssueKind::BadVertex,
            vec![],
            None,
            None,
            format!("dimension {} is not 2 or 3", drawing.dim),
        );
    } else if ck.vertices_ok() {
        ck.supports();
        let curves = ck.arcs();
        ck.vertices_on_arcs(&curves);
        ck.pairs(&curves);
    }
    let mut issues = ck.issues;
    issues.sort_by(|x, y| {
        (x.kind, &x.arcs, x.vertex)
            .cmp(&(y.kind, &y.arcs, y.vertex))
            .then_with(|| x.detail.cmp(&y.detail))
    });

    let mut used: Vec<usize> = drawing.arcs.iter().map(|a| a.support).collect();
    used.sort_unstable();
    used.dedup();
    let kinds = |k: &str| {
        used.iter()
            .filter(|&&i| drawing.supports.get(i).map(Support::kind) == Some(k))
            .count()
    };
    let (circles, lines) = (kinds("circle") + kinds("circle3"), kinds("line"));
    let mut spheres: Vec<usize> = used
        .iter()
        .filter_map(|&i| match drawing.supports.get(i) {
            Some(Support::Circle3(c)) => c.sphere,
            _ => None,
        })
        .collect();
    spheres.sort_unstable();
    spheres.dedup();
    let crossings = issues
        .iter()
        .filter(|i| matches!(i.kind, IssueKind::Crossing | IssueKind::Touching))
        .count();
    VerificationReport {
        valid: issues.is_empty(),
        dim: drawing.dim,
        tolerance,
        vertices: drawing.graph.n(),
        edges: drawing.graph.m(),
        supports_used: used.len(),
        circles,
        lines,
        spheres: spheres.len(),
        cover_number: used.len(),
        crossings,
        issues,
    }
}
