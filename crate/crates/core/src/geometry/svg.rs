use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::drawing::{Drawing, Support};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvgOptions {
    /// Width of the drawing area in pixels, before margins.
    pub size: f64,
    pub margin: f64,
    pub stroke: String,
    pub stroke_width: f64,
    pub vertex_radius: f64,
    /// Draw every circle support in full as a dashed guide.
    pub guides: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 480.0,
            margin: 16.0,
            stroke: "#1f4e79".into(),
            stroke_width: 2.0,
            vertex_radius: 4.0,
            guides: false,
        }
    }
}

fn num(x: f64) -> String {
    let r = (x * 1e6).round() / 1e6;
    format!("{:.6}", if r == 0.0 { 0.0 } else { r })
}

struct View {
    min: [f64; 2],
    max_y: f64,
    scale: f64,
    margin: f64,
}

impl View {
    fn map(&self, p: [f64; 2]) -> (String, String) {
        (
            num((p[0] - self.min[0]) * self.scale + self.margin),
            num((self.max_y - p[1]) * self.scale + self.margin),
        )
    }
}

/// SVG 1.1 document for a plane drawing: one `<path>` per maximal chain of
/// arcs sharing a support, one marker per vertex, and optional dashed guide
/// circles. Output bytes depend only on the drawing and options.
pub fn svg_export(drawing: &Drawing, opts: &SvgOptions) -> Result<String> {
    if drawing.dim != 2 {
        return Err(Error::UnsupportedDimension(drawing.dim));
    }
    let curves: Vec<_> = drawing
        .arcs
        .iter()
        .map(|a| {
            drawing
                .curve(a)
                .ok_or_else(|| Error::validation("arc does not fit its support"))
        })
        .collect::<Result<_>>()?;

    let mut pts: Vec<[f64; 2]> = (0..drawing.vertices.len())
        .map(|v| {
            let p = drawing.vertex(v);
            [p[0], p[1]]
        })
        .collect();
    for c in &curves {
        pts.extend(c.sample(32).into_iter().map(|p| [p[0], p[1]]));
    }
    let guides: Vec<([f64; 2], f64)> = if opts.guides {
        let mut used: Vec<usize> = drawing.arcs.iter().map(|a| a.support).collect();
        used.sort_unstable();
        used.dedup();
        used.into_iter()
            .filter_map(|i| match drawing.supports[i] {
                Support::Circle { center, radius } => Some((center, radius)),
                _ => None,
            })
            .collect()
    } else {
        Vec::new()
    };
    for &(c, r) in &guides {
        pts.push([c[0] - r, c[1] - r]);
        pts.push([c[0] + r, c[1] + r]);
    }
    let (mut lo, mut hi) = ([0.0f64; 2], [0.0f64; 2]);
    if let Some(first) = pts.first() {
        lo = *first;
        hi = *first;
        for p in &pts {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let scale = if span > 0.0 { opts.size / span } else { 1.0 };
    let view = View {
        min: lo,
        max_y: hi[1],
        scale,
        margin: opts.margin,
    };
    let width = (hi[0] - lo[0]) * scale + 2.0 * opts.margin;
    let height = (hi[1] - lo[1]) * scale + 2.0 * opts.margin;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    );
    for (c, r) in &guides {
        let (x, y) = view.map(*c);
        let _ = writeln!(
            out,
            r##"  <circle class="guide" cx="{x}" cy="{y}" r="{}" fill="none" stroke="#999999" stroke-width="1" stroke-dasharray="4 3"/>"##,
            num(r * scale)
        );
    }

    for chain in chains(drawing) {
        let mut d = String::new();
        let mut at: Option<usize> = None;
        for i in chain {
            let arc = &drawing.arcs[i];
            let c = &curves[i];
            let [u, v] = arc.edge;
            if at != Some(u) {
                let (x, y) = view.map([drawing.vertex(u)[0], drawing.vertex(u)[1]]);
                let _ = write!(d, "M {x} {y} ");
            }
            let (x, y) = view.map([drawing.vertex(v)[0], drawing.vertex(v)[1]]);
            match drawing.supports[arc.support] {
                Support::Line { .. } => {
                    let _ = write!(d, "L {x} {y} ");
                }
                _ => {
                    let r = num(c.carrier.scale_hint() * scale);
                    let large = u8::from(c.extent.abs() > std::f64::consts::PI);
                    // y is flipped, so counterclockwise becomes the negative sweep
                    let sweep = u8::from(c.extent < 0.0);
                    let _ = write!(d, "A {r} {r} 0 {large} {sweep} {x} {y} ");
                }
            }
            at = Some(v);
        }
        let _ = writeln!(
            out,
            r#"  <path class="arc" d="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
            d.trim_end(),
            opts.stroke,
            num(opts.stroke_width)
        );
    }
    for v in 0..drawing.vertices.len() {
        let p = drawing.vertex(v);
        let (x, y) = view.map([p[0], p[1]]);
        let _ = writeln!(
            out,
            r#"  <circle class="vertex" cx="{x}" cy="{y}" r="{}" fill="black"/>"#,
            num(opts.vertex_radius)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Arcs grouped into maximal chains along a shared support, each listed in
/// walking order (arcs are reoriented implicitly by the `M` moves).
fn chains(drawing: &Drawing) -> Vec<Vec<usize>> {
    let m = drawing.arcs.len();
    let mut done = vec![false; m];
    let mut out = Vec::new();
    for start in 0..m {
        if done[start] {
            continue;
        }
        let s = drawing.arcs[start].support;
        // walk back to the first arc of this chain, stopping on cycles
        let mut first = start;
        loop {
            let u = drawing.arcs[first].edge[0];
            match (0..m).find(|&j| {
                !done[j]
                    && j != first
                    && drawing.arcs[j].support == s
                    && drawing.arcs[j].edge[1] == u
            }) {
                Some(j) if j != start => first = j,
                _ => break,
            }
        }
        let mut chain = vec![first];
        done[first] = true;
        loop {
            let v = drawing.arcs[*chain.last().unwrap()].edge[1];
            match (0..m)
                .find(|&j| !done[j] && drawing.arcs[j].support == s && drawing.arcs[j].edge[0] == v)
            {
                Some(j) => {
                    done[j] = true;
                    chain.push(j);
                }
                None => break,
            }
        }
        out.push(chain);
    }
    out
}
