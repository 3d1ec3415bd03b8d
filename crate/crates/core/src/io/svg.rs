//! Static SVG pictures of instances. Every member becomes exactly one element
//! carrying `class="member"` and a `data-member` attribute.

use std::fmt::Write;

use crate::error::Result;
use crate::geometry::{to_f64, Point};
use crate::model::{ensure_valid, Context, Instance, Payload};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Self {
        let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
        if let Some(&(x, y)) = points.first() {
            (min_x, min_y, max_x, max_y) = (x, y, x, y);
        }
        for &(x, y) in points {
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
        let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
        Frame {
            min_x,
            min_y,
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            MARGIN + (x - self.min_x) * self.scale,
            SIZE - MARGIN - (y - self.min_y) * self.scale,
        )
    }
}

fn xy(p: &Point) -> (f64, f64) {
    (to_f64(&p.x), to_f64(&p.y))
}

/// Renders members colored by the first block containing them.
pub fn render_svg(inst: &Instance) -> Result<String> {
    ensure_valid(inst)?;
    let color: Vec<&str> = (0..inst.members().len())
        .map(|i| {
            let id = &inst.members()[i].id;
            inst.blocks()
                .iter()
                .position(|b| b.contains(id))
                .map_or("#777777", |b| PALETTE[b % PALETTE.len()])
        })
        .collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    match inst.context() {
        Context::Graph { .. } => {
            let k = inst.members().len().max(1) as f64;
            let pos: Vec<(f64, f64)> = (0..inst.members().len())
                .map(|i| {
                    let a = std::f64::consts::TAU * i as f64 / k;
                    (SIZE / 2.0 + (SIZE / 2.0 - MARGIN) * a.cos(), SIZE / 2.0 - (SIZE / 2.0 - MARGIN) * a.sin())
                })
                .collect();
            out.push_str("<g class=\"edges\" stroke=\"#bbbbbb\">\n");
            for i in 0..inst.members().len() {
                for j in i + 1..inst.members().len() {
                    if inst.members_meet(i, j) {
                        let _ = writeln!(
                            out,
                            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                            pos[i].0, pos[i].1, pos[j].0, pos[j].1
                        );
                    }
                }
            }
            out.push_str("</g>\n");
            for (i, m) in inst.members().iter().enumerate() {
                let _ = writeln!(
                    out,
                    r#"<circle class="member" data-member="{}" cx="{:.3}" cy="{:.3}" r="6" fill="{}"/>"#,
                    escape(m.id.as_str()),
                    pos[i].0,
                    pos[i].1,
                    color[i]
                );
            }
        }
        ctx => {
            let paths: Vec<Vec<(f64, f64)>> = inst
                .members()
                .iter()
                .map(|m| match &m.payload {
                    Payload::Segment(s) => vec![xy(&s.start()), xy(&s.end())],
                    Payload::CurveSegment(s) => {
                        let curve = ctx.curves().and_then(|c| c.get(s.curve()).ok()).expect("validated");
                        let pieces = curve.pieces(s.t_lo(), s.t_hi());
                        let mut pts: Vec<(f64, f64)> = pieces.iter().map(|(a, _)| xy(a)).collect();
                        if let Some((_, b)) = pieces.last() {
                            pts.push(xy(b));
                        }
                        pts
                    }
                    Payload::Vertex => Vec::new(),
                })
                .collect();
            let mut all: Vec<(f64, f64)> = paths.iter().flatten().copied().collect();
            if let Some(curves) = ctx.curves() {
                all.extend(curves.curves().iter().flat_map(|c| c.vertices().iter().map(xy)));
            }
            let frame = Frame::fit(&all);
            if let Some(curves) = ctx.curves() {
                out.push_str("<g class=\"curves\" fill=\"none\" stroke=\"#dddddd\">\n");
                for c in curves.curves() {
                    let pts: Vec<String> = c
                        .vertices()
                        .iter()
                        .map(|p| {
                            let (x, y) = frame.map(xy(p));
                            format!("{x:.3},{y:.3}")
                        })
                        .collect();
                    let _ = writeln!(out, r#"<polyline data-curve="{}" points="{}"/>"#, escape(c.id()), pts.join(" "));
                }
                out.push_str("</g>\n");
            }
            for (i, (m, pts)) in inst.members().iter().zip(&paths).enumerate() {
                let mapped: Vec<(f64, f64)> = pts.iter().map(|&p| frame.map(p)).collect();
                let id = escape(m.id.as_str());
                if mapped.len() >= 2 && mapped.first() != mapped.last() {
                    let pts: Vec<String> = mapped.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
                    let _ = writeln!(
                        out,
                        r#"<polyline class="member" data-member="{id}" points="{}" fill="none" stroke="{}" stroke-width="3"/>"#,
                        pts.join(" "),
                        color[i]
                    );
                } else {
                    let (x, y) = mapped[0];
                    let _ = writeln!(
                        out,
                        r#"<circle class="member" data-member="{id}" cx="{x:.3}" cy="{y:.3}" r="4" fill="{}"/>"#,
                        color[i]
                    );
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
