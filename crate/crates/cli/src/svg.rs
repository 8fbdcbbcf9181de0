//! Plain SVG drawings of geometric instances and runs.

use std::collections::BTreeSet;
use std::fmt::Write;

use ohs::geom::disc::{DiscInstance, DiscQuery};
use ohs::geom::exact::{to_f64, ExactPoint};
use ohs::geom::halfplane::{HalfPlaneInstance, HalfPlaneQuery, Side};
use ohs::hypercore::PointId;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 24.0;

/// Axis-aligned window mapped onto the canvas, y pointing up.
struct Frame {
    x0: f64,
    y0: f64,
    sx: f64,
    sy: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn new(xs: &[f64], ys: &[f64], uniform: bool) -> Frame {
        let bounds = |v: &[f64]| {
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if hi - lo < 1e-9 {
                (lo - 0.5, hi + 0.5)
            } else {
                let pad = (hi - lo) * 0.05;
                (lo - pad, hi + pad)
            }
        };
        let (x0, x1) = bounds(xs);
        let (y0, y1) = bounds(ys);
        let inner = SIZE - 2.0 * MARGIN;
        let (mut sx, mut sy) = (inner / (x1 - x0), inner / (y1 - y0));
        if uniform {
            sx = sx.min(sy);
            sy = sx;
        }
        Frame { x0, y0, sx, sy, w: x1 - x0, h: y1 - y0 }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) * self.sx
    }

    fn py(&self, y: f64) -> f64 {
        SIZE - MARGIN - (y - self.y0) * self.sy
    }
}

fn open(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
}

fn points(out: &mut String, f: &Frame, pts: &[(f64, f64)], stabbers: &BTreeSet<PointId>) {
    for (i, &(x, y)) in pts.iter().enumerate() {
        let (fill, r) = if stabbers.contains(&i) { ("crimson", 4.5) } else { ("black", 2.5) };
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}"><title>{i}</title></circle>"#,
            f.px(x),
            f.py(y)
        );
    }
}

fn floats(pts: &[ExactPoint]) -> Vec<(f64, f64)> {
    pts.iter().map(ExactPoint::to_f64).collect()
}

/// Segment of `a x + b y = c` inside the frame window.
fn clip(f: &Frame, a: f64, b: f64, c: f64) -> Option<((f64, f64), (f64, f64))> {
    let (x1, y1) = (f.x0 + f.w, f.y0 + f.h);
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if b.abs() > 1e-12 {
        for x in [f.x0, x1] {
            let y = (c - a * x) / b;
            if y >= f.y0 && y <= y1 {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > 1e-12 {
        for y in [f.y0, y1] {
            let x = (c - b * y) / a;
            if x >= f.x0 && x <= x1 {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    match (hits.first(), hits.last()) {
        (Some(&p), Some(&q)) if p != q => Some((p, q)),
        _ => None,
    }
}

pub fn halfplane(inst: &HalfPlaneInstance, queries: &[HalfPlaneQuery], stabbers: &BTreeSet<PointId>) -> String {
    let pts = floats(inst.points());
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let f = Frame::new(&xs, &ys, false);
    let mut out = String::new();
    open(&mut out);
    for (side, color) in [(Side::Below, "steelblue"), (Side::Above, "seagreen")] {
        let path: Vec<String> = inst
            .envelope(side)
            .vertices
            .iter()
            .map(|&v| format!("{:.2},{:.2}", f.px(pts[v].0), f.py(pts[v].1)))
            .collect();
        if path.len() > 1 {
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                path.join(" ")
            );
        }
    }
    for q in queries {
        let (a, b, c) = q.coefficients();
        if let Some((p, r)) = clip(&f, to_f64(a), to_f64(b), to_f64(c)) {
            let color = if q.side() == Side::Below { "steelblue" } else { "seagreen" };
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-dasharray="4 3" stroke-opacity="0.6"/>"#,
                f.px(p.0),
                f.py(p.1),
                f.px(r.0),
                f.py(r.1)
            );
        }
    }
    points(&mut out, &f, &pts, stabbers);
    out.push_str("</svg>\n");
    out
}

pub fn disc(inst: &DiscInstance, queries: &[DiscQuery], stabbers: &BTreeSet<PointId>) -> String {
    let pts = floats(inst.points());
    let tiling = inst.tiling();
    let mut xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let mut ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    for &t in inst.tiles().keys() {
        for o in tiling.quadrant_centers(t) {
            let (ox, oy) = o.to_f64();
            xs.push(ox);
            ys.push(oy);
        }
    }
    for q in queries {
        let (cx, cy) = q.center.to_f64();
        xs.extend([cx - 1.0, cx + 1.0]);
        ys.extend([cy - 1.0, cy + 1.0]);
    }
    let f = Frame::new(&xs, &ys, true);
    let mut out = String::new();
    open(&mut out);
    for &t in inst.tiles().keys() {
        let (x, y) = tiling.lower_left(t).to_f64();
        let side = 0.5 * f.sx;
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{side:.2}" height="{side:.2}" fill="none" stroke="gray" stroke-width="0.8"/>"#,
            f.px(x),
            f.py(y + 0.5)
        );
        for o in tiling.quadrant_centers(t) {
            let (ox, oy) = o.to_f64();
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="1.5" fill="gray"/>"#, f.px(ox), f.py(oy));
        }
    }
    for q in queries {
        let (cx, cy) = q.center.to_f64();
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="darkorange" stroke-opacity="0.6"/>"#,
            f.px(cx),
            f.py(cy),
            f.sx
        );
    }
    points(&mut out, &f, &pts, stabbers);
    out.push_str("</svg>\n");
    out
}
