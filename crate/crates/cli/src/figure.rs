//! SVG diagrams of the main apartment. Vertex `(s,t)` sits at
//! `(cx - (s+t)·u, cy - (t-s)·u·√3)`, so `Δ_N` is an equilateral triangle.

use std::fmt::Write;

use apaver_core::paving::{ring_vertices, triangle_vertices};
use apaver_core::{classify, filtration_order, region_of, Region, Stage, Vertex, VertexType};

use crate::config::FigureKind;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 760.0;

/// Fill per vertex type, base point first.
const TYPE_COLORS: [&str; 13] = [
    "#000000", "#e6194b", "#f58231", "#ffe119", "#bfef45", "#3cb44b", "#42d4f4", "#4363d8", "#911eb4", "#f032e6",
    "#a9a9a9", "#9a6324", "#800000",
];

struct Frame {
    cx: f64,
    cy: f64,
    u: f64,
}

impl Frame {
    fn new(big_n: i32) -> Self {
        let n = big_n.max(1) as f64;
        Frame {
            cx: WIDTH / 2.0 - 60.0,
            cy: HEIGHT / 2.0,
            u: 320.0 / (2.0 * n),
        }
    }

    fn at(&self, v: Vertex) -> (f64, f64) {
        (
            self.cx - f64::from(v.s + v.t) * self.u,
            self.cy - f64::from(v.t - v.s) * self.u * 3f64.sqrt(),
        )
    }

    fn radius(&self) -> f64 {
        (self.u * 0.42).min(12.0)
    }

    fn font(&self) -> f64 {
        (self.u * 0.5).min(12.0)
    }
}

fn header(out: &mut String, title: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif">"#
    )
    .unwrap();
    writeln!(out, "<title>{title}</title>").unwrap();
    writeln!(out, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##).unwrap();
}

fn triangle_outline(out: &mut String, f: &Frame, i: i32, stroke: &str) {
    let pts: Vec<String> = [Vertex::new(i, 0), Vertex::new(0, i), Vertex::new(-i, -i)]
        .iter()
        .map(|&v| {
            let (x, y) = f.at(v);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    writeln!(
        out,
        r#"<polygon points="{}" fill="none" stroke="{stroke}" stroke-width="1"/>"#,
        pts.join(" ")
    )
    .unwrap();
}

fn vertex(out: &mut String, f: &Frame, v: Vertex, fill: &str, label: &str) {
    let (x, y) = f.at(v);
    writeln!(
        out,
        r##"<circle cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="{fill}" stroke="#333333" stroke-width="0.5"><title>({},{})</title></circle>"##,
        f.radius(),
        v.s,
        v.t
    )
    .unwrap();
    if !label.is_empty() {
        writeln!(
            out,
            r##"<text x="{x:.2}" y="{:.2}" font-size="{:.2}" text-anchor="middle" fill="#000000">{label}</text>"##,
            y + f.font() * 0.35,
            f.font()
        )
        .unwrap();
    }
}

fn legend(out: &mut String, entries: &[(&str, String)]) {
    for (row, (color, text)) in entries.iter().enumerate() {
        let y = 30.0 + 20.0 * row as f64;
        writeln!(
            out,
            r##"<rect x="{:.2}" y="{:.2}" width="12" height="12" fill="{color}" stroke="#333333" stroke-width="0.5"/>"##,
            WIDTH - 130.0,
            y - 10.0
        )
        .unwrap();
        writeln!(out, r#"<text x="{:.2}" y="{y:.2}" font-size="12">{text}</text>"#, WIDTH - 112.0).unwrap();
    }
}

pub fn render(kind: FigureKind, big_n: i32, a: i32) -> String {
    let f = Frame::new(big_n);
    let mut out = String::new();
    match kind {
        FigureKind::Types => types(&mut out, &f, big_n, a),
        FigureKind::Triangles => triangles(&mut out, &f, big_n),
        FigureKind::Movement => movement(&mut out, &f, big_n, a),
        FigureKind::Order => order(&mut out, &f, big_n, a),
    }
    out.push_str("</svg>\n");
    out
}

fn types(out: &mut String, f: &Frame, big_n: i32, a: i32) {
    header(out, &format!("Vertex types on Δ_{big_n} at a={a}"));
    triangle_outline(out, f, big_n, "#cccccc");
    for v in triangle_vertices(big_n) {
        let ty = classify(v, a);
        let label = ty.code().map_or(String::new(), |c| c.to_string());
        vertex(out, f, v, TYPE_COLORS[ty as usize], &label);
    }
    let entries: Vec<(&str, String)> = VertexType::ALL
        .iter()
        .map(|&ty| (TYPE_COLORS[ty as usize], format!("type {ty}")))
        .collect();
    legend(out, &entries);
}

fn triangles(out: &mut String, f: &Frame, big_n: i32) {
    header(out, &format!("Triangles Δ_i, i ≤ {big_n}"));
    for i in 1..=big_n {
        triangle_outline(out, f, i, "#888888");
    }
    for i in 0..=big_n {
        let shade = if i % 2 == 0 { "#dddddd" } else { "#ffffff" };
        for (_, v) in ring_vertices(i) {
            vertex(out, f, v, shade, &i.to_string());
        }
    }
}

fn movement(out: &mut String, f: &Frame, big_n: i32, a: i32) {
    header(out, &format!("Retractions on Δ_{big_n} at a={a}"));
    writeln!(
        out,
        r##"<defs><marker id="head" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#444444"/></marker></defs>"##
    )
    .unwrap();
    triangle_outline(out, f, big_n, "#cccccc");
    for v in triangle_vertices(big_n) {
        let fill = match region_of(v) {
            Region::S => "#f58231",
            Region::T => "#4363d8",
            Region::V => "#eeeeee",
        };
        vertex(out, f, v, fill, "");
    }
    for v in triangle_vertices(big_n) {
        for w in targets(v, a) {
            let (x1, y1) = f.at(v);
            let (x2, y2) = f.at(w);
            // stop short of the target circle
            let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt();
            let k = (len - f.radius()) / len;
            writeln!(
                out,
                r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{:.2}" y2="{:.2}" stroke="#444444" stroke-width="1" marker-end="url(#head)"/>"##,
                x1 + (x2 - x1) * k,
                y1 + (y2 - y1) * k
            )
            .unwrap();
        }
    }
    legend(
        out,
        &[
            ("#f58231", "S region".into()),
            ("#4363d8", "T region".into()),
            ("#eeeeee", "V region".into()),
        ],
    );
}

/// Vertices a non-stationary point of `v` can retract to, one per admissible
/// valuation of `y` (type 1) or `x` (type 7).
fn targets(v: Vertex, a: i32) -> Vec<Vertex> {
    let Vertex { s, t } = v;
    match classify(v, 0) {
        VertexType::T1 => (1..=a.min(t - 1))
            .map(|e| {
                let d = t - e;
                Vertex::new(s - d, t - 2 * d)
            })
            .collect(),
        VertexType::T7 => (1..=a.min(s - 1))
            .map(|e| {
                let d = s - e;
                Vertex::new(s - 2 * d, t - d)
            })
            .collect(),
        _ => vec![],
    }
}

fn order(out: &mut String, f: &Frame, big_n: i32, a: i32) {
    header(out, &format!("Order on Δ_{big_n} at a={a}"));
    for i in 1..=big_n {
        triangle_outline(out, f, i, "#dddddd");
    }
    for e in filtration_order(big_n, a) {
        let fill = match e.stage {
            Stage::Base => "#ffffff",
            Stage::I => "#ffe119",
            Stage::II => "#42d4f4",
            Stage::III => "#bfef45",
        };
        vertex(out, f, e.vertex, fill, &(e.rank + 1).to_string());
    }
    legend(
        out,
        &[
            ("#ffe119", "stage (i)".into()),
            ("#42d4f4", "stage (ii)".into()),
            ("#bfef45", "corners".into()),
        ],
    );
}
