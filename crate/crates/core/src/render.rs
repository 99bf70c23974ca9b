//! Text and SVG pictures of chord diagrams.
//!
//! In the SVG, every pair of crossing chords gets a dot at the intersection: black when
//! the two crossing signs agree, white when they differ.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::invariants::ChordDiagram;

const CELL: usize = 4;

/// One row per chord drawn under the circle sequence, cut open at the basepoint.
pub fn chord_ascii(cd: &ChordDiagram) -> String {
    let mut out = String::new();
    let width = cd.circle.len() * CELL;
    out.push_str("chord sign |");
    for c in &cd.circle {
        let _ = write!(out, "{c:>w$}", w = CELL);
    }
    out.push('\n');
    out.push_str(&"-".repeat(12 + width));
    out.push('\n');
    for (c, &(a, b)) in cd.endpoints.iter().enumerate() {
        let mut row = vec![' '; width];
        let (ca, cb) = (a * CELL + CELL - 1, b * CELL + CELL - 1);
        for ch in row.iter_mut().take(cb).skip(ca + 1) {
            *ch = '-';
        }
        row[ca] = 'o';
        row[cb] = 'o';
        let crosses: Vec<String> = (0..cd.chord_count())
            .filter(|&q| q != c && cd.interleaved(c, q).unwrap_or(false))
            .map(|q| q.to_string())
            .collect();
        let sign = if cd.signs[c].value() > 0 { '+' } else { '-' };
        let _ = writeln!(
            out,
            "{c:>5} {sign:>4} |{}  x[{}]",
            row.into_iter().collect::<String>(),
            crosses.join(" ")
        );
    }
    let _ = writeln!(out, "cowrithe {}", cd.cowrithe());
    out
}

fn point(k: usize, total: usize, center: f64, radius: f64) -> (f64, f64) {
    let t = -PI / 2.0 + 2.0 * PI * k as f64 / total as f64;
    (center + radius * t.cos(), center + radius * t.sin())
}

fn intersect(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> (f64, f64) {
    let d1 = (q.0 - p.0, q.1 - p.1);
    let d2 = (s.0 - r.0, s.1 - r.1);
    let den = d1.0 * d2.1 - d1.1 * d2.0;
    let t = ((r.0 - p.0) * d2.1 - (r.1 - p.1) * d2.0) / den;
    (p.0 + t * d1.0, p.1 + t * d1.1)
}

/// SVG 1.1 rendering. Output depends only on the chord diagram.
pub fn chord_svg(cd: &ChordDiagram) -> String {
    let size = 400.0;
    let center = size / 2.0;
    let radius = 150.0;
    let total = cd.circle.len().max(1);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(
        s,
        r#"<circle cx="{center}" cy="{center}" r="{radius}" fill="none" stroke="black" stroke-width="2"/>"#
    );
    for &(a, b) in &cd.endpoints {
        let (p, q) = (
            point(a, total, center, radius),
            point(b, total, center, radius),
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-width="1.5"/>"#,
            p.0, p.1, q.0, q.1
        );
    }
    for (k, c) in cd.circle.iter().enumerate() {
        let (x, y) = point(k, total, center, radius + 16.0);
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{y:.2}" font-family="monospace" font-size="12" text-anchor="middle" dominant-baseline="middle">{c}</text>"#
        );
    }
    for (p, q) in cd.interleaved_pairs() {
        let (a, b) = cd.endpoints[p];
        let (c, d) = cd.endpoints[q];
        let (x, y) = intersect(
            point(a, total, center, radius),
            point(b, total, center, radius),
            point(c, total, center, radius),
            point(d, total, center, radius),
        );
        let fill = if cd.signs[p] == cd.signs[q] {
            "black"
        } else {
            "white"
        };
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{fill}" stroke="black"/>"#
        );
    }
    s.push_str("</svg>\n");
    s
}
