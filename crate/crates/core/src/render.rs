//! Text pictures of circle diagrams: points run bottom to top, `a!` is drawn to the
//! left of them and `b` to the right. `∘` marks a circle labeled 1, `•` one labeled `x`
//! and `*` the marked point.

use std::fmt::Write;
use std::str::FromStr;

use crate::algebra::{Generator, Labeling};
use crate::diagrams::{CircleDiagram, Matching};
use crate::error::Error;
use crate::rings::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" | "text" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            _ => Err(Error::Usage(format!("unknown render format {s:?}"))),
        }
    }
}

pub fn render_diagram(d: &CircleDiagram, format: Format) -> String {
    render(d, None, format)
}

pub fn render_generator(g: &Generator, format: Format) -> String {
    render(&g.diagram(), Some(g.labeling()), format)
}

fn render(d: &CircleDiagram, labels: Option<Labeling>, format: Format) -> String {
    match format {
        Format::Ascii => ascii(d, labels),
        Format::Svg => svg(d, labels),
    }
}

fn glyph(d: &CircleDiagram, labels: Option<Labeling>, p: usize) -> char {
    match labels.map(|v| v.get(d.circle_of(p))) {
        None => '·',
        Some(Label::One) => '∘',
        Some(Label::X) => '•',
    }
}

fn max_depth(m: &Matching) -> usize {
    m.depths().into_iter().max().unwrap_or(0)
}

/// One row of the left half: `┌`/`└` at the arc's depth column, enclosing arcs as `│`.
fn left_row(m: &Matching, width: usize, p: usize) -> Vec<char> {
    let depths = m.depths();
    let mut row = vec![' '; width];
    for (&(i, j), &d) in m.arcs().iter().zip(&depths) {
        if i < p && p < j {
            row[d] = '│';
        } else if p == i || p == j {
            row[d] = if p == j { '┌' } else { '└' };
            for c in row.iter_mut().skip(d + 1) {
                *c = '─';
            }
        }
    }
    row
}

fn ascii(d: &CircleDiagram, labels: Option<Labeling>) -> String {
    let n = d.n();
    let (wl, wr) = (max_depth(d.left()) + 1, max_depth(d.right()) + 1);
    let mut out = String::new();
    for p in (1..=2 * n).rev() {
        let left: String = left_row(d.left(), wl, p).into_iter().collect();
        let right: String = left_row(d.right(), wr, p)
            .into_iter()
            .rev()
            .map(|c| match c {
                '┌' => '┐',
                '└' => '┘',
                c => c,
            })
            .collect();
        let line = format!("{left}─{}─{right}", glyph(d, labels, p));
        let mark = if p == 1 { " *" } else { "" };
        let _ = writeln!(out, "{:>2} {line}{mark}", p);
    }
    out
}

const STEP: usize = 24;
const RUNG: usize = 14;
const MARGIN: usize = 20;

fn svg(d: &CircleDiagram, labels: Option<Labeling>) -> String {
    let n = d.n();
    let (wl, wr) = (max_depth(d.left()) + 1, max_depth(d.right()) + 1);
    let cx = MARGIN + wl * RUNG;
    let width = cx + wr * RUNG + MARGIN;
    let height = 2 * MARGIN + (2 * n).saturating_sub(1) * STEP;
    let y = |p: usize| MARGIN + (2 * n - p) * STEP;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="2">"#);
    for (m, w, sign) in [(d.left(), wl, -1i64), (d.right(), wr, 1)] {
        for (&(i, j), depth) in m.arcs().iter().zip(m.depths()) {
            let x = cx as i64 + sign * ((w - depth) * RUNG) as i64;
            let _ = writeln!(out, r#"<path d="M{cx} {} H{x} V{} H{cx}"/>"#, y(j), y(i));
        }
    }
    let _ = writeln!(out, "</g>");
    for p in 1..=2 * n {
        let fill = match labels.map(|v| v.get(d.circle_of(p))) {
            None => "gray",
            Some(Label::One) => "white",
            Some(Label::X) => "black",
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{cx}" cy="{}" r="5" fill="{fill}" stroke="black" stroke-width="1.5"/>"#,
            y(p)
        );
    }
    if n > 0 {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="14">*</text>"#,
            cx + 8,
            y(1) + 14
        );
    }
    out.push_str("</svg>\n");
    out
}
