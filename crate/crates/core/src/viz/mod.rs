//! SVG figures: frequency wordcloud, factorial plane and year trajectory.
//!
//! Renderers are pure functions of their inputs and a [`PlotSpec`]; the
//! same inputs always give byte-identical documents. Every coordinate is
//! written with two decimals.

mod metrics;
mod plane;
mod trajectory;
mod wordcloud;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::correspondence::CaModel;
use crate::error::{Error, Result};

pub use metrics::text_width;
pub use plane::{render_plane, PlanePoint};
pub use trajectory::{render_trajectory, YearPoint};
pub use wordcloud::{render_wordcloud, PlacedWord, Wordcloud};

/// Layout and styling constants shared by all figures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotSpec {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    /// Fill colors, assigned to groups (or wordcloud ranks) in order and
    /// reused cyclically.
    pub palette: Vec<String>,
    pub font_family: String,
    /// Wordcloud font size range.
    pub min_font: f64,
    pub max_font: f64,
    /// Font size of point labels and axis annotations.
    pub label_font: f64,
    /// Point labels beyond this many are not drawn.
    pub max_labels: usize,
    pub marker_radius: f64,
}

impl Default for PlotSpec {
    fn default() -> Self {
        Self {
            width: 900.0,
            height: 700.0,
            margin: 50.0,
            palette: [
                "#7f7f7f", "#2ca02c", "#1f77b4", "#d62728", "#9467bd", "#ff7f0e", "#8c564b",
                "#17becf",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            font_family: "Helvetica, Arial, sans-serif".into(),
            min_font: 9.0,
            max_font: 56.0,
            label_font: 11.0,
            max_labels: 150,
            marker_radius: 3.5,
        }
    }
}

impl PlotSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("width", self.width),
            ("height", self.height),
            ("min_font", self.min_font),
            ("max_font", self.max_font),
            ("label_font", self.label_font),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(format!(
                    "plot {name} must be positive, got {v}"
                )));
            }
        }
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return Err(Error::param("plot margin must be nonnegative"));
        }
        if 2.0 * self.margin >= self.width.min(self.height) {
            return Err(Error::param("plot margins leave no drawing area"));
        }
        if self.min_font > self.max_font {
            return Err(Error::param("min_font exceeds max_font"));
        }
        if self.palette.is_empty() {
            return Err(Error::param("palette is empty"));
        }
        Ok(())
    }

    pub(crate) fn color(&self, k: usize) -> &str {
        &self.palette[k % self.palette.len()]
    }
}

/// Axis annotation of a factorial plane: which axes are shown and the
/// share of inertia each carries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneAxes {
    /// 0-based axis indices (horizontal, vertical).
    pub axes: (usize, usize),
    /// Percent of total inertia on each displayed axis.
    pub inertia_pct: (f64, f64),
}

impl PlaneAxes {
    pub fn from_model(model: &CaModel, x_axis: usize, y_axis: usize) -> Result<Self> {
        for a in [x_axis, y_axis] {
            if a >= model.n_dims_kept {
                return Err(Error::param(format!(
                    "axis {} requested but the model keeps {}",
                    a + 1,
                    model.n_dims_kept
                )));
            }
        }
        Ok(Self {
            axes: (x_axis, y_axis),
            inertia_pct: (model.inertia_pct(x_axis), model.inertia_pct(y_axis)),
        })
    }

    /// Axis labels such as `Dim 1 (23.41%)`.
    pub fn labels(&self) -> (String, String) {
        (
            format!("Dim {} ({:.2}%)", self.axes.0 + 1, self.inertia_pct.0),
            format!("Dim {} ({:.2}%)", self.axes.1 + 1, self.inertia_pct.1),
        )
    }
}

/// Axis-aligned box, `x0 <= x1`, `y0 <= y1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn centered(cx: f64, cy: f64, w: f64, h: f64) -> Self {
        Self {
            x0: cx - w / 2.0,
            y0: cy - h / 2.0,
            x1: cx + w / 2.0,
            y1: cy + h / 2.0,
        }
    }

    /// True when the interiors intersect; touching edges do not count.
    pub fn overlaps(&self, other: &Rect) -> bool {
        self.x0 < other.x1 && other.x0 < self.x1 && self.y0 < other.y1 && other.y0 < self.y1
    }

    pub fn inside(&self, outer: &Rect) -> bool {
        self.x0 >= outer.x0 && self.x1 <= outer.x1 && self.y0 >= outer.y0 && self.y1 <= outer.y1
    }
}

/// Two-decimal formatting without a negative zero.
pub(crate) fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Minimal SVG document builder.
pub(crate) struct Svg {
    buf: String,
}

impl Svg {
    pub fn new(spec: &PlotSpec) -> Self {
        let mut buf = String::new();
        let _ = writeln!(buf, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            buf,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0.00 0.00 {w} {h}" font-family="{f}">"#,
            w = num(spec.width),
            h = num(spec.height),
            f = escape(&spec.font_family)
        );
        let _ = writeln!(
            buf,
            r##"<rect x="0.00" y="0.00" width="{}" height="{}" fill="#ffffff"/>"##,
            num(spec.width),
            num(spec.height)
        );
        Self { buf }
    }

    pub fn line(&mut self, class: &str, a: (f64, f64), b: (f64, f64), stroke: &str, width: f64) {
        let _ = writeln!(
            self.buf,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{}"/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1),
            num(width)
        );
    }

    pub fn text(
        &mut self,
        class: &str,
        at: (f64, f64),
        size: f64,
        anchor: &str,
        fill: &str,
        content: &str,
    ) {
        let _ = writeln!(
            self.buf,
            r#"<text class="{class}" x="{}" y="{}" font-size="{}" text-anchor="{anchor}" fill="{fill}">{}</text>"#,
            num(at.0),
            num(at.1),
            num(size),
            escape(content)
        );
    }

    pub fn circle(&mut self, class: &str, at: (f64, f64), r: f64, fill: &str) {
        let _ = writeln!(
            self.buf,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            num(at.0),
            num(at.1),
            num(r)
        );
    }

    pub fn polygon(&mut self, class: &str, points: &[(f64, f64)], fill: &str) {
        let _ = writeln!(
            self.buf,
            r#"<polygon class="{class}" points="{}" fill="{fill}"/>"#,
            point_list(points)
        );
    }

    pub fn polyline(&mut self, class: &str, points: &[(f64, f64)], stroke: &str, width: f64) {
        let _ = writeln!(
            self.buf,
            r#"<polyline class="{class}" points="{}" fill="none" stroke="{stroke}" stroke-width="{}"/>"#,
            point_list(points),
            num(width)
        );
    }

    pub fn finish(mut self) -> String {
        self.buf.push_str("</svg>\n");
        self.buf
    }
}

fn point_list(points: &[(f64, f64)]) -> String {
    points
        .iter()
        .map(|&(x, y)| format!("{},{}", num(x), num(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Maps data coordinates onto the canvas with one scale for both axes and
/// the origin at the canvas center.
pub(crate) struct CenteredScale {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl CenteredScale {
    pub fn fit(spec: &PlotSpec, points: impl Iterator<Item = (f64, f64)>) -> Self {
        let (mut ex, mut ey) = (0.0_f64, 0.0_f64);
        for (x, y) in points {
            ex = ex.max(x.abs());
            ey = ey.max(y.abs());
        }
        let half_w = spec.width / 2.0 - spec.margin;
        let half_h = spec.height / 2.0 - spec.margin;
        let sx = if ex > 0.0 {
            half_w / (ex * 1.1)
        } else {
            f64::INFINITY
        };
        let sy = if ey > 0.0 {
            half_h / (ey * 1.1)
        } else {
            f64::INFINITY
        };
        let scale = sx.min(sy);
        Self {
            cx: spec.width / 2.0,
            cy: spec.height / 2.0,
            scale: if scale.is_finite() { scale } else { 1.0 },
        }
    }

    pub fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (self.cx + x * self.scale, self.cy - y * self.scale)
    }

    pub fn origin(&self) -> (f64, f64) {
        (self.cx, self.cy)
    }
}

/// Draws the two axes through the origin with their inertia labels.
pub(crate) fn draw_axes(svg: &mut Svg, spec: &PlotSpec, origin: (f64, f64), axes: &PlaneAxes) {
    let grey = "#999999";
    svg.line(
        "axis",
        (spec.margin, origin.1),
        (spec.width - spec.margin, origin.1),
        grey,
        1.0,
    );
    svg.line(
        "axis",
        (origin.0, spec.margin),
        (origin.0, spec.height - spec.margin),
        grey,
        1.0,
    );
    let (xl, yl) = axes.labels();
    svg.text(
        "axis-label",
        (spec.width - spec.margin, origin.1 - 6.0),
        spec.label_font,
        "end",
        "#333333",
        &xl,
    );
    svg.text(
        "axis-label",
        (origin.0 + 6.0, spec.margin + spec.label_font),
        spec.label_font,
        "start",
        "#333333",
        &yl,
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1.00");
        assert_eq!(num(-0.001), "0.00");
        assert_eq!(num(2.345678), "2.35");
    }

    #[test]
    fn escaping() {
        assert_eq!(escape(r#"a<b>&"c'"#), "a&lt;b&gt;&amp;&quot;c&apos;");
    }

    #[test]
    fn rect_overlap_excludes_touching() {
        let a = Rect::centered(0.0, 0.0, 2.0, 2.0);
        let b = Rect::centered(2.0, 0.0, 2.0, 2.0);
        assert!(!a.overlaps(&b));
        let c = Rect::centered(1.5, 0.5, 2.0, 2.0);
        assert!(a.overlaps(&c));
    }

    #[test]
    fn plot_spec_validation() {
        assert!(PlotSpec::default().validate().is_ok());
        let bad = PlotSpec {
            margin: 400.0,
            ..PlotSpec::default()
        };
        assert!(bad.validate().is_err());
        let bad = PlotSpec {
            palette: vec![],
            ..PlotSpec::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn axis_labels_round_to_two_decimals() {
        let axes = PlaneAxes {
            axes: (0, 1),
            inertia_pct: (23.456, 7.0),
        };
        assert_eq!(
            axes.labels(),
            ("Dim 1 (23.46%)".into(), "Dim 2 (7.00%)".into())
        );
    }
}
