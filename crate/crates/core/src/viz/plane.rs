use serde::{Deserialize, Serialize};

use super::metrics::{text_width, BASELINE_OFFSET, LINE_HEIGHT};
use super::{draw_axes, CenteredScale, PlaneAxes, PlotSpec, Rect, Svg};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub label: String,
    /// Points sharing a group share a color; groups take palette colors in
    /// order of first appearance.
    pub group: String,
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub fn new(label: impl Into<String>, group: impl Into<String>, x: f64, y: f64) -> Self {
        Self {
            label: label.into(),
            group: group.into(),
            x,
            y,
        }
    }
}

/// Label offsets tried around a marker, as multiples of the base gap:
/// right, left, above, below, then the four diagonals.
const DIRECTIONS: [(f64, f64); 8] = [
    (1.0, 0.0),
    (-1.0, 0.0),
    (0.0, -1.0),
    (0.0, 1.0),
    (1.0, -1.0),
    (-1.0, -1.0),
    (1.0, 1.0),
    (-1.0, 1.0),
];

fn label_box(anchor: (f64, f64), dir: (f64, f64), gap: f64, w: f64, h: f64) -> Rect {
    // Place the box so its nearest edge sits `gap` away from the marker.
    let cx = anchor.0 + dir.0 * (gap + w / 2.0);
    let cy = anchor.1 + dir.1 * (gap + h / 2.0);
    Rect::centered(cx, cy, w, h)
}

/// Scatter of labelled points on a factorial plane.
///
/// Both axes share one scale and cross at the data origin, which sits at
/// the canvas center. Labels are placed greedily in input order at the
/// first of several positions around their marker that overlaps neither
/// an earlier label nor the canvas edge; labels with no free position, and
/// those beyond `spec.max_labels`, are omitted.
pub fn render_plane(points: &[PlanePoint], axes: &PlaneAxes, spec: &PlotSpec) -> Result<String> {
    spec.validate()?;
    if points.is_empty() {
        return Err(Error::Precondition("plane needs at least one point".into()));
    }
    if let Some(p) = points.iter().find(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::Render(format!(
            "point `{}` has a non-finite coordinate ({}, {})",
            p.label, p.x, p.y
        )));
    }

    let mut groups: Vec<&str> = Vec::new();
    for p in points {
        if !groups.contains(&p.group.as_str()) {
            groups.push(&p.group);
        }
    }
    let color_of = |g: &str| spec.color(groups.iter().position(|x| *x == g).unwrap_or(0));

    let scale = CenteredScale::fit(spec, points.iter().map(|p| (p.x, p.y)));
    let mut svg = Svg::new(spec);
    draw_axes(&mut svg, spec, scale.origin(), axes);

    let canvas = Rect {
        x0: 0.0,
        y0: 0.0,
        x1: spec.width,
        y1: spec.height,
    };
    let h = spec.label_font * LINE_HEIGHT;
    let gap = spec.marker_radius + 2.0;
    let mut taken: Vec<Rect> = Vec::new();
    let mut labels = Vec::new();
    for (k, p) in points.iter().enumerate() {
        let at = scale.map(p.x, p.y);
        svg.circle("point", at, spec.marker_radius, color_of(&p.group));
        if k >= spec.max_labels || p.label.is_empty() {
            continue;
        }
        let w = text_width(&p.label, spec.label_font);
        let spot = (1..=3).find_map(|ring| {
            DIRECTIONS.iter().find_map(|&dir| {
                let b = label_box(at, dir, gap * ring as f64, w, h);
                (b.inside(&canvas) && !taken.iter().any(|t| t.overlaps(&b))).then_some(b)
            })
        });
        if let Some(b) = spot {
            taken.push(b);
            labels.push((b, p));
        }
    }
    for (b, p) in labels {
        let baseline = (b.y0 + b.y1) / 2.0 + BASELINE_OFFSET * spec.label_font;
        svg.text(
            "point-label",
            (b.x0, baseline),
            spec.label_font,
            "start",
            color_of(&p.group),
            &p.label,
        );
    }

    for (k, g) in groups.iter().enumerate() {
        let y = spec.margin / 2.0 + k as f64 * h * 1.2;
        svg.circle(
            "legend-marker",
            (spec.margin / 2.0, y),
            spec.marker_radius,
            spec.color(k),
        );
        svg.text(
            "legend-label",
            (
                spec.margin / 2.0 + 2.0 * spec.marker_radius + 2.0,
                y + BASELINE_OFFSET * spec.label_font,
            ),
            spec.label_font,
            "start",
            "#333333",
            g,
        );
    }
    Ok(svg.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axes() -> PlaneAxes {
        PlaneAxes {
            axes: (0, 1),
            inertia_pct: (40.0, 25.5),
        }
    }

    fn markers(svg: &str, class: &str) -> Vec<(f64, f64, String)> {
        let doc = roxmltree::Document::parse(svg).unwrap();
        doc.descendants()
            .filter(|n| n.attribute("class") == Some(class))
            .map(|n| {
                (
                    n.attribute("cx").unwrap().parse().unwrap(),
                    n.attribute("cy").unwrap().parse().unwrap(),
                    n.attribute("fill").unwrap().to_string(),
                )
            })
            .collect()
    }

    #[test]
    fn origin_maps_to_center() {
        let spec = PlotSpec::default();
        let svg = render_plane(&[PlanePoint::new("o", "g", 0.0, 0.0)], &axes(), &spec).unwrap();
        let m = markers(&svg, "point");
        assert_eq!((m[0].0, m[0].1), (spec.width / 2.0, spec.height / 2.0));
        assert!(svg.contains("Dim 1 (40.00%)"));
        assert!(svg.contains("Dim 2 (25.50%)"));
    }

    #[test]
    fn mirrored_points_are_mirrored_on_canvas() {
        let spec = PlotSpec::default();
        let pts = [(0.3, -0.1), (-0.7, 0.45), (0.05, 0.2)];
        let a: Vec<_> = pts
            .iter()
            .map(|&(x, y)| PlanePoint::new("", "g", x, y))
            .collect();
        let b: Vec<_> = pts
            .iter()
            .map(|&(x, y)| PlanePoint::new("", "g", -x, -y))
            .collect();
        let ma = markers(&render_plane(&a, &axes(), &spec).unwrap(), "point");
        let mb = markers(&render_plane(&b, &axes(), &spec).unwrap(), "point");
        for (p, q) in ma.iter().zip(&mb) {
            assert!((p.0 + q.0 - spec.width).abs() < 0.011);
            assert!((p.1 + q.1 - spec.height).abs() < 0.011);
        }
    }

    #[test]
    fn groups_take_palette_colors_in_order() {
        let spec = PlotSpec::default();
        let pts = vec![
            PlanePoint::new("d1", "metadoc+ dim 1", 0.5, 0.1),
            PlanePoint::new("d2", "metadoc- dim 1", -0.5, 0.1),
            PlanePoint::new("d3", "other", 0.0, -0.2),
            PlanePoint::new("d4", "metadoc+ dim 1", 0.6, 0.0),
        ];
        let svg = render_plane(&pts, &axes(), &spec).unwrap();
        let legend = markers(&svg, "legend-marker");
        let colors: Vec<&str> = legend.iter().map(|m| m.2.as_str()).collect();
        assert_eq!(
            colors,
            [&spec.palette[0], &spec.palette[1], &spec.palette[2]]
        );
        let points = markers(&svg, "point");
        assert_eq!(points[3].2, spec.palette[0]);
    }

    #[test]
    fn labels_do_not_overlap() {
        let spec = PlotSpec::default();
        let pts: Vec<_> = (0..40)
            .map(|k| {
                PlanePoint::new(
                    format!("word{k}"),
                    "g",
                    (k % 5) as f64 * 0.01,
                    (k / 5) as f64 * 0.01,
                )
            })
            .collect();
        let svg = render_plane(&pts, &axes(), &spec).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let boxes: Vec<Rect> = doc
            .descendants()
            .filter(|n| n.attribute("class") == Some("point-label"))
            .map(|n| {
                let x: f64 = n.attribute("x").unwrap().parse().unwrap();
                let y: f64 = n.attribute("y").unwrap().parse().unwrap();
                let w = text_width(n.text().unwrap(), spec.label_font);
                let h = spec.label_font * LINE_HEIGHT;
                let cy = y - BASELINE_OFFSET * spec.label_font;
                Rect {
                    x0: x,
                    y0: cy - h / 2.0,
                    x1: x + w,
                    y1: cy + h / 2.0,
                }
            })
            .collect();
        assert!(!boxes.is_empty());
        for (i, a) in boxes.iter().enumerate() {
            for b in &boxes[i + 1..] {
                // Allow for the two-decimal rounding of written coordinates.
                let shrunk = Rect {
                    x0: a.x0 + 0.01,
                    y0: a.y0 + 0.01,
                    x1: a.x1 - 0.01,
                    y1: a.y1 - 0.01,
                };
                assert!(!shrunk.overlaps(b));
            }
        }
    }

    #[test]
    fn rejects_non_finite_and_empty() {
        let err = render_plane(
            &[PlanePoint::new("bad", "g", f64::NAN, 0.0)],
            &axes(),
            &PlotSpec::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("`bad`"));
        assert!(render_plane(&[], &axes(), &PlotSpec::default()).is_err());
    }
}
