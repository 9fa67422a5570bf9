use serde::{Deserialize, Serialize};

use super::metrics::BASELINE_OFFSET;
use super::{draw_axes, CenteredScale, PlaneAxes, PlotSpec, Svg};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YearPoint {
    pub year: i32,
    pub x: f64,
    pub y: f64,
}

const ARROW_LENGTH: f64 = 10.0;
const ARROW_HALF_WIDTH: f64 = 4.0;

/// Path of period positions on a factorial plane, one arrow per step.
///
/// Points must be in strictly increasing year order.
pub fn render_trajectory(
    points: &[YearPoint],
    axes: &PlaneAxes,
    spec: &PlotSpec,
) -> Result<String> {
    spec.validate()?;
    if points.len() < 2 {
        return Err(Error::Precondition(
            "trajectory needs at least two periods".into(),
        ));
    }
    for w in points.windows(2) {
        if w[0].year == w[1].year {
            return Err(Error::Precondition(format!(
                "duplicate year {} in trajectory",
                w[0].year
            )));
        }
        if w[0].year > w[1].year {
            return Err(Error::Precondition(format!(
                "years out of order in trajectory: {} before {}",
                w[0].year, w[1].year
            )));
        }
    }
    if let Some(p) = points.iter().find(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::Render(format!(
            "year {} has a non-finite coordinate",
            p.year
        )));
    }

    let scale = CenteredScale::fit(spec, points.iter().map(|p| (p.x, p.y)));
    let mapped: Vec<(f64, f64)> = points.iter().map(|p| scale.map(p.x, p.y)).collect();
    let mut svg = Svg::new(spec);
    draw_axes(&mut svg, spec, scale.origin(), axes);

    let stroke = spec.color(2);
    svg.polyline("trajectory", &mapped, stroke, 1.5);
    for w in mapped.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len = dx.hypot(dy);
        if len < 1e-9 {
            continue;
        }
        let (ux, uy) = (dx / len, dy / len);
        // Tip stops at the vertex marker's edge.
        let tip = (b.0 - ux * spec.marker_radius, b.1 - uy * spec.marker_radius);
        let base = (tip.0 - ux * ARROW_LENGTH, tip.1 - uy * ARROW_LENGTH);
        let left = (
            base.0 - uy * ARROW_HALF_WIDTH,
            base.1 + ux * ARROW_HALF_WIDTH,
        );
        let right = (
            base.0 + uy * ARROW_HALF_WIDTH,
            base.1 - ux * ARROW_HALF_WIDTH,
        );
        svg.polygon("arrowhead", &[tip, left, right], stroke);
    }
    for (p, &at) in points.iter().zip(&mapped) {
        svg.circle("year-point", at, spec.marker_radius, stroke);
        svg.text(
            "year-label",
            (
                at.0 + spec.marker_radius + 3.0,
                at.1 - spec.marker_radius - 3.0 + BASELINE_OFFSET * spec.label_font,
            ),
            spec.label_font,
            "start",
            "#333333",
            &p.year.to_string(),
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
            inertia_pct: (30.0, 20.0),
        }
    }

    fn yp(year: i32, x: f64, y: f64) -> YearPoint {
        YearPoint { year, x, y }
    }

    fn arrowheads(svg: &str) -> Vec<Vec<(f64, f64)>> {
        let doc = roxmltree::Document::parse(svg).unwrap();
        doc.descendants()
            .filter(|n| n.attribute("class") == Some("arrowhead"))
            .map(|n| {
                n.attribute("points")
                    .unwrap()
                    .split(' ')
                    .map(|pair| {
                        let (x, y) = pair.split_once(',').unwrap();
                        (x.parse().unwrap(), y.parse().unwrap())
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn two_years_single_arrow() {
        let svg = render_trajectory(
            &[yp(2005, -0.3, 0.1), yp(2006, 0.4, -0.2)],
            &axes(),
            &PlotSpec::default(),
        )
        .unwrap();
        assert_eq!(arrowheads(&svg).len(), 1);
        assert!(svg.contains(">2005</text>") && svg.contains(">2006</text>"));
    }

    #[test]
    fn collinear_arrows_share_direction() {
        let pts: Vec<_> = (0..5)
            .map(|k| yp(2000 + k, -0.4 + 0.2 * k as f64, 0.1 * k as f64))
            .collect();
        let svg = render_trajectory(&pts, &axes(), &PlotSpec::default()).unwrap();
        let heads = arrowheads(&svg);
        assert_eq!(heads.len(), 4);
        let dirs: Vec<f64> = heads
            .iter()
            .map(|h| {
                let mid = ((h[1].0 + h[2].0) / 2.0, (h[1].1 + h[2].1) / 2.0);
                (h[0].1 - mid.1).atan2(h[0].0 - mid.0)
            })
            .collect();
        for d in &dirs {
            assert!((d - dirs[0]).abs() < 1e-2);
        }
    }

    #[test]
    fn order_and_duplicates_rejected() {
        let s = PlotSpec::default();
        assert!(
            render_trajectory(&[yp(2005, 0.0, 0.0), yp(2005, 1.0, 0.0)], &axes(), &s)
                .unwrap_err()
                .to_string()
                .contains("duplicate year 2005")
        );
        assert!(render_trajectory(&[yp(2006, 0.0, 0.0), yp(2005, 1.0, 0.0)], &axes(), &s).is_err());
        assert!(render_trajectory(&[yp(2006, 0.0, 0.0)], &axes(), &s).is_err());
    }
}
