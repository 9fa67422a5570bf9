use serde::{Deserialize, Serialize};

use super::metrics::{text_width, BASELINE_OFFSET, LINE_HEIGHT};
use super::{PlotSpec, Rect, Svg};
use crate::error::{Error, Result};
use crate::lexical_table::GlossaryEntry;

/// Radial growth of the spiral per turn, in pixels.
const SPIRAL_PITCH: f64 = 6.0;
/// Approximate arc length between consecutive candidate positions.
const SPIRAL_STEP: f64 = 3.0;
/// Padding added around every word box before collision tests.
const PAD: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlacedWord {
    pub term: String,
    pub frequency: u64,
    pub font_size: f64,
    pub center: (f64, f64),
    pub bbox: Rect,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Wordcloud {
    pub svg: String,
    pub placed: Vec<PlacedWord>,
    /// Terms that found no free position inside the canvas.
    pub dropped: Vec<String>,
}

fn font_sizes(glossary: &[GlossaryEntry], spec: &PlotSpec) -> Vec<f64> {
    let roots: Vec<f64> = glossary
        .iter()
        .map(|e| (e.frequency as f64).sqrt())
        .collect();
    let lo = roots.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = roots.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    roots
        .iter()
        .map(|&r| {
            if hi > lo {
                spec.min_font + (spec.max_font - spec.min_font) * (r - lo) / (hi - lo)
            } else {
                spec.max_font
            }
        })
        .collect()
}

fn word_box(term: &str, size: f64, cx: f64, cy: f64) -> Rect {
    Rect::centered(
        cx,
        cy,
        text_width(term, size) + 2.0 * PAD,
        size * LINE_HEIGHT + 2.0 * PAD,
    )
}

/// Lays out the glossary as a wordcloud.
///
/// Words are placed in glossary order. Each one walks an Archimedean spiral
/// out from the canvas center and takes the first position whose box stays
/// inside the drawing area and overlaps no earlier box. A word whose spiral
/// leaves the canvas without finding room is dropped and listed in
/// [`Wordcloud::dropped`].
pub fn render_wordcloud(glossary: &[GlossaryEntry], spec: &PlotSpec) -> Result<Wordcloud> {
    spec.validate()?;
    if glossary.is_empty() {
        return Err(Error::Precondition(
            "wordcloud needs at least one term".into(),
        ));
    }
    let area = Rect {
        x0: spec.margin,
        y0: spec.margin,
        x1: spec.width - spec.margin,
        y1: spec.height - spec.margin,
    };
    let sizes = font_sizes(glossary, spec);
    let (cx, cy) = (spec.width / 2.0, spec.height / 2.0);

    let (mut need_w, mut need_h) = (0.0_f64, 0.0_f64);
    for (e, &size) in glossary.iter().zip(&sizes) {
        let b = word_box(&e.term, size, 0.0, 0.0);
        need_w = need_w.max(b.x1 - b.x0);
        need_h = need_h.max(b.y1 - b.y0);
    }
    if need_w > area.x1 - area.x0 || need_h > area.y1 - area.y0 {
        return Err(Error::Render(format!(
            "canvas {}x{} is too small for the largest word; need at least {}x{}",
            spec.width,
            spec.height,
            (need_w + 2.0 * spec.margin).ceil(),
            (need_h + 2.0 * spec.margin).ceil()
        )));
    }

    let max_radius = (spec.width.powi(2) + spec.height.powi(2)).sqrt() / 2.0;
    let pitch = SPIRAL_PITCH / std::f64::consts::TAU;
    let mut placed: Vec<PlacedWord> = Vec::with_capacity(glossary.len());
    let mut dropped = Vec::new();

    for (e, &size) in glossary.iter().zip(&sizes) {
        let mut theta = 0.0_f64;
        let mut last_hit = 0usize;
        let mut found = None;
        loop {
            let r = pitch * theta;
            if r > max_radius {
                break;
            }
            let (x, y) = (cx + r * theta.cos(), cy + r * theta.sin());
            let b = word_box(&e.term, size, x, y);
            if b.inside(&area) {
                // The box that blocked the previous candidate usually blocks
                // this one too, so test it first.
                let blocked = placed.get(last_hit).is_some_and(|p| p.bbox.overlaps(&b))
                    || match placed.iter().position(|p| p.bbox.overlaps(&b)) {
                        Some(k) => {
                            last_hit = k;
                            true
                        }
                        None => false,
                    };
                if !blocked {
                    found = Some((x, y, b));
                    break;
                }
            }
            theta += (SPIRAL_STEP / r.max(SPIRAL_STEP)).min(0.5);
        }
        match found {
            Some((x, y, bbox)) => placed.push(PlacedWord {
                term: e.term.clone(),
                frequency: e.frequency,
                font_size: size,
                center: (x, y),
                bbox,
            }),
            None => dropped.push(e.term.clone()),
        }
    }

    let mut svg = Svg::new(spec);
    for (k, p) in placed.iter().enumerate() {
        svg.text(
            "word",
            (p.center.0, p.center.1 + BASELINE_OFFSET * p.font_size),
            p.font_size,
            "middle",
            spec.color(k),
            &p.term,
        );
    }
    Ok(Wordcloud {
        svg: svg.finish(),
        placed,
        dropped,
    })
}
