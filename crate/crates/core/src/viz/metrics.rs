//! Approximate text extents.
//!
//! Advance widths are those of a Helvetica-compatible sans font, in
//! thousandths of an em, for printable ASCII. Other characters use the width
//! of a lowercase `n`. Real renderers will differ slightly; layouts leave a
//! small padding around each label to absorb that.

const ASCII_WIDTHS: [u16; 95] = [
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333, 278,
    278, // ' '..'/'
    556, 556, 556, 556, 556, 556, 556, 556, 556, 556, // '0'..'9'
    278, 278, 584, 584, 584, 556, 1015, // ':'..'@'
    667, 667, 722, 722, 667, 611, 778, 722, 278, 500, 667, 556, 833, // 'A'..'M'
    722, 778, 667, 778, 722, 667, 611, 722, 667, 944, 667, 667, 611, // 'N'..'Z'
    278, 278, 278, 469, 556, 333, // '['..'`'
    556, 556, 500, 556, 556, 278, 556, 556, 222, 222, 500, 222, 833, // 'a'..'m'
    556, 556, 556, 556, 333, 500, 278, 556, 500, 722, 500, 500, 500, // 'n'..'z'
    334, 260, 334, 584, // '{'..'~'
];

const FALLBACK_WIDTH: u16 = 556;

/// Height of a text box as a multiple of the font size.
pub const LINE_HEIGHT: f64 = 1.15;

/// Offset from the vertical center of a text box to its baseline, as a
/// multiple of the font size.
pub const BASELINE_OFFSET: f64 = 0.35;

fn char_width(c: char) -> u16 {
    match c as u32 {
        cp @ 32..=126 => ASCII_WIDTHS[(cp - 32) as usize],
        _ => FALLBACK_WIDTH,
    }
}

/// Estimated advance width of `text` at `font_size` pixels.
pub fn text_width(text: &str, font_size: f64) -> f64 {
    let units: u32 = text.chars().map(|c| u32::from(char_width(c))).sum();
    units as f64 / 1000.0 * font_size
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(char_width(' '), 278);
        assert_eq!(char_width('0'), 556);
        assert_eq!(char_width('@'), 1015);
        assert_eq!(char_width('M'), 833);
        assert_eq!(char_width('i'), 222);
        assert_eq!(char_width('~'), 584);
        assert_eq!(char_width('é'), FALLBACK_WIDTH);
        assert!((text_width("mi", 10.0) - 10.55).abs() < 1e-12);
    }
}
