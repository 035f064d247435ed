use std::fmt::Write as _;

use super::{CaptionPosition, ChartError, ChartSpec, ChartStyle};
use crate::extractor::xml::escape_attr;

const MARGIN: u32 = 16;
const LABEL_BAND: u32 = 20;
const CAPTION_BAND: u32 = 24;
const LABEL_GAP: u32 = 6;

/// Fixed geometry shared by every chart drawn with one style.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChartLayout {
    pub width: u32,
    pub height: u32,
    /// y of the cone bases.
    pub baseline: u32,
    pub caption_y: u32,
    pub rx: u32,
    pub ry: u32,
    pub pitch: u32,
}

impl ChartLayout {
    pub fn new(style: &ChartStyle) -> Self {
        let base = style.cone_base_width_px;
        let rx = base / 2;
        let ry = (base / 4).max(1);
        let width = 2 * MARGIN + 3 * base + 2 * style.cone_gap_px;
        let height = 2 * MARGIN + CAPTION_BAND + LABEL_BAND + style.max_cone_height_px + ry;
        let (baseline, caption_y) = match style.caption_position {
            CaptionPosition::Above => (MARGIN + CAPTION_BAND + LABEL_BAND + style.max_cone_height_px, MARGIN + 16),
            CaptionPosition::Below => {
                let baseline = MARGIN + LABEL_BAND + style.max_cone_height_px;
                (baseline, baseline + ry + 18)
            }
        };
        ChartLayout {
            width,
            height,
            baseline,
            caption_y,
            rx,
            ry,
            pitch: base + style.cone_gap_px,
        }
    }

    fn cone_center(&self, index: u32) -> u32 {
        MARGIN + self.rx + index * self.pitch
    }
}

fn svg_open(out: &mut String, width: u32, height: u32) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
}

/// One chart as a `<g>` translated to `(x, y)`.
fn write_chart_group(out: &mut String, chart: &ChartSpec, layout: &ChartLayout, x: u32, y: u32) {
    let _ = writeln!(out, "<g class=\"chart\" transform=\"translate({x},{y})\">");
    let _ = writeln!(
        out,
        "<text class=\"caption\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{}</text>",
        layout.width / 2,
        layout.caption_y,
        escape_attr(&chart.class_name)
    );
    let base = layout.baseline;
    for (i, cone) in chart.cones.iter().enumerate() {
        let cx = layout.cone_center(i as u32);
        let apex = base - cone.height_px;
        let _ = writeln!(out, "<g class=\"cone {}\">", cone.metric.as_str());
        let _ = writeln!(
            out,
            "<ellipse cx=\"{cx}\" cy=\"{base}\" rx=\"{}\" ry=\"{}\" fill=\"{}\"/>",
            layout.rx, layout.ry, cone.color
        );
        let _ = writeln!(
            out,
            "<polygon points=\"{},{base} {cx},{apex} {},{base}\" fill=\"{}\"/>",
            cx - layout.rx,
            cx + layout.rx,
            cone.color
        );
        let _ = writeln!(
            out,
            "<text class=\"label\" x=\"{cx}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            apex.saturating_sub(LABEL_GAP),
            escape_attr(&cone.label)
        );
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n");
}

/// Standalone SVG document for one chart.
pub fn render_svg(chart: &ChartSpec, style: &ChartStyle) -> String {
    let layout = ChartLayout::new(style);
    let mut out = String::new();
    svg_open(&mut out, layout.width, layout.height);
    write_chart_group(&mut out, chart, &layout, 0, 0);
    out.push_str("</svg>\n");
    out
}

/// Lays charts out row-major, `columns` per row, in input order.
///
/// A single chart renders byte-identically to [`render_svg`].
pub fn render_grid(charts: &[ChartSpec], style: &ChartStyle, columns: usize) -> Result<String, ChartError> {
    if columns == 0 {
        return Err(ChartError::NonPositive("columns"));
    }
    let mut out = String::new();
    if charts.is_empty() {
        svg_open(&mut out, 0, 0);
        out.push_str("<desc>no charts</desc>\n</svg>\n");
        return Ok(out);
    }
    let layout = ChartLayout::new(style);
    let cols = columns.min(charts.len());
    let rows = charts.len().div_ceil(columns);
    svg_open(&mut out, layout.width * cols as u32, layout.height * rows as u32);
    for (i, chart) in charts.iter().enumerate() {
        let x = (i % columns) as u32 * layout.width;
        let y = (i / columns) as u32 * layout.height;
        write_chart_group(&mut out, chart, &layout, x, y);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
