//! Three-cone class charts.
//!
//! Each class becomes three 2D cone silhouettes, left to right: methods,
//! attributes, lines of code. Cone height is linear in the metric value
//! relative to a scale ceiling; the label always shows the exact value.

mod svg;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::metrics::ClassMetrics;

pub use svg::{render_grid, render_svg, ChartLayout};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("scale ceiling {ceiling} is below metric value {value}")]
    CeilingTooLow { ceiling: u64, value: u64 },
    #[error("scale ceiling must be positive")]
    ZeroCeiling,
    #[error("cone colors must be pairwise distinct")]
    DuplicateColors,
    #[error("invalid color {0:?} (expected #RRGGBB)")]
    BadColor(String),
    #[error("min visible height {min}px exceeds max cone height {max}px")]
    MinAboveMax { min: u32, max: u32 },
    #[error("{0} must be positive")]
    NonPositive(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Methods,
    Attributes,
    Loc,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Methods, Metric::Attributes, Metric::Loc];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Methods => "methods",
            Metric::Attributes => "attributes",
            Metric::Loc => "loc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CaptionPosition {
    #[default]
    Above,
    Below,
}

impl FromStr for CaptionPosition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "above" => Ok(CaptionPosition::Above),
            "below" => Ok(CaptionPosition::Below),
            _ => Err(format!("unknown caption position {s:?} (expected above or below)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScaleMode {
    /// Each chart's largest value reaches the full cone height.
    #[default]
    PerChart,
    /// One ceiling across all charted classes.
    Global,
}

impl FromStr for ScaleMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per_chart" | "per-chart" => Ok(ScaleMode::PerChart),
            "global" => Ok(ScaleMode::Global),
            _ => Err(format!("unknown scale mode {s:?} (expected per_chart or global)")),
        }
    }
}

impl fmt::Display for ScaleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScaleMode::PerChart => "per_chart",
            ScaleMode::Global => "global",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeColors {
    pub methods: String,
    pub attributes: String,
    pub loc: String,
}

impl ConeColors {
    pub fn get(&self, metric: Metric) -> &str {
        match metric {
            Metric::Methods => &self.methods,
            Metric::Attributes => &self.attributes,
            Metric::Loc => &self.loc,
        }
    }
}

impl Default for ConeColors {
    fn default() -> Self {
        ConeColors {
            methods: "#008000".into(),
            attributes: "#FF0000".into(),
            loc: "#0000FF".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartStyle {
    pub cone_colors: ConeColors,
    pub max_cone_height_px: u32,
    pub cone_base_width_px: u32,
    pub cone_gap_px: u32,
    pub caption_position: CaptionPosition,
    pub scale_mode: ScaleMode,
    /// Floor for nonzero values so tiny counts stay visible.
    pub min_visible_height_px: u32,
    /// Caption with the qualified name instead of the simple name.
    pub qualified_caption: bool,
}

impl Default for ChartStyle {
    fn default() -> Self {
        ChartStyle {
            cone_colors: ConeColors::default(),
            max_cone_height_px: 200,
            cone_base_width_px: 60,
            cone_gap_px: 24,
            caption_position: CaptionPosition::Above,
            scale_mode: ScaleMode::PerChart,
            min_visible_height_px: 2,
            qualified_caption: false,
        }
    }
}

fn is_hex_color(s: &str) -> bool {
    s.len() == 7 && s.starts_with('#') && s[1..].bytes().all(|b| b.is_ascii_hexdigit())
}

impl ChartStyle {
    pub fn validate(&self) -> Result<(), ChartError> {
        let c = &self.cone_colors;
        for color in [&c.methods, &c.attributes, &c.loc] {
            if !is_hex_color(color) {
                return Err(ChartError::BadColor(color.clone()));
            }
        }
        let same = |a: &str, b: &str| a.eq_ignore_ascii_case(b);
        if same(&c.methods, &c.attributes) || same(&c.methods, &c.loc) || same(&c.attributes, &c.loc) {
            return Err(ChartError::DuplicateColors);
        }
        if self.max_cone_height_px == 0 {
            return Err(ChartError::NonPositive("max_cone_height_px"));
        }
        if self.cone_base_width_px == 0 {
            return Err(ChartError::NonPositive("cone_base_width_px"));
        }
        if self.min_visible_height_px == 0 {
            return Err(ChartError::NonPositive("min_visible_height_px"));
        }
        if self.min_visible_height_px > self.max_cone_height_px {
            return Err(ChartError::MinAboveMax {
                min: self.min_visible_height_px,
                max: self.max_cone_height_px,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSpec {
    pub metric: Metric,
    pub value: u64,
    pub height_px: u32,
    pub color: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartSpec {
    pub class_name: String,
    /// Always methods, attributes, loc.
    pub cones: [ConeSpec; 3],
    pub caption_position: CaptionPosition,
}

fn metric_values(m: &ClassMetrics) -> [u64; 3] {
    [m.nom as u64, m.noa as u64, m.loc as u64]
}

/// Largest of the chart's own three values, or 1 when all are zero.
pub fn per_chart_ceiling(m: &ClassMetrics) -> u64 {
    metric_values(m).into_iter().max().unwrap_or(0).max(1)
}

/// Largest value over every charted class, or 1 when there is none.
pub fn global_ceiling<'a>(ms: impl IntoIterator<Item = &'a ClassMetrics>) -> u64 {
    ms.into_iter().flat_map(metric_values).max().unwrap_or(0).max(1)
}

/// Ceiling to pass to [`build_chart`] for `m` under `style.scale_mode`.
/// `global` is the precomputed [`global_ceiling`] of the charted set.
pub fn ceiling_for(m: &ClassMetrics, style: &ChartStyle, global: u64) -> u64 {
    match style.scale_mode {
        ScaleMode::PerChart => per_chart_ceiling(m),
        ScaleMode::Global => global,
    }
}

/// Pixel height of a cone: 0 for 0, otherwise the linear share of the
/// maximum height rounded half-up, floored at the minimum visible height.
pub fn cone_height(value: u64, ceiling: u64, max_px: u32, min_px: u32) -> u32 {
    if value == 0 {
        return 0;
    }
    let num = 2 * u128::from(max_px) * u128::from(value) + u128::from(ceiling);
    let rounded = (num / (2 * u128::from(ceiling))) as u32;
    rounded.max(min_px)
}

pub fn build_chart(m: &ClassMetrics, style: &ChartStyle, scale_ceiling: u64) -> Result<ChartSpec, ChartError> {
    if scale_ceiling == 0 {
        return Err(ChartError::ZeroCeiling);
    }
    let values = metric_values(m);
    if let Some(&value) = values.iter().find(|&&v| v > scale_ceiling) {
        return Err(ChartError::CeilingTooLow {
            ceiling: scale_ceiling,
            value,
        });
    }
    let cone = |i: usize| {
        let metric = Metric::ALL[i];
        let value = values[i];
        ConeSpec {
            metric,
            value,
            height_px: cone_height(value, scale_ceiling, style.max_cone_height_px, style.min_visible_height_px),
            color: style.cone_colors.get(metric).to_owned(),
            label: value.to_string(),
        }
    };
    Ok(ChartSpec {
        class_name: if style.qualified_caption {
            m.qualified_name.clone()
        } else {
            m.simple_name.clone()
        },
        cones: [cone(0), cone(1), cone(2)],
        caption_position: style.caption_position,
    })
}
