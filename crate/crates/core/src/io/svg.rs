//! Minimal self-contained SVG charts (lines, markers, interval segments, bars).

use std::fmt::Write;

use crate::error::{Error, Result};

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesData {
    /// Polyline through `(x, y)`; a single point is drawn as a marker.
    Line(Vec<(f64, f64)>),
    Markers(Vec<(f64, f64)>),
    /// Vertical segments `(x, lo, hi)`.
    Segments(Vec<(f64, f64, f64)>),
    /// Bars from zero to `y`, grouped side by side with other bar series.
    Bars(Vec<(f64, f64)>),
}

impl SeriesData {
    fn is_empty(&self) -> bool {
        match self {
            SeriesData::Line(v) | SeriesData::Markers(v) | SeriesData::Bars(v) => v.is_empty(),
            SeriesData::Segments(v) => v.is_empty(),
        }
    }

    fn points(&self) -> Vec<(f64, f64)> {
        match self {
            SeriesData::Line(v) | SeriesData::Markers(v) => v.clone(),
            SeriesData::Bars(v) => v.iter().flat_map(|&(x, y)| [(x, 0.0), (x, y)]).collect(),
            SeriesData::Segments(v) => v.iter().flat_map(|&(x, lo, hi)| [(x, lo), (x, hi)]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    /// Overrides the palette colour.
    pub color: Option<String>,
    pub data: SeriesData,
}

impl Series {
    pub fn new(label: impl Into<String>, data: SeriesData) -> Self {
        Self {
            label: label.into(),
            color: None,
            data,
        }
    }

    pub fn with_color(mut self, color: impl Into<String>) -> Self {
        self.color = Some(color.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub width: f64,
    pub height: f64,
    /// Fixed y range; otherwise fitted to the data.
    pub y_range: Option<(f64, f64)>,
    pub log_x: bool,
    pub series: Vec<Series>,
}

impl Chart {
    pub fn new(title: impl Into<String>, x_label: impl Into<String>, y_label: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            width: 720.0,
            height: 440.0,
            y_range: None,
            log_x: false,
            series: Vec::new(),
        }
    }

    pub fn push(&mut self, series: Series) -> &mut Self {
        self.series.push(series);
        self
    }
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    log_x: bool,
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
}

impl Frame {
    fn tx(&self, x: f64) -> f64 {
        let (x, x0, x1) = if self.log_x {
            (x.max(f64::MIN_POSITIVE).log10(), self.x0.log10(), self.x1.log10())
        } else {
            (x, self.x0, self.x1)
        };
        self.left + (x - x0) / (x1 - x0) * (self.right - self.left)
    }

    fn ty(&self, y: f64) -> f64 {
        self.bottom - (y - self.y0) / (self.y1 - self.y0) * (self.bottom - self.top)
    }
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        (lo, hi)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
        (lo - pad, hi + pad)
    }
}

fn tick_label(v: f64) -> String {
    let s = if v.abs() >= 1000.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    };
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders `chart` as a standalone SVG document. Output is a pure function
/// of the chart, so identical inputs give identical bytes.
pub fn emit_svg(chart: &Chart) -> Result<String> {
    if chart.series.is_empty() || chart.series.iter().all(|s| s.data.is_empty()) {
        return Err(Error::Empty("chart series"));
    }
    let pts: Vec<(f64, f64)> = chart
        .series
        .iter()
        .flat_map(|s| s.data.points())
        .filter(|(x, y)| x.is_finite() && y.is_finite() && (!chart.log_x || *x > 0.0))
        .collect();
    if pts.is_empty() {
        return Err(Error::Empty("finite chart points"));
    }
    let fold = |f: fn(&(f64, f64)) -> f64| {
        pts.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)))
    };
    let (mut x0, mut x1) = fold(|p| p.0);
    if x1 <= x0 {
        if chart.log_x {
            (x0, x1) = (x0 / 10.0, x1 * 10.0);
        } else {
            (x0, x1) = padded(x0, x1);
        }
    }
    let bar_series = chart.series.iter().filter(|s| matches!(s.data, SeriesData::Bars(_))).count();
    if bar_series > 0 && !chart.log_x {
        (x0, x1) = (x0 - 0.5, x1 + 0.5);
    }
    let (y0, y1) = chart.y_range.unwrap_or_else(|| {
        let (a, b) = fold(|p| p.1);
        padded(a, b)
    });
    let f = Frame {
        x0,
        x1,
        y0,
        y1,
        log_x: chart.log_x,
        left: MARGIN_LEFT,
        right: chart.width - MARGIN_RIGHT,
        top: MARGIN_TOP,
        bottom: chart.height - MARGIN_BOTTOM,
    };

    let mut s = String::new();
    let w = &mut s;
    // writes to a String cannot fail
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}" font-family="sans-serif" font-size="12">"#,
        chart.width, chart.height, chart.width, chart.height
    );
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        w,
        r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        (f.left + f.right) / 2.0,
        escape(&chart.title)
    );

    // axes and ticks
    let _ = writeln!(
        w,
        r#"<path d="M{:.1} {:.1} V{:.1} H{:.1}" fill="none" stroke="black"/>"#,
        f.left, f.top, f.bottom, f.right
    );
    for k in 0..=5 {
        let frac = k as f64 / 5.0;
        let xv = if f.log_x {
            10f64.powf(f.x0.log10() + frac * (f.x1.log10() - f.x0.log10()))
        } else {
            f.x0 + frac * (f.x1 - f.x0)
        };
        let px = f.tx(xv);
        let _ = writeln!(
            w,
            r#"<line x1="{px:.1}" y1="{:.1}" x2="{px:.1}" y2="{:.1}" stroke="black"/><text x="{px:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            f.bottom,
            f.bottom + 5.0,
            f.bottom + 18.0,
            tick_label(xv)
        );
        let yv = f.y0 + frac * (f.y1 - f.y0);
        let py = f.ty(yv);
        let _ = writeln!(
            w,
            r#"<line x1="{:.1}" y1="{py:.1}" x2="{:.1}" y2="{py:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            f.left - 5.0,
            f.left,
            f.left - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        (f.left + f.right) / 2.0,
        chart.height - 15.0,
        escape(&chart.x_label)
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
        (f.top + f.bottom) / 2.0,
        (f.top + f.bottom) / 2.0,
        escape(&chart.y_label)
    );

    // series
    let span = if f.log_x { 1.0 } else { f.x1 - f.x0 };
    let slot = 0.8 / bar_series.max(1) as f64;
    let mut bar_k = 0usize;
    let seg_series = chart.series.iter().filter(|s| matches!(s.data, SeriesData::Segments(_))).count();
    let mut seg_k = 0usize;
    for (i, series) in chart.series.iter().enumerate() {
        let color = series.color.clone().unwrap_or_else(|| PALETTE[i % PALETTE.len()].to_string());
        let _ = writeln!(w, r#"<g class="series" data-label="{}">"#, escape(&series.label));
        match &series.data {
            SeriesData::Line(v) if v.len() == 1 => marker(w, &f, v[0], &color),
            SeriesData::Line(v) => {
                let d: Vec<String> = v
                    .iter()
                    .filter(|(x, y)| x.is_finite() && y.is_finite())
                    .map(|&(x, y)| format!("{:.2},{:.2}", f.tx(x), f.ty(y)))
                    .collect();
                let _ = writeln!(
                    w,
                    r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                    d.join(" ")
                );
            }
            SeriesData::Markers(v) => {
                for &p in v {
                    marker(w, &f, p, &color);
                }
            }
            SeriesData::Segments(v) => {
                let off = if seg_series > 1 {
                    (seg_k as f64 - (seg_series - 1) as f64 / 2.0) * 0.15
                } else {
                    0.0
                };
                seg_k += 1;
                for &(x, lo, hi) in v.iter().filter(|p| p.1.is_finite() && p.2.is_finite()) {
                    let px = f.tx(x + off);
                    let _ = writeln!(
                        w,
                        r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="{color}" stroke-width="2.5"/>"#,
                        f.ty(lo),
                        f.ty(hi)
                    );
                }
            }
            SeriesData::Bars(v) => {
                let bar_w = (f.tx(f.x0 + slot * span.min(1.0)) - f.tx(f.x0)).max(1.0);
                for &(x, y) in v.iter().filter(|p| p.1.is_finite()) {
                    let left = f.tx(x - 0.4 + slot * bar_k as f64);
                    let (top, bottom) = (f.ty(y.max(0.0)), f.ty(y.min(0.0)));
                    let _ = writeln!(
                        w,
                        r#"<rect x="{left:.2}" y="{top:.2}" width="{bar_w:.2}" height="{:.2}" fill="{color}"/>"#,
                        bottom - top
                    );
                }
                bar_k += 1;
            }
        }
        let _ = writeln!(w, "</g>");

        // legend
        let ly = f.top + 10.0 + 20.0 * i as f64;
        let lx = f.right + 15.0;
        let _ = writeln!(
            w,
            r#"<g class="legend"><rect x="{lx:.1}" y="{:.1}" width="14" height="10" fill="{color}"/><text x="{:.1}" y="{:.1}">{}</text></g>"#,
            ly - 9.0,
            lx + 20.0,
            ly,
            escape(&series.label)
        );
    }
    let _ = writeln!(w, "</svg>");
    Ok(s)
}

fn marker(w: &mut String, f: &Frame, (x, y): (f64, f64), color: &str) {
    if x.is_finite() && y.is_finite() {
        let _ = writeln!(
            w,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="{color}"/>"#,
            f.tx(x),
            f.ty(y)
        );
    }
}
