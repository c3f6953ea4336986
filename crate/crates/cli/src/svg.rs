//! Minimal SVG plots: an 800×600 canvas, two axes with ticks at the data
//! minimum, midpoint and maximum, and scatter or polyline series.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 70.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Dots,
    Line,
    Marker,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub style: Style,
    pub color: &'static str,
}

impl Series {
    pub fn new(
        label: impl Into<String>,
        points: Vec<(f64, f64)>,
        style: Style,
        color: &'static str,
    ) -> Self {
        Self {
            label: label.into(),
            points,
            style,
            color,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Forces equal units on both axes.
    pub equal_aspect: bool,
}

#[derive(Debug, Clone, Copy)]
struct Range {
    lo: f64,
    hi: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        let (lo, hi) = values
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
        if !lo.is_finite() {
            return Range { lo: 0.0, hi: 1.0 };
        }
        if hi - lo < 1e-12 {
            return Range {
                lo: lo - 0.5,
                hi: hi + 0.5,
            };
        }
        Range { lo, hi }
    }

    fn span(&self) -> f64 {
        self.hi - self.lo
    }

    fn widen_to(&self, span: f64) -> Self {
        let mid = (self.lo + self.hi) / 2.0;
        Range {
            lo: mid - span / 2.0,
            hi: mid + span / 2.0,
        }
    }
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

impl Plot {
    pub fn new(
        title: impl Into<String>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
    ) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
            equal_aspect: false,
        }
    }

    pub fn with(mut self, series: Series) -> Self {
        self.series.push(series);
        self
    }

    pub fn render(&self) -> String {
        let all = || self.series.iter().flat_map(|s| s.points.iter().copied());
        let mut xr = Range::of(all().map(|p| p.0));
        let mut yr = Range::of(all().map(|p| p.1));
        let (plot_w, plot_h) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
        if self.equal_aspect {
            let scale = (xr.span() / plot_w).max(yr.span() / plot_h);
            xr = xr.widen_to(scale * plot_w);
            yr = yr.widen_to(scale * plot_h);
        }
        let sx = |x: f64| MARGIN + (x - xr.lo) / xr.span() * plot_w;
        let sy = |y: f64| HEIGHT - MARGIN - (y - yr.lo) / yr.span() * plot_h;

        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
        )
        .unwrap();
        writeln!(
            out,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="30" text-anchor="middle" font-size="16">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        )
        .unwrap();

        let (x0, y0) = (MARGIN, HEIGHT - MARGIN);
        writeln!(
            out,
            r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#,
            WIDTH - MARGIN
        )
        .unwrap();
        writeln!(
            out,
            r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}" stroke="black"/>"#
        )
        .unwrap();
        for v in [xr.lo, (xr.lo + xr.hi) / 2.0, xr.hi] {
            let x = sx(v);
            writeln!(
                out,
                r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{}" stroke="black"/>"#,
                y0 + 6.0
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#,
                y0 + 20.0,
                tick_label(v)
            )
            .unwrap();
        }
        for v in [yr.lo, (yr.lo + yr.hi) / 2.0, yr.hi] {
            let y = sy(v);
            writeln!(
                out,
                r#"<line x1="{}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/>"#,
                x0 - 6.0
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
                x0 - 9.0,
                y + 4.0,
                tick_label(v)
            )
            .unwrap();
        }
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 20.0,
            escape(&self.x_label)
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="20" y="{}" text-anchor="middle" transform="rotate(-90 20 {})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(&self.y_label)
        )
        .unwrap();

        for (i, s) in self.series.iter().enumerate() {
            match s.style {
                Style::Dots => {
                    for &(x, y) in &s.points {
                        writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="1.6" fill="{}" fill-opacity="0.6"/>"#, sx(x), sy(y), s.color).unwrap();
                    }
                }
                Style::Marker => {
                    for &(x, y) in &s.points {
                        writeln!(
                            out,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="5" fill="{}"/>"#,
                            sx(x),
                            sy(y),
                            s.color
                        )
                        .unwrap();
                    }
                }
                Style::Line => {
                    let pts: Vec<String> = s
                        .points
                        .iter()
                        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                        .collect();
                    writeln!(
                        out,
                        r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.8"/>"#,
                        pts.join(" "),
                        s.color
                    )
                    .unwrap();
                }
            }
            let ly = MARGIN + 16.0 * i as f64;
            writeln!(
                out,
                r#"<rect x="{}" y="{}" width="10" height="10" fill="{}"/>"#,
                WIDTH - MARGIN - 150.0,
                ly - 9.0,
                s.color
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{}" y="{ly}">{}</text>"#,
                WIDTH - MARGIN - 135.0,
                escape(&s.label)
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_well_formed_document() {
        let svg = Plot::new("t <1>", "x", "y")
            .with(Series::new(
                "pts",
                vec![(0.0, 0.0), (1.0, 2.0)],
                Style::Dots,
                "steelblue",
            ))
            .with(Series::new(
                "line",
                vec![(0.0, 1.0), (1.0, 1.0)],
                Style::Line,
                "black",
            ))
            .render();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"viewBox="0 0 800 600""#));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("t &lt;1&gt;"));
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<polyline").count(), 1);
    }

    #[test]
    fn degenerate_ranges() {
        let svg = Plot::new("", "", "")
            .with(Series::new("one", vec![(3.0, 3.0)], Style::Marker, "red"))
            .render();
        assert!(!svg.contains("NaN"));
        let empty = Plot::new("", "", "").render();
        assert!(!empty.contains("NaN"));
    }
}
