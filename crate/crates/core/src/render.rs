//! SVG output for the Ball Mapper graph and per-ball boxplots.
//!
//! Documents are assembled as text in a fixed element order (edges, nodes
//! ascending by id, labels, legend) with coordinates printed to two decimals,
//! so identical inputs give identical bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ColorScale, MapperGraph};
use crate::layout::LayoutPositions;
use crate::scalar::Scalar;
use crate::summary::DistributionRow;

const UNCOLORED_FILL: &str = "#9e9e9e";
const LEGEND_WIDTH: f64 = 170.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    pub show_labels: bool,
    pub min_radius: f64,
    pub max_radius: f64,
    pub edge_color: String,
    pub edge_width: f64,
    pub node_stroke: String,
    pub node_stroke_width: f64,
    pub legend: bool,
    /// Legend heading, usually the color variable.
    pub title: Option<String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800,
            height: 800,
            show_labels: false,
            min_radius: 4.0,
            max_radius: 30.0,
            edge_color: "#7f7f7f".into(),
            edge_width: 1.5,
            node_stroke: "#333333".into(),
            node_stroke_width: 1.0,
            legend: true,
            title: None,
        }
    }
}

impl RenderOptions {
    fn check(&self) -> Result<()> {
        if !(self.min_radius > 0.0) || !(self.max_radius >= self.min_radius) {
            return Err(Error::InvalidParameter(format!(
                "disc radii must satisfy 0 < min ({}) <= max ({})",
                self.min_radius, self.max_radius
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidParameter("canvas must be non-empty".into()));
        }
        Ok(())
    }
}

/// Disc radius for a ball of `size` points: area proportional to size, the
/// largest ball drawn at `max_radius`, clamped below at `min_radius`.
pub fn disc_radius(size: usize, largest: usize, options: &RenderOptions) -> f64 {
    if largest == 0 {
        return options.min_radius;
    }
    let r = options.max_radius * (size as f64 / largest as f64).sqrt();
    r.clamp(options.min_radius, options.max_radius)
}

fn escape(text: &str) -> String {
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

/// Compact number for axis and legend text.
fn label_number(v: f64) -> String {
    let magnitude = v.abs();
    let s = if magnitude >= 1000.0 || magnitude == 0.0 {
        format!("{v:.1}")
    } else if magnitude >= 1.0 {
        format!("{v:.3}")
    } else {
        format!("{v:.4}")
    };
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn header(out: &mut String, width: u32, height: u32) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    out.push_str("<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");
}

/// Draws the graph. Positions are expected in `[0, 1]^2` as produced by
/// [`crate::layout::compute_layout`]; y grows upwards.
pub fn render_graph_svg<T: Scalar>(
    graph: &MapperGraph<T>,
    positions: &LayoutPositions,
    scale: Option<&ColorScale<T>>,
    options: &RenderOptions,
) -> Result<String> {
    options.check()?;
    if positions.len() != graph.n_nodes() {
        return Err(Error::DimensionMismatch {
            left: graph.n_nodes(),
            right: positions.len(),
        });
    }
    let colored = scale.is_some() && graph.nodes().iter().any(|n| n.color_bin.is_some());
    let legend = options.legend && colored;
    let width = options.width as f64;
    let height = options.height as f64;
    let plot_right = if legend {
        (width - LEGEND_WIDTH).max(width * 0.5)
    } else {
        width
    };
    let margin = options.max_radius + 8.0;
    let span_x = (plot_right - 2.0 * margin).max(1.0);
    let span_y = (height - 2.0 * margin).max(1.0);
    let to_px = |p: [f64; 2]| [margin + p[0] * span_x, margin + (1.0 - p[1]) * span_y];
    let largest = graph.nodes().iter().map(|n| n.size).max().unwrap_or(0);

    let mut out = String::new();
    header(&mut out, options.width, options.height);

    let _ = writeln!(
        out,
        "<g class=\"edges\" stroke=\"{}\" stroke-width=\"{}\">",
        escape(&options.edge_color),
        options.edge_width
    );
    for e in graph.edges() {
        let a = to_px(positions.get(e.source));
        let b = to_px(positions.get(e.target));
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
            a[0], a[1], b[0], b[1]
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        "<g class=\"nodes\" stroke=\"{}\" stroke-width=\"{}\">",
        escape(&options.node_stroke),
        options.node_stroke_width
    );
    let mut radii = Vec::with_capacity(graph.n_nodes());
    for node in graph.nodes() {
        let c = to_px(positions.get(node.id));
        let r = disc_radius(node.size, largest, options);
        radii.push(r);
        let fill = match (scale, node.color_bin) {
            (Some(s), Some(bin)) => s.color(bin).hex(),
            _ => UNCOLORED_FILL.to_owned(),
        };
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\" fill=\"{}\" data-ball=\"{}\" data-size=\"{}\"/>",
            c[0], c[1], r, fill, node.id, node.size
        );
    }
    out.push_str("</g>\n");

    if options.show_labels {
        out.push_str(
            "<g class=\"labels\" font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"#000000\">\n",
        );
        for (node, r) in graph.nodes().iter().zip(&radii) {
            let c = to_px(positions.get(node.id));
            let size = (r * 0.9).max(9.0);
            let _ = writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"{:.1}\">{}</text>",
                c[0], c[1], size, node.id
            );
        }
        out.push_str("</g>\n");
    }

    if let (true, Some(scale)) = (legend, scale) {
        let x = plot_right + 10.0;
        let mut y = margin;
        out.push_str("<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">\n");
        if let Some(title) = &options.title {
            let _ = writeln!(out, "<text x=\"{x:.2}\" y=\"{y:.2}\">{}</text>", escape(title));
            y += 8.0;
        }
        // highest bin on top
        for bin in (1..=scale.bin_count()).rev() {
            let lo = scale.boundaries[bin - 1].to_f64().unwrap_or(f64::NAN);
            let hi = scale.boundaries[bin].to_f64().unwrap_or(f64::NAN);
            let _ = writeln!(
                out,
                "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"16\" height=\"16\" fill=\"{}\" stroke=\"#333333\"/>",
                scale.color(bin).hex()
            );
            let _ = writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\">{} to {}</text>",
                x + 22.0,
                y + 12.0,
                label_number(lo),
                label_number(hi)
            );
            y += 22.0;
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Five-number summary of one ball for boxplots. Fields are optional so rows
/// read from untrusted tables can be checked before drawing.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxStats {
    pub ball: usize,
    pub min: Option<f64>,
    pub q25: Option<f64>,
    pub q50: Option<f64>,
    pub q75: Option<f64>,
    pub max: Option<f64>,
}

impl<T: Scalar> From<&DistributionRow<T>> for BoxStats {
    fn from(r: &DistributionRow<T>) -> Self {
        BoxStats {
            ball: r.ball,
            min: r.min.to_f64(),
            q25: r.q25.to_f64(),
            q50: r.q50.to_f64(),
            q75: r.q75.to_f64(),
            max: r.max.to_f64(),
        }
    }
}

/// Vertical boxplot per ball, balls ordered by id along the x axis: whiskers
/// span min to max, the box spans q25 to q75, a bar marks the median.
pub fn render_boxplot_svg(stats: &[BoxStats], options: &RenderOptions) -> Result<String> {
    options.check()?;
    let mut glyphs = Vec::with_capacity(stats.len());
    for s in stats {
        match (s.min, s.q25, s.q50, s.q75, s.max) {
            (Some(a), Some(b), Some(c), Some(d), Some(e)) => glyphs.push((s.ball, [a, b, c, d, e])),
            _ => return Err(Error::MissingQuantiles(s.ball)),
        }
    }
    glyphs.sort_by_key(|g| g.0);

    let width = options.width as f64;
    let height = options.height as f64;
    let (left, right, top, bottom) = (70.0, 20.0, 30.0, 40.0);
    let plot_w = (width - left - right).max(1.0);
    let plot_h = (height - top - bottom).max(1.0);
    let lo = glyphs.iter().map(|g| g.1[0]).fold(f64::INFINITY, f64::min);
    let hi = glyphs.iter().map(|g| g.1[4]).fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if glyphs.is_empty() {
        (0.0, 1.0)
    } else if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    };
    let to_y = |v: f64| top + (hi - v) / (hi - lo) * plot_h;
    let slot = plot_w / glyphs.len().max(1) as f64;
    let box_w = (slot * 0.6).min(40.0);

    let mut out = String::new();
    header(&mut out, options.width, options.height);
    out.push_str("<g class=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n");
    let _ = writeln!(
        out,
        "<line x1=\"{left:.2}\" y1=\"{top:.2}\" x2=\"{left:.2}\" y2=\"{:.2}\"/>",
        top + plot_h
    );
    let _ = writeln!(
        out,
        "<line x1=\"{left:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
        top + plot_h,
        left + plot_w,
        top + plot_h
    );
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        "<g class=\"y-ticks\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" data-min=\"{lo}\" data-max=\"{hi}\">"
    );
    for i in 0..=4 {
        let v = lo + (hi - lo) * i as f64 / 4.0;
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
            left - 6.0,
            to_y(v) + 4.0,
            label_number(v)
        );
    }
    out.push_str("</g>\n");

    for (i, (ball, [min, q25, q50, q75, max])) in glyphs.iter().enumerate() {
        let cx = left + slot * (i as f64 + 0.5);
        let _ = writeln!(out, "<g class=\"box\" data-ball=\"{ball}\">");
        let _ = writeln!(
            out,
            "<line class=\"whisker\" x1=\"{cx:.2}\" y1=\"{:.2}\" x2=\"{cx:.2}\" y2=\"{:.2}\" stroke=\"#000000\"/>",
            to_y(*max),
            to_y(*min)
        );
        let _ = writeln!(
            out,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{box_w:.2}\" height=\"{:.2}\" fill=\"#9ecae1\" stroke=\"#000000\"/>",
            cx - box_w / 2.0,
            to_y(*q75),
            to_y(*q25) - to_y(*q75)
        );
        let _ = writeln!(
            out,
            "<line class=\"median\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#000000\" stroke-width=\"2\"/>",
            cx - box_w / 2.0,
            to_y(*q50),
            cx + box_w / 2.0,
            to_y(*q50)
        );
        let _ = writeln!(
            out,
            "<text x=\"{cx:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{ball}</text>",
            top + plot_h + 16.0
        );
        out.push_str("</g>\n");
    }
    if let Some(title) = &options.title {
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
            width / 2.0,
            escape(title)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_area_proportional() {
        let o = RenderOptions::default();
        let big = disc_radius(16, 16, &o);
        let small = disc_radius(4, 16, &o);
        assert_eq!(big, o.max_radius);
        assert!(((big * big) / (small * small) - 4.0).abs() < 1e-12);
        assert_eq!(disc_radius(1, 10_000, &o), o.min_radius);
    }

    #[test]
    fn bad_radii_rejected() {
        let o = RenderOptions {
            min_radius: 0.0,
            ..Default::default()
        };
        assert!(render_boxplot_svg(&[], &o).is_err());
        let o = RenderOptions {
            min_radius: 10.0,
            max_radius: 5.0,
            ..Default::default()
        };
        assert!(render_boxplot_svg(&[], &o).is_err());
    }

    #[test]
    fn missing_quantile_is_error() {
        let s = BoxStats {
            ball: 3,
            min: Some(0.0),
            q25: None,
            q50: Some(0.0),
            q75: Some(0.0),
            max: Some(0.0),
        };
        assert!(matches!(
            render_boxplot_svg(&[s], &RenderOptions::default()),
            Err(Error::MissingQuantiles(3))
        ));
    }

    #[test]
    fn number_labels() {
        assert_eq!(label_number(15906.0), "15906");
        assert_eq!(label_number(0.25), "0.25");
        assert_eq!(label_number(-0.0), "0");
        assert_eq!(label_number(3.4375), "3.438");
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b&\"c\""), "a&lt;b&amp;&quot;c&quot;");
    }
}
