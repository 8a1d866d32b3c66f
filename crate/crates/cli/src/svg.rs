//! Minimal static charts.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;

fn header(title: &str) -> String {
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        "<line x1=\"{MARGIN}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/><line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{b}\" stroke=\"black\"/>",
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Bars of `log10(value)` (floored at 1e-16), green where `highlight` holds.
pub fn bar_chart(title: &str, bars: &[(String, f64, bool)]) -> String {
    let mut s = header(&format!("{title} (log10 scale)"));
    let floor = -16.0;
    let logs: Vec<f64> = bars.iter().map(|b| b.1.max(1e-16).log10()).collect();
    let top = logs.iter().cloned().fold(0.0, f64::max).ceil();
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let slot = (WIDTH - 2.0 * MARGIN) / bars.len().max(1) as f64;
    for (k, ((label, _, good), lg)) in bars.iter().zip(&logs).enumerate() {
        let h = plot_h * (lg - floor) / (top - floor);
        let x = MARGIN + k as f64 * slot + 0.15 * slot;
        let y = HEIGHT - MARGIN - h;
        let color = if *good { "#2a9d3f" } else { "#c8553d" };
        let _ = writeln!(
            s,
            "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{:.1}\" height=\"{h:.1}\" fill=\"{color}\"/>",
            0.7 * slot
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            x + 0.35 * slot,
            HEIGHT - MARGIN + 14.0,
            escape(label)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Polyline through `(x, y)` points scaled to the plot area.
pub fn line_chart(title: &str, points: &[(f64, f64)]) -> String {
    let mut s = header(title);
    if points.is_empty() {
        s.push_str("</svg>\n");
        return s;
    }
    let (xmin, xmax) = points
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (ymin, ymax) = points
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let sx = (WIDTH - 2.0 * MARGIN) / (xmax - xmin).max(f64::MIN_POSITIVE);
    let sy = (HEIGHT - 2.0 * MARGIN) / (ymax - ymin).max(f64::MIN_POSITIVE);
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| {
            format!(
                "{:.2},{:.2}",
                MARGIN + (x - xmin) * sx,
                HEIGHT - MARGIN - (y - ymin) * sy
            )
        })
        .collect();
    let _ = writeln!(
        s,
        "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"{}\"/>",
        coords.join(" ")
    );
    for (v, y) in [(ymin, HEIGHT - MARGIN), (ymax, MARGIN)] {
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{y:.1}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{v:.3e}</text>",
            MARGIN - 4.0
        );
    }
    for (v, x) in [(xmin, MARGIN), (xmax, WIDTH - MARGIN)] {
        let _ = writeln!(
            s,
            "<text x=\"{x:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{v}</text>",
            HEIGHT - MARGIN + 14.0
        );
    }
    s.push_str("</svg>\n");
    s
}
