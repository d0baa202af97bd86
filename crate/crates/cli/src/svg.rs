use std::fmt::Write as _;

use revcurve::curves::LearningCurve;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;

/// Decade-aligned log10 range covering `values`.
fn decades(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        let l = v.log10();
        (lo.min(l), hi.max(l))
    });
    let (lo, hi) = (lo.floor(), hi.ceil());
    if hi > lo {
        (lo, hi)
    } else {
        (lo, lo + 1.0)
    }
}

/// Mean gap against `n` on log-log axes; points with a nonpositive gap are
/// left out.
pub fn curve_svg(curve: &LearningCurve) -> String {
    let pts: Vec<(f64, f64)> = curve
        .points
        .iter()
        .filter(|p| p.mean_gap > 0.0)
        .map(|p| (p.n as f64, p.mean_gap))
        .collect();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="800" height="600" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="400" y="28" text-anchor="middle" font-size="15">{} on {}</text>"#,
        escape(&curve.learner),
        escape(&curve.distribution)
    );
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    if pts.is_empty() {
        let _ = writeln!(
            s,
            r#"<text x="400" y="300" text-anchor="middle">no positive gaps to plot</text>"#
        );
        s.push_str("</svg>\n");
        return s;
    }
    let (x0, x1) = decades(pts.iter().map(|p| p.0));
    let (y0, y1) = decades(pts.iter().map(|p| p.1));
    let sx = |x: f64| LEFT + (x.log10() - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + ph - (y.log10() - y0) / (y1 - y0) * ph;

    for k in x0 as i32..=x1 as i32 {
        let x = sx(10f64.powi(k));
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#ddd"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">1e{k}</text>"##,
            TOP + ph,
            TOP + ph + 18.0
        );
    }
    for k in y0 as i32..=y1 as i32 {
        let y = sy(10f64.powi(k));
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{k}</text>"##,
            LEFT + pw,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">sample size n</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 20.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">mean gap</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );
    let line: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#c0392b" stroke-width="2"/>"##,
        line.join(" ")
    );
    for &(x, y) in &pts {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="#c0392b"/>"##,
            sx(x),
            sy(y)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
