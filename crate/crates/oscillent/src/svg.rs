//! Standalone SVG figures: the reduced phase-space density with its
//! annular support band, the Schmidt spectrum against the arcsine band
//! profile, and entropy-versus-coupling sweep lines. Everything is
//! inline; the files reference nothing external.

use crate::classical::{marginal_density, support_band, DensityValue, MarginalMode};
use crate::error::Result;
use crate::model::{ModelParams, StateSpec};
use crate::wkb::LambdaSpectrum;
use std::f64::consts::PI;
use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 64.0;

/// Maps data coordinates onto the fixed pixel canvas.
struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN_LEFT + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM
            - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if !(1e-3..1e4).contains(&a) {
        return format!("{v:.1e}");
    }
    let mut s = format!("{v:.3}");
    while s.contains('.') && (s.ends_with('0') || s.ends_with('.')) {
        s.pop();
    }
    s
}

/// Round tick positions covering `[min, max]`, five or so of them.
fn ticks(min: f64, max: f64) -> Vec<f64> {
    let span = max - min;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(mag);
    let mut t = (min / step).ceil() * step;
    let mut out = Vec::new();
    while t <= max + 1e-9 * span {
        out.push(if t.abs() < 1e-12 * span { 0.0 } else { t });
        t += step;
    }
    out
}

fn open_svg(title: &str) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">
<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>
<text x="{:.0}" y="24" font-size="15" text-anchor="middle" fill="#222222">{title}</text>
"##,
        WIDTH / 2.0
    );
    s
}

fn draw_axes(s: &mut String, frame: &Frame, x_label: &str, y_label: &str) {
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    let _ = write!(
        s,
        r##"<rect x="{x0}" y="{y1}" width="{:.1}" height="{:.1}" fill="none" stroke="#444444"/>
"##,
        x1 - x0,
        y0 - y1
    );
    for t in ticks(frame.x_min, frame.x_max) {
        let px = frame.px(t);
        let _ = write!(
            s,
            r##"<line x1="{px:.1}" y1="{y0}" x2="{px:.1}" y2="{:.1}" stroke="#444444"/>
<text x="{px:.1}" y="{:.1}" font-size="11" text-anchor="middle" fill="#222222">{}</text>
"##,
            y0 + 5.0,
            y0 + 18.0,
            fmt_num(t)
        );
    }
    for t in ticks(frame.y_min, frame.y_max) {
        let py = frame.py(t);
        let _ = write!(
            s,
            r##"<line x1="{:.1}" y1="{py:.1}" x2="{x0}" y2="{py:.1}" stroke="#444444"/>
<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end" fill="#222222">{}</text>
"##,
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0,
            fmt_num(t)
        );
    }
    let _ = write!(
        s,
        r##"<text x="{:.1}" y="{:.1}" font-size="13" text-anchor="middle" fill="#222222">{x_label}</text>
<text x="18" y="{:.1}" font-size="13" text-anchor="middle" fill="#222222" transform="rotate(-90 18 {:.1})">{y_label}</text>
"##,
        (x0 + x1) / 2.0,
        HEIGHT - 16.0,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
}

fn polyline(s: &mut String, frame: &Frame, pts: &[(f64, f64)], stroke: &str, dash: Option<&str>) {
    if pts.len() < 2 {
        return;
    }
    let mut d = String::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        let _ = write!(
            d,
            "{}{:.1},{:.1} ",
            if i == 0 { "M" } else { "L" },
            frame.px(*x),
            frame.py(*y)
        );
    }
    let dash_attr = dash
        .map(|p| format!(r##" stroke-dasharray="{p}""##))
        .unwrap_or_default();
    let _ = write!(
        s,
        r##"<path d="{}" fill="none" stroke="{stroke}" stroke-width="1.6"{dash_attr}/>
"##,
        d.trim_end()
    );
}

/// Heatmap of the reduced phase-space density W(x, p_x) with the
/// annular support boundaries overlaid. Cells outside the support are
/// left blank; interior cells are shaded by sqrt of the density
/// relative to its 90th percentile, which keeps the integrable edge
/// divergence from washing out the interior.
pub fn marginal_heatmap(state: &StateSpec, params: &ModelParams) -> Result<String> {
    let scan = 512;
    let mut r_sq_max: f64 = 0.0;
    for i in 0..scan {
        let theta = 2.0 * PI * i as f64 / scan as f64;
        r_sq_max = r_sq_max.max(support_band(theta, state, params)?.x2);
    }
    let r_max = r_sq_max.sqrt();
    let frame = Frame {
        x_min: -1.06 * r_max / params.omega,
        x_max: 1.06 * r_max / params.omega,
        y_min: -1.06 * r_max,
        y_max: 1.06 * r_max,
    };

    let cells = 120usize;
    let dx = (frame.x_max - frame.x_min) / cells as f64;
    let dp = (frame.y_max - frame.y_min) / cells as f64;
    let mut values = vec![0.0f64; cells * cells];
    let mut interior = Vec::new();
    for row in 0..cells {
        let px_val = frame.y_max - (row as f64 + 0.5) * dp;
        for col in 0..cells {
            let x_val = frame.x_min + (col as f64 + 0.5) * dx;
            if let DensityValue::Interior(w) =
                marginal_density(x_val, px_val, state, params, MarginalMode::Exact)
            {
                values[row * cells + col] = w;
                interior.push(w);
            }
        }
    }
    interior.sort_by(|a, b| a.total_cmp(b));
    let cap = interior
        .get(interior.len() * 9 / 10)
        .copied()
        .unwrap_or(1.0)
        .max(f64::MIN_POSITIVE);

    let mut s = open_svg("Reduced phase-space density W(x, p_x)");
    let cell_w = (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / cells as f64;
    let cell_h = (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM) / cells as f64;
    for row in 0..cells {
        let mut col = 0;
        while col < cells {
            let shade = |w: f64| -> u8 {
                if w == 0.0 {
                    return 255;
                }
                let t = (w / cap).min(1.0).sqrt();
                (31.0 + (1.0 - t) * 224.0) as u8
            };
            let level = shade(values[row * cells + col]);
            if level == 255 {
                col += 1;
                continue;
            }
            let run_start = col;
            while col < cells && shade(values[row * cells + col]) == level {
                col += 1;
            }
            let _ = write!(
                s,
                r##"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="rgb({level},{level},235)"/>
"##,
                MARGIN_LEFT + run_start as f64 * cell_w,
                MARGIN_TOP + row as f64 * cell_h,
                (col - run_start) as f64 * cell_w + 0.5,
                cell_h + 0.5,
            );
        }
    }

    for (edge, pick) in [("inner", false), ("outer", true)] {
        let mut pts = Vec::with_capacity(scan + 1);
        for i in 0..=scan {
            let theta = 2.0 * PI * i as f64 / scan as f64;
            let band = support_band(theta, state, params)?;
            let r_sq = if pick { band.x2 } else { band.x1 };
            let r = r_sq.max(0.0).sqrt();
            pts.push((r * theta.sin() / params.omega, r * theta.cos()));
        }
        polyline(&mut s, &frame, &pts, "#c43131", Some("5,3"));
        let _ = edge;
    }

    draw_axes(
        &mut s,
        &frame,
        "x (natural units, hbar = 1)",
        "p_x (natural units, hbar = 1)",
    );
    s.push_str("</svg>\n");
    Ok(s)
}

/// Schmidt eigenvalues overlaid on the arcsine band profile
/// lambda(dn). The exact eigenvalues arrive as a descending list; rank
/// r is placed at the dn quantile (2r+1)/(2K) of the band, alternating
/// sign within each near-degenerate pair, which is where an arcsine
/// spectrum of K occupied modes puts its r-th largest value.
///
/// Returns `None` when no eigenvalues are given.
pub fn schmidt_spectrum_figure(probabilities: &[f64], band: &LambdaSpectrum) -> Option<String> {
    if probabilities.is_empty() {
        return None;
    }
    let peak = probabilities.iter().fold(0.0f64, |a, &b| a.max(b));
    let shown: Vec<f64> = probabilities
        .iter()
        .copied()
        .filter(|&p| p >= 1e-3 * peak)
        .collect();
    let k = shown.len();
    let dn_max = band.dn_max;
    let frame = Frame {
        x_min: -1.15 * dn_max,
        x_max: 1.15 * dn_max,
        y_min: 0.0,
        y_max: 1.25 * peak,
    };
    let mut s = open_svg("Schmidt spectrum against the arcsine band profile");

    let curve_pts = 600;
    let mut pts = Vec::with_capacity(curve_pts + 1);
    for i in 0..=curve_pts {
        let dn = -dn_max + 2.0 * dn_max * i as f64 / curve_pts as f64;
        let lam = band.density(dn).min(frame.y_max);
        pts.push((dn, lam));
    }
    polyline(&mut s, &frame, &pts, "#2060c0", None);

    for (r, &lam) in shown.iter().enumerate() {
        let quantile = (2 * r + 1) as f64 / (2 * k) as f64;
        let dn = dn_max * (PI * quantile / 2.0).sin() * if r % 2 == 0 { 1.0 } else { -1.0 };
        let _ = write!(
            s,
            r##"<circle cx="{:.1}" cy="{:.1}" r="4" fill="#d08020" stroke="#7a4a10"/>
"##,
            frame.px(dn),
            frame.py(lam.min(frame.y_max))
        );
    }

    let _ = write!(
        s,
        r##"<text x="{:.0}" y="{:.0}" font-size="12" fill="#2060c0">band profile lambda(dn)</text>
<text x="{:.0}" y="{:.0}" font-size="12" fill="#7a4a10">exact eigenvalues</text>
"##,
        MARGIN_LEFT + 12.0,
        MARGIN_TOP + 18.0,
        MARGIN_LEFT + 12.0,
        MARGIN_TOP + 34.0
    );
    draw_axes(
        &mut s,
        &frame,
        "dn (mode-number offset, dimensionless)",
        "lambda (eigenvalue, dimensionless)",
    );
    s.push_str("</svg>\n");
    Some(s)
}

/// One sweep sample for the entropy-versus-coupling figure.
#[derive(Debug, Clone, Copy)]
pub struct CouplingPoint {
    pub coupling: f64,
    pub s_closed: f64,
    pub s_wkb: f64,
    pub s_kernel: f64,
}

/// Classical, semiclassical, and exact-kernel entropy against ln C,
/// with a unit-slope guide; in the weak-coupling regime all three
/// collapse onto it. Returns `None` when no points are given.
pub fn entropy_vs_log_coupling(points: &[CouplingPoint]) -> Option<String> {
    if points.is_empty() {
        return None;
    }
    let logs: Vec<f64> = points.iter().map(|p| p.coupling.ln()).collect();
    let x_min = logs.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let x_max = logs.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for p in points {
        for v in [p.s_closed, p.s_wkb, p.s_kernel] {
            y_min = y_min.min(v);
            y_max = y_max.max(v);
        }
    }
    let x_pad = 0.05 * (x_max - x_min).max(1e-6);
    let y_pad = 0.1 * (y_max - y_min).max(1e-6);
    let frame = Frame {
        x_min: x_min - x_pad,
        x_max: x_max + x_pad,
        y_min: y_min - y_pad,
        y_max: y_max + y_pad,
    };
    let mut s = open_svg("Entanglement entropy vs ln C");

    let mid = points.len() / 2;
    let guide_anchor = (logs[mid], points[mid].s_closed);
    let guide = [
        (frame.x_min, guide_anchor.1 + (frame.x_min - guide_anchor.0)),
        (frame.x_max, guide_anchor.1 + (frame.x_max - guide_anchor.0)),
    ];
    polyline(&mut s, &frame, &guide, "#999999", Some("2,4"));

    let series: [(&str, &str, Box<dyn Fn(&CouplingPoint) -> f64>); 3] = [
        ("classical closed form", "#2060c0", Box::new(|p| p.s_closed)),
        ("semiclassical band", "#20a050", Box::new(|p| p.s_wkb)),
        ("exact kernel", "#d08020", Box::new(|p| p.s_kernel)),
    ];
    for (idx, (label, color, pick)) in series.iter().enumerate() {
        let pts: Vec<(f64, f64)> = logs
            .iter()
            .zip(points)
            .map(|(&lx, p)| (lx, pick(p)))
            .collect();
        polyline(&mut s, &frame, &pts, color, None);
        for (lx, y) in &pts {
            let _ = write!(
                s,
                r##"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>
"##,
                frame.px(*lx),
                frame.py(*y)
            );
        }
        let ly = MARGIN_TOP + 18.0 + 16.0 * idx as f64;
        let _ = write!(
            s,
            r##"<line x1="{:.0}" y1="{ly:.0}" x2="{:.0}" y2="{ly:.0}" stroke="{color}" stroke-width="2"/>
<text x="{:.0}" y="{:.0}" font-size="12" fill="#222222">{label}</text>
"##,
            MARGIN_LEFT + 12.0,
            MARGIN_LEFT + 40.0,
            MARGIN_LEFT + 46.0,
            ly + 4.0
        );
    }
    let _ = write!(
        s,
        r##"<text x="{:.0}" y="{:.0}" font-size="12" fill="#666666">unit-slope guide</text>
"##,
        MARGIN_LEFT + 12.0,
        MARGIN_TOP + 18.0 + 16.0 * 3.0 + 4.0
    );

    draw_axes(&mut s, &frame, "ln C (dimensionless)", "S (nats)");
    s.push_str("</svg>\n");
    Some(s)
}
