//! Log-scale outage-versus-SNR plots as standalone SVG.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::estimator::{Scheme, SweepTable};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 55.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// One plotted curve: rows sharing (scheme, n_relays, secrecy_rate).
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub scheme: Scheme,
    pub n_relays: usize,
    pub secrecy_rate: f64,
    pub points: Vec<(f64, f64)>,
}

impl Curve {
    pub fn label(&self) -> String {
        match self.scheme {
            Scheme::Direct => format!("direct, Rs={}", self.secrecy_rate),
            Scheme::Opportunistic => {
                format!("relaying N={}, Rs={}", self.n_relays, self.secrecy_rate)
            }
        }
    }
}

/// Groups rows into curves in order of first appearance.
pub fn curves(table: &SweepTable) -> Vec<Curve> {
    let mut out: Vec<Curve> = Vec::new();
    for r in &table.rows {
        let key = (r.scheme, r.n_relays, r.secrecy_rate.to_bits());
        let pt = (r.gamma_s_db, r.estimate.estimate);
        match out
            .iter_mut()
            .find(|c| (c.scheme, c.n_relays, c.secrecy_rate.to_bits()) == key)
        {
            Some(c) => c.points.push(pt),
            None => out.push(Curve {
                scheme: r.scheme,
                n_relays: r.n_relays,
                secrecy_rate: r.secrecy_rate,
                points: vec![pt],
            }),
        }
    }
    for c in &mut out {
        c.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders the table. Zero estimates are pinned to the bottom decade.
pub fn render_svg(table: &SweepTable) -> Result<String> {
    let curves = curves(table);
    if curves.is_empty() {
        return Err(Error::invalid("nothing to plot"));
    }
    let xs = curves.iter().flat_map(|c| c.points.iter().map(|p| p.0));
    let (mut x_min, mut x_max) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
        (lo.min(x), hi.max(x))
    });
    if x_min == x_max {
        x_min -= 1.0;
        x_max += 1.0;
    }
    let min_pos = curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.1))
        .filter(|&y| y > 0.0)
        .fold(f64::INFINITY, f64::min);
    let dec_lo = if min_pos.is_finite() {
        min_pos.log10().floor().min(-1.0)
    } else {
        -1.0
    };
    let dec_hi = 0.0;

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| {
        let ly = if y > 0.0 {
            y.log10().max(dec_lo)
        } else {
            dec_lo
        };
        TOP + (dec_hi - ly) / (dec_hi - dec_lo) * plot_h
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#000"/>"##
    );

    // y: one gridline per decade
    let mut d = dec_lo;
    while d <= dec_hi {
        let y = sy(10f64.powf(d));
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"##,
            LEFT + plot_w,
            LEFT - 6.0,
            y + 4.0
        );
        d += 1.0;
    }
    // x: ticks on a 5 dB raster when it fits, else 10 dB
    let step = if (x_max - x_min) / 5.0 <= 12.0 {
        5.0
    } else {
        10.0
    };
    let mut x = (x_min / step).ceil() * step;
    while x <= x_max + 1e-9 {
        let px = sx(x);
        let _ = writeln!(
            s,
            r##"<line x1="{px:.2}" y1="{TOP}" x2="{px:.2}" y2="{:.2}" stroke="#eee"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{x}</text>"##,
            TOP + plot_h,
            TOP + plot_h + 18.0
        );
        x += step;
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">SNR γs (dB)</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(16 {:.2}) rotate(-90)" text-anchor="middle">Secrecy outage probability</text>"#,
        TOP + plot_h / 2.0
    );

    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.8" points="{}"/>"#,
            pts.join(" ")
        );
        let ly = TOP + 14.0 + 20.0 * i as f64;
        let lx = LEFT + plot_w + 14.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 24.0,
            lx + 30.0,
            ly + 4.0,
            escape(&c.label())
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
