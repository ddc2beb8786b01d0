//! Fixed-format CSV and SVG writers.

use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use garsia::geometry::ExtremeProbe;

/// `Φ` on the polar grid `r_i e^{2πij/ntheta}`; `values[i][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiGrid {
    pub radii: Vec<f64>,
    pub ntheta: usize,
    pub values: Vec<Vec<f64>>,
}

impl PhiGrid {
    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.ntheta as f64
    }

    pub fn max(&self) -> f64 {
        self.values.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }

    /// `r,theta,phi`, radius-major.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,theta,phi\n");
        for (r, row) in self.radii.iter().zip(&self.values) {
            for (j, v) in row.iter().enumerate() {
                writeln!(out, "{r:.16e},{:.16e},{v:.16e}", self.theta(j)).unwrap();
            }
        }
        out
    }
}

/// Viridis sampled at five points; colors are interpolated linearly between them.
const RAMP: [[u8; 3]; 5] = [
    [0x44, 0x01, 0x54],
    [0x3b, 0x52, 0x8b],
    [0x21, 0x91, 0x8c],
    [0x5e, 0xc9, 0x62],
    [0xfd, 0xe7, 0x25],
];

fn hex(c: [u8; 3]) -> String {
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

/// Color for `t ∈ [0, 1]`.
pub fn ramp(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let x = t * (RAMP.len() - 1) as f64;
    let i = (x.floor() as usize).min(RAMP.len() - 2);
    let s = x - i as f64;
    let mix = |k: usize| (RAMP[i][k] as f64 * (1.0 - s) + RAMP[i + 1][k] as f64 * s).round() as u8;
    hex([mix(0), mix(1), mix(2)])
}

const SIZE: f64 = 480.0;
const PAD: f64 = 16.0;

/// Annular sectors centred on the grid nodes, colored linearly from min to max Φ.
pub fn svg_heatmap(g: &PhiGrid) -> String {
    let (lo, hi) = (g.min(), g.max());
    let span = if hi > lo { hi - lo } else { 1.0 };
    let rmax = g.radii.last().copied().unwrap_or(1.0);
    let c = PAD + SIZE / 2.0;
    let scale = SIZE / 2.0 / rmax;
    let dr = if g.radii.len() > 1 { g.radii[1] - g.radii[0] } else { rmax };
    let dt = TAU / g.ntheta as f64;
    let xy = |r: f64, t: f64| (c + scale * r * t.cos(), c - scale * r * t.sin());
    let width = SIZE + 2.0 * PAD + 120.0;
    let height = SIZE + 2.0 * PAD;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r#"<g stroke="none">"#).unwrap();
    for (i, (&r, row)) in g.radii.iter().zip(&g.values).enumerate() {
        let r0 = (r - dr / 2.0).max(0.0);
        let r1 = if i + 1 == g.radii.len() { r } else { r + dr / 2.0 };
        if r1 <= r0 {
            continue;
        }
        for (j, v) in row.iter().enumerate() {
            let (t0, t1) = (g.theta(j) - dt / 2.0, g.theta(j) + dt / 2.0);
            let large = u8::from(dt > PI);
            let (a, b) = (xy(r1, t0), xy(r1, t1));
            let fill = ramp((v - lo) / span);
            let rs = scale * r1;
            if r0 == 0.0 {
                writeln!(
                    s,
                    r#"<path d="M{c:.3},{c:.3}L{:.3},{:.3}A{rs:.3},{rs:.3} 0 {large} 0 {:.3},{:.3}Z" fill="{fill}"/>"#,
                    a.0, a.1, b.0, b.1
                )
                .unwrap();
            } else {
                let (p, q) = (xy(r0, t1), xy(r0, t0));
                let ri = scale * r0;
                writeln!(
                    s,
                    r#"<path d="M{:.3},{:.3}A{rs:.3},{rs:.3} 0 {large} 0 {:.3},{:.3}L{:.3},{:.3}A{ri:.3},{ri:.3} 0 {large} 1 {:.3},{:.3}Z" fill="{fill}"/>"#,
                    a.0, a.1, b.0, b.1, p.0, p.1, q.0, q.1
                )
                .unwrap();
            }
        }
    }
    writeln!(s, "</g>").unwrap();

    // Legend: vertical bar, max on top.
    let x = SIZE + 2.0 * PAD + 10.0;
    writeln!(s, r#"<defs><linearGradient id="ramp" x1="0" y1="1" x2="0" y2="0">"#).unwrap();
    for (k, col) in RAMP.iter().enumerate() {
        let off = k as f64 / (RAMP.len() - 1) as f64;
        writeln!(s, r#"<stop offset="{off}" stop-color="{}"/>"#, hex(*col)).unwrap();
    }
    writeln!(s, "</linearGradient></defs>").unwrap();
    writeln!(
        s,
        r#"<rect x="{x}" y="{PAD}" width="20" height="{SIZE}" fill="url(#ramp)" stroke="black" stroke-width="0.5"/>"#
    )
    .unwrap();
    let tx = x + 26.0;
    writeln!(s, r#"<text x="{tx}" y="{}" font-family="monospace" font-size="11">max {hi:.6e}</text>"#, PAD + 10.0).unwrap();
    writeln!(s, r#"<text x="{tx}" y="{}" font-family="monospace" font-size="11">min {lo:.6e}</text>"#, PAD + SIZE).unwrap();
    writeln!(s, r#"<text x="{tx}" y="{}" font-family="monospace" font-size="11">Φ</text>"#, PAD + SIZE / 2.0).unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}

/// `index,norm_plus,norm_minus,margin,g_oscillation,violation`; `index`
/// points into the JSON list of perturbations.
pub fn probe_csv(p: &ExtremeProbe) -> String {
    let mut out = String::from("index,norm_plus,norm_minus,margin,g_oscillation,violation\n");
    for (i, r) in p.rows.iter().enumerate() {
        writeln!(
            out,
            "{i},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.norm_plus, r.norm_minus, r.margin, r.g_oscillation, r.violation
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> PhiGrid {
        PhiGrid {
            radii: vec![0.0, 0.5],
            ntheta: 4,
            values: vec![vec![1.0; 4], vec![0.0, 0.25, 0.5, 0.75]],
        }
    }

    #[test]
    fn ramp_ends() {
        assert_eq!(ramp(0.0), "#440154");
        assert_eq!(ramp(1.0), "#fde725");
        assert_eq!(ramp(f64::NAN), "#440154");
    }

    #[test]
    fn csv_shape() {
        let csv = tiny().to_csv();
        assert_eq!(csv.lines().count(), 9);
        assert!(csv.starts_with("r,theta,phi\n0.0000000000000000e0,"));
    }

    #[test]
    fn svg_has_legend() {
        let svg = svg_heatmap(&tiny());
        assert!(svg.contains("max 1.000000e0"));
        assert!(svg.contains("min 0.000000e0"));
        assert_eq!(svg.matches("<path").count(), 8);
    }
}
