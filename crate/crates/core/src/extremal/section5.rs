//! The explicit G-extremal outer function: `η = 1` off `∪J_k`, `η = ε_k` on
//! `J_k`, with witnesses `z_k = (1 - d_k) e^{i t_k}`.

use num_complex::Complex64;
use serde::Serialize;

use super::WitnessSequence;
use crate::boundary::{BoundaryFunction, CircleArc, CircleGrid, StepFunction};
use crate::error::{Error, Result};
use crate::poisson::{arc_harmonic_measure, extend_steps, DiskPoint};

/// Sequences `l_k`, `ε_k`, `d_k` for `k = 1..=K`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section5Config {
    pub l: Vec<f64>,
    pub eps: Vec<f64>,
    pub d: Vec<f64>,
}

impl Section5Config {
    /// `l_k = ε_k = 2^-k`, `d_k = k^{-1/2} 2^-k`.
    pub fn standard(k: usize) -> Result<Self> {
        if k == 0 || k > 60 {
            return Err(Error::param("k", format!("{k} is not in 1..=60")));
        }
        let pow = |j: usize| (-(j as f64)).exp2();
        Self::custom(
            (1..=k).map(pow).collect(),
            (1..=k).map(pow).collect(),
            (1..=k).map(|j| pow(j) / (j as f64).sqrt()).collect(),
        )
    }

    /// Only finite-prefix conditions are checkable: every entry in `(0, 1)`
    /// and `Σ l_k ≤ π`. The limit conditions on `d_k / l_k` are the caller's.
    pub fn custom(l: Vec<f64>, eps: Vec<f64>, d: Vec<f64>) -> Result<Self> {
        if l.is_empty() || l.len() != eps.len() || l.len() != d.len() {
            return Err(Error::param("l", "l, eps and d need the same positive length"));
        }
        for (name, seq) in [("l", &l), ("eps", &eps), ("d", &d)] {
            if let Some(v) = seq.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
                return Err(Error::param(name, format!("{v} is not in (0, 1)")));
            }
        }
        let total: f64 = l.iter().sum();
        if total > std::f64::consts::PI {
            return Err(Error::param("l", format!("Σ l_k = {total} exceeds π")));
        }
        Ok(Self { l, eps, d })
    }

    pub fn k(&self) -> usize {
        self.l.len()
    }

    /// `α_1 = 0`, `α_{k+1} = β_k + l_k`; `K + 1` entries.
    pub fn alpha(&self) -> Vec<f64> {
        let mut a = vec![0.0];
        for l in &self.l {
            let last = *a.last().unwrap();
            a.push(last + 2.0 * l);
        }
        a
    }

    /// `β_k = α_k + l_k`.
    pub fn beta(&self) -> Vec<f64> {
        self.alpha().iter().zip(&self.l).map(|(a, l)| a + l).collect()
    }

    /// `I_k = [α_k, β_k)`.
    pub fn i_arcs(&self) -> Vec<CircleArc> {
        let a = self.alpha();
        self.beta()
            .iter()
            .zip(&a)
            .map(|(&end, &start)| CircleArc { start, end })
            .collect()
    }

    /// `J_k = [β_k, α_{k+1})`.
    pub fn j_arcs(&self) -> Vec<CircleArc> {
        let a = self.alpha();
        self.beta()
            .iter()
            .zip(&a[1..])
            .map(|(&start, &end)| CircleArc { start, end })
            .collect()
    }

    pub fn eta_steps(&self) -> StepFunction {
        StepFunction::from_pieces(
            Complex64::new(1.0, 0.0),
            self.j_arcs()
                .into_iter()
                .zip(&self.eps)
                .map(|(arc, e)| (arc, Complex64::from(*e))),
        )
    }

    /// `z_k = (1 - d_k) e^{i t_k}`, `t_k = (α_k + β_k)/2`.
    pub fn witnesses(&self) -> Result<Vec<DiskPoint>> {
        self.i_arcs()
            .iter()
            .zip(&self.d)
            .map(|(arc, d)| DiskPoint::new(1.0 - d, 0.5 * (arc.start + arc.end)))
            .collect()
    }

    /// `(1/2π) Σ l_k log(1/ε_k)`.
    pub fn log_integral(&self) -> f64 {
        self.l
            .iter()
            .zip(&self.eps)
            .map(|(l, e)| -l * e.ln())
            .sum::<f64>()
            / std::f64::consts::TAU
    }
}

/// The construction with its arcs, grid samples and witness points.
#[derive(Debug, Clone, PartialEq)]
pub struct Section5 {
    pub config: Section5Config,
    pub eta_steps: StepFunction,
    pub eta: BoundaryFunction,
    pub i_arcs: Vec<CircleArc>,
    pub j_arcs: Vec<CircleArc>,
    pub witnesses: WitnessSequence,
}

impl Section5 {
    /// Grid mean of `log(1/η)`.
    pub fn grid_log_integral(&self) -> f64 {
        let v = self.eta.real_parts();
        v.iter().map(|x| -x.ln()).sum::<f64>() / v.len() as f64
    }
}

pub fn section5_build(cfg: &Section5Config, grid: CircleGrid) -> Result<Section5> {
    let eta_steps = cfg.eta_steps();
    let eta = BoundaryFunction::from_fn(grid, |t| eta_steps.eval(t));
    Ok(Section5 {
        config: cfg.clone(),
        i_arcs: cfg.i_arcs(),
        j_arcs: cfg.j_arcs(),
        witnesses: WitnessSequence::new(cfg.witnesses()?)?,
        eta_steps,
        eta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Section5Row {
    pub k: usize,
    pub p_eta: f64,
    pub p_log_inv_eta: f64,
    pub omega_i: f64,
    pub omega_j_log_inv_eps: f64,
}

/// Per-`k` values at the witnesses, computed with exact harmonic measure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section5Report {
    pub rows: Vec<Section5Row>,
    /// Each column strictly increasing in `k`.
    pub increasing: [bool; 4],
}

fn strictly_increasing(v: impl Iterator<Item = f64>) -> bool {
    let v: Vec<f64> = v.collect();
    v.windows(2).all(|w| w[1] > w[0])
}

impl Section5Report {
    pub const HEADER: &'static str = "k,P_eta,P_log_inv_eta,omega_I,omega_J_log_inv_eps";

    fn column(&self, c: usize, from_k: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().filter(move |r| r.k >= from_k).map(move |r| match c {
            0 => r.p_eta,
            1 => r.p_log_inv_eta,
            2 => r.omega_i,
            _ => r.omega_j_log_inv_eps,
        })
    }

    /// Whether column `c` (0..4, CSV order after `k`) is strictly increasing for `k ≥ from_k`.
    pub fn increasing_from(&self, c: usize, from_k: usize) -> bool {
        strictly_increasing(self.column(c, from_k))
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{}\n", Self::HEADER);
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                r.k, r.p_eta, r.p_log_inv_eta, r.omega_i, r.omega_j_log_inv_eps
            ));
        }
        out
    }
}

pub fn section5_report(cfg: &Section5Config) -> Result<Section5Report> {
    let eta = cfg.eta_steps();
    let log_inv = eta.map(|v| Complex64::from(-v.re.ln()));
    let (i_arcs, j_arcs) = (cfg.i_arcs(), cfg.j_arcs());
    let rows: Vec<Section5Row> = cfg
        .witnesses()?
        .into_iter()
        .enumerate()
        .map(|(i, z)| Section5Row {
            k: i + 1,
            p_eta: extend_steps(&eta, z).re,
            p_log_inv_eta: extend_steps(&log_inv, z).re,
            omega_i: arc_harmonic_measure(z, i_arcs[i].start, i_arcs[i].end),
            omega_j_log_inv_eps: arc_harmonic_measure(z, j_arcs[i].start, j_arcs[i].end) * -cfg.eps[i].ln(),
        })
        .collect();
    let mut report = Section5Report {
        rows,
        increasing: [false; 4],
    };
    for c in 0..4 {
        report.increasing[c] = report.increasing_from(c, 1);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::make_grid;

    #[test]
    fn recurrence_k3() {
        let c = Section5Config::standard(3).unwrap();
        let a = c.alpha();
        let b = c.beta();
        assert_eq!(&a[..3], &[0.0, 1.0, 1.5]);
        assert_eq!(&b[..2], &[0.5, 1.25]);
    }

    #[test]
    fn eta_values() {
        let c = Section5Config::standard(4).unwrap();
        let e = c.eta_steps();
        assert_eq!(e.eval(0.75).re, 0.5);
        assert_eq!(e.eval(0.25).re, 1.0);
        assert_eq!(e.eval(4.0).re, 1.0);
    }

    #[test]
    fn log_integral_matches_closed_form() {
        let k = 12;
        let c = Section5Config::standard(k).unwrap();
        let closed = std::f64::consts::LN_2 / std::f64::consts::TAU * (2.0 - (k as f64 + 2.0) * 2f64.powi(-(k as i32)));
        assert!((c.log_integral() - closed).abs() < 1e-15);
        let g = make_grid(14).unwrap();
        let s = section5_build(&c, g).unwrap();
        assert!((s.grid_log_integral() - closed).abs() <= 2.0 * k as f64 / g.n() as f64);
    }

    #[test]
    fn rejects_long_arcs() {
        assert!(Section5Config::custom(vec![2.0], vec![0.5], vec![0.1]).is_err());
        assert!(Section5Config::custom(vec![0.9; 4], vec![0.5; 4], vec![0.1; 4]).is_err());
        assert!(Section5Config::standard(0).is_err());
    }

    #[test]
    fn report_rows() {
        let r = section5_report(&Section5Config::standard(12).unwrap()).unwrap();
        assert_eq!(r.rows.len(), 12);
        assert!(r.increasing[2]);
        let csv = r.to_csv();
        assert!(csv.starts_with(Section5Report::HEADER));
        assert_eq!(csv.lines().count(), 13);
    }
}
