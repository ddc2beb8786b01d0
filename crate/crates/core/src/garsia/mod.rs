//! The Garsia function `Φ_f(z) = P(|f|^2)(z) - |Pf(z)|^2` and the Garsia norm.

mod compile;
mod search;

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::boundary::{BoundaryFunction, CircleGrid};
use crate::error::{Error, Result};
use crate::poisson::{check_quadrature_radius, poisson_kernel, spectral_circle, spectral_eval, DiskPoint};

pub use compile::{abs_sq_field, analytic_fn, AnalyticFunction, SpecFunction};
pub use search::{
    garsia_norm, is_norm_attaining, trend_increasing, NormEstimate, SearchConfig, SearchLog, TrendPoint, Verdict,
};
pub(crate) use search::search_weighted;

/// The two Poisson averages whose difference is `Φ_f(z)`:
/// `a = P(|f|^2)(z)` and `b = |Pf(z)|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiParts {
    pub a: f64,
    pub b: f64,
}

impl PhiParts {
    pub fn value(&self) -> f64 {
        self.a - self.b
    }
}

/// Anything whose Garsia function can be evaluated inside the disk.
pub trait GarsiaSource: Sync {
    fn grid(&self) -> CircleGrid;

    /// `P(|f|^2)(z)` and `|Pf(z)|^2`, without range checks.
    fn phi_parts(&self, z: DiskPoint) -> PhiParts;

    /// Parts at `r e^{2πij/n_theta}`, `j = 0..n_theta`.
    fn phi_circle(&self, r: f64, n_theta: usize) -> Vec<PhiParts> {
        (0..n_theta)
            .map(|j| self.phi_parts(DiskPoint::raw(r, TAU * j as f64 / n_theta as f64)))
            .collect()
    }

    /// Largest radius at which `phi_parts` is trusted (1 when exact everywhere).
    fn radius_limit(&self) -> f64;

    /// `‖f‖_∞` on the grid.
    fn sup_norm(&self) -> f64;
}

fn circle_parts(f: &BoundaryFunction, r: f64, n_theta: usize) -> Option<Vec<PhiParts>> {
    let n = f.len();
    if n_theta > n || !n.is_multiple_of(n_theta) {
        return None;
    }
    let a = spectral_circle(f.abs_sq_spectrum(), r);
    let p = spectral_circle(f.spectrum(), r);
    let stride = n / n_theta;
    Some(
        (0..n_theta)
            .map(|j| PhiParts {
                a: a[j * stride].re,
                b: p[j * stride].norm_sqr(),
            })
            .collect(),
    )
}

pub(crate) fn sampled_parts(f: &BoundaryFunction, z: DiskPoint) -> PhiParts {
    PhiParts {
        a: spectral_eval(f.abs_sq_spectrum(), z).re,
        b: spectral_eval(f.spectrum(), z).norm_sqr(),
    }
}

pub(crate) fn sampled_circle(f: &BoundaryFunction, r: f64, n_theta: usize) -> Vec<PhiParts> {
    circle_parts(f, r, n_theta).unwrap_or_else(|| {
        (0..n_theta)
            .map(|j| sampled_parts(f, DiskPoint::raw(r, TAU * j as f64 / n_theta as f64)))
            .collect()
    })
}

pub(crate) fn sampled_limit(f: &BoundaryFunction) -> f64 {
    if f.spectrum().is_resolved() && f.abs_sq_spectrum().is_resolved() {
        1.0
    } else {
        f.grid().r_quad_max()
    }
}

/// Sampled functions use the spectral extension of `f` and `|f|^2`.
impl GarsiaSource for BoundaryFunction {
    fn grid(&self) -> CircleGrid {
        BoundaryFunction::grid(self)
    }

    fn phi_parts(&self, z: DiskPoint) -> PhiParts {
        sampled_parts(self, z)
    }

    fn phi_circle(&self, r: f64, n_theta: usize) -> Vec<PhiParts> {
        sampled_circle(self, r, n_theta)
    }

    fn radius_limit(&self) -> f64 {
        sampled_limit(self)
    }

    fn sup_norm(&self) -> f64 {
        BoundaryFunction::sup_norm(self)
    }
}

/// Roundoff allowance below zero, relative to `max(1, a)`.
const NEGATIVE_SLACK: f64 = 1e-12;

pub(crate) fn clamp_phi(parts: PhiParts) -> Result<f64> {
    let v = parts.value();
    if v >= 0.0 {
        Ok(v)
    } else if v >= -NEGATIVE_SLACK * parts.a.abs().max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::Numerical(format!(
            "Φ = {v:e} < 0 (P|f|^2 = {}, |Pf|^2 = {})",
            parts.a, parts.b
        )))
    }
}

/// `Φ_f(z)`, clamped at 0 for roundoff-sized negatives.
pub fn phi<S: GarsiaSource + ?Sized>(f: &S, z: DiskPoint) -> Result<f64> {
    let limit = f.radius_limit();
    if z.r() > limit {
        return Err(Error::AccuracyRefusal { r: z.r(), limit });
    }
    clamp_phi(f.phi_parts(z))
}

/// `Φ_f(z) = ∫ |f - Pf(z)|^2 dω_z` by direct kernel quadrature.
pub fn phi_oracle(f: &BoundaryFunction, z: DiskPoint) -> Result<f64> {
    let grid = f.grid();
    check_quadrature_radius(grid, z)?;
    let w = grid.weight();
    let kernel: Vec<f64> = grid.angles().map(|t| w * poisson_kernel(z, t)).collect();
    let pf: Complex64 = kernel.iter().zip(f.values()).map(|(k, v)| v * *k).sum();
    Ok(kernel
        .iter()
        .zip(f.values())
        .map(|(k, v)| k * (v - pf).norm_sqr())
        .sum())
}

/// `Φ_f(z) - mean of Φ_f over |w - z| = rho`; superharmonicity makes this ≥ 0.
pub fn superharmonic_slack<S: GarsiaSource + ?Sized>(f: &S, z: DiskPoint, rho: f64) -> Result<f64> {
    let limit = f.radius_limit().min(1.0);
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::param("rho", format!("{rho} is not positive")));
    }
    if z.r() + rho >= limit {
        return Err(Error::param(
            "rho",
            format!("disk of radius {rho} about |z| = {} leaves r < {limit}", z.r()),
        ));
    }
    let center = z.to_complex();
    let value_at = |t: f64| -> Result<f64> {
        let w = DiskPoint::from_complex(center + Complex64::from_polar(rho, t))?;
        clamp_phi(f.phi_parts(w))
    };
    let mut n = 64usize;
    let mut sum: f64 = (0..n).map(|j| value_at(TAU * j as f64 / n as f64)).sum::<Result<f64>>()?;
    let mut mean = sum / n as f64;
    while n < 1 << 16 {
        let odd: f64 = (0..n)
            .map(|j| value_at(TAU * (j as f64 + 0.5) / n as f64))
            .sum::<Result<f64>>()?;
        sum += odd;
        n *= 2;
        let next = sum / n as f64;
        let done = (next - mean).abs() <= 1e-13 * next.abs().max(1.0);
        mean = next;
        if done {
            break;
        }
    }
    Ok(clamp_phi(f.phi_parts(z))? - mean)
}

/// Mean-value test `Φ_f(z) ≥ mean over the circle - 1e-9`.
pub fn superharmonic_check<S: GarsiaSource + ?Sized>(f: &S, z: DiskPoint, rho: f64) -> Result<bool> {
    Ok(superharmonic_slack(f, z, rho)? >= -1e-9)
}

/// `‖f‖_∞ - ‖f‖_G` (lower bound); near 0 signals G-extremality.
pub fn extremal_gap<S: GarsiaSource + ?Sized>(f: &S, cfg: &SearchConfig) -> Result<f64> {
    Ok(f.sup_norm() - garsia_norm(f, cfg)?.lower_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{make_grid, sample, ArcSet, FunctionSpec};
    use std::f64::consts::PI;

    fn dp(r: f64, t: f64) -> DiskPoint {
        DiskPoint::new(r, t).unwrap()
    }

    #[test]
    fn identity_phi() {
        let g = make_grid(10).unwrap();
        let id = sample(&FunctionSpec::Identity, g).unwrap();
        for &(r, t) in &[(0.0, 0.0), (0.5, 1.0), (0.9, 4.0), (0.99, 2.0)] {
            assert!((phi(&id, dp(r, t)).unwrap() - (1.0 - r * r)).abs() < 1e-13);
        }
        assert!((phi_oracle(&id, DiskPoint::origin()).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn indicator_at_center() {
        let g = make_grid(12).unwrap();
        let e = sample(&FunctionSpec::indicator(ArcSet::new([(0.0, PI)]).unwrap()), g).unwrap();
        assert!((phi(&e, DiskPoint::origin()).unwrap() - 0.25).abs() < 1e-14);
        assert!((phi_oracle(&e, DiskPoint::origin()).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn constant_phi_is_zero() {
        let g = make_grid(8).unwrap();
        let k = sample(&FunctionSpec::constant(Complex64::new(3.0, -1.0)), g).unwrap();
        assert_eq!(phi(&k, dp(0.7, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn sampled_refuses_near_boundary_when_unresolved() {
        let g = make_grid(10).unwrap();
        let e = sample(&FunctionSpec::indicator(ArcSet::new([(0.0, 1.0)]).unwrap()), g).unwrap();
        assert!(matches!(
            phi(&e, dp(0.999, 0.0)),
            Err(Error::AccuracyRefusal { .. })
        ));
    }

    #[test]
    fn clamp_rules() {
        assert_eq!(clamp_phi(PhiParts { a: 1.0, b: 1.0 + 1e-13 }).unwrap(), 0.0);
        assert!(clamp_phi(PhiParts { a: 1.0, b: 1.0 + 1e-9 }).is_err());
    }

    #[test]
    fn superharmonic_examples() {
        let g = make_grid(10).unwrap();
        let id = sample(&FunctionSpec::Identity, g).unwrap();
        let slack = superharmonic_slack(&id, DiskPoint::origin(), 0.5).unwrap();
        assert!((slack - 0.25).abs() < 1e-12);
        let e = sample(&FunctionSpec::indicator(ArcSet::new([(0.0, PI)]).unwrap()), make_grid(12).unwrap()).unwrap();
        assert!(superharmonic_check(&e, DiskPoint::origin(), 0.3).unwrap());
        let k = sample(&FunctionSpec::constant(1.0), g).unwrap();
        assert!(superharmonic_check(&k, dp(0.2, 1.0), 0.5).unwrap());
        assert!(superharmonic_check(&id, dp(0.8, 0.0), 0.3).is_err());
    }
}
