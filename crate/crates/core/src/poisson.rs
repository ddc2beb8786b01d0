//! Poisson kernel, harmonic extension and harmonic measure.
//!
//! Three extension routes coexist:
//! * kernel quadrature on the grid (trusted up to `r_quad_max`),
//! * the spectral series `Σ hat_f(k) r^|k| e^{ikθ}`,
//! * closed forms for piecewise-constant data, exact up to the boundary.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary::{ArcSet, BoundaryFunction, CircleGrid, Spectrum, StepFunction};
use crate::error::{Error, Result};
use crate::fft;

/// A point `z = r e^{iθ}` of the open disk, kept in polar form so that
/// `1 - r` stays accurate near the circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct DiskPoint {
    r: f64,
    theta: f64,
}

fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

impl DiskPoint {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r.is_finite() && theta.is_finite()) {
            return Err(Error::param("z", format!("({r}, {theta}) is not finite")));
        }
        if !(0.0..1.0).contains(&r) {
            return Err(Error::param("z", format!("radius {r} outside [0, 1)")));
        }
        Ok(Self::raw(r, theta))
    }

    /// Unchecked constructor for radii already known to lie in `[0, 1)`.
    pub(crate) fn raw(r: f64, theta: f64) -> Self {
        debug_assert!((0.0..1.0).contains(&r), "r = {r}");
        Self {
            r,
            theta: if r == 0.0 { 0.0 } else { wrap_angle(theta) },
        }
    }

    pub fn origin() -> Self {
        Self { r: 0.0, theta: 0.0 }
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        let (r, theta) = z.to_polar();
        Self::new(r, theta)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

impl From<DiskPoint> for Complex64 {
    fn from(z: DiskPoint) -> Self {
        z.to_complex()
    }
}

impl TryFrom<(f64, f64)> for DiskPoint {
    type Error = Error;

    fn try_from((r, theta): (f64, f64)) -> Result<Self> {
        DiskPoint::new(r, theta)
    }
}

impl From<DiskPoint> for (f64, f64) {
    fn from(z: DiskPoint) -> Self {
        (z.r, z.theta)
    }
}

/// `|e^{iφ} - z|^2` without cancellation near the circle.
fn dist_sq(z: DiskPoint, phi: f64) -> f64 {
    let s = ((phi - z.theta) / 2.0).sin();
    (1.0 - z.r).powi(2) + 4.0 * z.r * s * s
}

/// `(1 - |z|^2) / |e^{iφ} - z|^2`.
pub fn poisson_kernel(z: DiskPoint, zeta_angle: f64) -> f64 {
    (1.0 - z.r) * (1.0 + z.r) / dist_sq(z, zeta_angle)
}

/// `Pf(z)` by kernel quadrature on the grid of `f`.
pub fn extend_quadrature(f: &BoundaryFunction, z: DiskPoint) -> Result<Complex64> {
    let grid = f.grid();
    check_quadrature_radius(grid, z)?;
    let w = grid.weight();
    Ok(grid
        .angles()
        .zip(f.values())
        .map(|(t, v)| v * (w * poisson_kernel(z, t)))
        .sum())
}

pub(crate) fn check_quadrature_radius(grid: CircleGrid, z: DiskPoint) -> Result<()> {
    let limit = grid.r_quad_max();
    if z.r > limit {
        return Err(Error::AccuracyRefusal { r: z.r, limit });
    }
    Ok(())
}

/// Spectral extension with an estimate of the truncated tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierExtension {
    pub value: Complex64,
    /// `2·e·r^{n/2+1}/(1-r)` where `e` is the largest coefficient in the top band.
    pub tail_bound: f64,
}

/// `Pf(z) = Σ_k hat_f(k) r^|k| e^{ikθ}` over `|k| ≤ n/2`.
pub fn extend_fourier(f: &BoundaryFunction, z: DiskPoint) -> FourierExtension {
    let spec = f.spectrum();
    let half = (spec.n() / 2) as i32;
    let tail_bound = if z.r == 0.0 {
        0.0
    } else {
        2.0 * spec.edge_magnitude() * z.r.powi(half + 1) / (1.0 - z.r)
    };
    FourierExtension {
        value: spectral_eval(spec, z),
        tail_bound,
    }
}

/// Horner evaluation of the harmonic series; the Nyquist term is split
/// evenly between `z^{n/2}` and `conj(z)^{n/2}`.
pub(crate) fn spectral_eval(spec: &Spectrum, z: DiskPoint) -> Complex64 {
    let n = spec.n();
    let half = n / 2;
    let top = if spec.is_resolved() {
        spec.effective_bandwidth()
    } else {
        half
    };
    let zc = z.to_complex();
    let coeff = |k: i64| {
        let c = spec.coeff(k);
        if k.unsigned_abs() as usize == half {
            c * 0.5
        } else {
            c
        }
    };
    let mut pos = Complex64::new(0.0, 0.0);
    let mut neg = Complex64::new(0.0, 0.0);
    for k in (1..=top as i64).rev() {
        pos = pos * zc + coeff(k);
        neg = neg * zc.conj() + coeff(-k);
    }
    pos * zc + neg * zc.conj() + spec.coeff(0)
}

/// Values of the spectral extension at `r e^{iθ_j}` for every grid node.
pub(crate) fn spectral_circle(spec: &Spectrum, r: f64) -> Vec<Complex64> {
    let n = spec.n();
    let scaled: Vec<Complex64> = spec
        .fft_order()
        .iter()
        .enumerate()
        .map(|(i, c)| c * r.powi(fft::freq(i, n).unsigned_abs() as i32))
        .collect();
    fft::inverse(&scaled)
}

/// `Pf` on the circle of radius `r`, at the grid angles of `f`.
pub fn extend_circle(f: &BoundaryFunction, r: f64) -> Result<Vec<Complex64>> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::param("r", format!("{r} outside [0, 1)")));
    }
    Ok(spectral_circle(f.spectrum(), r))
}

/// Image-angle primitive: `ω_z` of the arc from `φ` to `φ + s` equals
/// `(G(s + φ - φ_0) - G(φ - φ_0)) / 2π`; `G(s + 2π) = G(s) + 2π`.
fn image_angle(r: f64, s: f64) -> f64 {
    let k = (s / TAU).round();
    let s0 = s - TAU * k;
    let h = s0 / 2.0;
    2.0 * ((1.0 + r) * h.sin()).atan2((1.0 - r) * h.cos()) + TAU * k
}

/// `ω_z([a, b))` for `a < b` (any window).
pub fn arc_harmonic_measure(z: DiskPoint, a: f64, b: f64) -> f64 {
    if b - a >= TAU {
        return 1.0;
    }
    let g = image_angle(z.r, b - z.theta) - image_angle(z.r, a - z.theta);
    (g / TAU).clamp(0.0, 1.0)
}

/// Harmonic measure of a finite arc union; the full circle gets exactly 1.
pub fn harmonic_measure(z: DiskPoint, arcs: &ArcSet) -> f64 {
    if arcs.is_full() {
        return 1.0;
    }
    arcs.arcs()
        .iter()
        .map(|a| arc_harmonic_measure(z, a.start, a.end))
        .sum::<f64>()
        .min(1.0)
}

/// Conjugate harmonic function of the arc indicator `χ_[a,b)`, normalized to vanish at 0:
/// `-(1/π) log(|e^{ib} - z| / |e^{ia} - z|)`.
pub fn arc_conjugate(z: DiskPoint, a: f64, b: f64) -> f64 {
    if b - a >= TAU {
        return 0.0;
    }
    -(dist_sq(z, b) / dist_sq(z, a)).ln() / TAU
}

/// Herglotz integral `∫ (ζ+z)/(ζ-z) f dm` of a step function: `P f + i Q f` for real `f`.
pub fn herglotz_steps(f: &StepFunction, z: DiskPoint) -> Complex64 {
    f.pieces()
        .iter()
        .map(|&(a, b, v)| v * Complex64::new(arc_harmonic_measure(z, a, b), arc_conjugate(z, a, b)))
        .sum()
}

/// Exact harmonic extension of a step function.
pub fn extend_steps(f: &StepFunction, z: DiskPoint) -> Complex64 {
    if f.is_constant() {
        return f.values()[0];
    }
    f.pieces()
        .iter()
        .map(|&(a, b, v)| v * arc_harmonic_measure(z, a, b))
        .sum()
}

/// Boundary trace of the harmonic conjugate: spectral multiplier `-i·sign(k)`,
/// with the mean and the Nyquist slot mapped to 0.
pub fn conjugate(f: &BoundaryFunction) -> Result<BoundaryFunction> {
    if !f.is_real(1e-12) {
        return Err(Error::Domain(
            "conjugate requires a real-valued function".into(),
        ));
    }
    let n = f.len();
    let coeffs: Vec<Complex64> = f
        .spectrum()
        .fft_order()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let k = fft::freq(i, n);
            if k == 0 || k as usize == n / 2 {
                Complex64::new(0.0, 0.0)
            } else {
                c * Complex64::new(0.0, -(k.signum() as f64))
            }
        })
        .collect();
    let values = fft::inverse(&coeffs)
        .into_iter()
        .map(|v| Complex64::from(v.re))
        .collect();
    BoundaryFunction::from_values(f.grid(), values)
}

/// A boundary function together with the cheapest exact route to its Poisson extension.
#[derive(Debug, Clone)]
pub enum BoundaryField {
    Const(Complex64),
    /// `Σ c_k e^{ikθ}`, sorted by `k`.
    Trig(Vec<(i64, Complex64)>),
    Steps(StepFunction),
    Sampled(BoundaryFunction),
}

impl BoundaryField {
    pub fn trig(terms: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut v: Vec<(i64, Complex64)> = Vec::new();
        let mut all: Vec<_> = terms.into_iter().collect();
        all.sort_by_key(|t| t.0);
        for (k, c) in all {
            match v.last_mut() {
                Some(last) if last.0 == k => last.1 += c,
                _ => v.push((k, c)),
            }
        }
        v.retain(|t| t.1 != Complex64::new(0.0, 0.0));
        match v.as_slice() {
            [] => BoundaryField::Const(Complex64::new(0.0, 0.0)),
            [(0, c)] => BoundaryField::Const(*c),
            _ => BoundaryField::Trig(v),
        }
    }

    /// Poisson extension at `z`. Sampled fields use the spectral series.
    pub fn extend(&self, z: DiskPoint) -> Complex64 {
        match self {
            BoundaryField::Const(c) => *c,
            BoundaryField::Trig(t) => t
                .iter()
                .map(|&(k, c)| c * Complex64::from_polar(z.r.powi(k.unsigned_abs() as i32), k as f64 * z.theta))
                .sum(),
            BoundaryField::Steps(s) => extend_steps(s, z),
            BoundaryField::Sampled(f) => spectral_eval(f.spectrum(), z),
        }
    }

    /// Extension on the circle of radius `r` at angles `2πj/n_theta`.
    pub fn extend_circle(&self, r: f64, n_theta: usize) -> Vec<Complex64> {
        if let BoundaryField::Sampled(f) = self {
            let n = f.len();
            if n_theta <= n && n % n_theta == 0 {
                let full = spectral_circle(f.spectrum(), r);
                return full.into_iter().step_by(n / n_theta).collect();
            }
        }
        (0..n_theta)
            .map(|j| self.extend(DiskPoint::raw(r, TAU * j as f64 / n_theta as f64)))
            .collect()
    }

    /// Largest radius at which [`Self::extend`] is trusted.
    pub fn radius_limit(&self) -> f64 {
        match self {
            BoundaryField::Sampled(f) if !f.spectrum().is_resolved() => f.grid().r_quad_max(),
            _ => 1.0,
        }
    }

    pub fn sample(&self, grid: CircleGrid) -> BoundaryFunction {
        match self {
            BoundaryField::Const(c) => BoundaryFunction::constant(grid, *c),
            BoundaryField::Trig(t) => BoundaryFunction::trig_polynomial(grid, t),
            BoundaryField::Steps(s) => BoundaryFunction::from_fn(grid, |a| s.eval(a)),
            BoundaryField::Sampled(f) => f.clone(),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        match self {
            BoundaryField::Const(c) => c.norm(),
            BoundaryField::Steps(s) => s.sup_norm(),
            BoundaryField::Sampled(f) => f.sup_norm(),
            BoundaryField::Trig(t) => {
                let deg = t.iter().map(|x| x.0.unsigned_abs()).max().unwrap_or(0) as usize;
                let log2 = ((64 * deg.max(1)).next_power_of_two().trailing_zeros()).clamp(10, 22);
                self.sample(CircleGrid::new(log2).expect("log2 in range"))
                    .sup_norm()
            }
        }
    }

    pub fn scale(&self, a: Complex64) -> Self {
        match self {
            BoundaryField::Const(c) => BoundaryField::Const(a * c),
            BoundaryField::Trig(t) => BoundaryField::trig(t.iter().map(|&(k, c)| (k, a * c))),
            BoundaryField::Steps(s) => BoundaryField::Steps(s.map(|v| a * v)),
            BoundaryField::Sampled(f) => BoundaryField::Sampled(f.scale(a)),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            BoundaryField::Const(c) => BoundaryField::Const(c.conj()),
            BoundaryField::Trig(t) => BoundaryField::trig(t.iter().map(|&(k, c)| (-k, c.conj()))),
            BoundaryField::Steps(s) => BoundaryField::Steps(s.map(|v| v.conj())),
            BoundaryField::Sampled(f) => BoundaryField::Sampled(f.conj()),
        }
    }

    fn sampled_grid(&self) -> Option<CircleGrid> {
        match self {
            BoundaryField::Sampled(f) => Some(f.grid()),
            _ => None,
        }
    }

    fn combine(
        &self,
        other: &Self,
        op: impl Fn(Complex64, Complex64) -> Complex64,
        trig: impl Fn(&[(i64, Complex64)], &[(i64, Complex64)]) -> Self,
    ) -> Option<Self> {
        use BoundaryField::*;
        Some(match (self, other) {
            (Const(a), Const(b)) => Const(op(*a, *b)),
            (Const(a), Steps(s)) => Steps(s.map(|v| op(*a, v))),
            (Steps(s), Const(b)) => Steps(s.map(|v| op(v, *b))),
            (Steps(s), Steps(t)) => Steps(s.zip_with(t, &op)),
            (Const(a), Trig(t)) => trig(&[(0, *a)], t),
            (Trig(t), Const(b)) => trig(t, &[(0, *b)]),
            (Trig(s), Trig(t)) => trig(s, t),
            _ => {
                let grid = self.sampled_grid().or(other.sampled_grid())?;
                if let (Some(g1), Some(g2)) = (self.sampled_grid(), other.sampled_grid()) {
                    if g1 != g2 {
                        return None;
                    }
                }
                if matches!((self, other), (Trig(_), Steps(_)) | (Steps(_), Trig(_))) {
                    return None;
                }
                let a = self.sample(grid);
                let b = other.sample(grid);
                let values = a.values().iter().zip(b.values()).map(|(&x, &y)| op(x, y)).collect();
                Sampled(BoundaryFunction::from_values(grid, values).ok()?)
            }
        })
    }

    /// Sum, or `None` when no exact representation is available.
    pub fn add(&self, other: &Self) -> Option<Self> {
        self.combine(other, |a, b| a + b, |s, t| {
            BoundaryField::trig(s.iter().chain(t).copied())
        })
    }

    /// Product, or `None` when no exact representation is available.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        self.combine(other, |a, b| a * b, |s, t| {
            BoundaryField::trig(
                s.iter()
                    .flat_map(|&(j, a)| t.iter().map(move |&(k, b)| (j + k, a * b))),
            )
        })
    }

    /// `|f|^2` as a field.
    pub fn abs_sq(&self) -> Self {
        match self {
            BoundaryField::Const(c) => BoundaryField::Const(Complex64::from(c.norm_sqr())),
            BoundaryField::Steps(s) => BoundaryField::Steps(s.map(|v| Complex64::from(v.norm_sqr()))),
            BoundaryField::Sampled(f) => BoundaryField::Sampled(f.abs_sq()),
            BoundaryField::Trig(_) => self.mul(&self.conj()).expect("trig products are closed"),
        }
    }

    /// `|f|`, available when no square root of a polynomial is needed.
    pub fn modulus(&self) -> Option<Self> {
        match self {
            BoundaryField::Const(c) => Some(BoundaryField::Const(Complex64::from(c.norm()))),
            BoundaryField::Steps(s) => Some(BoundaryField::Steps(s.map(|v| Complex64::from(v.norm())))),
            BoundaryField::Sampled(f) => Some(BoundaryField::Sampled(f.modulus())),
            BoundaryField::Trig(_) => None,
        }
    }

    /// Coefficients `c_k`, `k ≥ 0`, when the field is the trace of a polynomial.
    pub fn analytic_coeffs(&self) -> Option<Vec<Complex64>> {
        match self {
            BoundaryField::Const(c) => Some(vec![*c]),
            BoundaryField::Trig(t) if t.iter().all(|x| x.0 >= 0) => {
                let deg = t.last().map(|x| x.0).unwrap_or(0) as usize;
                let mut out = vec![Complex64::new(0.0, 0.0); deg + 1];
                for &(k, c) in t {
                    out[k as usize] = c;
                }
                Some(out)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{make_grid, sample, FunctionSpec};
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kernel_values() {
        assert_eq!(poisson_kernel(DiskPoint::origin(), 1.3), 1.0);
        let z = DiskPoint::new(0.5, 0.0).unwrap();
        assert!((poisson_kernel(z, 0.0) - 3.0).abs() < 1e-15);
        assert!((poisson_kernel(z, PI) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn disk_point_validation() {
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(-0.1, 0.0).is_err());
        assert!(DiskPoint::new(f64::NAN, 0.0).is_err());
        let z = DiskPoint::new(0.5, -PI / 2.0).unwrap();
        assert!((z.theta() - 1.5 * PI).abs() < 1e-15);
        let back: DiskPoint = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<DiskPoint>("[1.5, 0.0]").is_err());
    }

    #[test]
    fn quadrature_examples() {
        let g = make_grid(12).unwrap();
        let k = sample(&FunctionSpec::constant(Complex64::new(2.0, -1.0)), g).unwrap();
        let z = DiskPoint::new(0.8, 2.0).unwrap();
        assert!((extend_quadrature(&k, z).unwrap() - Complex64::new(2.0, -1.0)).norm() < 1e-12);
        let id = sample(&FunctionSpec::Identity, g).unwrap();
        let half = DiskPoint::new(0.5, 0.0).unwrap();
        assert!((extend_quadrature(&id, half).unwrap() - c(0.5)).norm() < 1e-12);
        let e = sample(
            &FunctionSpec::indicator(ArcSet::new([(0.0, PI)]).unwrap()),
            g,
        )
        .unwrap();
        assert!((extend_quadrature(&e, DiskPoint::origin()).unwrap() - c(0.5)).norm() < 1e-12);
        let far = DiskPoint::new(0.999, 0.0).unwrap();
        assert!(matches!(
            extend_quadrature(&id, far),
            Err(Error::AccuracyRefusal { .. })
        ));
    }

    #[test]
    fn fourier_examples() {
        let g = make_grid(10).unwrap();
        let id = sample(&FunctionSpec::Identity, g).unwrap();
        let z = DiskPoint::new(0.7, 1.1).unwrap();
        let ext = extend_fourier(&id, z);
        assert!((ext.value - z.to_complex()).norm() < 1e-14);
        assert!(ext.tail_bound < 1e-90);
        let cos = BoundaryFunction::from_fn(g, |t| c(t.cos()));
        let at = DiskPoint::new(0.3, 0.0).unwrap();
        assert!((extend_fourier(&cos, at).value - c(0.3)).norm() < 1e-15);
        let circle = extend_circle(&cos, 0.3).unwrap();
        for (j, v) in circle.iter().enumerate() {
            assert!((v - c(0.3 * g.angle(j).cos())).norm() < 1e-15);
        }
    }

    #[test]
    fn harmonic_measure_basics() {
        let e = ArcSet::new([(0.3, 1.7), (4.0, 5.0)]).unwrap();
        let m = harmonic_measure(DiskPoint::origin(), &e);
        assert!((m - e.measure()).abs() < 1e-15);
        let z = DiskPoint::new(0.999999, 2.0).unwrap();
        assert_eq!(harmonic_measure(z, &ArcSet::full()), 1.0);
        let two_halves = ArcSet::new([(0.0, PI), (PI, TAU)]).unwrap();
        assert!((harmonic_measure(z, &two_halves) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn near_arc_measure_tends_to_one() {
        let e = ArcSet::new([(-0.1, 0.1)]).unwrap();
        let z = DiskPoint::new(1.0 - 1e-9, 0.0).unwrap();
        assert!(harmonic_measure(z, &e) > 1.0 - 1e-8);
        let z = DiskPoint::new(1.0 - 1e-9, PI).unwrap();
        assert!(harmonic_measure(z, &e) < 1e-8);
    }

    #[test]
    fn arc_conjugate_matches_spectral() {
        let g = make_grid(14).unwrap();
        let f = sample(
            &FunctionSpec::indicator(ArcSet::new([(0.5, 2.0)]).unwrap()),
            g,
        )
        .unwrap();
        let q = conjugate(&f).unwrap();
        let z = DiskPoint::new(0.5, 1.0).unwrap();
        let want = arc_conjugate(z, 0.5, 2.0);
        let got = extend_quadrature(&q, z).unwrap().re;
        assert!((got - want).abs() < 2e-3, "{got} vs {want}");
    }

    #[test]
    fn conjugate_examples() {
        let g = make_grid(8).unwrap();
        let cos = BoundaryFunction::from_fn(g, |t| c(t.cos()));
        let sin = conjugate(&cos).unwrap();
        for (j, v) in sin.values().iter().enumerate() {
            assert!((v.re - g.angle(j).sin()).abs() < 1e-12);
        }
        let cos2 = BoundaryFunction::from_fn(g, |t| c((2.0 * t).cos()));
        let sin2 = conjugate(&cos2).unwrap();
        for (j, v) in sin2.values().iter().enumerate() {
            assert!((v.re - (2.0 * g.angle(j)).sin()).abs() < 1e-12);
        }
        let k = BoundaryFunction::constant(g, c(3.0));
        assert!(conjugate(&k).unwrap().values().iter().all(|v| v.norm() < 1e-15));
        let id = sample(&FunctionSpec::Identity, g).unwrap();
        assert!(matches!(conjugate(&id), Err(Error::Domain(_))));
    }

    #[test]
    fn field_algebra() {
        let one_plus = BoundaryField::trig([(0, c(0.5)), (1, c(0.5))]);
        let sq = one_plus.abs_sq();
        let z = DiskPoint::new(0.6, 0.4).unwrap();
        let want = (1.0 + 0.6 * 0.4f64.cos()) / 2.0;
        assert!((sq.extend(z).re - want).abs() < 1e-15);
        let steps = BoundaryField::Steps(StepFunction::indicator(&ArcSet::new([(0.0, 1.0)]).unwrap()));
        assert!(one_plus.mul(&steps).is_none());
        assert!(steps.mul(&BoundaryField::Const(c(2.0))).is_some());
        assert_eq!(one_plus.analytic_coeffs().unwrap(), vec![c(0.5), c(0.5)]);
    }
}
