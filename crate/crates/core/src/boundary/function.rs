use std::sync::OnceLock;

use num_complex::Complex64;

use super::CircleGrid;
use crate::error::{Error, Result};
use crate::fft;

/// Discrete Fourier coefficients `hat_f(k)`, `|k| ≤ n/2`, of a sampled function.
#[derive(Debug, Clone)]
pub struct Spectrum {
    coeffs: Vec<Complex64>,
    bandwidth: usize,
}

impl Spectrum {
    fn from_fft_order(coeffs: Vec<Complex64>) -> Self {
        let n = coeffs.len();
        let peak = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let floor = 1e-14 * peak;
        let bandwidth = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > floor)
            .map(|(i, _)| fft::freq(i, n).unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        Self { coeffs, bandwidth }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// `hat_f(k)`; zero outside `|k| ≤ n/2`. The Nyquist slot is reported at `±n/2`.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let n = self.n() as i64;
        if k.abs() > n / 2 {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[k.rem_euclid(n) as usize]
    }

    /// Coefficients in FFT order (`0, 1, …, n/2, -(n/2-1), …, -1`).
    pub fn fft_order(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n = self.n();
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (fft::freq(i, n), *c))
    }

    /// Largest `|k|` whose coefficient exceeds `1e-14` of the peak.
    pub fn effective_bandwidth(&self) -> usize {
        self.bandwidth
    }

    /// The spectrum is resolved when it dies out well before Nyquist; then the
    /// spectral extension is exact up to roundoff at every radius.
    pub fn is_resolved(&self) -> bool {
        self.bandwidth < self.n() / 4
    }

    /// Largest coefficient magnitude in the top frequency band `n/4 < |k| ≤ n/2`.
    pub fn edge_magnitude(&self) -> f64 {
        let n = self.n();
        self.iter()
            .filter(|(k, _)| k.unsigned_abs() as usize > n / 4)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// A complex-valued function on the circle, stored as samples on a [`CircleGrid`].
///
/// Values are immutable; the spectrum is computed on first use and cached.
#[derive(Debug, Clone)]
pub struct BoundaryFunction {
    grid: CircleGrid,
    values: Vec<Complex64>,
    spectrum: OnceLock<Spectrum>,
    abs_sq_spectrum: OnceLock<Spectrum>,
}

impl PartialEq for BoundaryFunction {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid && self.values == other.values
    }
}

impl BoundaryFunction {
    pub fn from_values(grid: CircleGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::Shape {
                left: grid.n(),
                right: values.len(),
            });
        }
        Ok(Self {
            grid,
            values,
            spectrum: OnceLock::new(),
            abs_sq_spectrum: OnceLock::new(),
        })
    }

    pub fn from_real(grid: CircleGrid, values: Vec<f64>) -> Result<Self> {
        Self::from_values(grid, values.into_iter().map(Complex64::from).collect())
    }

    pub fn from_fn(grid: CircleGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.angles().map(f).collect();
        Self {
            grid,
            values,
            spectrum: OnceLock::new(),
            abs_sq_spectrum: OnceLock::new(),
        }
    }

    /// Samples the trigonometric polynomial `Σ c_k e^{ikθ}`.
    pub fn trig_polynomial(grid: CircleGrid, terms: &[(i64, Complex64)]) -> Self {
        Self::from_fn(grid, |t| {
            terms
                .iter()
                .map(|&(k, c)| c * Complex64::from_polar(1.0, k as f64 * t))
                .sum()
        })
    }

    pub fn constant(grid: CircleGrid, c: Complex64) -> Self {
        Self::from_fn(grid, |_| c)
    }

    pub fn grid(&self) -> CircleGrid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spectrum(&self) -> &Spectrum {
        self.spectrum
            .get_or_init(|| Spectrum::from_fft_order(fft::forward(&self.values)))
    }

    /// Spectrum of `|f|^2`, cached like [`Self::spectrum`].
    pub fn abs_sq_spectrum(&self) -> &Spectrum {
        self.abs_sq_spectrum.get_or_init(|| {
            let sq: Vec<Complex64> = self
                .values
                .iter()
                .map(|v| Complex64::from(v.norm_sqr()))
                .collect();
            Spectrum::from_fft_order(fft::forward(&sq))
        })
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn inf_modulus(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// `sup |f| - inf |f|` over the grid.
    pub fn modulus_oscillation(&self) -> f64 {
        self.sup_norm() - self.inf_modulus()
    }

    /// `sup - inf` of the real and imaginary parts, whichever is larger.
    pub fn oscillation(&self) -> f64 {
        let spread = |part: fn(&Complex64) -> f64| {
            let (lo, hi) = self
                .values
                .iter()
                .map(part)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                    (lo.min(x), hi.max(x))
                });
            hi - lo
        };
        spread(|c| c.re).max(spread(|c| c.im))
    }

    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.sup_norm().max(1.0);
        self.values.iter().all(|v| v.im.abs() <= tol * scale)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
            spectrum: OnceLock::new(),
            abs_sq_spectrum: OnceLock::new(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::Shape {
                left: self.grid.n(),
                right: other.grid.n(),
            });
        }
        Ok(Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            spectrum: OnceLock::new(),
            abs_sq_spectrum: OnceLock::new(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| c * v)
    }

    pub fn modulus(&self) -> Self {
        self.map(|v| Complex64::from(v.norm()))
    }

    pub fn abs_sq(&self) -> Self {
        self.map(|v| Complex64::from(v.norm_sqr()))
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    /// Real parts as a plain vector.
    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }
}

/// The spectrum of `f` (computed once, then cached on `f`).
pub fn fourier_coeffs(f: &BoundaryFunction) -> &Spectrum {
    f.spectrum()
}

/// Pointwise operations accepted by [`combine`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CombineOp {
    Add,
    Mul,
    Scale(Complex64),
    Modulus,
    Conjugate,
}

/// Pointwise algebra over functions sharing one grid.
///
/// `Add` and `Mul` fold over all arguments; the unary operations take exactly one.
pub fn combine(op: CombineOp, args: &[&BoundaryFunction]) -> Result<BoundaryFunction> {
    let (first, rest) = args
        .split_first()
        .ok_or_else(|| Error::param("args", "at least one operand required"))?;
    match op {
        CombineOp::Add => rest.iter().try_fold((*first).clone(), |acc, f| acc.add(f)),
        CombineOp::Mul => rest.iter().try_fold((*first).clone(), |acc, f| acc.mul(f)),
        CombineOp::Scale(_) | CombineOp::Modulus | CombineOp::Conjugate if !rest.is_empty() => {
            Err(Error::param("args", "unary operation takes one operand"))
        }
        CombineOp::Scale(c) => Ok(first.scale(c)),
        CombineOp::Modulus => Ok(first.modulus()),
        CombineOp::Conjugate => Ok(first.conj()),
    }
}
