//! Blaschke products, atomic singular inner functions and outer functions.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary::{
    sample, scalar, ArcSet, BoundaryFunction, CircleGrid, FunctionSpec, Spectrum, StepFunction,
};
use crate::error::{Error, Result};
use crate::extremal::Section5Config;
use crate::poisson::{extend_steps, herglotz_steps, BoundaryField, DiskPoint};

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn is_one(c: &Complex64) -> bool {
    *c == one()
}

/// Finite Blaschke product `c Π_j (|z_j|/z_j)(z_j - z)/(1 - conj(z_j) z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlaschkeSpec {
    pub zeros: Vec<DiskPoint>,
    #[serde(
        rename = "constant",
        default = "one",
        skip_serializing_if = "is_one",
        with = "scalar"
    )]
    pub unimodular_const: Complex64,
}

impl BlaschkeSpec {
    pub fn new(zeros: Vec<DiskPoint>) -> Self {
        Self {
            zeros,
            unimodular_const: one(),
        }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    /// `Σ (1 - |z_j|)`.
    pub fn blaschke_sum(&self) -> f64 {
        self.zeros.iter().map(|z| 1.0 - z.r()).sum()
    }
}

/// `B(z)`; a zero at the origin contributes the factor `-z`.
pub fn blaschke_eval(spec: &BlaschkeSpec, z: impl Into<Complex64>) -> Complex64 {
    let z = z.into();
    spec.zeros.iter().fold(spec.unimodular_const, |acc, a| {
        if a.r() == 0.0 {
            return -acc * z;
        }
        let ac = a.to_complex();
        acc * Complex64::from_polar(1.0, -a.theta()) * (ac - z) / (1.0 - ac.conj() * z)
    })
}

/// Atomic singular inner function `exp(-Σ m_j (ζ_j + z)/(ζ_j - z))`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularSpec {
    /// `(angle, mass)` pairs.
    pub atoms: Vec<(f64, f64)>,
}

impl SingularSpec {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        let s = Self { atoms };
        s.check()?;
        Ok(s)
    }

    pub(crate) fn check(&self) -> Result<()> {
        for &(t, m) in &self.atoms {
            if !(t.is_finite() && m.is_finite() && m > 0.0) {
                return Err(Error::param(
                    "atoms",
                    format!("atom ({t}, {m}) needs a finite angle and positive mass"),
                ));
            }
        }
        let mut angles: Vec<f64> = self.atoms.iter().map(|a| a.0.rem_euclid(TAU)).collect();
        angles.sort_by(f64::total_cmp);
        if angles.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::param("atoms", "atom angles must be distinct"));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

pub fn singular_eval(spec: &SingularSpec, z: DiskPoint) -> Complex64 {
    let zc = z.to_complex();
    let exponent: Complex64 = spec
        .atoms
        .iter()
        .map(|&(t, m)| {
            let zeta = Complex64::from_polar(1.0, t);
            m * (zeta + zc) / (zeta - zc)
        })
        .sum();
    (-exponent).exp()
}

/// Boundary modulus of an outer function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Eta {
    /// `|(1 + ζ)/2|`; the outer function is `(1 + z)/2`.
    Halfplus,
    /// The piecewise-constant modulus of the explicit extremal example, with `k` generations.
    Section5 { k: usize },
    /// `base` off the listed arcs, `value` on `[start, end)`.
    Steps {
        base: f64,
        pieces: Vec<(f64, f64, f64)>,
    },
    /// Samples on an equispaced grid.
    Samples { values: Vec<f64> },
    /// `|f|` for another spec.
    Modulus { spec: Box<FunctionSpec> },
}

fn default_floor() -> f64 {
    1e-300
}

/// `O_η(z) = exp ∫ (ζ+z)/(ζ-z) log η(ζ) dm(ζ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuterSpec {
    pub eta: Eta,
    /// Lower clamp applied to `η` before taking logarithms.
    #[serde(default = "default_floor")]
    pub floor: f64,
}

impl OuterSpec {
    pub fn new(eta: Eta) -> Self {
        Self {
            eta,
            floor: default_floor(),
        }
    }
}

#[derive(Debug, Clone)]
enum OuterKind {
    HalfPlus,
    Steps {
        eta: StepFunction,
        log: StepFunction,
    },
    Spectral {
        eta: BoundaryFunction,
        log: BoundaryFunction,
    },
}

/// An [`OuterSpec`] with its logarithm prepared for repeated evaluation.
#[derive(Debug, Clone)]
pub struct OuterFunction {
    kind: OuterKind,
    grid: CircleGrid,
}

impl OuterFunction {
    /// Prepares `spec`; non-symbolic moduli are sampled on `grid`
    /// (explicit samples keep their own grid).
    pub fn resolve(spec: &OuterSpec, grid: CircleGrid) -> Result<Self> {
        let steps = |eta: StepFunction| -> Result<Self> {
            for v in eta.values() {
                if !(v.re.is_finite() && v.im == 0.0) {
                    return Err(Error::Domain(format!("η value {v} is not a finite real")));
                }
                if v.re <= 0.0 {
                    return Err(Error::LogIntegrability(format!(
                        "η = {} on an arc of positive measure",
                        v.re
                    )));
                }
            }
            let log = eta.map(|v| Complex64::from(v.re.ln()));
            Ok(Self {
                kind: OuterKind::Steps { eta, log },
                grid,
            })
        };
        match &spec.eta {
            Eta::Halfplus => Ok(Self {
                kind: OuterKind::HalfPlus,
                grid,
            }),
            Eta::Section5 { k } => steps(Section5Config::standard(*k)?.eta_steps()),
            Eta::Steps { base, pieces } => {
                let mut parts = Vec::new();
                for &(a, b, v) in pieces {
                    for arc in ArcSet::new([(a, b)])?.arcs() {
                        parts.push((*arc, Complex64::from(v)));
                    }
                }
                ArcSet::new(pieces.iter().map(|p| (p.0, p.1)))?;
                steps(StepFunction::from_pieces(Complex64::from(*base), parts))
            }
            Eta::Samples { values } => {
                let g = CircleGrid::new(values.len().trailing_zeros())
                    .ok()
                    .filter(|g| g.n() == values.len())
                    .ok_or_else(|| {
                        Error::param("eta", format!("{} samples is not a grid size", values.len()))
                    })?;
                Self::spectral(BoundaryFunction::from_real(g, values.clone())?, spec.floor)
            }
            Eta::Modulus { spec: inner } => {
                Self::spectral(sample(inner, grid)?.modulus(), spec.floor)
            }
        }
    }

    fn spectral(eta: BoundaryFunction, floor: f64) -> Result<Self> {
        let n = eta.len();
        let vals = eta.real_parts();
        if let Some(v) = vals.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::LogIntegrability(format!("η sample {v} is negative or not finite")));
        }
        for j in 0..n {
            if vals[j] <= 0.0 && vals[(j + 1) % n] <= 0.0 {
                return Err(Error::LogIntegrability(format!(
                    "η vanishes on adjacent nodes {j} and {}",
                    (j + 1) % n
                )));
            }
        }
        let log = eta.map(|v| Complex64::from(v.re.max(floor).ln()));
        Ok(Self {
            grid: eta.grid(),
            kind: OuterKind::Spectral { eta, log },
        })
    }

    pub fn grid(&self) -> CircleGrid {
        self.grid
    }

    /// `log O_η(z) = P(log η)(z) + i Q(log η)(z)`.
    pub fn log_eval(&self, z: DiskPoint) -> Complex64 {
        match &self.kind {
            OuterKind::HalfPlus => ((one() + z.to_complex()) / 2.0).ln(),
            OuterKind::Steps { log, .. } => herglotz_steps(log, z),
            OuterKind::Spectral { log, .. } => herglotz_spectral(log.spectrum(), z),
        }
    }

    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        match &self.kind {
            OuterKind::HalfPlus => (one() + z.to_complex()) / 2.0,
            _ => self.log_eval(z).exp(),
        }
    }

    /// `P(log η)(z)`.
    pub fn log_modulus(&self, z: DiskPoint) -> f64 {
        match &self.kind {
            OuterKind::Steps { log, .. } => extend_steps(log, z).re,
            _ => self.log_eval(z).re,
        }
    }

    pub fn modulus(&self, z: DiskPoint) -> f64 {
        self.log_modulus(z).exp()
    }

    /// `η` with its Poisson route.
    pub fn eta_field(&self) -> BoundaryField {
        match &self.kind {
            OuterKind::HalfPlus => BoundaryField::Sampled(BoundaryFunction::from_fn(self.grid, |t| {
                Complex64::from((t / 2.0).cos().abs())
            })),
            OuterKind::Steps { eta, .. } => BoundaryField::Steps(eta.clone()),
            OuterKind::Spectral { eta, .. } => BoundaryField::Sampled(eta.clone()),
        }
    }

    /// `η^2 = |O_η|^2` on the circle.
    pub fn eta_sq_field(&self) -> BoundaryField {
        match &self.kind {
            OuterKind::HalfPlus => BoundaryField::trig([
                (-1, Complex64::from(0.25)),
                (0, Complex64::from(0.5)),
                (1, Complex64::from(0.25)),
            ]),
            OuterKind::Steps { eta, .. } => {
                BoundaryField::Steps(eta.map(|v| Complex64::from(v.norm_sqr())))
            }
            OuterKind::Spectral { eta, .. } => BoundaryField::Sampled(eta.abs_sq()),
        }
    }

    pub fn sup_eta(&self) -> f64 {
        match &self.kind {
            OuterKind::HalfPlus => 1.0,
            OuterKind::Steps { eta, .. } => eta.sup_norm(),
            OuterKind::Spectral { eta, .. } => eta.sup_norm(),
        }
    }

    /// Largest radius at which [`Self::eval`] and `P(η^2)` are trusted.
    pub fn radius_limit(&self) -> f64 {
        match &self.kind {
            OuterKind::Spectral { eta, log } => {
                if log.spectrum().is_resolved() && eta.abs_sq_spectrum().is_resolved() {
                    1.0
                } else {
                    self.grid.r_quad_max()
                }
            }
            _ => 1.0,
        }
    }

    /// Boundary values `η e^{i Q log η}` on the grid.
    pub fn boundary_trace(&self) -> BoundaryFunction {
        let g = self.grid;
        let log = match &self.kind {
            OuterKind::HalfPlus => {
                return BoundaryFunction::from_fn(g, |t| (one() + Complex64::from_polar(1.0, t)) / 2.0)
            }
            OuterKind::Steps { log, .. } => BoundaryFunction::from_fn(g, |t| log.eval(t)),
            OuterKind::Spectral { log, .. } => log.clone(),
        };
        let q = crate::poisson::conjugate(&log).expect("log η is real");
        log.add(&q.scale(Complex64::new(0.0, 1.0)))
            .expect("same grid")
            .map(|v| v.exp())
    }
}

/// `c_0 + 2 Σ_{k>0} c_k z^k` for a real spectrum (Nyquist term taken once).
fn herglotz_spectral(spec: &Spectrum, z: DiskPoint) -> Complex64 {
    let n = spec.n();
    let half = n / 2;
    let top = if spec.is_resolved() {
        spec.effective_bandwidth()
    } else {
        half
    };
    let zc = z.to_complex();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (1..=top as i64).rev() {
        let c = spec.coeff(k);
        let w = if k as usize == half { 1.0 } else { 2.0 };
        acc = acc * zc + c * w;
    }
    acc * zc + spec.coeff(0)
}

/// `|O_η(z)| = exp P(log η)(z)`; sampled moduli use the default grid.
pub fn outer_modulus(spec: &OuterSpec, z: DiskPoint) -> Result<f64> {
    Ok(OuterFunction::resolve(spec, CircleGrid::default())?.modulus(z))
}

/// `O_η(z)`; sampled moduli use the default grid.
pub fn outer_eval(spec: &OuterSpec, z: DiskPoint) -> Result<Complex64> {
    Ok(OuterFunction::resolve(spec, CircleGrid::default())?.eval(z))
}

/// Inner function `c B S`; the unimodular constant lives on the Blaschke part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerSpec {
    pub blaschke: BlaschkeSpec,
    pub singular: SingularSpec,
}

impl InnerSpec {
    pub fn new(blaschke: BlaschkeSpec, singular: SingularSpec) -> Self {
        Self { blaschke, singular }
    }

    /// Reads an inner function out of a spec built from Blaschke, singular,
    /// identity, unimodular constants, products and unimodular scalings.
    pub fn from_spec(spec: &FunctionSpec) -> Result<Self> {
        let not_inner = || Error::param("inner", "spec is not a product of inner factors");
        let unimodular = |c: &Complex64| (c.norm() - 1.0).abs() <= 1e-12;
        Ok(match spec {
            FunctionSpec::Blaschke(b) => Self::new(b.clone(), SingularSpec::default()),
            FunctionSpec::Singular(s) => Self::new(BlaschkeSpec::empty(), s.clone()),
            FunctionSpec::Identity => {
                let mut b = BlaschkeSpec::new(vec![DiskPoint::origin()]);
                b.unimodular_const = -one();
                Self::new(b, SingularSpec::default())
            }
            FunctionSpec::Constant { c } if unimodular(c) => {
                let mut b = BlaschkeSpec::empty();
                b.unimodular_const = *c;
                Self::new(b, SingularSpec::default())
            }
            FunctionSpec::Scale { c, spec } if unimodular(c) => {
                let mut inner = Self::from_spec(spec)?;
                inner.blaschke.unimodular_const *= c;
                inner
            }
            FunctionSpec::Product { factors } => {
                let mut acc = Self::new(BlaschkeSpec::empty(), SingularSpec::default());
                for f in factors {
                    acc = acc.mul(&Self::from_spec(f)?);
                }
                acc
            }
            _ => return Err(not_inner()),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut zeros = self.blaschke.zeros.clone();
        zeros.extend(other.blaschke.zeros.iter().copied());
        let mut atoms = self.singular.atoms.clone();
        for &(t, m) in &other.singular.atoms {
            match atoms
                .iter_mut()
                .find(|a| a.0.rem_euclid(TAU) == t.rem_euclid(TAU))
            {
                Some(a) => a.1 += m,
                None => atoms.push((t, m)),
            }
        }
        Self {
            blaschke: BlaschkeSpec {
                zeros,
                unimodular_const: self.blaschke.unimodular_const * other.blaschke.unimodular_const,
            },
            singular: SingularSpec { atoms },
        }
    }

    pub fn to_spec(&self) -> FunctionSpec {
        let mut factors = vec![FunctionSpec::Blaschke(self.blaschke.clone())];
        if !self.singular.is_empty() {
            factors.push(FunctionSpec::Singular(self.singular.clone()));
        }
        if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            FunctionSpec::product(factors)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.blaschke.zeros.is_empty() && self.singular.is_empty()
    }

    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        inner_eval(&self.blaschke, &self.singular, z)
    }
}

/// `B(z) S(z)`.
pub fn inner_eval(b: &BlaschkeSpec, s: &SingularSpec, z: DiskPoint) -> Complex64 {
    blaschke_eval(b, z) * singular_eval(s, z)
}

/// `σ(I)`: interior zeros plus boundary accumulation angles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnerSpectrum {
    pub interior_zeros: Vec<DiskPoint>,
    pub boundary: Vec<f64>,
}

impl InnerSpectrum {
    pub fn is_empty(&self) -> bool {
        self.interior_zeros.is_empty() && self.boundary.is_empty()
    }
}

pub const DEFAULT_TOL_RADIAL: f64 = 1e-2;
pub const DEFAULT_TOL_ANGLE: f64 = 1e-2;

fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Spectrum with the default radial tolerance.
pub fn spectrum(b: &BlaschkeSpec, s: &SingularSpec, tol_angle: f64) -> InnerSpectrum {
    spectrum_with(b, s, tol_angle, DEFAULT_TOL_RADIAL)
}

/// A boundary angle is spectral when zeros with `|z_j| > 1 - tol_radial`
/// chain together within `tol_angle` of it; each chain is represented by
/// the angle of its outermost zero. Atom angles are always spectral.
pub fn spectrum_with(
    b: &BlaschkeSpec,
    s: &SingularSpec,
    tol_angle: f64,
    tol_radial: f64,
) -> InnerSpectrum {
    let mut near: Vec<DiskPoint> = b
        .zeros
        .iter()
        .copied()
        .filter(|z| z.r() > 1.0 - tol_radial)
        .collect();
    near.sort_by(|x, y| x.theta().total_cmp(&y.theta()));

    let mut clusters: Vec<Vec<DiskPoint>> = Vec::new();
    for z in near {
        match clusters.last_mut() {
            Some(c) if z.theta() - c.last().unwrap().theta() <= tol_angle => c.push(z),
            _ => clusters.push(vec![z]),
        }
    }
    if clusters.len() > 1 {
        let first = clusters[0][0].theta();
        let last = clusters.last().unwrap().last().unwrap().theta();
        if first + TAU - last <= tol_angle {
            let tail = clusters.pop().unwrap();
            clusters[0].extend(tail);
        }
    }
    let mut boundary: Vec<f64> = clusters
        .iter()
        .map(|c| {
            c.iter()
                .max_by(|x, y| x.r().total_cmp(&y.r()))
                .unwrap()
                .theta()
        })
        .collect();
    for &(t, _) in &s.atoms {
        let t = t.rem_euclid(TAU);
        if !boundary.iter().any(|&a| angle_dist(a, t) <= tol_angle) {
            boundary.push(t);
        }
    }
    boundary.sort_by(f64::total_cmp);
    InnerSpectrum {
        interior_zeros: b.zeros.clone(),
        boundary,
    }
}

/// `M(F)`: the boundary arcs where `|F|` is within `tol` of its maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxModulusSet {
    pub arcs: ArcSet,
    /// `F` is constant, so `M(F)` is the closed disk.
    pub whole_disk: bool,
    pub sup: f64,
}

impl MaxModulusSet {
    /// Angular distance from `angle` to the set (0 inside).
    pub fn distance(&self, angle: f64) -> f64 {
        if self.arcs.contains(angle) {
            return 0.0;
        }
        self.arcs
            .arcs()
            .iter()
            .map(|a| angle_dist(angle, a.start).min(angle_dist(angle, a.end)))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Grid nodes where `|F| ≥ (1 - tol) max |F|`, each widened to half a grid
/// spacing on both sides and merged.
pub fn max_modulus_set(f: &FunctionSpec, grid: CircleGrid, tol: f64) -> Result<MaxModulusSet> {
    let values = sample(f, grid)?;
    let sup = values.sup_norm();
    let scale = sup.max(f64::MIN_POSITIVE);
    let first = values.values()[0];
    let whole_disk = values
        .values()
        .iter()
        .all(|v| (v - first).norm() <= 1e-12 * scale);
    let n = grid.n();
    let keep: Vec<bool> = values
        .values()
        .iter()
        .map(|v| v.norm() >= (1.0 - tol) * sup)
        .collect();
    if keep.iter().all(|&k| k) {
        return Ok(MaxModulusSet {
            arcs: ArcSet::full(),
            whole_disk,
            sup,
        });
    }
    // Start scanning just after an excluded node so runs never wrap.
    let start = keep.iter().position(|&k| !k).unwrap();
    let h = grid.spacing();
    let mut pairs = Vec::new();
    let mut run: Option<usize> = None;
    for step in 1..=n {
        let j = (start + step) % n;
        match (keep[j], run) {
            (true, None) => run = Some(start + step),
            (false, Some(s)) => {
                pairs.push((h * (s as f64 - 0.5), h * ((start + step) as f64 - 0.5)));
                run = None;
            }
            _ => {}
        }
    }
    Ok(MaxModulusSet {
        arcs: ArcSet::new(pairs)?,
        whole_disk,
        sup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn dp(r: f64, t: f64) -> DiskPoint {
        DiskPoint::new(r, t).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn blaschke_examples() {
        let at_origin = BlaschkeSpec::new(vec![DiskPoint::origin()]);
        assert!((blaschke_eval(&at_origin, c(0.3)) - c(-0.3)).norm() < 1e-16);
        let half = BlaschkeSpec::new(vec![dp(0.5, 0.0)]);
        assert!((blaschke_eval(&half, c(0.0)) - c(0.5)).norm() < 1e-16);
        assert_eq!(blaschke_eval(&half, c(0.5)).norm(), 0.0);
        for j in 0..64 {
            let t = TAU * j as f64 / 64.0;
            let v = blaschke_eval(&half, Complex64::from_polar(1.0, t));
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_examples() {
        let s = SingularSpec::new(vec![(0.0, 1.0)]).unwrap();
        assert!((singular_eval(&s, DiskPoint::origin()) - c((-1.0f64).exp())).norm() < 1e-15);
        assert!(singular_eval(&s, dp(0.999, 0.0)).norm() < 1e-300);
        // S(z) = exp((z+1)/(z-1))
        let z = dp(0.4, 1.0);
        let zc = z.to_complex();
        let want = ((zc + 1.0) / (zc - 1.0)).exp();
        assert!((singular_eval(&s, z) - want).norm() < 1e-15);
        assert_eq!(singular_eval(&SingularSpec::default(), z), c(1.0));
        assert!(SingularSpec::new(vec![(0.0, 0.0)]).is_err());
        assert!(SingularSpec::new(vec![(0.0, 1.0), (TAU, 1.0)]).is_err());
    }

    #[test]
    fn outer_constant_moduli() {
        let g = CircleGrid::new(10).unwrap();
        for k in [1.0, 2.5] {
            let o = OuterSpec::new(Eta::Steps {
                base: k,
                pieces: vec![],
            });
            let f = OuterFunction::resolve(&o, g).unwrap();
            assert!((f.modulus(dp(0.7, 1.0)) - k).abs() < 1e-14);
            assert!((f.eval(dp(0.7, 1.0)) - c(k)).norm() < 1e-14);
        }
    }

    #[test]
    fn outer_halfplus_matches_samples() {
        let g = CircleGrid::new(14).unwrap();
        let spectral = OuterSpec::new(Eta::Modulus {
            spec: Box::new(FunctionSpec::half_plus()),
        });
        let f = OuterFunction::resolve(&spectral, g).unwrap();
        // log|cos(θ/2)| is singular at π, so the grid rule is only first-order accurate.
        assert!((f.modulus(DiskPoint::origin()) - 0.5).abs() < 2e-3);
        for &(r, t) in &[(0.3, 0.2), (0.6, 2.0), (0.9, -1.0)] {
            let z = dp(r, t);
            let want = (c(1.0) + z.to_complex()) / 2.0;
            assert!((f.eval(z) - want).norm() < 2e-3, "{r} {t}");
        }
    }

    #[test]
    fn outer_log_cos_at_origin() {
        let g = CircleGrid::new(12).unwrap();
        let values: Vec<f64> = g.angles().map(|t| t.cos().exp()).collect();
        let o = OuterSpec::new(Eta::Samples { values });
        let f = OuterFunction::resolve(&o, g).unwrap();
        assert!((f.eval(DiskPoint::origin()) - c(1.0)).norm() < 1e-14);
        // log O = z exactly.
        let z = dp(0.95, 0.7);
        assert!((f.eval(z) - z.to_complex().exp()).norm() < 1e-12);
        assert_eq!(f.radius_limit(), 1.0);
    }

    #[test]
    fn outer_rejects_vanishing_modulus() {
        let o = OuterSpec::new(Eta::Steps {
            base: 1.0,
            pieces: vec![(0.0, 1.0, 0.0)],
        });
        let g = CircleGrid::new(8).unwrap();
        assert!(matches!(
            OuterFunction::resolve(&o, g),
            Err(Error::LogIntegrability(_))
        ));
        let mut values = vec![1.0; 256];
        values[3] = 0.0;
        values[4] = 0.0;
        let o = OuterSpec::new(Eta::Samples { values });
        assert!(matches!(
            OuterFunction::resolve(&o, g),
            Err(Error::LogIntegrability(_))
        ));
    }

    #[test]
    fn inner_examples() {
        let z = dp(0.6, 1.2);
        assert_eq!(inner_eval(&BlaschkeSpec::empty(), &SingularSpec::default(), z), c(1.0));
        let b = BlaschkeSpec::new(vec![dp(0.5, 0.0)]);
        let s = SingularSpec::new(vec![(PI, 0.2)]).unwrap();
        let v = inner_eval(&b, &s, DiskPoint::origin());
        assert!((v - c(0.5 * (-0.2f64).exp())).norm() < 1e-15);
        let id = InnerSpec::from_spec(&FunctionSpec::Identity).unwrap();
        assert!((id.eval(z) - z.to_complex()).norm() < 1e-15);
        assert!(InnerSpec::from_spec(&FunctionSpec::half_plus()).is_err());
    }

    #[test]
    fn spectrum_examples() {
        let radial = BlaschkeSpec::new(
            (1..=20)
                .map(|k| dp(1.0 - 2f64.powi(-k), 0.0))
                .collect(),
        );
        let s = spectrum(&radial, &SingularSpec::default(), 1e-3);
        assert_eq!(s.boundary, vec![0.0]);
        let atom = SingularSpec::new(vec![(PI, 1.0)]).unwrap();
        let s = spectrum(&BlaschkeSpec::empty(), &atom, 1e-2);
        assert_eq!(s.boundary, vec![PI]);
        let single = BlaschkeSpec::new(vec![dp(0.5, 0.0)]);
        let s = spectrum(&single, &SingularSpec::default(), 1e-2);
        assert!(s.boundary.is_empty());
        assert_eq!(s.interior_zeros.len(), 1);
    }

    #[test]
    fn spectrum_cluster_wraps() {
        let b = BlaschkeSpec::new(vec![dp(0.995, TAU - 0.002), dp(0.999, 0.001)]);
        let s = spectrum(&b, &SingularSpec::default(), 1e-2);
        assert_eq!(s.boundary.len(), 1);
        assert!((s.boundary[0] - 0.001).abs() < 1e-15);
    }

    #[test]
    fn max_modulus_examples() {
        let g = CircleGrid::new(12).unwrap();
        let m = max_modulus_set(&FunctionSpec::half_plus(), g, 1e-6).unwrap();
        assert!(m.arcs.contains(0.0));
        assert!(m.arcs.measure() < 0.01);
        assert!(!m.whole_disk);
        let k = max_modulus_set(&FunctionSpec::constant(2.0), g, 1e-6).unwrap();
        assert!(k.arcs.is_full() && k.whole_disk);
        let id = max_modulus_set(&FunctionSpec::Identity, g, 1e-6).unwrap();
        assert!(id.arcs.is_full() && !id.whole_disk);
    }
}
