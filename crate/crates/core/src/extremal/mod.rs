//! G-extremality: the inner-function identities, witness-sequence searches
//! for the outer and product criteria, the `M(F) ∩ σ(I)` test, and the
//! Blaschke product that makes `Φ_{Bφ}(z_n) = P(η^2)(z_n)`.

mod section5;

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::boundary::{sample, CircleGrid, FunctionSpec};
use crate::error::{Error, Result};
use crate::factorization::{
    max_modulus_set, spectrum, BlaschkeSpec, InnerSpec, OuterFunction, OuterSpec, DEFAULT_TOL_ANGLE,
};
use crate::garsia::{abs_sq_field, analytic_fn, phi, GarsiaSource, SpecFunction};
use crate::poisson::{BoundaryField, DiskPoint};

pub use section5::{section5_build, section5_report, Section5, Section5Config, Section5Report, Section5Row};

/// Points `z_k` with `r_k` strictly increasing, and named values at each.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WitnessSequence {
    pub points: Vec<DiskPoint>,
    pub functionals: BTreeMap<String, Vec<f64>>,
}

impl WitnessSequence {
    pub fn new(points: Vec<DiskPoint>) -> Result<Self> {
        if points.windows(2).any(|w| w[1].r() <= w[0].r()) {
            return Err(Error::param("points", "radii must be strictly increasing"));
        }
        Ok(Self {
            points,
            functionals: BTreeMap::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn insert(&mut self, name: &str, values: Vec<f64>) {
        assert_eq!(values.len(), self.points.len(), "one value per point");
        self.functionals.insert(name.to_string(), values);
    }

    pub fn get(&self, name: &str) -> Option<&[f64]> {
        self.functionals.get(name).map(Vec::as_slice)
    }

    /// `Σ (1 - r_k)`.
    pub fn sum_one_minus_r(&self) -> f64 {
        self.points.iter().map(|p| 1.0 - p.r()).sum()
    }
}

struct Row<'a>(&'a WitnessSequence, usize);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let p = self.0.points[self.1];
        let mut m = s.serialize_map(Some(2 + self.0.functionals.len()))?;
        m.serialize_entry("r", &p.r())?;
        m.serialize_entry("theta", &p.theta())?;
        for (k, v) in &self.0.functionals {
            m.serialize_entry(k, &v[self.1])?;
        }
        m.end()
    }
}

impl Serialize for WitnessSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Row> = (0..self.len()).map(|i| Row(self, i)).collect();
        rows.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExtremalVerdict {
    #[serde(rename = "Extremal-evidence")]
    ExtremalEvidence,
    NoEvidence,
}

/// Verdict plus the sequence it rests on.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub verdict: ExtremalVerdict,
    pub witnesses: WitnessSequence,
}

impl Serialize for WitnessReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WitnessReport", 3)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("witnesses", &self.witnesses)?;
        st.serialize_field("sum_one_minus_r", &self.witnesses.sum_one_minus_r())?;
        st.end()
    }
}

/// How `Φ` is evaluated in the identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EvalRoute {
    /// Closed-form Poisson averages where the `FunctionSpec` allows.
    Symbolic,
    /// Grid samples extended spectrally.
    Sampled,
}

fn source(spec: &FunctionSpec, route: EvalRoute, grid: CircleGrid) -> Result<Box<dyn GarsiaSource>> {
    Ok(match route {
        EvalRoute::Symbolic => {
            let f = SpecFunction::compile(spec, grid)?;
            if !f.is_symbolic() {
                return Err(Error::Domain(format!("no closed form for {}", spec.to_json())));
            }
            Box::new(f)
        }
        EvalRoute::Sampled => Box::new(sample(spec, grid)?),
    })
}

/// `max_z |Φ_I(z) - (1 - |I(z)|^2)|`.
pub fn check_inner_identity(
    inner: &FunctionSpec,
    points: &[DiskPoint],
    route: EvalRoute,
    grid: CircleGrid,
) -> Result<f64> {
    let i = InnerSpec::from_spec(inner)?;
    let src = source(inner, route, grid)?;
    points.iter().try_fold(0.0f64, |acc, &z| {
        Ok(acc.max((phi(src.as_ref(), z)? - (1.0 - i.eval(z).norm_sqr())).abs()))
    })
}

/// `max_z |Φ_{IF}(z) - Φ_F(z) - |F(z)|^2 (1 - |I(z)|^2)|` for analytic `F`.
pub fn check_product_identity(
    inner: &FunctionSpec,
    f: &FunctionSpec,
    points: &[DiskPoint],
    route: EvalRoute,
    grid: CircleGrid,
) -> Result<f64> {
    Ok(product_terms(inner, f, points, route, grid)?
        .iter()
        .map(|t| (t.0 - t.1 - t.2).abs())
        .fold(0.0, f64::max))
}

/// `min_z (Φ_{IF}(z) - Φ_F(z))`; never negative in exact arithmetic.
pub fn division_gap(
    inner: &FunctionSpec,
    f: &FunctionSpec,
    points: &[DiskPoint],
    route: EvalRoute,
    grid: CircleGrid,
) -> Result<f64> {
    Ok(product_terms(inner, f, points, route, grid)?
        .iter()
        .map(|t| t.0 - t.1)
        .fold(f64::INFINITY, f64::min))
}

/// `(Φ_{IF}, Φ_F, |F|^2 (1 - |I|^2))` at each point.
fn product_terms(
    inner: &FunctionSpec,
    f: &FunctionSpec,
    points: &[DiskPoint],
    route: EvalRoute,
    grid: CircleGrid,
) -> Result<Vec<(f64, f64, f64)>> {
    let i = InnerSpec::from_spec(inner)?;
    let fa = analytic_fn(f, grid)?
        .ok_or_else(|| Error::Domain("F must be built from analytic pieces".into()))?;
    let prod = source(&FunctionSpec::product(vec![inner.clone(), f.clone()]), route, grid)?;
    let alone = source(f, route, grid)?;
    points
        .iter()
        .map(|&z| {
            Ok((
                phi(prod.as_ref(), z)?,
                phi(alone.as_ref(), z)?,
                fa.eval(z).norm_sqr() * (1.0 - i.eval(z).norm_sqr()),
            ))
        })
        .collect()
}

/// Ladder parameters for the witness searches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalConfig {
    /// Deepest radius `1 - 2^-m_max`.
    pub m_max: u32,
    /// `Pη ≥ (1 - tol_p) ‖η‖_∞` (or `|F| ≥ (1 - tol_p) ‖F‖_∞`) qualifies a witness.
    pub tol_p: f64,
    /// Top rung of the `P(log 1/η)` ladder `1, 2, ..., l_min`.
    pub l_min: f64,
    /// `|I| ≤ 10^-j` for `j = 1..=ladder_depth`.
    pub ladder_depth: u32,
    /// Angles per radius; `None` uses the grid nodes.
    pub n_theta: Option<usize>,
}

impl Default for ExtremalConfig {
    fn default() -> Self {
        Self {
            m_max: 30,
            tol_p: 1e-2,
            l_min: 10.0,
            ladder_depth: 8,
            n_theta: None,
        }
    }
}

impl ExtremalConfig {
    fn validate(&self) -> Result<()> {
        if !(1..=52).contains(&self.m_max) {
            return Err(Error::param("m_max", format!("{} is not in 1..=52", self.m_max)));
        }
        if !(self.tol_p > 0.0 && self.tol_p < 1.0) {
            return Err(Error::param("tol_p", format!("{} is not in (0, 1)", self.tol_p)));
        }
        if !(self.l_min >= 1.0) {
            return Err(Error::param("l_min", format!("{} < 1", self.l_min)));
        }
        if self.ladder_depth == 0 || self.n_theta == Some(0) {
            return Err(Error::param("ladder_depth", "must be positive"));
        }
        Ok(())
    }

    fn angles(&self, grid: CircleGrid, extra: &[f64]) -> Vec<f64> {
        let n = self.n_theta.unwrap_or(grid.n());
        let mut out: Vec<f64> = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
        out.extend(extra.iter().map(|t| t.rem_euclid(TAU)));
        out
    }
}

fn ladder_radii(m_max: u32, limit: f64) -> Vec<f64> {
    (1..=m_max)
        .map(|m| 1.0 - (-(m as f64)).exp2())
        .filter(|&r| r <= limit)
        .collect()
}

/// Index of the largest value; the first one wins ties.
fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Rungs `1..=top` climbed in order by qualifying witnesses.
fn climb(qualifies: &[bool], score: &[f64], rungs: &[f64]) -> usize {
    let mut reached = 0;
    for (q, s) in qualifies.iter().zip(score) {
        while *q && reached < rungs.len() && *s >= rungs[reached] {
            reached += 1;
        }
    }
    reached
}

fn outer_verdict(w: &WitnessSequence, sup: f64, cfg: &ExtremalConfig) -> ExtremalVerdict {
    let p = w.get("P_eta").unwrap_or(&[]);
    let l = w.get("P_log_inv_eta").unwrap_or(&[]);
    let qualifies: Vec<bool> = p.iter().map(|v| *v >= (1.0 - cfg.tol_p) * sup).collect();
    let rungs: Vec<f64> = (1..=cfg.l_min.ceil() as usize).map(|j| (j as f64).min(cfg.l_min)).collect();
    if climb(&qualifies, l, &rungs) == rungs.len() {
        ExtremalVerdict::ExtremalEvidence
    } else {
        ExtremalVerdict::NoEvidence
    }
}

/// Outer criterion at given points: `Pη(z_n) → ‖η‖_∞` and `P(log 1/η)(z_n) → ∞`.
pub fn outer_witness_at(
    eta: &OuterSpec,
    points: Vec<DiskPoint>,
    cfg: &ExtremalConfig,
    grid: CircleGrid,
) -> Result<WitnessReport> {
    cfg.validate()?;
    let o = OuterFunction::resolve(eta, grid)?;
    let field = o.eta_field();
    let mut w = WitnessSequence::new(points)?;
    let p: Vec<f64> = w.points.iter().map(|&z| field.extend(z).re).collect();
    let l: Vec<f64> = w.points.iter().map(|&z| -o.log_modulus(z)).collect();
    w.insert("P_eta", p);
    w.insert("P_log_inv_eta", l);
    Ok(WitnessReport {
        verdict: outer_verdict(&w, o.sup_eta(), cfg),
        witnesses: w,
    })
}

/// Searches radii `1 - 2^-m` for points maximizing
/// `min(Pη/‖η‖_∞, min(1, P(log 1/η)/l_min))`, then applies the ladder.
pub fn outer_extremal_witness(eta: &OuterSpec, cfg: &ExtremalConfig, grid: CircleGrid) -> Result<WitnessReport> {
    cfg.validate()?;
    let o = OuterFunction::resolve(eta, grid)?;
    let field = o.eta_field();
    let sup = o.sup_eta();
    let limit = field.radius_limit().min(o.radius_limit());
    let extra: Vec<f64> = match &field {
        BoundaryField::Steps(s) => s
            .pieces()
            .iter()
            .flat_map(|&(a, b, _)| [a, 0.5 * (a + b)])
            .collect(),
        _ => Vec::new(),
    };
    let angles = cfg.angles(grid, &extra);
    let picks: Vec<(DiskPoint, f64, f64)> = ladder_radii(cfg.m_max, limit)
        .par_iter()
        .map(|&r| {
            let pts: Vec<DiskPoint> = angles.iter().map(|&t| DiskPoint::raw(r, t)).collect();
            let p: Vec<f64> = match &field {
                BoundaryField::Sampled(_) if cfg.n_theta.is_none() && extra.is_empty() => {
                    field.extend_circle(r, angles.len()).iter().map(|v| v.re).collect()
                }
                _ => pts.iter().map(|&z| field.extend(z).re).collect(),
            };
            let l: Vec<f64> = pts.iter().map(|&z| -o.log_modulus(z)).collect();
            let obj: Vec<f64> = p
                .iter()
                .zip(&l)
                .map(|(p, l)| (p / sup).min((l / cfg.l_min).min(1.0)))
                .collect();
            let j = argmax(&obj);
            (pts[j], p[j], l[j])
        })
        .collect();
    let mut w = WitnessSequence::new(picks.iter().map(|p| p.0).collect())?;
    w.insert("P_eta", picks.iter().map(|p| p.1).collect());
    w.insert("P_log_inv_eta", picks.iter().map(|p| p.2).collect());
    Ok(WitnessReport {
        verdict: outer_verdict(&w, sup, cfg),
        witnesses: w,
    })
}

/// Product criterion: `|F(z_n)| → ‖F‖_∞` with `I(z_n) → 0`.
pub fn product_extremal_witness(
    f: &FunctionSpec,
    inner: &FunctionSpec,
    cfg: &ExtremalConfig,
    grid: CircleGrid,
) -> Result<WitnessReport> {
    cfg.validate()?;
    let i = InnerSpec::from_spec(inner)?;
    let fa = analytic_fn(f, grid)?
        .ok_or_else(|| Error::Domain("F must be built from analytic pieces".into()))?;
    let sup = sample(f, grid)?.sup_norm();
    if sup == 0.0 {
        return Err(Error::Degenerate("F vanishes identically".into()));
    }
    let limit = fa.radius_limit();
    let mut radii = ladder_radii(cfg.m_max, limit);
    radii.extend(i.blaschke.zeros.iter().map(|z| z.r()).filter(|&r| r > 0.0 && r <= limit));
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let mut extra: Vec<f64> = i.blaschke.zeros.iter().map(|z| z.theta()).collect();
    extra.extend(i.singular.atoms.iter().map(|a| a.0));
    let angles = cfg.angles(grid, &extra);
    let depth = cfg.ladder_depth as f64;

    let picks: Vec<(DiskPoint, f64, f64)> = radii
        .par_iter()
        .map(|&r| {
            let vals: Vec<(f64, f64)> = angles
                .iter()
                .map(|&t| {
                    let z = DiskPoint::raw(r, t);
                    (fa.eval(z).norm(), i.eval(z).norm())
                })
                .collect();
            let obj: Vec<f64> = vals
                .iter()
                .map(|(fv, iv)| (fv / sup).min((-iv.log10() / depth).min(1.0)))
                .collect();
            let j = argmax(&obj);
            (DiskPoint::raw(r, angles[j]), vals[j].0, vals[j].1)
        })
        .collect();
    let mut w = WitnessSequence::new(picks.iter().map(|p| p.0).collect())?;
    w.insert("abs_F", picks.iter().map(|p| p.1).collect());
    w.insert("abs_I", picks.iter().map(|p| p.2).collect());

    let qualifies: Vec<bool> = picks.iter().map(|p| p.1 >= (1.0 - cfg.tol_p) * sup).collect();
    let score: Vec<f64> = picks.iter().map(|p| -p.2.log10()).collect();
    let rungs: Vec<f64> = (1..=cfg.ladder_depth).map(f64::from).collect();
    let verdict = if climb(&qualifies, &score, &rungs) == rungs.len() {
        ExtremalVerdict::ExtremalEvidence
    } else {
        ExtremalVerdict::NoEvidence
    };
    Ok(WitnessReport { verdict, witnesses: w })
}

/// Whether `M(F)` meets `σ(I)` within `tol_angle`; `tol_modulus` defines `M(F)`.
pub fn disk_algebra_test(
    f: &FunctionSpec,
    inner: &FunctionSpec,
    tol_modulus: f64,
    tol_angle: f64,
    grid: CircleGrid,
) -> Result<bool> {
    let i = InnerSpec::from_spec(inner)?;
    let m = max_modulus_set(f, grid, tol_modulus)?;
    let sigma = spectrum(&i.blaschke, &i.singular, tol_angle);
    if m.whole_disk {
        return Ok(!sigma.is_empty());
    }
    Ok(sigma.boundary.iter().any(|&t| m.distance(t) <= tol_angle))
}

/// [`disk_algebra_test`] with `tol_modulus = 1e-2` and the default angular tolerance.
pub fn disk_algebra_test_default(f: &FunctionSpec, inner: &FunctionSpec, grid: CircleGrid) -> Result<bool> {
    disk_algebra_test(f, inner, 1e-2, DEFAULT_TOL_ANGLE, grid)
}

/// Zeros `z_n` at radii `1 - 2^-n` chosen to maximize `P(η^2)` with `η = |φ|/‖φ‖_∞`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalBlaschke {
    pub blaschke: BlaschkeSpec,
    /// `P_eta_sq` at each zero, and `Phi_Bphi` when `φ` is analytic.
    pub witnesses: WitnessSequence,
    /// `max_n |Φ_{Bφ}(z_n) - P(|φ|^2)(z_n)|`, when `φ` is analytic.
    pub residual: Option<f64>,
}

/// Picks one zero per radius `1 - 2^-n`, `n = 1..=k`, at the first grid
/// angle maximizing `P(η^2)`.
pub fn build_extremal_blaschke(phi_spec: &FunctionSpec, k: usize, grid: CircleGrid) -> Result<ExtremalBlaschke> {
    if k == 0 || k > 52 {
        return Err(Error::param("k", format!("{k} is not in 1..=52")));
    }
    let field = match abs_sq_field(phi_spec, grid)? {
        Some(f) => f,
        None => BoundaryField::Sampled(sample(phi_spec, grid)?.abs_sq()),
    };
    let sup = field.sup_norm();
    if !(sup > 0.0) {
        return Err(Error::Degenerate("η vanishes identically".into()));
    }
    let n = grid.n();
    let mut zeros = Vec::with_capacity(k);
    let mut p = Vec::with_capacity(k);
    for m in 1..=k {
        let r = 1.0 - (-(m as f64)).exp2();
        if r > field.radius_limit() {
            return Err(Error::AccuracyRefusal {
                r,
                limit: field.radius_limit(),
            });
        }
        let vals: Vec<f64> = field.extend_circle(r, n).iter().map(|v| v.re).collect();
        let j = argmax(&vals);
        zeros.push(DiskPoint::new(r, grid.angle(j))?);
        p.push(vals[j] / sup);
    }
    let blaschke = BlaschkeSpec::new(zeros.clone());
    let mut witnesses = WitnessSequence::new(zeros.clone())?;
    witnesses.insert("P_eta_sq", p.clone());

    let mut residual = None;
    if analytic_fn(phi_spec, grid)?.is_some() {
        let bphi = SpecFunction::compile(
            &FunctionSpec::product(vec![FunctionSpec::Blaschke(blaschke.clone()), phi_spec.clone()]),
            grid,
        )?;
        let vals: Vec<f64> = zeros.iter().map(|&z| phi(&bphi, z)).collect::<Result<_>>()?;
        residual = Some(
            vals.iter()
                .zip(&zeros)
                .map(|(v, &z)| (v - field.extend(z).re).abs())
                .fold(0.0, f64::max),
        );
        witnesses.insert("Phi_Bphi", vals);
    }
    Ok(ExtremalBlaschke {
        blaschke,
        witnesses,
        residual,
    })
}

/// `I(z)` for an inner spec.
pub fn inner_value(inner: &FunctionSpec, z: DiskPoint) -> Result<Complex64> {
    Ok(InnerSpec::from_spec(inner)?.eval(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::make_grid;
    use crate::factorization::{Eta, SingularSpec};
    use std::f64::consts::PI;

    fn dp(r: f64, t: f64) -> DiskPoint {
        DiskPoint::new(r, t).unwrap()
    }

    fn zeros_toward(angle: f64, count: i32) -> FunctionSpec {
        FunctionSpec::Blaschke(BlaschkeSpec::new(
            (1..=count).map(|k| dp(1.0 - 2f64.powi(-k), angle)).collect(),
        ))
    }

    #[test]
    fn inner_identity_examples() {
        let g = make_grid(10).unwrap();
        let b = FunctionSpec::Blaschke(BlaschkeSpec::new(vec![dp(0.5, 0.0)]));
        let src = SpecFunction::compile(&b, g).unwrap();
        assert!((phi(&src, dp(0.5, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        let pts = [dp(0.1, 0.3), dp(0.6, 2.0), dp(0.9, 5.0)];
        assert!(check_inner_identity(&b, &pts, EvalRoute::Sampled, g).unwrap() < 1e-10);
        assert!(check_inner_identity(&FunctionSpec::Identity, &pts, EvalRoute::Sampled, g).unwrap() < 1e-12);
    }

    #[test]
    fn product_identity_example() {
        let g = make_grid(12).unwrap();
        let b = FunctionSpec::Blaschke(BlaschkeSpec::new(vec![dp(0.5, 0.0)]));
        let pts = [dp(0.2, 0.3), dp(0.7, 2.0), dp(0.9, 5.0)];
        let r = check_product_identity(&b, &FunctionSpec::half_plus(), &pts, EvalRoute::Sampled, g).unwrap();
        assert!(r < 1e-10, "{r}");
        assert!(division_gap(&b, &FunctionSpec::half_plus(), &pts, EvalRoute::Sampled, g).unwrap() > 0.0);
    }

    #[test]
    fn outer_constant_has_no_evidence() {
        let g = make_grid(10).unwrap();
        let eta = OuterSpec::new(Eta::Steps { base: 1.0, pieces: vec![] });
        let rep = outer_extremal_witness(&eta, &ExtremalConfig::default(), g).unwrap();
        assert_eq!(rep.verdict, ExtremalVerdict::NoEvidence);
        assert!(rep.witnesses.get("P_log_inv_eta").unwrap().iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn outer_halfplus_has_no_evidence() {
        let g = make_grid(10).unwrap();
        let rep = outer_extremal_witness(&OuterSpec::new(Eta::Halfplus), &ExtremalConfig::default(), g).unwrap();
        assert_eq!(rep.verdict, ExtremalVerdict::NoEvidence);
    }

    #[test]
    fn product_examples() {
        let g = make_grid(10).unwrap();
        let cfg = ExtremalConfig::default();
        let one = FunctionSpec::constant(1.0);
        let b = FunctionSpec::Blaschke(BlaschkeSpec::new(vec![dp(0.3, 2.0)]));
        let v = product_extremal_witness(&one, &b, &cfg, g).unwrap().verdict;
        assert_eq!(v, ExtremalVerdict::ExtremalEvidence);
        let toward0 = zeros_toward(0.0, 20);
        let towardpi = zeros_toward(PI, 20);
        let hp = FunctionSpec::half_plus();
        assert_eq!(
            product_extremal_witness(&hp, &toward0, &cfg, g).unwrap().verdict,
            ExtremalVerdict::ExtremalEvidence
        );
        assert_eq!(
            product_extremal_witness(&hp, &towardpi, &cfg, g).unwrap().verdict,
            ExtremalVerdict::NoEvidence
        );
    }

    #[test]
    fn disk_algebra_examples() {
        let g = make_grid(10).unwrap();
        let hp = FunctionSpec::half_plus();
        assert!(disk_algebra_test_default(&hp, &zeros_toward(0.0, 20), g).unwrap());
        let atom = FunctionSpec::Singular(SingularSpec::new(vec![(PI, 1.0)]).unwrap());
        assert!(!disk_algebra_test_default(&hp, &atom, g).unwrap());
        assert!(disk_algebra_test_default(&FunctionSpec::constant(1.0), &atom, g).unwrap());
    }

    #[test]
    fn extremal_blaschke_for_halfplus() {
        let g = make_grid(12).unwrap();
        let eb = build_extremal_blaschke(&FunctionSpec::half_plus(), 12, g).unwrap();
        assert!(eb.residual.unwrap() < 1e-12);
        assert!(eb.blaschke.zeros.iter().all(|z| z.theta() == 0.0));
        let last = *eb.witnesses.get("Phi_Bphi").unwrap().last().unwrap();
        assert!(last >= 0.99);
        assert!(build_extremal_blaschke(&FunctionSpec::constant(0.0), 3, g).is_err());
    }

    #[test]
    fn report_json_shape() {
        let mut w = WitnessSequence::new(vec![dp(0.5, 0.0), dp(0.75, 1.0)]).unwrap();
        w.insert("x", vec![1.0, 2.0]);
        let rep = WitnessReport {
            verdict: ExtremalVerdict::ExtremalEvidence,
            witnesses: w,
        };
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["verdict"], "Extremal-evidence");
        assert_eq!(v["witnesses"][1]["x"], 2.0);
        assert!(WitnessSequence::new(vec![dp(0.5, 0.0), dp(0.5, 1.0)]).is_err());
    }
}
