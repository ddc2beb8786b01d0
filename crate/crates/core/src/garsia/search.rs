//! Global search for `sup Φ_f` over the disk.
//!
//! A coarse polar sweep seeds coordinate ascent from the best few nodes;
//! radial probes at `r = 1 - 2^-m` record how `Φ` behaves toward the
//! circle. The verdict compares the two.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use super::{GarsiaSource, PhiParts};
use crate::error::{Error, Result};
use crate::poisson::DiskPoint;

/// Knobs for [`garsia_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    /// Radii in the coarse sweep (including `r = 0`).
    pub n_r: usize,
    /// Angles per coarse circle.
    pub n_theta: usize,
    /// Outer radius of the interior search; `None` uses the grid's quadrature limit.
    pub r_max: Option<f64>,
    /// Margin below `r_max` inside which an argmax counts as interior.
    pub delta_att: f64,
    pub ascent_iters: usize,
    pub min_step: f64,
    /// Number of ascent starts.
    pub starts: usize,
    /// Deepest boundary probe, `r = 1 - 2^-m_max`.
    pub m_max: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            n_r: 64,
            n_theta: 256,
            r_max: None,
            delta_att: 0.02,
            ascent_iters: 200,
            min_step: 1e-12,
            starts: 8,
            m_max: 30,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_r < 2 {
            return Err(Error::param("n_r", format!("{} < 2", self.n_r)));
        }
        if self.n_theta < 4 {
            return Err(Error::param("n_theta", format!("{} < 4", self.n_theta)));
        }
        if let Some(r) = self.r_max {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::param("r_max", format!("{r} is not in (0, 1)")));
            }
        }
        if !(self.delta_att > 0.0 && self.delta_att < 1.0) {
            return Err(Error::param("delta_att", format!("{} is not in (0, 1)", self.delta_att)));
        }
        if self.ascent_iters == 0 || self.starts == 0 {
            return Err(Error::param("ascent_iters", "iteration counts must be positive"));
        }
        if !(self.min_step > 0.0) {
            return Err(Error::param("min_step", format!("{} is not positive", self.min_step)));
        }
        if !(1..=52).contains(&self.m_max) {
            return Err(Error::param("m_max", format!("{} is not in 1..=52", self.m_max)));
        }
        Ok(())
    }
}

/// Three-valued attainment verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Attained,
    NotAttained,
    Inconclusive,
}

/// Best value found on one probe circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrendPoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    /// `P(|f|^2)` and `|Pf|^2` at the point.
    pub parts: PhiParts,
    /// `(1-r)^{-2α}`.
    pub weight: f64,
}

/// Whether each point beats the one before it under the search's own
/// ordering, which separates values that round to the same `Φ`.
pub fn trend_increasing(trend: &[TrendPoint]) -> bool {
    let cand = |t: &TrendPoint| Cand {
        r: t.r,
        theta: t.theta,
        parts: t.parts,
        w: t.weight,
    };
    trend
        .windows(2)
        .all(|w| compare(&cand(&w[1]), &cand(&w[0])) == Ordering::Greater)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchLog {
    pub r_max: f64,
    pub radius_limit: f64,
    pub alpha: f64,
    pub coarse_evaluations: usize,
    pub ascent_evaluations: usize,
    pub starts: Vec<TrendPoint>,
    pub interior_best: TrendPoint,
    pub probe_stop: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormEstimate {
    /// `sqrt` of the best objective value found.
    pub lower_bound: f64,
    /// Best objective value: `Φ_f`, or `Φ_f (1-|z|)^{-2α}` for the weighted search.
    pub phi_max: f64,
    pub argmax: DiskPoint,
    pub attained: Verdict,
    pub boundary_trend: Vec<TrendPoint>,
    pub search_log: SearchLog,
}

impl NormEstimate {
    /// `r,max_phi` lines with a header.
    pub fn trend_csv(&self) -> String {
        let mut out = String::from("r,max_phi\n");
        for t in &self.boundary_trend {
            out.push_str(&format!("{:.16e},{:.16e}\n", t.r, t.phi));
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
struct Cand {
    r: f64,
    theta: f64,
    parts: PhiParts,
    w: f64,
}

impl Cand {
    fn value(&self) -> f64 {
        self.parts.value() * self.w
    }

    fn trend(&self) -> TrendPoint {
        TrendPoint {
            r: self.r,
            theta: self.theta,
            phi: self.value(),
            parts: self.parts,
            weight: self.w,
        }
    }
}

/// `Greater` when `x` is the better point.
///
/// Equal `a` and weight means only `b = |Pf|^2` differs, and comparing it
/// directly keeps resolution when `a - b` has rounded to `a`.
fn compare(x: &Cand, y: &Cand) -> Ordering {
    let (vx, vy) = (x.value(), y.value());
    let primary = match (vx.is_nan(), vy.is_nan()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ if x.parts.a.to_bits() == y.parts.a.to_bits() && x.w.to_bits() == y.w.to_bits() => {
            let tol = 1e-12 * x.parts.b.abs().max(y.parts.b.abs());
            if (x.parts.b - y.parts.b).abs() <= tol {
                Ordering::Equal
            } else {
                y.parts.b.total_cmp(&x.parts.b)
            }
        }
        _ => {
            let tol = 1e-14 * (x.parts.a * x.w).abs().max((y.parts.a * y.w).abs()).max(1.0);
            if (vx - vy).abs() <= tol {
                Ordering::Equal
            } else {
                vx.total_cmp(&vy)
            }
        }
    };
    primary
        .then_with(|| y.r.total_cmp(&x.r))
        .then_with(|| y.theta.total_cmp(&x.theta))
}

fn best<'a>(it: impl IntoIterator<Item = &'a Cand>) -> Option<Cand> {
    let mut out: Option<Cand> = None;
    for c in it {
        if out.is_none_or(|b| compare(c, &b) == Ordering::Greater) {
            out = Some(*c);
        }
    }
    out
}

struct Objective<'a, S: ?Sized> {
    src: &'a S,
    alpha: f64,
}

impl<S: GarsiaSource + ?Sized> Objective<'_, S> {
    fn weight(&self, r: f64) -> f64 {
        if self.alpha == 0.0 {
            1.0
        } else {
            (1.0 - r).powf(-2.0 * self.alpha)
        }
    }

    fn at(&self, r: f64, theta: f64) -> Cand {
        let theta = theta.rem_euclid(TAU);
        Cand {
            r,
            theta: if r == 0.0 { 0.0 } else { theta },
            parts: self.src.phi_parts(DiskPoint::raw(r, theta)),
            w: self.weight(r),
        }
    }

    fn circle(&self, r: f64, n_theta: usize) -> Vec<Cand> {
        if r == 0.0 {
            return vec![self.at(0.0, 0.0)];
        }
        let w = self.weight(r);
        self.src
            .phi_circle(r, n_theta)
            .into_iter()
            .enumerate()
            .map(|(j, parts)| Cand {
                r,
                theta: TAU * j as f64 / n_theta as f64,
                parts,
                w,
            })
            .collect()
    }

    /// Coordinate ascent in `(r, θ)` with halving steps.
    fn ascend(&self, start: Cand, dr: f64, dt: f64, r_max: f64, cfg: &SearchConfig) -> (Cand, usize) {
        let (mut cur, mut dr, mut dt) = (start, dr, dt);
        let mut evals = 0;
        for _ in 0..cfg.ascent_iters {
            if dr < cfg.min_step && dt < cfg.min_step {
                break;
            }
            let mut moves = Vec::with_capacity(4);
            for r in [cur.r - dr, cur.r + dr] {
                let r = r.clamp(0.0, r_max);
                if r != cur.r {
                    moves.push(self.at(r, cur.theta));
                }
            }
            if cur.r > 0.0 {
                moves.push(self.at(cur.r, cur.theta - dt));
                moves.push(self.at(cur.r, cur.theta + dt));
            }
            evals += moves.len();
            match best(&moves) {
                Some(m) if compare(&m, &cur) == Ordering::Greater => cur = m,
                _ => {
                    dr *= 0.5;
                    dt *= 0.5;
                }
            }
        }
        (cur, evals)
    }

    /// Golden-section refinement in θ on `[c - h, c + h]` at fixed radius.
    fn refine_angle(&self, r: f64, c: f64, h: f64) -> Cand {
        const G: f64 = 0.618_033_988_749_894_9;
        let (mut lo, mut hi) = (c - h, c + h);
        let mut x1 = hi - G * (hi - lo);
        let mut x2 = lo + G * (hi - lo);
        let mut f1 = self.at(r, x1);
        let mut f2 = self.at(r, x2);
        for _ in 0..48 {
            if compare(&f1, &f2) == Ordering::Less {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + G * (hi - lo);
                f2 = self.at(r, x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - G * (hi - lo);
                f1 = self.at(r, x1);
            }
        }
        best([&f1, &f2, &self.at(r, c)]).unwrap()
    }
}

fn near(a: (usize, usize), b: (usize, usize), n_theta: usize) -> bool {
    let dj = a.1.abs_diff(b.1);
    a.0.abs_diff(b.0) <= 2 && dj.min(n_theta - dj) <= 4
}

/// Searches `sup_z Φ_f(z) (1-|z|)^{-2α}`; `alpha = 0` gives the Garsia norm.
pub(crate) fn search_weighted<S: GarsiaSource + ?Sized>(
    src: &S,
    cfg: &SearchConfig,
    alpha: f64,
) -> Result<NormEstimate> {
    cfg.validate()?;
    let limit = src.radius_limit();
    let r_max = cfg.r_max.unwrap_or_else(|| src.grid().r_quad_max()).min(limit);
    if !(r_max > 0.0) {
        return Err(Error::param("r_max", format!("no interior search region (limit {limit})")));
    }
    let obj = Objective { src, alpha };

    let dr = r_max / (cfg.n_r - 1) as f64;
    let dt = TAU / cfg.n_theta as f64;
    let rings: Vec<Vec<Cand>> = (0..cfg.n_r)
        .into_par_iter()
        .map(|i| obj.circle(if i + 1 == cfg.n_r { r_max } else { dr * i as f64 }, cfg.n_theta))
        .collect();
    let coarse_evaluations = rings.iter().map(Vec::len).sum();

    let mut seeds: Vec<((usize, usize), Cand)> = Vec::new();
    for _ in 0..cfg.starts {
        let mut pick: Option<((usize, usize), Cand)> = None;
        for (i, ring) in rings.iter().enumerate() {
            for (j, c) in ring.iter().enumerate() {
                if seeds.iter().any(|s| near(s.0, (i, j), cfg.n_theta)) {
                    continue;
                }
                if pick.is_none_or(|p| compare(c, &p.1) == Ordering::Greater) {
                    pick = Some(((i, j), *c));
                }
            }
        }
        match pick {
            Some(p) => seeds.push(p),
            None => break,
        }
    }

    let ascents: Vec<(Cand, usize)> = seeds
        .par_iter()
        .map(|(_, c)| obj.ascend(*c, dr, dt, r_max, cfg))
        .collect();
    let ascent_evaluations = ascents.iter().map(|a| a.1).sum();
    let interior = best(ascents.iter().map(|a| &a.0)).expect("at least one start");

    // Radial probes toward the circle.
    let mut trend: Vec<Cand> = Vec::new();
    let mut probe_stop = format!("reached m_max = {}", cfg.m_max);
    for m in 1..=cfg.m_max {
        let r = 1.0 - (-(m as f64)).exp2();
        if r > limit {
            probe_stop = format!("radius limit {limit} at m = {m}");
            break;
        }
        let ring = obj.circle(r, cfg.n_theta);
        let mut top: Vec<Cand> = Vec::new();
        for _ in 0..4 {
            let next = best(ring.iter().filter(|c| !top.iter().any(|t| t.theta == c.theta)));
            top.extend(next);
        }
        let mut centers: Vec<f64> = top.iter().map(|c| c.theta).collect();
        if interior.r > 0.0 {
            centers.push(interior.theta);
        }
        let refined: Vec<Cand> = centers.iter().map(|&c| obj.refine_angle(r, c, dt)).collect();
        let here = best(refined.iter().chain(top.iter())).unwrap();
        if let Some(prev) = trend.last() {
            if prev.parts == here.parts && prev.w == here.w {
                probe_stop = format!("values saturated at m = {m}");
                break;
            }
        }
        trend.push(here);
    }

    let trend_best = best(&trend);
    let dominates_trend = trend_best.is_none_or(|t| interior.value() >= t.value() - 1e-12);
    let attained = if interior.r <= r_max - cfg.delta_att && dominates_trend {
        Verdict::Attained
    } else if trend.len() >= 5
        && trend[trend.len() - 5..]
            .windows(2)
            .all(|w| compare(&w[1], &w[0]) == Ordering::Greater)
        && trend.last().unwrap().value() >= interior.value() - 1e-12
    {
        Verdict::NotAttained
    } else {
        Verdict::Inconclusive
    };

    let top = match attained {
        Verdict::Attained => interior,
        _ => best(trend.iter().chain([&interior])).unwrap(),
    };
    let phi_max = top.value().max(0.0);
    Ok(NormEstimate {
        lower_bound: phi_max.sqrt(),
        phi_max,
        argmax: DiskPoint::raw(top.r, top.theta),
        attained,
        boundary_trend: trend.iter().map(Cand::trend).collect(),
        search_log: SearchLog {
            r_max,
            radius_limit: limit,
            alpha,
            coarse_evaluations,
            ascent_evaluations,
            starts: seeds.iter().map(|s| s.1.trend()).collect(),
            interior_best: interior.trend(),
            probe_stop,
        },
    })
}

/// `‖f‖_G` lower bound, argmax and attainment verdict.
pub fn garsia_norm<S: GarsiaSource + ?Sized>(f: &S, cfg: &SearchConfig) -> Result<NormEstimate> {
    search_weighted(f, cfg, 0.0)
}

/// Whether `Φ_f` attains its supremum inside the disk.
pub fn is_norm_attaining<S: GarsiaSource + ?Sized>(f: &S, cfg: &SearchConfig) -> Result<Verdict> {
    Ok(garsia_norm(f, cfg)?.attained)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{make_grid, ArcSet, FunctionSpec};
    use crate::factorization::{BlaschkeSpec, SingularSpec};
    use crate::garsia::{phi, SpecFunction};
    use std::f64::consts::PI;

    fn compile(s: FunctionSpec) -> SpecFunction {
        SpecFunction::compile(&s, make_grid(12).unwrap()).unwrap()
    }

    #[test]
    fn identity_norm() {
        let est = garsia_norm(&compile(FunctionSpec::Identity), &SearchConfig::default()).unwrap();
        assert_eq!(est.attained, Verdict::Attained);
        assert!((est.lower_bound - 1.0).abs() < 1e-12);
        assert_eq!(est.argmax.r(), 0.0);
    }

    #[test]
    fn half_indicator_norm() {
        let f = compile(FunctionSpec::indicator(ArcSet::new([(0.0, PI)]).unwrap()));
        let est = garsia_norm(&f, &SearchConfig::default()).unwrap();
        assert!((est.lower_bound - 0.5).abs() < 1e-6, "{est:?}");
        assert_eq!(est.attained, Verdict::Attained);
        assert!(est.argmax.r() <= 1e-3);
        assert!((est.lower_bound.powi(2) - phi(&f, est.argmax).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn blaschke_zero_is_attained() {
        let b = BlaschkeSpec::new(vec![DiskPoint::new(0.5, 1.0).unwrap()]);
        let est = garsia_norm(&compile(FunctionSpec::Blaschke(b)), &SearchConfig::default()).unwrap();
        assert_eq!(est.attained, Verdict::Attained);
        assert!((est.lower_bound - 1.0).abs() < 1e-9);
        assert!((est.argmax.to_complex() - DiskPoint::new(0.5, 1.0).unwrap().to_complex()).norm() < 1e-5);
    }

    #[test]
    fn singular_atom_is_not_attained() {
        let s = SingularSpec::new(vec![(0.0, 1.0)]).unwrap();
        let est = garsia_norm(&compile(FunctionSpec::Singular(s)), &SearchConfig::default()).unwrap();
        assert_eq!(est.attained, Verdict::NotAttained, "{:?}", est.search_log);
        assert!(trend_increasing(&est.boundary_trend));
        assert!(est.boundary_trend.len() >= 5);
        assert!((est.lower_bound - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_has_zero_norm() {
        let est = garsia_norm(&compile(FunctionSpec::constant(2.0)), &SearchConfig::default()).unwrap();
        assert_eq!(est.lower_bound, 0.0);
    }

    #[test]
    fn weighted_identity() {
        let est = search_weighted(&compile(FunctionSpec::Identity), &SearchConfig::default(), 0.25).unwrap();
        let want = (4.0f64 / 3.0).sqrt() * (2.0f64 / 3.0).powf(0.25);
        assert!((est.lower_bound - want).abs() < 1e-9);
        assert!((est.argmax.r() - 1.0 / 3.0).abs() < 1e-4);
        assert_eq!(est.attained, Verdict::Attained);
    }

    #[test]
    fn bad_config() {
        let cfg = SearchConfig {
            r_max: Some(1.0),
            ..SearchConfig::default()
        };
        assert!(garsia_norm(&compile(FunctionSpec::Identity), &cfg).is_err());
    }

    #[test]
    fn comparator_prefers_smaller_radius_on_ties() {
        let p = PhiParts { a: 1.0, b: 0.5 };
        let x = Cand { r: 0.1, theta: 0.0, parts: p, w: 1.0 };
        let y = Cand { r: 0.2, theta: 0.0, parts: p, w: 1.0 };
        assert_eq!(compare(&x, &y), Ordering::Greater);
        let z = Cand { r: 0.9, theta: 0.0, parts: PhiParts { a: 1.0, b: 0.0 }, w: 1.0 };
        let tiny = Cand { r: 0.5, theta: 0.0, parts: PhiParts { a: 1.0, b: 1e-200 }, w: 1.0 };
        assert_eq!(compare(&z, &tiny), Ordering::Greater);
    }
}
