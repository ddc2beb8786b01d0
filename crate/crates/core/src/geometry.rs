//! Unit-ball geometry of BMO under the Garsia norm: the parallelogram
//! identity, extreme-point probes, explicit midpoint decompositions of
//! non-extreme points, and the Lipschitz variant of the norm.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::boundary::{sample, ArcSet, BoundaryFunction, CircleGrid, FunctionSpec};
use crate::error::{Error, Result};
use crate::extremal::build_extremal_blaschke;
use crate::factorization::{BlaschkeSpec, Eta, InnerSpec, OuterFunction, OuterSpec};
use crate::garsia::{garsia_norm, phi, search_weighted, GarsiaSource, NormEstimate, SearchConfig, SpecFunction, Verdict};
use crate::poisson::DiskPoint;

/// `max_z |2Φ_f + 2Φ_g - Φ_{f+g} - Φ_{f-g}|` on the sampled route.
pub fn parallelogram_check(f: &BoundaryFunction, g: &BoundaryFunction, points: &[DiskPoint]) -> Result<f64> {
    let plus = f.add(g)?;
    let minus = f.sub(g)?;
    points.iter().try_fold(0.0f64, |acc, &z| {
        let lhs = 2.0 * phi(f, z)? + 2.0 * phi(g, z)?;
        let rhs = phi(&plus, z)? + phi(&minus, z)?;
        Ok(acc.max((lhs - rhs).abs()))
    })
}

/// Nonconstancy threshold for perturbations and for `|φ|`.
pub const CONSTANCY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRow {
    pub g: FunctionSpec,
    pub norm_plus: f64,
    pub norm_minus: f64,
    /// `max(‖f+g‖_G, ‖f-g‖_G) - 1`.
    pub margin: f64,
    /// Grid spread of `g`'s values.
    pub g_oscillation: f64,
    /// Both norms `≤ 1 - 1e-6` although `g` is not constant.
    pub violation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremeProbe {
    pub norm: f64,
    pub rows: Vec<ProbeRow>,
}

fn norm_of(spec: &FunctionSpec, grid: CircleGrid, cfg: &SearchConfig) -> Result<NormEstimate> {
    garsia_norm(&SpecFunction::compile(spec, grid)?, cfg)
}

/// Checks that `f` attains `‖f‖_G = 1` inside the disk, then measures how far
/// `f ± g` leave the unit ball for each perturbation `g`.
pub fn extreme_probe(
    f: &FunctionSpec,
    perturbations: &[FunctionSpec],
    cfg: &SearchConfig,
    grid: CircleGrid,
) -> Result<ExtremeProbe> {
    let est = norm_of(f, grid, cfg)?;
    if est.attained != Verdict::Attained {
        return Err(Error::Precondition {
            check: "norm_attaining",
            detail: format!("verdict {:?}", est.attained),
        });
    }
    if (est.lower_bound - 1.0).abs() > 1e-6 {
        return Err(Error::Precondition {
            check: "unit_norm",
            detail: format!("‖f‖_G ≈ {}", est.lower_bound),
        });
    }
    let rows = perturbations
        .par_iter()
        .map(|g| -> Result<ProbeRow> {
            let plus = norm_of(&FunctionSpec::sum(vec![f.clone(), g.clone()]), grid, cfg)?.lower_bound;
            let minus = norm_of(
                &FunctionSpec::sum(vec![f.clone(), FunctionSpec::scale(-1.0, g.clone())]),
                grid,
                cfg,
            )?
            .lower_bound;
            let osc = sample(g, grid)?.oscillation();
            Ok(ProbeRow {
                g: g.clone(),
                norm_plus: plus,
                norm_minus: minus,
                margin: plus.max(minus) - 1.0,
                g_oscillation: osc,
                violation: plus <= 1.0 - 1e-6 && minus <= 1.0 - 1e-6 && osc > CONSTANCY_TOL,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtremeProbe {
        norm: est.lower_bound,
        rows,
    })
}

/// `0.3 (χ_[0,π) - 1/2)` and `0.5 ζ̄`.
pub fn default_perturbations() -> Vec<FunctionSpec> {
    let half = ArcSet::new([(0.0, std::f64::consts::PI)]).expect("valid arc");
    vec![
        FunctionSpec::scale(
            0.3,
            FunctionSpec::sum(vec![FunctionSpec::indicator(half), FunctionSpec::constant(-0.5)]),
        ),
        FunctionSpec::scale(0.5, FunctionSpec::conjugate(FunctionSpec::Identity)),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecomposeMode {
    /// `g = 1 - |φ|`.
    Real,
    /// `g` outer with `|g| = 1 - |φ|`.
    Analytic,
}

/// `Bφ = (Bφ₁ + Bφ₂)/2` with `φ_{1,2} = φ ± g`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub mode: DecomposeMode,
    pub blaschke: BlaschkeSpec,
    pub g: FunctionSpec,
    pub phi1: FunctionSpec,
    pub phi2: FunctionSpec,
    /// Grid max of `|(Bφ₁ + Bφ₂)/2 - Bφ|`.
    pub midpoint_residual: f64,
    /// Grid max of `||Bφ₁ - Bφ₂| - 2(1 - |φ|)|`.
    pub modulus_residual: f64,
    /// Grid `‖φ₁‖_∞`, `‖φ₂‖_∞`.
    pub sup_norms: [f64; 2],
    /// `‖Bφ₁‖_G`, `‖Bφ₂‖_G` lower bounds.
    pub norms: [f64; 2],
    /// Grid `sup - inf` of `|Bφ₁ - Bφ₂|`.
    pub distinctness: f64,
}

fn unit_sup(phi_spec: &FunctionSpec, grid: CircleGrid) -> Result<BoundaryFunction> {
    let s = sample(phi_spec, grid)?;
    if (s.sup_norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition {
            check: "unit_sup_norm",
            detail: format!("grid ‖φ‖_∞ = {}", s.sup_norm()),
        });
    }
    Ok(s)
}

/// Writes a non-unimodular `φ` with `‖φ‖_∞ = 1` as a midpoint. `blaschke`
/// defaults to [`build_extremal_blaschke`] of `φ` with 12 zeros.
pub fn nonextreme_decompose(
    phi_spec: &FunctionSpec,
    mode: DecomposeMode,
    blaschke: Option<BlaschkeSpec>,
    cfg: &SearchConfig,
    grid: CircleGrid,
) -> Result<Decomposition> {
    let phi_s = unit_sup(phi_spec, grid)?;
    let one_minus = FunctionSpec::sum(vec![
        FunctionSpec::constant(1.0),
        FunctionSpec::scale(-1.0, FunctionSpec::modulus(phi_spec.clone())),
    ]);
    let g = match mode {
        DecomposeMode::Real => {
            if phi_s.modulus_oscillation() <= CONSTANCY_TOL {
                return Err(Error::Precondition {
                    check: "non_unimodular",
                    detail: "|φ| is constant on the grid".into(),
                });
            }
            one_minus
        }
        DecomposeMode::Analytic => {
            let spec = OuterSpec::new(Eta::Modulus {
                spec: Box::new(one_minus),
            });
            OuterFunction::resolve(&spec, grid).map_err(|e| Error::Precondition {
                check: "log_integrable",
                detail: e.to_string(),
            })?;
            FunctionSpec::Outer(spec)
        }
    };
    let blaschke = match blaschke {
        Some(b) => b,
        None => build_extremal_blaschke(phi_spec, 12, grid)?.blaschke,
    };
    let phi1 = FunctionSpec::sum(vec![phi_spec.clone(), g.clone()]);
    let phi2 = FunctionSpec::sum(vec![phi_spec.clone(), FunctionSpec::scale(-1.0, g.clone())]);
    let bspec = FunctionSpec::Blaschke(blaschke.clone());
    let times_b = |s: &FunctionSpec| FunctionSpec::product(vec![bspec.clone(), s.clone()]);

    let (bphi, bphi1, bphi2) = (
        sample(&times_b(phi_spec), grid)?,
        sample(&times_b(&phi1), grid)?,
        sample(&times_b(&phi2), grid)?,
    );
    let half = Complex64::new(0.5, 0.0);
    let mid = bphi1.add(&bphi2)?.scale(half).sub(&bphi)?;
    let diff = bphi1.sub(&bphi2)?;
    let modulus_residual = diff
        .values()
        .iter()
        .zip(phi_s.values())
        .map(|(d, p)| (d.norm() - 2.0 * (1.0 - p.norm())).abs())
        .fold(0.0, f64::max);
    let sup_norms = [sample(&phi1, grid)?.sup_norm(), sample(&phi2, grid)?.sup_norm()];
    let norms = [
        garsia_norm(&bphi1, cfg)?.lower_bound,
        garsia_norm(&bphi2, cfg)?.lower_bound,
    ];
    Ok(Decomposition {
        mode,
        blaschke,
        g,
        phi1,
        phi2,
        midpoint_residual: mid.sup_norm(),
        modulus_residual,
        sup_norms,
        norms,
        distinctness: diff.modulus_oscillation(),
    })
}

/// `sup_z sqrt(Φ_f(z)) / (1-|z|)^α` for `0 < α < 1/2`.
pub fn lipschitz_garsia_norm<S: GarsiaSource + ?Sized>(f: &S, alpha: f64, cfg: &SearchConfig) -> Result<NormEstimate> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::param("alpha", format!("{alpha} is not in (0, 1/2)")));
    }
    search_weighted(f, cfg, alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerBranch {
    Inner,
    NonExtreme,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnerCharacterization {
    pub branch: InnerBranch,
    /// Grid `max ||h| - 1|` (0 for symbolic inner specs).
    pub unimodularity_defect: f64,
    pub norm: Option<NormEstimate>,
    pub probe: Option<ExtremeProbe>,
    pub decomposition: Option<Decomposition>,
    pub detail: String,
}

/// Inner `h`: `Bh` should attain `‖Bh‖_G = 1` and resist perturbation.
/// Otherwise `Bh` is split as a midpoint of two distinct ball elements.
pub fn inner_characterization_experiment(
    h: &FunctionSpec,
    b: &BlaschkeSpec,
    cfg: &SearchConfig,
    grid: CircleGrid,
) -> Result<InnerCharacterization> {
    if b.zeros.is_empty() {
        return Err(Error::param("blaschke", "B must have at least one zero"));
    }
    let defect = if InnerSpec::from_spec(h).is_ok() {
        0.0
    } else {
        let s = unit_sup(h, grid)?;
        s.values().iter().map(|v| (v.norm() - 1.0).abs()).fold(0.0, f64::max)
    };
    let bh = FunctionSpec::product(vec![FunctionSpec::Blaschke(b.clone()), h.clone()]);
    let mut out = InnerCharacterization {
        branch: InnerBranch::Inconclusive,
        unimodularity_defect: defect,
        norm: None,
        probe: None,
        decomposition: None,
        detail: String::new(),
    };
    if defect <= CONSTANCY_TOL {
        let est = norm_of(&bh, grid, cfg)?;
        let ok = est.attained == Verdict::Attained && (est.lower_bound - 1.0).abs() <= 1e-6;
        out.norm = Some(est);
        if !ok {
            out.detail = "Bh did not attain a unit Garsia norm".into();
            return Ok(out);
        }
        match extreme_probe(&bh, &default_perturbations(), cfg, grid) {
            Ok(p) => {
                out.branch = InnerBranch::Inner;
                out.probe = Some(p);
            }
            Err(e) => out.detail = e.to_string(),
        }
    } else {
        match nonextreme_decompose(h, DecomposeMode::Analytic, Some(b.clone()), cfg, grid) {
            Ok(d) => {
                out.branch = InnerBranch::NonExtreme;
                out.decomposition = Some(d);
            }
            Err(e) => out.detail = e.to_string(),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::make_grid;
    use crate::factorization::SingularSpec;
    use std::f64::consts::PI;

    fn dp(r: f64, t: f64) -> DiskPoint {
        DiskPoint::new(r, t).unwrap()
    }

    #[test]
    fn parallelogram_examples() {
        let g = make_grid(10).unwrap();
        let pts: Vec<DiskPoint> = (0..20).map(|i| dp(0.04 * i as f64, 0.3 * i as f64)).collect();
        let id = sample(&FunctionSpec::Identity, g).unwrap();
        let cid = sample(&FunctionSpec::conjugate(FunctionSpec::Identity), g).unwrap();
        assert!(parallelogram_check(&id, &cid, &pts).unwrap() < 1e-12);
        let zero = BoundaryFunction::constant(g, Complex64::new(0.0, 0.0));
        assert!(parallelogram_check(&id, &zero, &pts).unwrap() < 1e-15);
        let e1 = sample(&FunctionSpec::indicator(ArcSet::new([(0.0, PI)]).unwrap()), g).unwrap();
        let e2 = sample(&FunctionSpec::indicator(ArcSet::new([(PI, 2.0 * PI)]).unwrap()), g).unwrap();
        assert!(parallelogram_check(&e1, &e2, &pts).unwrap() < 1e-12);
    }

    #[test]
    fn probe_minus_z() {
        let g = make_grid(10).unwrap();
        let f = FunctionSpec::Blaschke(BlaschkeSpec::new(vec![DiskPoint::origin()]));
        let mut perts = default_perturbations();
        perts.push(FunctionSpec::constant(5.0));
        let p = extreme_probe(&f, &perts, &SearchConfig::default(), g).unwrap();
        assert!(p.rows[0].margin > 0.0);
        assert!(p.rows[1].margin > 0.0);
        assert_eq!(p.rows[2].margin, 0.0);
        assert!(p.rows.iter().all(|r| !r.violation));
        let not_unit = FunctionSpec::scale(0.5, FunctionSpec::Identity);
        assert!(matches!(
            extreme_probe(&not_unit, &perts, &SearchConfig::default(), g),
            Err(Error::Precondition { check: "unit_norm", .. })
        ));
    }

    #[test]
    fn decompose_halfplus() {
        let g = make_grid(12).unwrap();
        let d = nonextreme_decompose(&FunctionSpec::half_plus(), DecomposeMode::Analytic, None, &SearchConfig::default(), g)
            .unwrap();
        assert!(d.midpoint_residual <= 1e-12, "{}", d.midpoint_residual);
        assert!(d.modulus_residual <= 1e-10, "{}", d.modulus_residual);
        assert!(d.norms.iter().all(|n| *n <= 1.0 + 1e-6), "{:?}", d.norms);
        assert!(d.distinctness > 0.5);
    }

    #[test]
    fn decompose_rejections() {
        let g = make_grid(10).unwrap();
        let cfg = SearchConfig::default();
        assert!(matches!(
            nonextreme_decompose(&FunctionSpec::Identity, DecomposeMode::Real, None, &cfg, g),
            Err(Error::Precondition { check: "non_unimodular", .. })
        ));
        assert!(matches!(
            nonextreme_decompose(&FunctionSpec::Identity, DecomposeMode::Analytic, None, &cfg, g),
            Err(Error::Precondition { check: "log_integrable", .. })
        ));
    }

    #[test]
    fn lipschitz_rejects_alpha() {
        let g = make_grid(8).unwrap();
        let f = SpecFunction::compile(&FunctionSpec::Identity, g).unwrap();
        assert!(lipschitz_garsia_norm(&f, 0.5, &SearchConfig::default()).is_err());
        assert!(lipschitz_garsia_norm(&f, 0.0, &SearchConfig::default()).is_err());
    }

    #[test]
    fn inner_branch_for_singular() {
        let g = make_grid(10).unwrap();
        let h = FunctionSpec::Singular(SingularSpec::new(vec![(PI, 1.0)]).unwrap());
        let b = BlaschkeSpec::new(vec![DiskPoint::origin()]);
        let rep = inner_characterization_experiment(&h, &b, &SearchConfig::default(), g).unwrap();
        assert_eq!(rep.branch, InnerBranch::Inner, "{}", rep.detail);
        let n = rep.norm.unwrap();
        assert_eq!(n.argmax.r(), 0.0);
        assert!((n.lower_bound - 1.0).abs() < 1e-12);
    }
}
