//! Garsia functions with elementary closed forms.

use std::f64::consts::PI;

use garsia::boundary::{make_grid, sample, ArcSet, FunctionSpec};
use garsia::factorization::{BlaschkeSpec, Eta, OuterSpec, SingularSpec};
use garsia::garsia::{garsia_norm, phi, SearchConfig, SpecFunction, Verdict};
use garsia::poisson::DiskPoint;

fn dp(r: f64, t: f64) -> DiskPoint {
    DiskPoint::new(r, t).unwrap()
}

fn compiled(s: &FunctionSpec) -> SpecFunction {
    SpecFunction::compile(s, make_grid(12).unwrap()).unwrap()
}

#[test]
fn blaschke_phi_is_one_at_its_zero() {
    let a = dp(0.7, 2.0);
    let b = compiled(&FunctionSpec::Blaschke(BlaschkeSpec::new(vec![a])));
    assert!((phi(&b, a).unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn singular_atom_at_origin() {
    // S(0) = e^{-1} for the unit atom, so Φ_S(0) = 1 - e^{-2}.
    let s = compiled(&FunctionSpec::Singular(SingularSpec::new(vec![(0.0, 1.0)]).unwrap()));
    assert!((phi(&s, DiskPoint::origin()).unwrap() - (1.0 - (-2.0f64).exp())).abs() < 1e-15);
}

#[test]
fn half_plus_is_a_quarter_of_one_minus_r_squared() {
    for s in [FunctionSpec::half_plus(), FunctionSpec::Outer(OuterSpec::new(Eta::Halfplus))] {
        let f = compiled(&s);
        for z in [dp(0.0, 0.0), dp(0.4, 1.0), dp(0.85, 4.0)] {
            let want = 0.25 * (1.0 - z.r() * z.r());
            assert!((phi(&f, z).unwrap() - want).abs() < 1e-12, "{}", s.to_json());
        }
    }
}

#[test]
fn arc_of_measure_m_at_origin() {
    let m = 0.3;
    let e = ArcSet::new([(1.0, 1.0 + 2.0 * PI * m)]).unwrap();
    let f = compiled(&FunctionSpec::indicator(e));
    assert!((phi(&f, DiskPoint::origin()).unwrap() - m * (1.0 - m)).abs() < 1e-14);
}

#[test]
fn identity_norm_and_sampled_agree() {
    let g = make_grid(10).unwrap();
    let cfg = SearchConfig::default();
    let sym = garsia_norm(&compiled(&FunctionSpec::Identity), &cfg).unwrap();
    let smp = garsia_norm(&sample(&FunctionSpec::Identity, g).unwrap(), &cfg).unwrap();
    assert_eq!(sym.attained, Verdict::Attained);
    assert!((sym.lower_bound - smp.lower_bound).abs() < 1e-12);
}
