//! Route selection for [`FunctionSpec`]s.
//!
//! `Pf(z)` and `P(|f|^2)(z)` are evaluated in closed form whenever the tree
//! allows it: analytic leaves by their formulas, step functions by harmonic
//! measure, trigonometric polynomials by their multipliers. Anything else is
//! sampled on the grid and extended spectrally, for both parts at once, so
//! the two averages always come from the same representation.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::{sampled_circle, sampled_limit, sampled_parts, GarsiaSource, PhiParts};
use crate::boundary::{sample, BoundaryFunction, CircleGrid, FunctionSpec, StepFunction};
use crate::error::Result;
use crate::factorization::{
    blaschke_eval, singular_eval, BlaschkeSpec, OuterFunction, OuterSpec, SingularSpec,
};
use crate::poisson::{BoundaryField, DiskPoint};

#[derive(Debug, Clone)]
enum Analytic {
    Poly(Vec<Complex64>),
    Blaschke(BlaschkeSpec),
    Singular(SingularSpec),
    Outer(Arc<OuterFunction>),
    Product(Vec<Analytic>),
    Sum(Vec<(Complex64, Analytic)>),
}

impl Analytic {
    fn eval(&self, z: DiskPoint) -> Complex64 {
        match self {
            Analytic::Poly(c) => {
                let zc = z.to_complex();
                c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * zc + a)
            }
            Analytic::Blaschke(b) => blaschke_eval(b, z),
            Analytic::Singular(s) => singular_eval(s, z),
            Analytic::Outer(o) => o.eval(z),
            Analytic::Product(fs) => fs.iter().map(|f| f.eval(z)).product(),
            Analytic::Sum(ts) => ts.iter().map(|(c, f)| c * f.eval(z)).sum(),
        }
    }

    /// Coefficients when the tree is built from polynomials alone.
    fn poly_coeffs(&self) -> Option<Vec<Complex64>> {
        let zero = Complex64::new(0.0, 0.0);
        match self {
            Analytic::Poly(c) => Some(c.clone()),
            Analytic::Product(fs) => fs.iter().try_fold(vec![Complex64::new(1.0, 0.0)], |acc, f| {
                let c = f.poly_coeffs()?;
                let mut out = vec![zero; acc.len() + c.len() - 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in c.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                Some(out)
            }),
            Analytic::Sum(ts) => ts.iter().try_fold(vec![zero], |mut acc, (k, f)| {
                let c = f.poly_coeffs()?;
                if c.len() > acc.len() {
                    acc.resize(c.len(), zero);
                }
                for (a, b) in acc.iter_mut().zip(&c) {
                    *a += k * b;
                }
                Some(acc)
            }),
            _ => None,
        }
    }

    fn radius_limit(&self) -> f64 {
        match self {
            Analytic::Outer(o) => o.radius_limit(),
            Analytic::Product(fs) => fs.iter().map(Analytic::radius_limit).fold(1.0, f64::min),
            Analytic::Sum(ts) => ts.iter().map(|t| t.1.radius_limit()).fold(1.0, f64::min),
            _ => 1.0,
        }
    }
}

#[derive(Debug, Clone)]
enum PfNode {
    Harmonic(BoundaryField),
    Analytic(Analytic),
    AntiAnalytic(Analytic),
    Lin(Vec<(Complex64, PfNode)>),
}

impl PfNode {
    fn eval(&self, z: DiskPoint) -> Complex64 {
        match self {
            PfNode::Harmonic(f) => f.extend(z),
            PfNode::Analytic(a) => a.eval(z),
            PfNode::AntiAnalytic(a) => a.eval(z).conj(),
            PfNode::Lin(ts) => ts.iter().map(|(c, n)| c * n.eval(z)).sum(),
        }
    }

    fn radius_limit(&self) -> f64 {
        match self {
            PfNode::Harmonic(f) => f.radius_limit(),
            PfNode::Analytic(a) | PfNode::AntiAnalytic(a) => a.radius_limit(),
            PfNode::Lin(ts) => ts.iter().map(|t| t.1.radius_limit()).fold(1.0, f64::min),
        }
    }

    fn conj(self) -> Self {
        match self {
            PfNode::Harmonic(f) => PfNode::Harmonic(f.conj()),
            PfNode::Analytic(a) => PfNode::AntiAnalytic(a),
            PfNode::AntiAnalytic(a) => PfNode::Analytic(a),
            PfNode::Lin(ts) => PfNode::Lin(ts.into_iter().map(|(c, n)| (c.conj(), n.conj())).collect()),
        }
    }

    fn as_analytic(&self) -> Option<Analytic> {
        match self {
            PfNode::Analytic(a) => Some(a.clone()),
            PfNode::Harmonic(f) => f.analytic_coeffs().map(Analytic::Poly),
            PfNode::AntiAnalytic(_) => None,
            PfNode::Lin(ts) => ts
                .iter()
                .map(|(c, n)| n.as_analytic().map(|a| (*c, a)))
                .collect::<Option<Vec<_>>>()
                .map(Analytic::Sum),
        }
    }

    fn as_anti_analytic(&self) -> Option<Analytic> {
        self.clone().conj().as_analytic()
    }

    fn as_field(&self) -> Option<BoundaryField> {
        match self {
            PfNode::Harmonic(f) => Some(f.clone()),
            PfNode::Analytic(a) => a.poly_coeffs().map(|c| poly_field(&c)),
            PfNode::AntiAnalytic(a) => a.poly_coeffs().map(|c| poly_field(&c).conj()),
            PfNode::Lin(ts) => {
                let mut acc = BoundaryField::Const(Complex64::new(0.0, 0.0));
                for (c, n) in ts {
                    acc = acc.add(&n.as_field()?.scale(*c))?;
                }
                Some(acc)
            }
        }
    }
}

fn poly_field(c: &[Complex64]) -> BoundaryField {
    BoundaryField::trig(c.iter().enumerate().map(|(k, v)| (k as i64, *v)))
}

fn sqrt_field(f: &BoundaryField) -> Option<BoundaryField> {
    let root = |v: Complex64| Complex64::from(v.re.max(0.0).sqrt());
    match f {
        BoundaryField::Const(c) => Some(BoundaryField::Const(root(*c))),
        BoundaryField::Steps(s) => Some(BoundaryField::Steps(s.map(root))),
        BoundaryField::Sampled(s) => Some(BoundaryField::Sampled(s.map(root))),
        BoundaryField::Trig(_) => None,
    }
}

struct Compiler {
    grid: CircleGrid,
    outers: HashMap<*const OuterSpec, Arc<OuterFunction>>,
}

impl Compiler {
    fn outer(&mut self, spec: &OuterSpec) -> Result<Arc<OuterFunction>> {
        if let Some(o) = self.outers.get(&(spec as *const _)) {
            return Ok(o.clone());
        }
        let o = Arc::new(OuterFunction::resolve(spec, self.grid)?);
        self.outers.insert(spec as *const _, o.clone());
        Ok(o)
    }

    fn pf(&mut self, spec: &FunctionSpec) -> Result<Option<PfNode>> {
        Ok(match spec {
            FunctionSpec::Indicator { arcs } => {
                Some(PfNode::Harmonic(BoundaryField::Steps(StepFunction::indicator(arcs))))
            }
            FunctionSpec::Constant { c } => Some(PfNode::Harmonic(BoundaryField::Const(*c))),
            FunctionSpec::Identity => Some(PfNode::Analytic(Analytic::Poly(vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ]))),
            FunctionSpec::Blaschke(b) => Some(PfNode::Analytic(Analytic::Blaschke(b.clone()))),
            FunctionSpec::Singular(s) => Some(PfNode::Analytic(Analytic::Singular(s.clone()))),
            FunctionSpec::Outer(o) => Some(PfNode::Analytic(Analytic::Outer(self.outer(o)?))),
            FunctionSpec::Sum { terms } => {
                let mut nodes = Vec::with_capacity(terms.len());
                for t in terms {
                    match self.pf(t)? {
                        Some(n) => nodes.push((Complex64::new(1.0, 0.0), n)),
                        None => return Ok(None),
                    }
                }
                Some(PfNode::Lin(nodes))
            }
            FunctionSpec::Scale { c, spec } => self.pf(spec)?.map(|n| PfNode::Lin(vec![(*c, n)])),
            FunctionSpec::Product { factors } => {
                let mut nodes = Vec::with_capacity(factors.len());
                for f in factors {
                    match self.pf(f)? {
                        Some(n) => nodes.push(n),
                        None => return Ok(None),
                    }
                }
                product_node(&nodes)
            }
            FunctionSpec::Conjugate { spec } => self.pf(spec)?.map(PfNode::conj),
            FunctionSpec::Modulus { spec } => self
                .abs_sq(spec)?
                .as_ref()
                .and_then(sqrt_field)
                .map(PfNode::Harmonic),
        })
    }

    fn abs_sq(&mut self, spec: &FunctionSpec) -> Result<Option<BoundaryField>> {
        let one = || BoundaryField::Const(Complex64::new(1.0, 0.0));
        Ok(match spec {
            FunctionSpec::Constant { c } => Some(BoundaryField::Const(Complex64::from(c.norm_sqr()))),
            FunctionSpec::Identity | FunctionSpec::Blaschke(_) | FunctionSpec::Singular(_) => Some(one()),
            FunctionSpec::Indicator { arcs } => Some(BoundaryField::Steps(StepFunction::indicator(arcs))),
            FunctionSpec::Outer(o) => Some(self.outer(o)?.eta_sq_field()),
            FunctionSpec::Scale { c, spec } => self
                .abs_sq(spec)?
                .map(|f| f.scale(Complex64::from(c.norm_sqr()))),
            FunctionSpec::Conjugate { spec } | FunctionSpec::Modulus { spec } => self.abs_sq(spec)?,
            FunctionSpec::Product { factors } => {
                let mut acc = one();
                for f in factors {
                    match self.abs_sq(f)?.and_then(|g| acc.mul(&g)) {
                        Some(next) => acc = next,
                        None => return Ok(None),
                    }
                }
                Some(acc)
            }
            FunctionSpec::Sum { .. } => self
                .pf(spec)?
                .and_then(|n| n.as_field())
                .map(|f| f.abs_sq()),
        })
    }
}

fn product_node(nodes: &[PfNode]) -> Option<PfNode> {
    if let Some(fs) = nodes.iter().map(PfNode::as_analytic).collect::<Option<Vec<_>>>() {
        let prod = Analytic::Product(fs);
        return Some(PfNode::Analytic(match prod.poly_coeffs() {
            Some(c) => Analytic::Poly(c),
            None => prod,
        }));
    }
    if let Some(fs) = nodes.iter().map(PfNode::as_field).collect::<Option<Vec<_>>>() {
        let mut acc = BoundaryField::Const(Complex64::new(1.0, 0.0));
        for f in &fs {
            acc = acc.mul(f)?;
        }
        return Some(PfNode::Harmonic(acc));
    }
    nodes
        .iter()
        .map(PfNode::as_anti_analytic)
        .collect::<Option<Vec<_>>>()
        .map(|fs| PfNode::AntiAnalytic(Analytic::Product(fs)))
}

fn is_constant_valued(spec: &FunctionSpec) -> bool {
    match spec {
        FunctionSpec::Constant { .. } => true,
        FunctionSpec::Scale { spec, .. } | FunctionSpec::Conjugate { spec } => is_constant_valued(spec),
        FunctionSpec::Sum { terms } => terms.iter().all(is_constant_valued),
        FunctionSpec::Product { factors } => factors.iter().all(is_constant_valued),
        _ => false,
    }
}

/// Drops additive constants at the top of the tree; `Φ` does not see them.
fn strip_constants(spec: &FunctionSpec) -> FunctionSpec {
    match spec {
        FunctionSpec::Sum { terms } => {
            let mut kept: Vec<FunctionSpec> = terms
                .iter()
                .filter(|t| !is_constant_valued(t))
                .map(strip_constants)
                .collect();
            match kept.len() {
                0 => FunctionSpec::constant(0.0),
                1 => kept.pop().unwrap(),
                _ => FunctionSpec::sum(kept),
            }
        }
        FunctionSpec::Scale { c, spec } => FunctionSpec::scale(*c, strip_constants(spec)),
        FunctionSpec::Conjugate { spec } => FunctionSpec::conjugate(strip_constants(spec)),
        s if is_constant_valued(s) => FunctionSpec::constant(0.0),
        s => s.clone(),
    }
}

#[derive(Debug, Clone)]
enum Route {
    Symbolic { pf: PfNode, abs_sq: BoundaryField },
    Sampled(BoundaryFunction),
}

/// A [`FunctionSpec`] prepared for evaluating `Φ`.
#[derive(Debug, Clone)]
pub struct SpecFunction {
    spec: FunctionSpec,
    grid: CircleGrid,
    route: Route,
    sup: f64,
    limit: f64,
}

impl SpecFunction {
    pub fn compile(spec: &FunctionSpec, grid: CircleGrid) -> Result<Self> {
        let mut c = Compiler {
            grid,
            outers: HashMap::new(),
        };
        let stripped = strip_constants(spec);
        let route = match (c.pf(&stripped)?, c.abs_sq(&stripped)?) {
            (Some(pf), Some(abs_sq)) => Route::Symbolic { pf, abs_sq },
            _ => Route::Sampled(sample(&stripped, grid)?),
        };
        let sup = match c.abs_sq(spec)? {
            Some(f) => f.sup_norm().max(0.0).sqrt(),
            None => sample(spec, grid)?.sup_norm(),
        };
        let limit = match &route {
            Route::Symbolic { pf, abs_sq } => pf.radius_limit().min(abs_sq.radius_limit()),
            Route::Sampled(f) => sampled_limit(f),
        };
        Ok(Self {
            spec: spec.clone(),
            grid,
            route,
            sup,
            limit,
        })
    }

    pub fn spec(&self) -> &FunctionSpec {
        &self.spec
    }

    /// Whether both Poisson averages are computed in closed form.
    pub fn is_symbolic(&self) -> bool {
        matches!(self.route, Route::Symbolic { .. })
    }

    /// `Pf(z)` with additive constants removed.
    pub fn poisson(&self, z: DiskPoint) -> Complex64 {
        match &self.route {
            Route::Symbolic { pf, .. } => pf.eval(z),
            Route::Sampled(f) => crate::poisson::spectral_eval(f.spectrum(), z),
        }
    }
}

/// `|f|^2` as a field with a closed-form Poisson extension, if the `FunctionSpec` allows one.
pub fn abs_sq_field(spec: &FunctionSpec, grid: CircleGrid) -> Result<Option<BoundaryField>> {
    Compiler {
        grid,
        outers: HashMap::new(),
    }
    .abs_sq(spec)
}

/// Compiled analytic function.
#[derive(Debug, Clone)]
pub struct AnalyticFunction(Analytic);

impl AnalyticFunction {
    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        self.0.eval(z)
    }

    pub fn radius_limit(&self) -> f64 {
        self.0.radius_limit()
    }
}

/// Compiles `spec` as an analytic function, if it is one.
pub fn analytic_fn(spec: &FunctionSpec, grid: CircleGrid) -> Result<Option<AnalyticFunction>> {
    let mut c = Compiler {
        grid,
        outers: HashMap::new(),
    };
    Ok(c.pf(spec)?.and_then(|n| n.as_analytic()).map(AnalyticFunction))
}

impl GarsiaSource for SpecFunction {
    fn grid(&self) -> CircleGrid {
        self.grid
    }

    fn phi_parts(&self, z: DiskPoint) -> PhiParts {
        match &self.route {
            Route::Symbolic { pf, abs_sq } => PhiParts {
                a: abs_sq.extend(z).re,
                b: pf.eval(z).norm_sqr(),
            },
            Route::Sampled(f) => sampled_parts(f, z),
        }
    }

    fn phi_circle(&self, r: f64, n_theta: usize) -> Vec<PhiParts> {
        match &self.route {
            Route::Symbolic { pf, abs_sq } => {
                let a = abs_sq.extend_circle(r, n_theta);
                a.iter()
                    .enumerate()
                    .map(|(j, a)| PhiParts {
                        a: a.re,
                        b: pf
                            .eval(DiskPoint::raw(r, std::f64::consts::TAU * j as f64 / n_theta as f64))
                            .norm_sqr(),
                    })
                    .collect()
            }
            Route::Sampled(f) => sampled_circle(f, r, n_theta),
        }
    }

    fn radius_limit(&self) -> f64 {
        self.limit
    }

    fn sup_norm(&self) -> f64 {
        self.sup
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{make_grid, ArcSet};
    use crate::factorization::Eta;
    use crate::garsia::phi;
    use crate::poisson::harmonic_measure;
    use std::f64::consts::PI;

    fn dp(r: f64, t: f64) -> DiskPoint {
        DiskPoint::new(r, t).unwrap()
    }

    #[test]
    fn routes() {
        let g = make_grid(10).unwrap();
        let sym = |s: &FunctionSpec| SpecFunction::compile(s, g).unwrap().is_symbolic();
        assert!(sym(&FunctionSpec::Identity));
        assert!(sym(&FunctionSpec::half_plus()));
        let e = FunctionSpec::indicator(ArcSet::new([(0.0, 1.0)]).unwrap());
        assert!(sym(&e));
        let b = FunctionSpec::Blaschke(BlaschkeSpec::new(vec![dp(0.5, 1.0)]));
        assert!(sym(&FunctionSpec::product(vec![b.clone(), FunctionSpec::half_plus()])));
        assert!(!sym(&FunctionSpec::sum(vec![b.clone(), e.clone()])));
        assert!(!sym(&FunctionSpec::product(vec![FunctionSpec::Identity, e])));
        assert!(sym(&FunctionSpec::conjugate(b)));
    }

    #[test]
    fn indicator_matches_chi_formula_near_boundary() {
        let g = make_grid(10).unwrap();
        let arcs = ArcSet::new([(0.2, 1.3), (3.0, 4.5)]).unwrap();
        let f = SpecFunction::compile(&FunctionSpec::indicator(arcs.clone()), g).unwrap();
        for &(r, t) in &[(0.0, 0.0), (0.7, 1.0), (0.999999, 0.5), (0.9999, 3.2)] {
            let z = dp(r, t);
            let w = harmonic_measure(z, &arcs);
            assert!((phi(&f, z).unwrap() - w * (1.0 - w)).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_inner_identity_to_the_boundary() {
        let g = make_grid(10).unwrap();
        let s = SingularSpec::new(vec![(0.0, 1.0)]).unwrap();
        let f = SpecFunction::compile(&FunctionSpec::Singular(s.clone()), g).unwrap();
        for &(r, t) in &[(0.3, 0.0), (0.99, 0.01), (1.0 - 1e-6, 0.0)] {
            let z = dp(r, t);
            let want = 1.0 - singular_eval(&s, z).norm_sqr();
            assert_eq!(phi(&f, z).unwrap(), want);
        }
    }

    #[test]
    fn polynomial_trees_stay_symbolic() {
        let g = make_grid(10).unwrap();
        let id = FunctionSpec::Identity;
        let p = FunctionSpec::sum(vec![id.clone(), FunctionSpec::product(vec![id.clone(), id])]);
        let s = FunctionSpec::Singular(SingularSpec::new(vec![(1.0, 0.5)]).unwrap());
        let f = SpecFunction::compile(&FunctionSpec::product(vec![s, p]), g).unwrap();
        assert!(f.is_symbolic());
        // |z + z^2|^2 has mean 2 on the circle.
        assert!((f.phi_parts(DiskPoint::origin()).a - 2.0).abs() < 1e-14);
    }

    #[test]
    fn constants_are_stripped() {
        let g = make_grid(10).unwrap();
        let f = FunctionSpec::Identity;
        let plus = FunctionSpec::sum(vec![f.clone(), FunctionSpec::scale(-1.0, FunctionSpec::constant(5.0))]);
        let a = SpecFunction::compile(&f, g).unwrap();
        let b = SpecFunction::compile(&plus, g).unwrap();
        let z = dp(0.4, 2.0);
        assert_eq!(phi(&a, z).unwrap(), phi(&b, z).unwrap());
        assert_eq!(b.sup_norm(), 6.0);
    }

    #[test]
    fn outer_halfplus_phi() {
        let g = make_grid(10).unwrap();
        let o = FunctionSpec::Outer(OuterSpec::new(Eta::Halfplus));
        let f = SpecFunction::compile(&o, g).unwrap();
        let z = dp(0.6, PI / 3.0);
        assert!((phi(&f, z).unwrap() - (1.0 - 0.36) / 4.0).abs() < 1e-15);
        let p = SpecFunction::compile(&FunctionSpec::half_plus(), g).unwrap();
        assert!((phi(&p, z).unwrap() - (1.0 - 0.36) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn analytic_values() {
        let g = make_grid(8).unwrap();
        let z = dp(0.5, 0.0);
        let v = analytic_fn(&FunctionSpec::half_plus(), g).unwrap().unwrap().eval(z);
        assert!((v - Complex64::new(0.75, 0.0)).norm() < 1e-16);
        let e = FunctionSpec::indicator(ArcSet::new([(0.0, 1.0)]).unwrap());
        assert!(analytic_fn(&e, g).unwrap().is_none());
    }
}
