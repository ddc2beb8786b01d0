use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{ArcSet, BoundaryFunction, CircleGrid};
use crate::error::{Error, Result};
use crate::factorization::{
    blaschke_eval, singular_eval, BlaschkeSpec, Eta, OuterFunction, OuterSpec, SingularSpec,
};
use crate::poisson::DiskPoint;

/// Symbolic description of a boundary function.
///
/// JSON form is tagged by `"type"`, e.g.
/// `{"type":"product","factors":[{"type":"blaschke","zeros":[[0.5,0.0]]},{"type":"outer","eta":{"type":"halfplus"}}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FunctionSpec {
    Indicator {
        arcs: ArcSet,
    },
    Blaschke(BlaschkeSpec),
    Singular(SingularSpec),
    Outer(OuterSpec),
    Constant {
        #[serde(with = "scalar")]
        c: Complex64,
    },
    Identity,
    Sum {
        terms: Vec<FunctionSpec>,
    },
    Product {
        factors: Vec<FunctionSpec>,
    },
    Scale {
        #[serde(with = "scalar")]
        c: Complex64,
        spec: Box<FunctionSpec>,
    },
    Conjugate {
        spec: Box<FunctionSpec>,
    },
    Modulus {
        spec: Box<FunctionSpec>,
    },
}

impl FunctionSpec {
    pub fn constant(c: impl Into<Complex64>) -> Self {
        FunctionSpec::Constant { c: c.into() }
    }

    pub fn indicator(arcs: ArcSet) -> Self {
        FunctionSpec::Indicator { arcs }
    }

    pub fn sum(terms: Vec<FunctionSpec>) -> Self {
        FunctionSpec::Sum { terms }
    }

    pub fn product(factors: Vec<FunctionSpec>) -> Self {
        FunctionSpec::Product { factors }
    }

    pub fn scale(c: impl Into<Complex64>, spec: FunctionSpec) -> Self {
        FunctionSpec::Scale {
            c: c.into(),
            spec: Box::new(spec),
        }
    }

    pub fn conjugate(spec: FunctionSpec) -> Self {
        FunctionSpec::Conjugate {
            spec: Box::new(spec),
        }
    }

    pub fn modulus(spec: FunctionSpec) -> Self {
        FunctionSpec::Modulus {
            spec: Box::new(spec),
        }
    }

    /// `(1+z)/2` as a polynomial.
    pub fn half_plus() -> Self {
        Self::sum(vec![
            Self::constant(0.5),
            Self::scale(0.5, FunctionSpec::Identity),
        ])
    }

    /// Checks leaf invariants; errors name the offending JSON path.
    pub fn validate(&self) -> Result<()> {
        self.validate_at("$")
    }

    fn validate_at(&self, path: &str) -> Result<()> {
        let bad = |field: &str, message: String| Error::Parse {
            path: format!("{path}.{field}"),
            message,
        };
        match self {
            FunctionSpec::Blaschke(b) => {
                if (b.unimodular_const.norm() - 1.0).abs() > 1e-12 {
                    return Err(bad(
                        "constant",
                        format!("|c| = {} is not 1", b.unimodular_const.norm()),
                    ));
                }
            }
            FunctionSpec::Singular(s) => {
                if let Err(e) = s.check() {
                    return Err(bad("atoms", e.to_string()));
                }
            }
            FunctionSpec::Outer(o) => {
                if !(o.floor > 0.0 && o.floor.is_finite()) {
                    return Err(bad("floor", format!("{} is not positive", o.floor)));
                }
                match &o.eta {
                    Eta::Modulus { spec } => spec.validate_at(&format!("{path}.eta.spec"))?,
                    Eta::Samples { values } => {
                        if CircleGrid::new(values.len().trailing_zeros()).is_err()
                            || !values.len().is_power_of_two()
                        {
                            return Err(bad(
                                "eta.values",
                                format!("{} samples is not a valid grid size", values.len()),
                            ));
                        }
                    }
                    Eta::Section5 { k } if *k == 0 => {
                        return Err(bad("eta.k", "must be at least 1".into()));
                    }
                    _ => {}
                }
            }
            FunctionSpec::Sum { terms } => {
                for (i, t) in terms.iter().enumerate() {
                    t.validate_at(&format!("{path}.terms[{i}]"))?;
                }
            }
            FunctionSpec::Product { factors } => {
                for (i, t) in factors.iter().enumerate() {
                    t.validate_at(&format!("{path}.factors[{i}]"))?;
                }
            }
            FunctionSpec::Scale { spec, .. }
            | FunctionSpec::Conjugate { spec }
            | FunctionSpec::Modulus { spec } => spec.validate_at(&format!("{path}.spec"))?,
            FunctionSpec::Indicator { .. }
            | FunctionSpec::Constant { .. }
            | FunctionSpec::Identity => {}
        }
        Ok(())
    }

    /// Canonical JSON: compact, fields in declaration order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }
}

/// Parses and validates a JSON spec. Errors carry the JSON path of the problem.
pub fn parse_spec(json: &str) -> Result<FunctionSpec> {
    let value: Value = serde_json::from_str(json).map_err(|e| Error::Parse {
        path: "$".into(),
        message: e.to_string(),
    })?;
    let spec = from_value(value, "$")?;
    spec.validate()?;
    Ok(spec)
}

fn parse_err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Deserializes a leaf, extending `path` with the location serde reports.
fn leaf<T: DeserializeOwned>(v: Value, path: &str) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        parse_err(
            &if inner == "." { path.to_string() } else { format!("{path}.{inner}") },
            e.inner().to_string(),
        )
    })
}

fn take(map: &mut Map<String, Value>, key: &str, path: &str) -> Result<Value> {
    map.remove(key)
        .ok_or_else(|| parse_err(path, format!("missing field `{key}`")))
}

fn spec_box(map: &mut Map<String, Value>, path: &str) -> Result<Box<FunctionSpec>> {
    let v = take(map, "spec", path)?;
    Ok(Box::new(from_value(v, &format!("{path}.spec"))?))
}

fn spec_list(map: &mut Map<String, Value>, key: &str, path: &str) -> Result<Vec<FunctionSpec>> {
    match take(map, key, path)? {
        Value::Array(items) => items
            .into_iter()
            .enumerate()
            .map(|(i, v)| from_value(v, &format!("{path}.{key}[{i}]")))
            .collect(),
        _ => Err(parse_err(&format!("{path}.{key}"), "expected an array")),
    }
}

/// Walks the tagged tree by hand: serde's internally tagged enums buffer
/// their content, which loses the path of nested errors.
fn from_value(v: Value, path: &str) -> Result<FunctionSpec> {
    let Value::Object(mut map) = v else {
        return Err(parse_err(path, "expected an object"));
    };
    let tag = match map.remove("type") {
        Some(Value::String(t)) => t,
        Some(_) => return Err(parse_err(&format!("{path}.type"), "expected a string")),
        None => return Err(parse_err(path, "missing field `type`")),
    };
    let rest = Value::Object(map.clone());
    Ok(match tag.as_str() {
        "sum" => FunctionSpec::Sum {
            terms: spec_list(&mut map, "terms", path)?,
        },
        "product" => FunctionSpec::Product {
            factors: spec_list(&mut map, "factors", path)?,
        },
        "scale" => FunctionSpec::Scale {
            c: scalar::from_value(take(&mut map, "c", path)?, &format!("{path}.c"))?,
            spec: spec_box(&mut map, path)?,
        },
        "conjugate" => FunctionSpec::Conjugate {
            spec: spec_box(&mut map, path)?,
        },
        "modulus" => FunctionSpec::Modulus {
            spec: spec_box(&mut map, path)?,
        },
        "constant" => FunctionSpec::Constant {
            c: scalar::from_value(take(&mut map, "c", path)?, &format!("{path}.c"))?,
        },
        "identity" => FunctionSpec::Identity,
        "indicator" => FunctionSpec::Indicator {
            arcs: leaf(take(&mut map, "arcs", path)?, &format!("{path}.arcs"))?,
        },
        "blaschke" => FunctionSpec::Blaschke(leaf(rest, path)?),
        "singular" => FunctionSpec::Singular(leaf(rest, path)?),
        "outer" => {
            let eta_path = format!("{path}.eta");
            let eta = match take(&mut map, "eta", path)? {
                Value::Object(mut e) if e.get("type") == Some(&Value::String("modulus".into())) => {
                    Eta::Modulus {
                        spec: spec_box(&mut e, &eta_path)?,
                    }
                }
                e => leaf(e, &eta_path)?,
            };
            let floor = match map.remove("floor") {
                Some(f) => leaf(f, &format!("{path}.floor"))?,
                None => OuterSpec::new(Eta::Halfplus).floor,
            };
            FunctionSpec::Outer(OuterSpec { eta, floor })
        }
        other => return Err(parse_err(&format!("{path}.type"), format!("unknown spec type `{other}`"))),
    })
}

/// Samples `spec` at the nodes of `grid`.
///
/// Blaschke leaves are evaluated on the circle itself (finite products are
/// unimodular and continuous there); singular leaves at radius
/// `1 - grid.trace_delta()`.
pub fn sample(spec: &FunctionSpec, grid: CircleGrid) -> Result<BoundaryFunction> {
    let one = Complex64::new(1.0, 0.0);
    Ok(match spec {
        FunctionSpec::Indicator { arcs } => BoundaryFunction::from_fn(grid, |t| {
            if arcs.contains(t) {
                one
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
        FunctionSpec::Blaschke(b) => {
            BoundaryFunction::from_fn(grid, |t| blaschke_eval(b, Complex64::from_polar(1.0, t)))
        }
        FunctionSpec::Singular(s) => {
            let rho = 1.0 - grid.trace_delta();
            BoundaryFunction::from_fn(grid, |t| singular_eval(s, DiskPoint::raw(rho, t)))
        }
        FunctionSpec::Outer(o) => OuterFunction::resolve(o, grid)?.boundary_trace(),
        FunctionSpec::Constant { c } => BoundaryFunction::constant(grid, *c),
        FunctionSpec::Identity => BoundaryFunction::from_fn(grid, |t| Complex64::from_polar(1.0, t)),
        FunctionSpec::Sum { terms } => {
            let mut acc: Option<BoundaryFunction> = None;
            for t in terms {
                let s = sample(t, grid)?;
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.add(&s)?,
                });
            }
            acc.unwrap_or_else(|| BoundaryFunction::constant(grid, Complex64::new(0.0, 0.0)))
        }
        FunctionSpec::Product { factors } => {
            let mut acc: Option<BoundaryFunction> = None;
            for t in factors {
                let s = sample(t, grid)?;
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.mul(&s)?,
                });
            }
            acc.unwrap_or_else(|| BoundaryFunction::constant(grid, one))
        }
        FunctionSpec::Scale { c, spec } => sample(spec, grid)?.scale(*c),
        FunctionSpec::Conjugate { spec } => sample(spec, grid)?.conj(),
        FunctionSpec::Modulus { spec } => sample(spec, grid)?.modulus(),
    })
}

/// Complex scalars as a JSON number or a `[re, im]` pair.
pub(crate) mod scalar {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Real(f64),
        Pair([f64; 2]),
    }

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        if c.im == 0.0 {
            c.re.serialize(s)
        } else {
            [c.re, c.im].serialize(s)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        Ok(match Repr::deserialize(d)? {
            Repr::Real(x) => Complex64::new(x, 0.0),
            Repr::Pair([re, im]) => Complex64::new(re, im),
        })
    }

    pub(crate) fn from_value(v: serde_json::Value, path: &str) -> crate::error::Result<Complex64> {
        deserialize(v).map_err(|e| crate::error::Error::Parse {
            path: path.to_string(),
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{fourier_coeffs, make_grid};
    use std::f64::consts::PI;

    #[test]
    fn constant_and_identity() {
        let g = make_grid(3).unwrap();
        let c = sample(&FunctionSpec::constant(Complex64::new(2.0, 1.0)), g).unwrap();
        assert!(c.values().iter().all(|v| *v == Complex64::new(2.0, 1.0)));
        let id = sample(&FunctionSpec::Identity, g).unwrap();
        for (j, v) in id.values().iter().enumerate() {
            assert!((v - Complex64::from_polar(1.0, g.angle(j))).norm() < 1e-15);
        }
    }

    #[test]
    fn indicator_half_open() {
        let g = make_grid(3).unwrap();
        let e = FunctionSpec::indicator(ArcSet::new([(0.0, PI)]).unwrap());
        let f = sample(&e, g).unwrap();
        let re: Vec<f64> = f.real_parts();
        assert_eq!(re, vec![1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let big = sample(&e, make_grid(10).unwrap()).unwrap();
        assert_eq!(fourier_coeffs(&big).coeff(0).re, 0.5);
    }

    #[test]
    fn scale_of_indicator() {
        let g = make_grid(4).unwrap();
        let e = FunctionSpec::indicator(ArcSet::new([(0.0, 1.0)]).unwrap());
        let f = sample(&FunctionSpec::scale(2.0, e), g).unwrap();
        assert_eq!(f.values()[0], Complex64::new(2.0, 0.0));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"type":"product","factors":[{"type":"blaschke","zeros":[[0.5,0.0]]},{"type":"outer","eta":{"type":"halfplus"}}]}"#;
        let spec = parse_spec(text).unwrap();
        let again = parse_spec(&spec.to_json()).unwrap();
        assert_eq!(spec, again);
        assert_eq!(again.to_json(), spec.to_json());

        let c = parse_spec(r#"{"type":"constant","c":[1.0,-2.0]}"#).unwrap();
        assert_eq!(c, FunctionSpec::constant(Complex64::new(1.0, -2.0)));
    }

    #[test]
    fn parse_errors_are_path_scoped() {
        let err = parse_spec(r#"{"type":"sum","terms":[{"type":"identity"},{"type":"blaschke","zeros":[[1.5,0.0]]}]}"#)
            .unwrap_err();
        let Error::Parse { path, .. } = err else {
            panic!("{err}")
        };
        assert!(path.starts_with("$.terms[1]"), "{path}");

        let err = parse_spec(r#"{"type":"singular","atoms":[[0.0,-1.0]]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref path, .. } if path == "$.atoms"));
        assert!(parse_spec(r#"{"type":"nope"}"#).is_err());
    }
}
