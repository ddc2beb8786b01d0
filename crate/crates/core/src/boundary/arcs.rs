use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half-open angular interval `[start, end)` with `0 ≤ start < end ≤ 2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleArc {
    pub start: f64,
    pub end: f64,
}

impl CircleArc {
    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, angle: f64) -> bool {
        let t = angle.rem_euclid(TAU);
        t >= self.start && t < self.end
    }
}

/// Finite union of pairwise disjoint arcs, stored sorted by start angle.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct ArcSet {
    arcs: Vec<CircleArc>,
}

const OVERLAP_TOL: f64 = 1e-15;

impl ArcSet {
    /// Builds an arc set from `[α, β)` pairs in radians.
    ///
    /// Pairs may be given in any window (e.g. `[-0.1, 0.1)`); they are wrapped
    /// into `[0, 2π)` and split at `0` when necessary. Overlaps are rejected.
    pub fn new(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut arcs = Vec::new();
        for (a, b) in pairs {
            if !(a.is_finite() && b.is_finite()) || b <= a {
                return Err(Error::param("arcs", format!("[{a}, {b}) is not an arc")));
            }
            if b - a > TAU + 1e-12 {
                return Err(Error::param("arcs", format!("[{a}, {b}) exceeds a full turn")));
            }
            if b - a >= TAU {
                arcs.push(CircleArc { start: 0.0, end: TAU });
                continue;
            }
            let start = a.rem_euclid(TAU);
            let end = start + (b - a);
            if end <= TAU {
                arcs.push(CircleArc { start, end });
            } else {
                arcs.push(CircleArc { start, end: TAU });
                arcs.push(CircleArc {
                    start: 0.0,
                    end: b.rem_euclid(TAU),
                });
            }
        }
        arcs.sort_by(|x, y| x.start.total_cmp(&y.start));
        for w in arcs.windows(2) {
            if w[1].start < w[0].end - OVERLAP_TOL {
                return Err(Error::param(
                    "arcs",
                    format!(
                        "[{}, {}) overlaps [{}, {})",
                        w[0].start, w[0].end, w[1].start, w[1].end
                    ),
                ));
            }
        }
        Ok(Self { arcs })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self {
            arcs: vec![CircleArc {
                start: 0.0,
                end: TAU,
            }],
        }
    }

    pub fn arcs(&self) -> &[CircleArc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, angle: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(angle))
    }

    /// Normalized measure `Σ(β_i - α_i)/2π`.
    pub fn measure(&self) -> f64 {
        (self.arcs.iter().map(CircleArc::len).sum::<f64>() / TAU).min(1.0)
    }

    pub fn is_full(&self) -> bool {
        self.measure() >= 1.0
    }

    pub fn is_subset_of(&self, other: &ArcSet) -> bool {
        self.arcs.iter().all(|a| {
            other
                .arcs
                .iter()
                .any(|b| b.start <= a.start + OVERLAP_TOL && a.end <= b.end + OVERLAP_TOL)
        })
    }
}

impl TryFrom<Vec<(f64, f64)>> for ArcSet {
    type Error = Error;

    fn try_from(pairs: Vec<(f64, f64)>) -> Result<Self> {
        ArcSet::new(pairs)
    }
}

impl From<ArcSet> for Vec<(f64, f64)> {
    fn from(set: ArcSet) -> Self {
        set.arcs.iter().map(|a| (a.start, a.end)).collect()
    }
}

/// Normalized measure of an arc set.
pub fn arc_measure(arcs: &ArcSet) -> f64 {
    arcs.measure()
}

/// Piecewise-constant complex function on the circle.
///
/// `values[i]` holds on `[breaks[i], breaks[i+1])`, the last piece wrapping
/// around to `breaks[0] + 2π`. With no breaks the function is constant.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breaks: Vec<f64>,
    values: Vec<Complex64>,
}

impl StepFunction {
    pub fn constant(c: Complex64) -> Self {
        Self {
            breaks: Vec::new(),
            values: vec![c],
        }
    }

    /// `value` on the arcs of `set`, `base` elsewhere.
    pub fn on_arcs(set: &ArcSet, value: Complex64, base: Complex64) -> Self {
        Self::from_pieces(base, set.arcs().iter().map(|a| (*a, value)))
    }

    pub fn indicator(set: &ArcSet) -> Self {
        Self::on_arcs(set, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// `base` everywhere except on the given (disjoint) arcs.
    pub fn from_pieces(base: Complex64, pieces: impl IntoIterator<Item = (CircleArc, Complex64)>) -> Self {
        let mut pieces: Vec<_> = pieces.into_iter().filter(|(a, _)| !a.is_empty()).collect();
        if pieces.is_empty() {
            return Self::constant(base);
        }
        pieces.sort_by(|x, y| x.0.start.total_cmp(&y.0.start));
        let mut breaks = Vec::with_capacity(2 * pieces.len());
        let mut values = Vec::with_capacity(2 * pieces.len());
        for (k, (arc, v)) in pieces.iter().enumerate() {
            breaks.push(arc.start);
            values.push(*v);
            let next = pieces
                .get(k + 1)
                .map(|p| p.0.start)
                .unwrap_or(pieces[0].0.start + TAU);
            if arc.end < next {
                breaks.push(arc.end);
                values.push(base);
            }
        }
        let mut out = Self { breaks, values };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.breaks.is_empty() {
            self.values.truncate(1);
            return;
        }
        // Keep breaks inside [0, 2π) and sorted.
        for b in &mut self.breaks {
            if *b >= TAU {
                *b -= TAU;
            }
        }
        let mut order: Vec<usize> = (0..self.breaks.len()).collect();
        order.sort_by(|&i, &j| self.breaks[i].total_cmp(&self.breaks[j]));
        let breaks: Vec<f64> = order.iter().map(|&i| self.breaks[i]).collect();
        let values: Vec<Complex64> = order.iter().map(|&i| self.values[i]).collect();
        let mut nb = Vec::with_capacity(breaks.len());
        let mut nv: Vec<Complex64> = Vec::with_capacity(values.len());
        for (b, v) in breaks.into_iter().zip(values) {
            if let Some(last) = nv.last() {
                if *last == v {
                    continue;
                }
            }
            nb.push(b);
            nv.push(v);
        }
        if nv.len() > 1 && nv.first() == nv.last() {
            nb.remove(0);
            nv.remove(0);
        }
        if nv.len() <= 1 {
            let v = nv.first().copied().unwrap_or_default();
            *self = Self::constant(v);
            return;
        }
        self.breaks = nb;
        self.values = nv;
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_constant(&self) -> bool {
        self.breaks.is_empty()
    }

    /// Pieces as `(start, end, value)` with `end` possibly beyond `2π` for
    /// the wrapping piece.
    pub fn pieces(&self) -> Vec<(f64, f64, Complex64)> {
        if self.breaks.is_empty() {
            return vec![(0.0, TAU, self.values[0])];
        }
        let m = self.breaks.len();
        (0..m)
            .map(|i| {
                let end = if i + 1 < m {
                    self.breaks[i + 1]
                } else {
                    self.breaks[0] + TAU
                };
                (self.breaks[i], end, self.values[i])
            })
            .collect()
    }

    pub fn eval(&self, angle: f64) -> Complex64 {
        if self.breaks.is_empty() {
            return self.values[0];
        }
        let t = angle.rem_euclid(TAU);
        match self.breaks.partition_point(|&b| b <= t) {
            0 => *self.values.last().unwrap(),
            i => self.values[i - 1],
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut out = Self {
            breaks: self.breaks.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        };
        out.normalize();
        out
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let mut breaks: Vec<f64> = self.breaks.iter().chain(&other.breaks).copied().collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        if breaks.is_empty() {
            return Self::constant(f(self.values[0], other.values[0]));
        }
        let values = breaks
            .iter()
            .map(|&b| f(self.eval(b), other.eval(b)))
            .collect();
        let mut out = Self { breaks, values };
        out.normalize();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    /// `∫ f dm`.
    pub fn mean(&self) -> Complex64 {
        self.pieces()
            .iter()
            .map(|&(a, b, v)| v * ((b - a) / TAU))
            .sum()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn measures() {
        assert_eq!(arc_measure(&ArcSet::new([(0.0, PI)]).unwrap()), 0.5);
        assert_eq!(arc_measure(&ArcSet::empty()), 0.0);
        let two = ArcSet::new([(0.0, PI / 2.0), (PI, 1.5 * PI)]).unwrap();
        assert_eq!(arc_measure(&two), 0.5);
    }

    #[test]
    fn wrapping_arc_is_split() {
        let s = ArcSet::new([(-0.1, 0.1)]).unwrap();
        assert_eq!(s.arcs().len(), 2);
        assert!((s.measure() - 0.2 / TAU).abs() < 1e-16);
        assert!(s.contains(0.0) && s.contains(-0.05) && !s.contains(0.1));
    }

    #[test]
    fn overlap_rejected() {
        assert!(ArcSet::new([(0.0, 1.0), (0.5, 2.0)]).is_err());
        assert!(ArcSet::new([(1.0, 1.0)]).is_err());
        assert!(ArcSet::new([(0.0, 1.0), (1.0, 2.0)]).is_ok());
    }

    #[test]
    fn json_form() {
        let s: ArcSet = serde_json::from_str("[[0.0, 3.0], [4.0, 5.0]]").unwrap();
        assert_eq!(s.arcs().len(), 2);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[[0.0,3.0],[4.0,5.0]]");
    }

    #[test]
    fn step_function_algebra() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let a = StepFunction::indicator(&ArcSet::new([(0.0, 2.0)]).unwrap());
        let b = StepFunction::indicator(&ArcSet::new([(1.0, 3.0)]).unwrap());
        let ab = a.mul(&b);
        assert_eq!(ab.eval(0.5), zero);
        assert_eq!(ab.eval(1.5), one);
        assert_eq!(ab.eval(2.5), zero);
        assert!((ab.mean().re - 1.0 / TAU).abs() < 1e-15);

        let wrap = StepFunction::indicator(&ArcSet::new([(-0.5, 0.5)]).unwrap());
        assert_eq!(wrap.eval(6.0), one);
        assert_eq!(wrap.eval(0.2), one);
        assert_eq!(wrap.eval(1.0), zero);
        assert!(StepFunction::indicator(&ArcSet::full()).is_constant());
    }
}
