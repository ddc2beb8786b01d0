use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Equispaced nodes on the unit circle with equal weights `1/n`.
///
/// The weights are those of normalized arc length, so the grid mean of a
/// sampled function is its trapezoidal integral against `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CircleGrid {
    log2_n: u32,
}

impl CircleGrid {
    pub const DEFAULT_LOG2_N: u32 = 14;
    pub const MIN_LOG2_N: u32 = 3;
    pub const MAX_LOG2_N: u32 = 22;

    pub fn new(log2_n: u32) -> Result<Self> {
        if !(Self::MIN_LOG2_N..=Self::MAX_LOG2_N).contains(&log2_n) {
            return Err(Error::param(
                "log2_n",
                format!(
                    "{log2_n} outside [{}, {}]",
                    Self::MIN_LOG2_N,
                    Self::MAX_LOG2_N
                ),
            ));
        }
        Ok(Self { log2_n })
    }

    pub fn log2_n(&self) -> u32 {
        self.log2_n
    }

    pub fn n(&self) -> usize {
        1usize << self.log2_n
    }

    pub fn spacing(&self) -> f64 {
        TAU / self.n() as f64
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.n() as f64
    }

    pub fn angle(&self, j: usize) -> f64 {
        TAU * j as f64 / self.n() as f64
    }

    pub fn angles(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n()).map(move |j| self.angle(j))
    }

    /// Largest radius at which kernel quadrature is trusted: `1 - 16·(2π/n)`.
    pub fn r_quad_max(&self) -> f64 {
        (1.0 - 16.0 * self.spacing()).max(0.0)
    }

    /// Radial offset `8·(2π/n)` at which boundary traces of singular
    /// inner factors are sampled.
    pub fn trace_delta(&self) -> f64 {
        (8.0 * self.spacing()).min(0.5)
    }
}

impl Default for CircleGrid {
    fn default() -> Self {
        Self {
            log2_n: Self::DEFAULT_LOG2_N,
        }
    }
}

/// Builds a grid with `2^log2_n` nodes.
pub fn make_grid(log2_n: i64) -> Result<CircleGrid> {
    let log2_n = u32::try_from(log2_n)
        .map_err(|_| Error::param("log2_n", format!("{log2_n} is negative or too large")))?;
    CircleGrid::new(log2_n)
}
