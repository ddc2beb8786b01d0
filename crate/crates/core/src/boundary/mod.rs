//! Sampled and symbolic functions on the unit circle `T` with normalized arc length `m`.

mod arcs;
mod function;
mod grid;
mod spec;

pub use arcs::{arc_measure, ArcSet, CircleArc, StepFunction};
pub use function::{combine, fourier_coeffs, BoundaryFunction, CombineOp, Spectrum};
pub use grid::{make_grid, CircleGrid};
pub use spec::{parse_spec, sample, FunctionSpec};
pub(crate) use spec::scalar;
