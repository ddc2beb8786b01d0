//! Garsia functions, Garsia norms and G-extremality on the unit disk.
//!
//! Boundary functions live on an equispaced grid of the circle
//! ([`boundary`]); their harmonic extensions come from [`poisson`]. The
//! Garsia function `Φ_f(z) = P(|f|^2)(z) - |Pf(z)|^2` and the norm
//! `‖f‖_G = sup √Φ_f` are in [`garsia`]. [`factorization`] supplies
//! Blaschke, singular and outer functions, [`extremal`] the G-extremality
//! criteria and constructions, and [`geometry`] the unit-ball experiments.
//!
//! ```
//! use garsia::boundary::{make_grid, FunctionSpec};
//! use garsia::garsia::{garsia_norm, SearchConfig, SpecFunction, Verdict};
//!
//! let f = SpecFunction::compile(&FunctionSpec::Identity, make_grid(10)?)?;
//! let est = garsia_norm(&f, &SearchConfig::default())?;
//! assert!((est.lower_bound - 1.0).abs() < 1e-12);
//! assert_eq!(est.attained, Verdict::Attained);
//! # Ok::<(), garsia::error::Error>(())
//! ```

mod fft;

pub mod boundary;
pub mod error;
pub mod extremal;
pub mod factorization;
pub mod garsia;
pub mod geometry;
pub mod poisson;

pub use error::{Error, Result};

// The guide's snippets run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/specs.md")]
    mod specs {}
    #[doc = include_str!("../../../book/src/garsia_function.md")]
    mod garsia_function {}
    #[doc = include_str!("../../../book/src/norm_search.md")]
    mod norm_search {}
    #[doc = include_str!("../../../book/src/factorization.md")]
    mod factorization {}
    #[doc = include_str!("../../../book/src/extremality.md")]
    mod extremality {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
