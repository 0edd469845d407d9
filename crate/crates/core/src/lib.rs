//! Quaternionic perturbation theory for bound states.
//!
//! A real anti-Hermitian coupling `j alpha W` added to `i H` shifts each level
//! `E0` to `sgn(E0) sqrt(E0^2 + alpha^2 |W|^2)`. The crate provides the
//! quaternion algebra and its complex embedding, the perturbation series with
//! its convergence radius, three textbook models, the hydrogen comparison with
//! the relativistic correction, and a finite-difference eigenvalue oracle.
//!
//! ```
//! use quatpert::{series, PerturbationSpec};
//!
//! let spec = PerturbationSpec::with_modulus(1.0, 1.0, 0.5).unwrap();
//! let eval = series::perturbed_energy(&spec, 40).unwrap();
//! assert!((eval.value() - 1.25f64.sqrt()).abs() < 1e-12);
//! ```

pub mod error;
pub mod models;
pub mod oracle;
pub mod quaternion;
pub mod relativistic;
pub mod series;

pub use error::{Error, Result};
pub use models::{LevelSpec, ModelKind};
pub use quaternion::{Quaternion, SymplecticPair};
pub use series::{PerturbationSpec, SeriesEvaluation};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quaternions.md")]
    mod quaternions {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/relativistic.md")]
    mod relativistic {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
