//! Singular eigensolutions of the Laplace equation in a corner with a
//! Dirichlet side and a Robin side whose coefficient varies as `gamma r^alpha`.
//!
//! The solution near the tip is a main term `r^lambda sin(lambda theta)` plus
//! shadow terms that repair the Robin condition step by step. Whether that
//! series stops, grows logarithms, converges, or carries finite energy is
//! decided exactly from `rho = (omega/pi)(alpha+1)`.
//!
//! ```
//! use robin_corner::exactq::{Approach, CornerConfig, Rational, SeriesKind, classify};
//! use robin_corner::series::build_series;
//!
//! let c = CornerConfig::exact("1/2".parse()?, "3/2".parse()?, 1.0, Approach::DirichletNeumann)?;
//! assert_eq!(classify(&c, 1)?.series_kind, SeriesKind::FiniteExact { last: 2 });
//! let s = build_series(&c, 1, 25)?;
//! assert!((s.terms[2].coeffs[0] - 1.0 / 21.0).abs() < 1e-14);
//! # Ok::<(), robin_corner::Error>(())
//! ```

mod error;

pub mod crack;
pub mod energy;
pub mod eval;
pub mod exactq;
pub mod series;

pub use error::Error;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/energy.md")]
    mod energy {}
    #[doc = include_str!("../../../book/src/closed-form.md")]
    mod closed_form {}
}
