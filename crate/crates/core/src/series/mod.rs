//! Main terms, shadow terms and the series builder.
//!
//! A term `u^(k)` is stored as its exponent and the coefficients
//! `a^(0..=L)` of
//!
//! ```text
//! u^(k) = r^e  sum_m log^m r  sum_{l>=m} a^(l) C(l,m) theta^(l-m) sin(e theta + pi (l-m)/2)
//! ```

mod json;
mod system;

pub use json::SeriesDocument;
pub use system::{augments, build_system_direct, build_system_recursive, solve_triangular, TriangularSystem};
pub(crate) use system::binomial;

use crate::exactq::{classify, Approach, CornerConfig, SeriesKind};
use crate::Error;

pub const DEFAULT_MAX_TERMS: u32 = 25;

/// Relative size below which a freshly solved coefficient vector counts as zero.
pub const ZERO_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct ShadowTerm {
    pub k: u32,
    pub exponent: f64,
    /// `a^(0..=L)`; `L = coeffs.len() - 1`.
    pub coeffs: Vec<f64>,
    /// This step added a log power (then `coeffs[0] == 0`).
    pub augmented: bool,
}

impl ShadowTerm {
    pub fn log_degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeriesStatus {
    /// `k = last` is the final nonzero term; the next vector vanished.
    Terminated { last: u32 },
    /// Stopped after `at` stored terms.
    Truncated { at: u32 },
    ClosedForm { lambda: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticSeries {
    pub j: u32,
    pub config: CornerConfig,
    pub terms: Vec<ShadowTerm>,
    pub status: SeriesStatus,
}

impl AsymptoticSeries {
    /// Index of the last stored term.
    pub fn last_k(&self) -> u32 {
        self.terms.last().map_or(0, |t| t.k)
    }

    /// The series cut after term `last`. Status becomes `Truncated` unless
    /// nothing is dropped.
    pub fn truncated(&self, last: u32) -> AsymptoticSeries {
        if last >= self.last_k() {
            return self.clone();
        }
        AsymptoticSeries {
            j: self.j,
            config: self.config.clone(),
            terms: self.terms[..=last as usize].to_vec(),
            status: SeriesStatus::Truncated { at: last + 1 },
        }
    }
}

/// Which assembly the builder uses for each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Assembly {
    #[default]
    Direct,
    Recursive,
}

/// The `k = 0` term `r^lambda sin(lambda theta)`.
pub fn main_term(j: u32, config: &CornerConfig) -> Result<ShadowTerm, Error> {
    if j == 0 {
        return Err(Error::Domain("j must be >= 1".into()));
    }
    if config.approach == Approach::ClosedForm {
        return Err(Error::Domain("the closed-form main term comes from eval::closed_form_series".into()));
    }
    Ok(ShadowTerm { k: 0, exponent: config.lambda(j).value(), coeffs: vec![1.0], augmented: false })
}

/// Builds the series of `(config, j)` with at most `max_terms` stored terms.
pub fn build_series(config: &CornerConfig, j: u32, max_terms: u32) -> Result<AsymptoticSeries, Error> {
    build_series_with(config, j, max_terms, Assembly::Direct)
}

pub fn build_series_with(
    config: &CornerConfig,
    j: u32,
    max_terms: u32,
    assembly: Assembly,
) -> Result<AsymptoticSeries, Error> {
    config.validate()?;
    if max_terms == 0 {
        return Err(Error::Domain("max_terms must be >= 1".into()));
    }
    if config.approach == Approach::ClosedForm {
        return crate::eval::closed_form_series(config, j);
    }
    let class = classify(config, j)?;
    let mut terms = vec![main_term(j, config)?];
    let mut scale = 1.0f64;
    let mut status = SeriesStatus::Truncated { at: max_terms };
    // One candidate beyond the stored terms is solved, so a series that
    // stops exactly at the limit is reported as terminated.
    for k in 1..=max_terms {
        let prev = &terms.last().unwrap().coeffs;
        let sys = match assembly {
            Assembly::Direct => build_system_direct(config, j, k, prev)?,
            Assembly::Recursive => build_system_recursive(config, j, k, prev)?,
        };
        let a = solve_triangular(&sys)?;
        if a.iter().all(|x| x.abs() <= ZERO_TOL * scale) {
            status = SeriesStatus::Terminated { last: k - 1 };
            break;
        }
        if k == max_terms {
            break;
        }
        scale = a.iter().fold(scale, |s, x| s.max(x.abs()));
        terms.push(ShadowTerm { k, exponent: config.exponent(j, k).value(), coeffs: a, augmented: sys.augmented });
    }
    match (class.series_kind, status) {
        (SeriesKind::FiniteExact { last: q }, SeriesStatus::Terminated { last }) if last != q => {
            return Err(Error::Inconsistent(format!("series terminated at S={last}, tables say S={q}")));
        }
        (SeriesKind::FiniteExact { last: q }, SeriesStatus::Truncated { at }) if at > q => {
            return Err(Error::Inconsistent(format!("series did not terminate at S={q}")));
        }
        (SeriesKind::FiniteExact { .. }, _) => {}
        (_, SeriesStatus::Terminated { last }) => {
            log::warn!("numerically zero coefficients after k={last} for a pair the tables call infinite");
        }
        _ => {}
    }
    Ok(AsymptoticSeries { j, config: config.clone(), terms, status })
}
