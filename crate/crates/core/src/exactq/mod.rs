//! Exact rational arithmetic and the critical-pair classification.
//!
//! Every structural decision made elsewhere (a vanishing diagonal, an extra
//! logarithmic power, a finite series) is answered here with exact
//! arithmetic on `rho = (omega/pi)(alpha+1)`. Floats never decide a zero.

mod config;
mod rational;

pub use config::{AngleSpec, Approach, CornerConfig};
pub use rational::{cos_pi, sin_pi, Rational, Real};

use num_traits::ToPrimitive;

use crate::Error;

/// `rho = (omega/pi)(alpha+1)` of a configuration.
pub fn rho(config: &CornerConfig) -> Real {
    config.rho()
}

/// The unique way to write a reduced nonzero rational as `±(2p-1)/(2q)` or
/// `p/(2q-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FractionForm {
    /// `±(2p-1)/(2q)`; the sign is `negative`.
    OddOverEven { p: u64, q: u64, negative: bool },
    /// `p/(2q-1)`; the sign rides on `p`.
    AnyOverOdd { p: i64, q: u64 },
    Irrational,
}

/// Fraction form of `rho`. Fails on zero.
pub fn fraction_form(r: &Real) -> Result<FractionForm, Error> {
    let r = match r {
        Real::Exact(r) => r,
        Real::Irrational(_) => return Ok(FractionForm::Irrational),
    };
    if r.is_zero() {
        return Err(Error::Domain("rho = 0 has no fraction form".into()));
    }
    let (n, d) = r
        .to_i64_pair()
        .ok_or_else(|| Error::Domain(format!("rho = {r} too large")))?;
    if r.denom_is_even() {
        Ok(FractionForm::OddOverEven {
            p: n.unsigned_abs().div_ceil(2),
            q: d as u64 / 2,
            negative: n < 0,
        })
    } else {
        Ok(FractionForm::AnyOverOdd { p: n, q: (d as u64).div_ceil(2) })
    }
}

/// Last continued-fraction convergent of `x` whose denominator stays within
/// `max_den`. A hint for users holding a float; nothing here calls it, so a
/// float never turns into an exact `rho` behind the caller's back.
pub fn suggest_rational(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() || max_den == 0 || x.abs() > 1e15 {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let (h2, k2) = (a as i128 * h1 + h0, a as i128 * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a;
        if frac.abs() < 1e-12 {
            break;
        }
        rest = 1.0 / frac;
    }
    Rational::new(i64::try_from(h1).ok()?, i64::try_from(k1).ok()?).ok()
}

/// `sin(k pi rho) = 0` exactly, i.e. `k rho` is an integer.
pub fn is_sin_zero(k: u32, r: &Real) -> bool {
    match r {
        Real::Exact(r) => r.mul_int(k as i64).is_integer(),
        Real::Irrational(_) => k == 0,
    }
}

/// `cos(k pi rho) = 0` exactly, i.e. `k rho - 1/2` is an integer.
pub fn is_cos_zero(k: u32, r: &Real) -> bool {
    match r {
        Real::Exact(r) => (r.mul_int(k as i64) - Rational::new(1, 2).unwrap()).is_integer(),
        Real::Irrational(_) => false,
    }
}

/// The shifted exponent vanishes: `(2j-1)/2 + k rho = 0` (D-N) or
/// `j - k rho = 0` (D-D).
pub fn is_lambda_shift_zero(approach: Approach, j: u32, k: u32, r: &Real) -> bool {
    let Real::Exact(r) = r else { return false };
    let kr = r.mul_int(k as i64);
    match approach {
        Approach::DirichletNeumann => (Rational::new(2 * j as i64 - 1, 2).unwrap() + kr).is_zero(),
        Approach::DirichletDirichlet => (Rational::from_integer(j as i64) - kr).is_zero(),
        Approach::ClosedForm => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// The series stops: the term `k = last` is the final nonzero one.
    FiniteExact { last: u32 },
    InfiniteNoLog,
    /// Infinitely many terms; a logarithmic power is added every `period` steps.
    InfiniteWithLog { period: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyVerdict {
    Finite,
    Infinite,
    /// Finite iff `j > threshold` (`strict`) or `j >= threshold`.
    FiniteIff { threshold: u32, strict: bool },
}

impl EnergyVerdict {
    pub fn is_finite_for(self, j: u32) -> bool {
        match self {
            EnergyVerdict::Finite => true,
            EnergyVerdict::Infinite => false,
            EnergyVerdict::FiniteIff { threshold, strict: true } => j > threshold,
            EnergyVerdict::FiniteIff { threshold, strict: false } => j >= threshold,
        }
    }
}

/// Verdict of the critical-pair tables for one `(config, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub rho: Real,
    pub form: FractionForm,
    pub series_kind: SeriesKind,
    pub converges_near_zero: bool,
    pub energy: EnergyVerdict,
    /// The single off-period augmentation step (D-N, `alpha < -1`, `j = p`).
    pub log_extra_step: Option<u32>,
}

impl Classification {
    /// Whether the log power grows at step `k >= 1` by this verdict.
    pub fn augments_at(&self, k: u32) -> bool {
        match self.series_kind {
            SeriesKind::InfiniteWithLog { period } => k.is_multiple_of(period) || self.log_extra_step == Some(k),
            _ => false,
        }
    }

    /// Short human label: apparent or actual critical, or non-critical.
    pub fn label(&self) -> &'static str {
        match self.series_kind {
            SeriesKind::FiniteExact { .. } => "apparent critical",
            SeriesKind::InfiniteWithLog { .. } => "actual critical",
            SeriesKind::InfiniteNoLog => "non-critical",
        }
    }
}

/// Classifies the series of `(config, j)` by the critical-pair tables.
pub fn classify(config: &CornerConfig, j: u32) -> Result<Classification, Error> {
    if j == 0 {
        return Err(Error::Domain("j must be >= 1".into()));
    }
    let dn = match config.approach {
        Approach::DirichletNeumann => true,
        Approach::DirichletDirichlet => false,
        Approach::ClosedForm => {
            return Err(Error::Domain("alpha = -1 is the closed-form branch".into()));
        }
    };
    let rho = config.rho();
    let positive = match rho.cmp_zero() {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => {
            return Err(Error::Domain("rho = 0: alpha = -1 is the closed-form branch".into()));
        }
    };
    // Series that are not finite converge only in these two regimes.
    let infinite_converges = dn == positive;
    let form = fraction_form(&rho)?;
    let to_u32 = |x: u64| {
        x.to_u32()
            .ok_or_else(|| Error::Domain(format!("fraction index {x} too large")))
    };
    let infinite = |series_kind, log_extra_step| Classification {
        rho: rho.clone(),
        form,
        series_kind,
        converges_near_zero: infinite_converges,
        energy: if infinite_converges { EnergyVerdict::Finite } else { EnergyVerdict::Infinite },
        log_extra_step,
    };
    Ok(match form {
        FractionForm::Irrational => infinite(SeriesKind::InfiniteNoLog, None),
        FractionForm::AnyOverOdd { q, .. } => {
            infinite(SeriesKind::InfiniteWithLog { period: to_u32(2 * q - 1)? }, None)
        }
        FractionForm::OddOverEven { p, q, negative } => {
            let (p, q) = (to_u32(p)?, to_u32(q)?);
            if dn && negative && j == p {
                let mut c = infinite(SeriesKind::InfiniteWithLog { period: 2 * q }, Some(q));
                c.converges_near_zero = false;
                c.energy = EnergyVerdict::Infinite;
                c
            } else {
                let energy = match (dn, negative) {
                    (true, false) | (false, true) => EnergyVerdict::Finite,
                    (true, true) => EnergyVerdict::FiniteIff { threshold: p, strict: true },
                    (false, false) => EnergyVerdict::FiniteIff { threshold: p, strict: false },
                };
                Classification {
                    rho: rho.clone(),
                    form,
                    series_kind: SeriesKind::FiniteExact { last: q },
                    converges_near_zero: true,
                    energy,
                    log_extra_step: None,
                }
            }
        }
    })
}
