//! Mode III cracks whose faces are bridged by springs of stiffness
//! proportional to `r^alpha`: the half-plane corner `omega = pi`.

use crate::eval::{eval_series, lambda_robin};
use crate::exactq::{AngleSpec, Approach, CornerConfig, Rational, Real};
use crate::series::{build_series, AsymptoticSeries};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CrackRegime {
    /// `alpha > -1`: the bridging is too weak near the tip, `lambda_1 = 1/2`.
    Classical,
    /// `alpha = -1`: `lambda_1` solves the transcendental equation.
    Weak,
    /// `alpha < -1`: `lambda_1 = 1`, stresses stay bounded.
    Regular,
}

#[derive(Clone, Debug)]
pub struct CrackReport {
    pub regime: CrackRegime,
    pub lambda1: f64,
    /// The leading eigensolution (`j = 1`) as a series at `omega = pi`.
    pub series: AsymptoticSeries,
}

impl CrackReport {
    pub fn description(&self) -> String {
        match self.regime {
            CrackRegime::Classical => "classical sqrt(r) singularity, lambda1=1/2".into(),
            CrackRegime::Weak => format!("weak singularity, lambda1(gamma) = {} in (1/2,1)", self.lambda1),
            CrackRegime::Regular => "no singularity, lambda1=1, stresses continuous".into(),
        }
    }
}

/// Number of stored terms used for the crack-tip series.
pub const CRACK_TERMS: u32 = 8;

pub fn crack_regime(alpha: &Real, gamma: f64) -> Result<CrackReport, Error> {
    let pi = AngleSpec::Exact(Rational::one());
    let (regime, approach) = match alpha {
        Real::Exact(a) if *a == Rational::from_integer(-1) => (CrackRegime::Weak, Approach::ClosedForm),
        _ if alpha.value() > -1.0 => (CrackRegime::Classical, Approach::DirichletNeumann),
        _ => (CrackRegime::Regular, Approach::DirichletDirichlet),
    };
    let config = CornerConfig::new(pi, alpha.clone(), gamma, approach)?;
    let series = build_series(&config, 1, CRACK_TERMS)?;
    let lambda1 = match regime {
        CrackRegime::Weak => lambda_robin(1, std::f64::consts::PI, gamma)?.lambda,
        _ => series.terms[0].exponent,
    };
    Ok(CrackReport { regime, lambda1, series })
}

/// Shear stress `sigma_yz(x, 0)` (unit shear modulus) on the line of the
/// crack: ahead of the tip for `x >= 0`, on the bridged faces for `x < 0`.
pub fn traction_trace(series: &AsymptoticSeries, x: f64) -> Result<f64, Error> {
    if x >= 0.0 {
        Ok(eval_series(series, x, 0.0)?.u_theta_over_r)
    } else {
        Ok(-eval_series(series, -x, series.config.omega())?.u_theta_over_r)
    }
}
