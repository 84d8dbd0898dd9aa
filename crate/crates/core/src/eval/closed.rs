use std::f64::consts::PI;

use crate::exactq::{Approach, CornerConfig};
use crate::series::{AsymptoticSeries, SeriesStatus, ShadowTerm};
use crate::Error;

/// A root of `gamma sin(lambda omega) + lambda cos(lambda omega) = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RobinEigenvalue {
    pub j: u32,
    pub lambda: f64,
    pub gamma: f64,
    pub omega: f64,
    /// `|f(lambda)|`.
    pub residual: f64,
}

impl RobinEigenvalue {
    /// The open interval `((2j-1)pi/(2 omega), j pi/omega)` holding the root.
    pub fn bracket(&self) -> (f64, f64) {
        bracket(self.j, self.omega)
    }
}

fn bracket(j: u32, omega: f64) -> (f64, f64) {
    ((2 * j - 1) as f64 * PI / (2.0 * omega), j as f64 * PI / omega)
}

const MAX_BISECTIONS: usize = 200;
const BISECTION_TOL: f64 = 1e-14;

/// The `j`-th eigenvalue of the `alpha = -1` corner, by bisection on the
/// bracket and one Newton step.
pub fn lambda_robin(j: u32, omega: f64, gamma: f64) -> Result<RobinEigenvalue, Error> {
    if j == 0 {
        return Err(Error::Domain("j must be >= 1".into()));
    }
    if !(omega > 0.0 && omega <= 2.0 * PI) {
        return Err(Error::Domain(format!("omega = {omega} outside (0, 2pi]")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Domain(format!("gamma = {gamma} must be positive")));
    }
    let f = |l: f64| gamma * (l * omega).sin() + l * (l * omega).cos();
    let df = |l: f64| (gamma * omega + 1.0) * (l * omega).cos() - l * omega * (l * omega).sin();
    let (a, b) = bracket(j, omega);
    let (mut lo, mut hi) = (a, b);
    // endpoint values, signs exact: gamma (-1)^(j-1) and (j pi/omega)(-1)^j
    let lo_positive = j % 2 == 1;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (fm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= BISECTION_TOL * hi {
            break;
        }
    }
    let mut lambda = 0.5 * (lo + hi);
    let polished = lambda - f(lambda) / df(lambda);
    if polished > a && polished < b && f(polished).abs() <= f(lambda).abs() {
        lambda = polished;
    }
    let residual = f(lambda).abs();
    if residual > 1e-12 * (gamma + lambda) {
        return Err(Error::Inconsistent(format!("root residual {residual} too large at j={j}")));
    }
    Ok(RobinEigenvalue { j, lambda, gamma, omega, residual })
}

/// The single-term series `r^lambda sin(lambda theta)` for `alpha = -1`.
pub fn closed_form_series(config: &CornerConfig, j: u32) -> Result<AsymptoticSeries, Error> {
    if !config.alpha_is_minus_one() {
        return Err(Error::Domain("the closed form needs alpha = -1 exactly".into()));
    }
    let mut config = config.clone();
    config.approach = Approach::ClosedForm;
    let ev = lambda_robin(j, config.omega(), config.gamma)?;
    Ok(AsymptoticSeries {
        j,
        terms: vec![ShadowTerm { k: 0, exponent: ev.lambda, coeffs: vec![1.0], augmented: false }],
        status: SeriesStatus::ClosedForm { lambda: ev.lambda },
        config,
    })
}
