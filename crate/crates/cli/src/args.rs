use std::path::PathBuf;

use clap::{Args, ValueEnum};
use robin_corner::exactq::{AngleSpec, Approach, CornerConfig, Rational, Real};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ApproachArg {
    Dn,
    Dd,
    Closed,
}

impl From<ApproachArg> for Approach {
    fn from(a: ApproachArg) -> Approach {
        match a {
            ApproachArg::Dn => Approach::DirichletNeumann,
            ApproachArg::Dd => Approach::DirichletDirichlet,
            ApproachArg::Closed => Approach::ClosedForm,
        }
    }
}

/// The opening angle, exact or declared irrational.
#[derive(Args, Debug, Clone)]
pub struct AngleArgs {
    /// omega/pi as "p/q".
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true, conflicts_with = "omega")]
    pub omega_pi: Option<String>,
    /// omega in radians; needs --irrational.
    #[arg(long, value_name = "RADIANS", requires = "irrational")]
    pub omega: Option<f64>,
    /// Accept floats for omega and alpha. They are treated as irrational.
    #[arg(long)]
    pub irrational: bool,
}

impl AngleArgs {
    pub fn angle(&self) -> Result<AngleSpec, CliError> {
        match (&self.omega_pi, self.omega) {
            (Some(w), None) => Ok(AngleSpec::Exact(parse_rational("--omega-pi", w)?)),
            (None, Some(w)) => Ok(AngleSpec::DeclaredIrrational(w)),
            _ => Err(CliError::Usage("one of --omega-pi or --omega is required".into())),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArgs {
    #[command(flatten)]
    pub angle: AngleArgs,
    /// Exponent of the Robin coefficient: "p/q", or a float with --irrational.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Exact rho for irrational omega and alpha whose product is rational.
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    pub rho: Option<String>,
    /// Ignored when alpha = -1 exactly, which always takes the closed form.
    #[arg(long, value_enum, default_value = "dn")]
    pub approach: ApproachArg,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
}

impl ConfigArgs {
    pub fn alpha(&self) -> Result<Real, CliError> {
        parse_real("--alpha", &self.alpha, self.angle.irrational)
    }

    pub fn config(&self) -> Result<CornerConfig, CliError> {
        let alpha = self.alpha()?;
        let minus_one = matches!(&alpha, Real::Exact(a) if *a == Rational::from_integer(-1));
        let approach = if minus_one {
            Approach::ClosedForm
        } else {
            self.approach.into()
        };
        let mut c = CornerConfig::new(self.angle.angle()?, alpha, self.gamma, approach).map_err(CliError::config)?;
        if let Some(r) = &self.rho {
            c = c.with_declared_rho(parse_rational("--rho", r)?).map_err(CliError::config)?;
        }
        Ok(c)
    }
}

pub fn parse_rational(flag: &str, s: &str) -> Result<Rational, CliError> {
    s.parse()
        .map_err(|e| CliError::Usage(format!("{flag} {s:?}: {e}")))
}

/// `"p/q"` or an integer is exact. A decimal is accepted only with
/// `irrational`, and is then taken as irrational.
pub fn parse_real(flag: &str, s: &str, irrational: bool) -> Result<Real, CliError> {
    match s.parse::<Rational>() {
        Ok(q) => Ok(Real::Exact(q)),
        Err(_) if irrational => s
            .parse::<f64>()
            .map(Real::Irrational)
            .map_err(|_| CliError::Usage(format!("{flag} {s:?} is not a number"))),
        Err(e) => {
            let hint = if s.parse::<f64>().is_ok() { " (floats need --irrational)" } else { "" };
            Err(CliError::Usage(format!("{flag} {s:?}: {e}{hint}")))
        }
    }
}

/// Radii and angles for tabulation.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub theta_points: usize,
    pub log_spaced_r: bool,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(CliError::Usage(format!("need 0 < r_min < r_max, got {} and {}", self.r_min, self.r_max)));
        }
        if self.n_r < 2 {
            return Err(CliError::Usage("--n-r must be at least 2".into()));
        }
        if self.theta_points < 2 {
            return Err(CliError::Usage("--theta-points must be at least 2".into()));
        }
        Ok(())
    }

    pub fn radii(&self) -> Vec<f64> {
        let n = self.n_r - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    return self.r_max;
                }
                let t = i as f64 / n as f64;
                if self.log_spaced_r {
                    self.r_min * (self.r_max / self.r_min).powf(t)
                } else {
                    self.r_min + t * (self.r_max - self.r_min)
                }
            })
            .collect()
    }

    /// `theta_points` angles from `0` to `omega`, both ends included.
    pub fn thetas(&self, omega: f64) -> Vec<f64> {
        let n = self.theta_points - 1;
        (0..=n).map(|i| if i == n { omega } else { omega * i as f64 / n as f64 }).collect()
    }
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Explicit radii; replaces the r grid.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub r: Vec<f64>,
    #[arg(long, default_value_t = 0.01)]
    pub r_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 50)]
    pub n_r: usize,
    #[arg(long, default_value_t = 9)]
    pub theta_points: usize,
    #[arg(long)]
    pub log_r: bool,
}

impl GridArgs {
    pub fn spec(&self) -> Result<GridSpec, CliError> {
        let g = GridSpec {
            r_min: self.r_min,
            r_max: self.r_max,
            n_r: self.n_r,
            theta_points: self.theta_points,
            log_spaced_r: self.log_r,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn radii(&self) -> Result<Vec<f64>, CliError> {
        let g = self.spec()?;
        if self.r.is_empty() {
            return Ok(g.radii());
        }
        if let Some(r) = self.r.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
            return Err(CliError::Usage(format!("radius {r} must be finite and non-negative")));
        }
        Ok(self.r.clone())
    }
}

#[derive(Args, Debug, Clone)]
pub struct SeriesFile {
    /// Series JSON written by `build`.
    #[arg(long, value_name = "FILE")]
    pub series: PathBuf,
}
