use std::f64::consts::PI;
use std::fmt;

use crate::exactq::{Rational, Real};
use crate::Error;

/// The corner angle, as an exact multiple of pi or a declared-irrational
/// value in radians.
#[derive(Clone, Debug, PartialEq)]
pub enum AngleSpec {
    /// `omega / pi`.
    Exact(Rational),
    /// `omega` in radians.
    DeclaredIrrational(f64),
}

impl AngleSpec {
    pub fn radians(&self) -> f64 {
        match self {
            AngleSpec::Exact(w) => w.to_f64() * PI,
            AngleSpec::DeclaredIrrational(w) => *w,
        }
    }

    /// `omega / pi` as a [`Real`].
    pub fn over_pi(&self) -> Real {
        match self {
            AngleSpec::Exact(w) => Real::Exact(w.clone()),
            AngleSpec::DeclaredIrrational(w) => Real::Irrational(w / PI),
        }
    }
}

impl fmt::Display for AngleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleSpec::Exact(w) => write!(f, "({w})pi"),
            AngleSpec::DeclaredIrrational(w) => write!(f, "{w} rad (irrational)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Approach {
    /// Main term from the Dirichlet-Neumann problem; exponents increase.
    DirichletNeumann,
    /// Main term from the Dirichlet-Dirichlet problem; exponents decrease.
    DirichletDirichlet,
    /// Single-term solution for `alpha = -1`.
    ClosedForm,
}

impl Approach {
    pub fn short_name(self) -> &'static str {
        match self {
            Approach::DirichletNeumann => "dn",
            Approach::DirichletDirichlet => "dd",
            Approach::ClosedForm => "closed_form",
        }
    }

    pub fn from_short_name(s: &str) -> Result<Approach, Error> {
        match s {
            "dn" => Ok(Approach::DirichletNeumann),
            "dd" => Ok(Approach::DirichletDirichlet),
            "closed_form" | "closed" => Ok(Approach::ClosedForm),
            _ => Err(Error::Parse(format!("unknown approach {s:?}"))),
        }
    }
}

/// Problem parameters of one corner.
#[derive(Clone, Debug, PartialEq)]
pub struct CornerConfig {
    pub angle: AngleSpec,
    pub alpha: Real,
    pub gamma: f64,
    pub approach: Approach,
    /// Exact value of `rho` supplied by the caller when both the angle and
    /// `alpha` are declared irrational but their product is rational.
    pub declared_rho: Option<Rational>,
}

impl CornerConfig {
    pub fn new(
        angle: AngleSpec,
        alpha: Real,
        gamma: f64,
        approach: Approach,
    ) -> Result<CornerConfig, Error> {
        let c = CornerConfig { angle, alpha, gamma, approach, declared_rho: None };
        c.validate()?;
        Ok(c)
    }

    /// Shorthand for the common all-exact case: `omega = w pi`.
    pub fn exact(w: Rational, alpha: Rational, gamma: f64, approach: Approach) -> Result<CornerConfig, Error> {
        CornerConfig::new(AngleSpec::Exact(w), Real::Exact(alpha), gamma, approach)
    }

    pub fn with_declared_rho(mut self, rho: Rational) -> Result<CornerConfig, Error> {
        self.declared_rho = Some(rho);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        match &self.angle {
            AngleSpec::Exact(w) => {
                if !w.is_positive() || *w > Rational::from_integer(2) {
                    return bad(format!("omega/pi = {w} outside (0, 2]"));
                }
            }
            AngleSpec::DeclaredIrrational(w) => {
                if !(w.is_finite() && *w > 0.0 && *w <= 2.0 * PI) {
                    return bad(format!("omega = {w} outside (0, 2pi]"));
                }
            }
        }
        if let Real::Irrational(a) = self.alpha {
            if !a.is_finite() {
                return bad(format!("alpha = {a} is not finite"));
            }
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return bad(format!("gamma = {} must be positive", self.gamma));
        }
        let minus_one = self.alpha_is_minus_one();
        match self.approach {
            Approach::ClosedForm if !minus_one => {
                return bad("the closed form requires alpha = -1 exactly".into());
            }
            Approach::DirichletNeumann | Approach::DirichletDirichlet if minus_one => {
                return bad("alpha = -1 uses the closed form".into());
            }
            _ => {}
        }
        if let Some(r) = &self.declared_rho {
            if self.angle.over_pi().is_exact() || self.alpha.is_exact() {
                return bad("a declared rho is only accepted when omega and alpha are both irrational".into());
            }
            let numeric = self.angle.over_pi().value() * (self.alpha.value() + 1.0);
            if (numeric - r.to_f64()).abs() > 1e-9 * numeric.abs().max(1.0) {
                return bad(format!("declared rho {r} disagrees with omega(alpha+1)/pi = {numeric}"));
            }
        }
        Ok(())
    }

    pub fn alpha_is_minus_one(&self) -> bool {
        matches!(&self.alpha, Real::Exact(a) if *a == Rational::from_integer(-1))
    }

    pub fn omega(&self) -> f64 {
        self.angle.radians()
    }

    /// `alpha + 1`.
    pub fn beta(&self) -> Real {
        self.alpha.add_rational(&Rational::one())
    }

    /// `rho = (omega/pi)(alpha+1)`.
    pub fn rho(&self) -> Real {
        if let Some(r) = &self.declared_rho {
            return Real::Exact(r.clone());
        }
        self.angle.over_pi().mul(&self.beta())
    }

    /// Main exponent `lambda_j`: `(2j-1)pi/(2 omega)` for D-N (and the
    /// closed form bracket), `j pi/omega` for D-D.
    pub fn lambda(&self, j: u32) -> Real {
        let num = match self.approach {
            Approach::DirichletDirichlet => Rational::from_integer(j as i64),
            _ => Rational::new(2 * j as i64 - 1, 2).unwrap(),
        };
        match &self.angle {
            AngleSpec::Exact(w) => Real::Exact(&num / w),
            AngleSpec::DeclaredIrrational(w) => Real::Irrational(num.to_f64() * PI / w),
        }
    }

    /// Exponent of the `k`-th term: `lambda_j + k(alpha+1)` (D-N) or
    /// `lambda_j - k(alpha+1)` (D-D).
    pub fn exponent(&self, j: u32, k: u32) -> Real {
        let shift = self.beta().mul_int(k as i64);
        match self.approach {
            Approach::DirichletDirichlet => self.lambda(j).sub(&shift),
            _ => self.lambda(j).add(&shift),
        }
    }
}
