use serde::{Deserialize, Serialize};

use super::{AsymptoticSeries, SeriesStatus, ShadowTerm};
use crate::exactq::{AngleSpec, Approach, CornerConfig, Real};
use crate::Error;

/// On-disk form of a series. Exact parameters are written as `"p/q"`
/// strings, declared irrationals as numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub j: u32,
    pub approach: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_over_pi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    pub alpha: AlphaField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    pub gamma: f64,
    pub terms: Vec<TermDocument>,
    pub status: StatusDocument,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaField {
    Exact(String),
    Irrational(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDocument {
    pub k: u32,
    pub exponent: f64,
    #[serde(rename = "L")]
    pub log_degree: usize,
    pub coeffs: Vec<f64>,
    #[serde(default)]
    pub augmented: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatusDocument {
    Terminated { last: u32 },
    Truncated { at: u32 },
    ClosedForm { lambda: f64 },
}

impl From<&AsymptoticSeries> for SeriesDocument {
    fn from(s: &AsymptoticSeries) -> SeriesDocument {
        let c = &s.config;
        let (omega_over_pi, omega) = match &c.angle {
            AngleSpec::Exact(w) => (Some(w.to_string()), None),
            AngleSpec::DeclaredIrrational(w) => (None, Some(*w)),
        };
        SeriesDocument {
            j: s.j,
            approach: c.approach.short_name().to_string(),
            omega_over_pi,
            omega,
            alpha: match &c.alpha {
                Real::Exact(a) => AlphaField::Exact(a.to_string()),
                Real::Irrational(a) => AlphaField::Irrational(*a),
            },
            rho: c.declared_rho.as_ref().map(|r| r.to_string()),
            gamma: c.gamma,
            terms: s
                .terms
                .iter()
                .map(|t| TermDocument {
                    k: t.k,
                    exponent: t.exponent,
                    log_degree: t.log_degree(),
                    coeffs: t.coeffs.clone(),
                    augmented: t.augmented,
                })
                .collect(),
            status: match s.status {
                SeriesStatus::Terminated { last } => StatusDocument::Terminated { last },
                SeriesStatus::Truncated { at } => StatusDocument::Truncated { at },
                SeriesStatus::ClosedForm { lambda } => StatusDocument::ClosedForm { lambda },
            },
        }
    }
}

impl TryFrom<SeriesDocument> for AsymptoticSeries {
    type Error = Error;

    fn try_from(d: SeriesDocument) -> Result<AsymptoticSeries, Error> {
        let bad = |m: String| Err(Error::Parse(m));
        let angle = match (d.omega_over_pi, d.omega) {
            (Some(w), None) => AngleSpec::Exact(w.parse()?),
            (None, Some(w)) => AngleSpec::DeclaredIrrational(w),
            _ => return bad("exactly one of omega_over_pi and omega is required".into()),
        };
        let alpha = match d.alpha {
            AlphaField::Exact(a) => Real::Exact(a.parse()?),
            AlphaField::Irrational(a) => Real::Irrational(a),
        };
        let approach = Approach::from_short_name(&d.approach)?;
        let mut config = CornerConfig::new(angle, alpha, d.gamma, approach)?;
        if let Some(r) = d.rho {
            config = config.with_declared_rho(r.parse()?)?;
        }
        if d.terms.is_empty() {
            return bad("a series needs at least its main term".into());
        }
        let mut terms = Vec::with_capacity(d.terms.len());
        for (i, t) in d.terms.into_iter().enumerate() {
            if t.k as usize != i {
                return bad(format!("term {i} has k = {}", t.k));
            }
            if t.coeffs.len() != t.log_degree + 1 {
                return bad(format!("term k={} has L={} but {} coefficients", t.k, t.log_degree, t.coeffs.len()));
            }
            if approach != Approach::ClosedForm {
                let want = config.exponent(d.j, t.k).value();
                if (want - t.exponent).abs() > 1e-12 * want.abs().max(1.0) {
                    return bad(format!("term k={} exponent {} does not match {want}", t.k, t.exponent));
                }
            }
            terms.push(ShadowTerm { k: t.k, exponent: t.exponent, coeffs: t.coeffs, augmented: t.augmented });
        }
        let status = match d.status {
            StatusDocument::Terminated { last } => SeriesStatus::Terminated { last },
            StatusDocument::Truncated { at } => SeriesStatus::Truncated { at },
            StatusDocument::ClosedForm { lambda } => SeriesStatus::ClosedForm { lambda },
        };
        Ok(AsymptoticSeries { j: d.j, config, terms, status })
    }
}

impl AsymptoticSeries {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SeriesDocument::from(self)).expect("series document serializes")
    }

    pub fn from_json(s: &str) -> Result<AsymptoticSeries, Error> {
        let d: SeriesDocument = serde_json::from_str(s)?;
        d.try_into()
    }
}
