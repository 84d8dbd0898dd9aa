//! Energy of a series in the corner neighbourhood `eps < r < R`:
//!
//! ```text
//! E = 1/2 ∫∫ (r u_r^2 + u_theta^2 / r) dtheta dr  +  gamma ∫ r^(alpha+1) u(r, omega)^2 dr
//! ```
//!
//! Each term separates into radial monomials `r^a log^n r` times angular
//! factors. Angular integrals use Gauss-Legendre panels; radial integrals
//! are exact.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;

use crate::eval::{angular, angular_at_omega};
use crate::exactq::{classify, Approach, Rational, SeriesKind};
use crate::exactq::{is_cos_zero, is_sin_zero};
use crate::series::AsymptoticSeries;
use crate::Error;

/// Nodes per angular panel.
pub const GL_NODES: usize = 64;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NonZeroUsize::new(GL_NODES).unwrap()))
}

/// `∫ r^a log^n r dr`, evaluated at `r`.
pub fn radial_antiderivative(a: f64, n: u32, r: f64) -> f64 {
    let lr = r.ln();
    if (a + 1.0).abs() < 1e-13 {
        return lr.powi(n as i32 + 1) / (n + 1) as f64;
    }
    let b = a + 1.0;
    let mut sum = 0.0;
    let mut fall = 1.0; // n!/(n-i)!
    for i in 0..=n {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * fall * lr.powi((n - i) as i32) / b.powi(i as i32 + 1);
        fall *= (n - i) as f64;
    }
    r.powf(b) * sum
}

/// `∫_eps^R r^a log^n r dr`; `eps = 0` is the limit, which exists only for
/// `a > -1`.
fn radial_integral(a: f64, n: u32, r_max: f64, eps: f64) -> Result<f64, Error> {
    if eps == r_max {
        return Ok(0.0);
    }
    if eps > 0.0 {
        return Ok(radial_antiderivative(a, n, r_max) - radial_antiderivative(a, n, eps));
    }
    if a + 1.0 > 1e-13 {
        Ok(radial_antiderivative(a, n, r_max))
    } else {
        Err(Error::Divergent(format!("r^{a} log^{n} r is not integrable at 0; supply eps > 0")))
    }
}

/// Bulk (gradient) and boundary (`∫ r^(alpha+1) u^2`) parts; the energy is
/// `bulk/2 + gamma * boundary`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PairEnergy {
    pub bulk: f64,
    pub boundary: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyResult {
    pub value: f64,
    pub bulk: f64,
    pub boundary: f64,
    /// `0` when the `eps -> 0` limit was taken.
    pub eps_used: f64,
}

struct Angular {
    // P_m = e G_m + (m+1) G_{m+1} and G_m' at every quadrature node
    p: Vec<Vec<f64>>,
    dg: Vec<Vec<f64>>,
}

fn angular_samples(series: &AsymptoticSeries, k: usize, nodes: &[(f64, f64)]) -> Angular {
    let t = &series.terms[k];
    let n = t.coeffs.len();
    let mut p = vec![Vec::with_capacity(nodes.len()); n];
    let mut dg = vec![Vec::with_capacity(nodes.len()); n];
    for &(th, _) in nodes {
        let (g, d) = angular(t, th);
        for m in 0..n {
            let next = g.get(m + 1).copied().unwrap_or(0.0);
            p[m].push(t.exponent * g[m] + (m + 1) as f64 * next);
            dg[m].push(d[m]);
        }
    }
    Angular { p, dg }
}

fn nodes_for(omega: f64, e1: f64, e2: f64, refine: usize) -> Vec<(f64, f64)> {
    let panels = refine * (((e1.abs() + e2.abs() + 2.0) * omega / 16.0).ceil() as usize).max(1);
    let h = omega / panels as f64;
    let mut out = Vec::with_capacity(panels * GL_NODES);
    for i in 0..panels {
        let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
        for &(x, w) in rule().as_node_weight_pairs() {
            out.push((0.5 * ((b - a) * x + b + a), 0.5 * (b - a) * w));
        }
    }
    out
}

/// Cross energy of terms `k1` and `k2` of `series` over `eps < r < r_max`.
/// Symmetric in `(k1, k2)` bit for bit.
pub fn term_pair_energy(
    series: &AsymptoticSeries,
    k1: usize,
    k2: usize,
    r_max: f64,
    eps: f64,
) -> Result<PairEnergy, Error> {
    pair_energy(series, k1, k2, r_max, eps, 1)
}

fn pair_energy(
    series: &AsymptoticSeries,
    k1: usize,
    k2: usize,
    r_max: f64,
    eps: f64,
    refine: usize,
) -> Result<PairEnergy, Error> {
    if !(r_max > 0.0 && r_max.is_finite()) || !(eps >= 0.0 && eps <= r_max) {
        return Err(Error::Domain(format!("need 0 <= eps <= R, R > 0 (eps={eps}, R={r_max})")));
    }
    if k1.max(k2) >= series.terms.len() {
        return Err(Error::Domain("term index out of range".into()));
    }
    let (k1, k2) = (k1.min(k2), k1.max(k2));
    let (t1, t2) = (&series.terms[k1], &series.terms[k2]);
    let omega = series.config.omega();
    let alpha = series.config.alpha.value();
    let nodes = nodes_for(omega, t1.exponent, t2.exponent, refine);
    let a1 = angular_samples(series, k1, &nodes);
    let a2 = angular_samples(series, k2, &nodes);
    let (tr1, tr2) = (angular_at_omega(series, k1).0, angular_at_omega(series, k2).0);
    let esum = t1.exponent + t2.exponent;
    let mut out = PairEnergy::default();
    for m in 0..t1.coeffs.len() {
        for n in 0..t2.coeffs.len() {
            let coeff: f64 = nodes
                .iter()
                .enumerate()
                .map(|(i, &(_, w))| w * (a1.p[m][i] * a2.p[n][i] + a1.dg[m][i] * a2.dg[n][i]))
                .sum();
            let pw = (m + n) as u32;
            if coeff != 0.0 {
                out.bulk += coeff * radial_integral(esum - 1.0, pw, r_max, eps)?;
            }
            let tc = tr1[m] * tr2[n];
            if tc != 0.0 {
                out.boundary += tc * radial_integral(esum + alpha + 1.0, pw, r_max, eps)?;
            }
        }
    }
    Ok(out)
}

/// Whether the eigensolution behind `series` has finite energy near the tip.
///
/// Infinite series follow their convergence regime. Finite series are
/// checked term by term: every exponent positive, and `2e + alpha + 2 > 0`
/// for every term whose trace on the Robin side does not vanish.
pub fn energy_finite(series: &AsymptoticSeries) -> Result<bool, Error> {
    let c = &series.config;
    if c.approach == Approach::ClosedForm {
        return Ok(true);
    }
    let class = classify(c, series.j)?;
    let q = match class.series_kind {
        SeriesKind::FiniteExact { last } => last,
        _ => return Ok(class.converges_near_zero),
    };
    let rho = c.rho();
    let two = Rational::from_integer(2);
    let mut finite = true;
    for k in 0..=q {
        let e = c.exponent(series.j, k);
        if e.cmp_zero().is_le() {
            finite = false;
        }
        let trace_zero = match c.approach {
            Approach::DirichletNeumann => is_cos_zero(k, &rho),
            _ => is_sin_zero(k, &rho),
        };
        if !trace_zero && e.mul_int(2).add(&c.alpha).add_rational(&two).cmp_zero().is_le() {
            finite = false;
        }
    }
    if finite != class.energy.is_finite_for(series.j) {
        return Err(Error::Inconsistent(format!(
            "per-term energy test says finite={finite}, tables say {:?} for j={}",
            class.energy, series.j
        )));
    }
    Ok(finite)
}

/// Energy of the (truncated) series over `eps < r < r_max`; `eps = 0` takes
/// the limit and is refused for infinite-energy eigensolutions.
pub fn series_energy(series: &AsymptoticSeries, r_max: f64, eps: f64) -> Result<EnergyResult, Error> {
    if eps == 0.0 && !energy_finite(series)? {
        return Err(Error::Divergent("energy is infinite; supply eps > 0".into()));
    }
    let n = series.terms.len();
    let (mut bulk, mut boundary) = (0.0, 0.0);
    for k1 in 0..n {
        for k2 in k1..n {
            let p = term_pair_energy(series, k1, k2, r_max, eps)?;
            let w = if k1 == k2 { 1.0 } else { 2.0 };
            bulk += w * p.bulk;
            boundary += w * p.boundary;
        }
    }
    Ok(EnergyResult { value: 0.5 * bulk + series.config.gamma * boundary, bulk, boundary, eps_used: eps })
}
