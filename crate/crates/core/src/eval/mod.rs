//! Point evaluation of terms and series, truncation errors, and the
//! `alpha = -1` closed form.

mod closed;

pub use closed::{closed_form_series, lambda_robin, RobinEigenvalue};

use crate::exactq::{cos_pi, sin_pi, Approach, Real};
use crate::series::{binomial, AsymptoticSeries, SeriesStatus, ShadowTerm};
use crate::Error;

/// Value and polar gradient components at one point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PointEval {
    pub u: f64,
    pub u_r: f64,
    /// `(1/r) du/dtheta`.
    pub u_theta_over_r: f64,
}

impl std::ops::AddAssign for PointEval {
    fn add_assign(&mut self, o: PointEval) {
        self.u += o.u;
        self.u_r += o.u_r;
        self.u_theta_over_r += o.u_theta_over_r;
    }
}

// sin(x + d pi/2)
fn shifted_sin(s: f64, c: f64, d: usize) -> f64 {
    match d % 4 {
        0 => s,
        1 => c,
        2 => -s,
        _ => -c,
    }
}

/// Angular factors `G_m(theta)` and `G_m'(theta)` for `m = 0..=L`.
pub(crate) fn angular(term: &ShadowTerm, theta: f64) -> (Vec<f64>, Vec<f64>) {
    let (s, c) = (term.exponent * theta).sin_cos();
    angular_with(term, theta, s, c)
}

// `s, c` are `sin(e theta)` and `cos(e theta)`.
fn angular_with(term: &ShadowTerm, theta: f64, s: f64, c: f64) -> (Vec<f64>, Vec<f64>) {
    let e = term.exponent;
    let n = term.coeffs.len();
    let mut g = vec![0.0; n];
    let mut dg = vec![0.0; n];
    for m in 0..n {
        for l in m..n {
            let d = l - m;
            let f = term.coeffs[l] * binomial(l, m);
            let tp = theta.powi(d as i32);
            g[m] += f * tp * shifted_sin(s, c, d);
            let lower = if d == 0 { 0.0 } else { d as f64 * theta.powi(d as i32 - 1) * shifted_sin(s, c, d) };
            dg[m] += f * (lower + e * tp * shifted_sin(s, c, d + 1));
        }
    }
    (g, dg)
}

/// `e omega / pi` for term `i`, exact when the configuration is.
pub(crate) fn boundary_phase(series: &AsymptoticSeries, i: usize) -> Real {
    let c = &series.config;
    let e = match c.approach {
        Approach::ClosedForm => Real::Irrational(series.terms[i].exponent),
        _ => c.exponent(series.j, series.terms[i].k),
    };
    e.mul(&c.angle.over_pi())
}

/// [`angular`] at `theta = omega`, with the trigonometric factors taken from
/// the exact phase so that structural zeros come out as exact zeros.
pub(crate) fn angular_at_omega(series: &AsymptoticSeries, i: usize) -> (Vec<f64>, Vec<f64>) {
    let phase = boundary_phase(series, i);
    angular_with(&series.terms[i], series.config.omega(), sin_pi(&phase), cos_pi(&phase))
}

/// Evaluation without domain checks; any real `theta` is accepted (the
/// formula continues analytically past the sector).
pub(crate) fn term_point(term: &ShadowTerm, r: f64, theta: f64) -> PointEval {
    let (g, dg) = angular(term, theta);
    combine(term.exponent, r, &g, &dg)
}

fn boundary_point(series: &AsymptoticSeries, i: usize, r: f64) -> PointEval {
    let (g, dg) = angular_at_omega(series, i);
    combine(series.terms[i].exponent, r, &g, &dg)
}

fn combine(e: f64, r: f64, g: &[f64], dg: &[f64]) -> PointEval {
    let lr = r.ln();
    let (mut u, mut ur, mut ut) = (0.0, 0.0, 0.0);
    let mut lp = 1.0;
    for m in 0..g.len() {
        let next = g.get(m + 1).copied().unwrap_or(0.0);
        u += lp * g[m];
        ur += lp * (e * g[m] + (m + 1) as f64 * next);
        ut += lp * dg[m];
        lp *= lr;
    }
    let re = r.powf(e);
    let re1 = r.powf(e - 1.0);
    PointEval { u: re * u, u_r: re1 * ur, u_theta_over_r: re1 * ut }
}

fn check_r(r: f64) -> Result<(), Error> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("r = {r} must be positive and finite")))
    }
}

/// `u^(k)(r, theta)`.
pub fn eval_term(term: &ShadowTerm, r: f64, theta: f64) -> Result<f64, Error> {
    check_r(r)?;
    Ok(term_point(term, r, theta).u)
}

/// `(du/dr, (1/r) du/dtheta)` of one term.
pub fn grad_term(term: &ShadowTerm, r: f64, theta: f64) -> Result<(f64, f64), Error> {
    check_r(r)?;
    let p = term_point(term, r, theta);
    Ok((p.u_r, p.u_theta_over_r))
}

/// Sum over all stored terms at `(r, theta)`, `theta` in `[0, omega]`.
/// On the Robin side the phases are reduced exactly.
///
/// At `r = 0` the limit of value and gradient is returned when it exists:
/// every exponent above one, or equal to one without logarithms.
pub fn eval_series(series: &AsymptoticSeries, r: f64, theta: f64) -> Result<PointEval, Error> {
    let omega = series.config.omega();
    if !(theta >= 0.0 && theta <= omega * (1.0 + 1e-12)) {
        return Err(Error::Domain(format!("theta = {theta} outside [0, {omega}]")));
    }
    if r == 0.0 {
        return eval_at_tip(series, theta);
    }
    check_r(r)?;
    if theta >= omega {
        return Ok(at_omega(series, r)?.into_iter().fold(PointEval::default(), |mut a, p| {
            a += p;
            a
        }));
    }
    let mut p = PointEval::default();
    for t in &series.terms {
        p += term_point(t, r, theta);
    }
    Ok(p)
}

fn eval_at_tip(series: &AsymptoticSeries, theta: f64) -> Result<PointEval, Error> {
    let mut p = PointEval::default();
    for t in &series.terms {
        if t.exponent < 1.0 || (t.exponent == 1.0 && t.log_degree() > 0) {
            return Err(Error::Domain(format!("term k={} is singular at r = 0", t.k)));
        }
        if t.exponent == 1.0 {
            p += term_point(t, 1.0, theta);
            p.u = 0.0;
        }
    }
    Ok(p)
}

fn at_omega(series: &AsymptoticSeries, r: f64) -> Result<Vec<PointEval>, Error> {
    check_r(r)?;
    Ok((0..series.terms.len()).map(|i| boundary_point(series, i, r)).collect())
}

fn robin_weight(series: &AsymptoticSeries, r: f64) -> f64 {
    series.config.gamma * r.powf(series.config.alpha.value())
}

/// `(1/r) du/dtheta + gamma r^alpha u` at `theta = omega`, summed directly.
pub fn robin_residual(series: &AsymptoticSeries, r: f64) -> Result<f64, Error> {
    let w = robin_weight(series, r);
    Ok(at_omega(series, r)?.iter().map(|p| p.u_theta_over_r + w * p.u).sum())
}

/// Sum of the magnitudes of all contributions that cancel in
/// [`robin_residual`]. The natural scale for that residual.
pub fn robin_scale(series: &AsymptoticSeries, r: f64) -> Result<f64, Error> {
    let w = robin_weight(series, r);
    Ok(at_omega(series, r)?.iter().map(|p| p.u_theta_over_r.abs() + w * p.u.abs()).sum())
}

/// Robin defect of the truncated series, from the last term alone:
/// `gamma r^alpha u^(S)(r, omega)` for D-N, `(1/r) du^(S)/dtheta` at omega for
/// D-D. The closed form has no truncation, so its direct residual is returned.
pub fn abs_error(series: &AsymptoticSeries, r: f64) -> Result<f64, Error> {
    check_r(r)?;
    let p = boundary_point(series, series.terms.len() - 1, r);
    Ok(match series.config.approach {
        Approach::DirichletNeumann => robin_weight(series, r) * p.u,
        Approach::DirichletDirichlet => p.u_theta_over_r,
        Approach::ClosedForm => robin_residual(series, r)?,
    })
}

/// Relative error: minus the last term's boundary quantity over the full
/// sum's (`u` for D-N, `du/dtheta` for D-D, all terms `k = 0..=S`).
pub fn rel_error(series: &AsymptoticSeries, r: f64) -> Result<f64, Error> {
    let pts = at_omega(series, r)?;
    let pick = |p: &PointEval| match series.config.approach {
        Approach::DirichletDirichlet => p.u_theta_over_r,
        _ => p.u,
    };
    let den: f64 = pts.iter().map(pick).sum();
    if den.abs() < 1e-300 {
        return Err(Error::Domain(format!("relative error undefined at r = {r}: boundary quantity vanishes")));
    }
    if let SeriesStatus::ClosedForm { .. } = series.status {
        return Ok(robin_residual(series, r)? / (robin_weight(series, r) * den));
    }
    Ok(-pick(pts.last().unwrap()) / den)
}

/// Largest scaled five-point Laplacian over `points`.
///
/// The stencil step is `h * r` at each point. The Laplacian is scaled by
/// `r^2 / sum_k (1 + e_k^2) |u^(k)|_env`, where the envelope replaces every
/// trigonometric factor by one; the result is dimensionless and `O(h^2)`.
pub fn harmonicity_check(series: &AsymptoticSeries, points: &[(f64, f64)], h: f64) -> f64 {
    let eval = |r: f64, th: f64| series.terms.iter().map(|t| term_point(t, r, th).u).sum::<f64>();
    let mut worst = 0.0f64;
    for &(r, th) in points {
        let scale: f64 = series.terms.iter().map(|t| (1.0 + t.exponent * t.exponent) * envelope(t, r, th)).sum();
        if scale == 0.0 {
            continue;
        }
        let (x, y) = (r * th.cos(), r * th.sin());
        let step = h * r;
        let at = |dx: f64, dy: f64| {
            let (xx, yy) = (x + dx, y + dy);
            let mut t = yy.atan2(xx);
            // stay on the branch of the centre point
            t += ((th - t) / std::f64::consts::TAU).round() * std::f64::consts::TAU;
            eval(xx.hypot(yy), t)
        };
        let lap = (at(step, 0.0) + at(-step, 0.0) + at(0.0, step) + at(0.0, -step) - 4.0 * eval(r, th)) / (step * step);
        worst = worst.max(lap.abs() * r * r / scale);
    }
    worst
}

fn envelope(t: &ShadowTerm, r: f64, theta: f64) -> f64 {
    let lr = r.ln().abs();
    let n = t.coeffs.len();
    let mut sum = 0.0;
    for m in 0..n {
        for l in m..n {
            sum += t.coeffs[l].abs() * binomial(l, m) * theta.abs().powi((l - m) as i32) * lr.powi(m as i32);
        }
    }
    r.powf(t.exponent) * sum
}
