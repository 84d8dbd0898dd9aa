mod common;

use common::{dd, dn, interior_points, q, random_suite, single_term};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robin_corner::eval::{abs_error, eval_series, harmonicity_check, rel_error, robin_residual, robin_scale};
use robin_corner::exactq::Approach;
use robin_corner::series::{build_series, AsymptoticSeries};

const RADII: [f64; 5] = [0.05, 0.1, 0.5, 1.0, 2.0];

#[test]
fn telescoping_matches_direct_residual() {
    for case in random_suite(40, 2024) {
        let s = case.build();
        for r in RADII {
            let formula = abs_error(&s, r).unwrap();
            let direct = robin_residual(&s, r).unwrap();
            let scale = robin_scale(&s, r).unwrap();
            assert!((formula - direct).abs() <= 1e-10 * formula.abs().max(scale), "{case:?} r={r}: {formula} vs {direct}");
        }
    }
}

#[test]
fn dirichlet_side_is_exactly_zero() {
    for case in random_suite(40, 5) {
        let s = case.build();
        for r in [0.01, 0.3, 1.0, 7.0] {
            let p = eval_series(&s, r, 0.0).unwrap();
            assert_eq!(p.u, 0.0);
            assert_eq!(p.u_r, 0.0);
        }
    }
}

fn fd_gradient(s: &AsymptoticSeries, r: f64, th: f64, h: f64) -> (f64, f64) {
    let u = |r: f64, th: f64| eval_series(s, r, th).unwrap().u;
    let ur = (u(r + h, th) - u(r - h, th)) / (2.0 * h);
    let ut = (u(r, th + h) - u(r, th - h)) / (2.0 * h) / r;
    (ur, ut)
}

#[test]
fn gradients_match_finite_differences() {
    let series = [
        build_series(&dn(q(1, 2), q(3, 2)), 1, 25).unwrap(),
        build_series(&dn(q(2, 3), q(2, 1)), 1, 4).unwrap(),
        build_series(&dn(q(3, 2), q(-3, 2)), 3, 25).unwrap(),
        build_series(&dd(q(1, 1), q(-5, 3)), 1, 7).unwrap(),
        build_series(&dd(q(1, 2), q(1, 2)), 2, 25).unwrap(),
    ];
    for s in &series {
        for (r, th) in interior_points(s.config.omega(), 100, 99) {
            let p = eval_series(s, r, th).unwrap();
            let (ur, ut) = fd_gradient(s, r, th, 1e-6);
            assert!((p.u_r - ur).abs() <= 1e-6, "{:?} ({r},{th}): {} vs {ur}", s.config, p.u_r);
            assert!((p.u_theta_over_r - ut).abs() <= 1e-6, "{:?} ({r},{th}): {} vs {ut}", s.config, p.u_theta_over_r);
        }
    }
}

/// Step at which the stencil error dominates rounding for a term of
/// exponent `e`; `None` for `Im z^n`, `n <= 4`, which the stencil reproduces
/// exactly.
fn ratio_step(s: &AsymptoticSeries) -> Option<f64> {
    let t = &s.terms[0];
    let e = t.exponent;
    if t.log_degree() == 0 && e.fract() == 0.0 && (0.0..=4.0).contains(&e) {
        return None;
    }
    Some(0.02 / e.abs().max(1.0))
}

#[test]
fn every_term_is_harmonic() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for case in random_suite(40, 17) {
        let s = case.build();
        let pts = interior_points(s.config.omega(), 50, rng.random());
        for k in 0..s.terms.len() {
            let t = single_term(&s, k);
            let at = harmonicity_check(&t, &pts, 1e-4);
            assert!(at <= 1e-5, "{case:?} k={k}: {at}");
            if let Some(h) = ratio_step(&t) {
                let ratio = harmonicity_check(&t, &pts, h) / harmonicity_check(&t, &pts, h / 2.0);
                assert!((3.5..=4.5).contains(&ratio), "{case:?} k={k}: ratio {ratio}");
            }
        }
    }
}

#[test]
fn relative_error_of_exact_solutions_vanishes() {
    let s = build_series(&dn(q(1, 2), q(3, 2)), 1, 25).unwrap();
    for r in RADII {
        assert!(rel_error(&s, r).unwrap().abs() <= 1e-12);
        assert!(abs_error(&s, r).unwrap().abs() <= 1e-12 * r.powf(2.5));
    }
}

#[test]
fn relative_error_decays_with_more_terms() {
    // non-critical D-N pair with alpha > -1
    let c = robin_corner::exactq::CornerConfig::new(
        robin_corner::exactq::AngleSpec::DeclaredIrrational(2.0),
        robin_corner::exactq::Real::Exact(q(1, 3)),
        1.0,
        Approach::DirichletNeumann,
    )
    .unwrap();
    let full = build_series(&c, 1, 6).unwrap();
    let mut last = f64::INFINITY;
    for s in 1..=5 {
        let e = rel_error(&full.truncated(s), 0.1).unwrap().abs();
        assert!(e < last, "S={s}: {e} >= {last}");
        last = e;
    }
}

// Independent solution of the Dirichlet problem with boundary data
// `r^b (c0 + c1 log r)`, by the explicit formulas for one and two
// logarithmic powers (sine factor nonzero, or zero with a0 = 0).
fn dirichlet_log_solution(b: f64, w: f64, c0: f64, c1: f64, resonant: bool) -> Vec<f64> {
    let (s, c) = (b * w).sin_cos();
    if !resonant {
        // u = r^b [(a0 + a1 log r) sin + a1 theta cos]
        let a1 = c1 / s;
        let a0 = (c0 - a1 * w * c) / s;
        if c1 == 0.0 {
            vec![a0]
        } else {
            vec![a0, a1]
        }
    } else {
        // a1 from c0, a2 = c1 / (2 w cos)
        let a2 = c1 / (2.0 * w * c);
        let a1 = c0 / (w * c);
        if c1 == 0.0 {
            vec![0.0, a1]
        } else {
            vec![0.0, a1, a2]
        }
    }
}

#[test]
fn dd_terms_match_explicit_dirichlet_solutions() {
    let configs = [dd(q(1, 1), q(-5, 3)), dd(q(1, 1), q(-3, 2)), dd(q(1, 2), q(1, 2)), dd(q(3, 2), q(-7, 3))];
    let mut compared = 0;
    for c in configs {
        let s = build_series(&c, 1, 6).unwrap();
        let w = c.omega();
        for k in 1..s.terms.len() {
            let prev = single_term(&s, k - 1);
            let t = &s.terms[k];
            let prev_l = s.terms[k - 1].log_degree();
            if prev_l > 1 {
                continue;
            }
            // boundary data: gamma r^alpha u^(k) = -(1/r) du^(k-1)/dtheta at omega
            let data = |r: f64| -eval_series(&prev, r, w).unwrap().u_theta_over_r / (c.gamma * r.powf(c.alpha.value()));
            let (r1, r2) = (0.5f64, 2.0f64);
            let (d1, d2) = (data(r1) / r1.powf(t.exponent), data(r2) / r2.powf(t.exponent));
            let c1 = if prev_l == 0 { 0.0 } else { (d2 - d1) / (r2.ln() - r1.ln()) };
            let c0 = d1 - c1 * r1.ln();
            let want = dirichlet_log_solution(t.exponent, w, c0, c1, t.augmented);
            assert_eq!(want.len(), t.coeffs.len(), "{c:?} k={k}");
            for (a, b) in t.coeffs.iter().zip(&want) {
                assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "{c:?} k={k}: {:?} vs {want:?}", t.coeffs);
            }
            compared += 1;
        }
    }
    assert!(compared >= 8, "{compared}");
}

#[test]
fn dd_general_log_system_matches() {
    // Generic system for data r^b sum c_i log^i r: M a = c with
    // M[i][l] = C(l, i) w^(l-i) d^(l-i)/dtheta^(l-i) sin(b theta)|_w / b^(l-i).
    let c = dd(q(1, 1), q(-5, 3));
    let s = build_series(&c, 1, 10).unwrap();
    let w = c.omega();
    for k in 1..s.terms.len() {
        let t = &s.terms[k];
        let prev = single_term(&s, k - 1);
        let n = t.coeffs.len();
        let data = |r: f64| -eval_series(&prev, r, w).unwrap().u_theta_over_r / (c.gamma * r.powf(c.alpha.value()) * r.powf(t.exponent));
        // reconstruct c_0..c_{n-1} from n samples of a polynomial in log r
        let logs: Vec<f64> = (0..n).map(|i| 0.4 + 0.5 * i as f64).collect();
        let mut a = vec![vec![0.0; n + 1]; n];
        for (i, x) in logs.iter().enumerate() {
            for (p, cell) in a[i].iter_mut().take(n).enumerate() {
                *cell = x.powi(p as i32);
            }
            a[i][n] = data(x.exp());
        }
        let cs = gauss(a);
        let b = t.exponent;
        let binom = |n: usize, k: usize| (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
        for i in 0..n {
            let got: f64 = (i..n)
                .map(|l| {
                    let d = l - i;
                    let deriv = b.powi(d as i32) * (b * w + d as f64 * std::f64::consts::FRAC_PI_2).sin();
                    binom(l, i) * w.powi(d as i32) * deriv / b.powi(d as i32) * t.coeffs[l]
                })
                .sum();
            assert!((got - cs[i]).abs() <= 1e-8 * cs[i].abs().max(1.0), "k={k} row {i}: {got} vs {}", cs[i]);
        }
    }
}

fn gauss(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for i in 0..n {
        let piv = (i..n).max_by(|&x, &y| a[x][i].abs().total_cmp(&a[y][i].abs())).unwrap();
        a.swap(i, piv);
        for r in i + 1..n {
            let f = a[r][i] / a[i][i];
            for c in i..=n {
                a[r][c] -= f * a[i][c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        x[i] = (a[i][n] - (i + 1..n).map(|j| a[i][j] * x[j]).sum::<f64>()) / a[i][i];
    }
    x
}
