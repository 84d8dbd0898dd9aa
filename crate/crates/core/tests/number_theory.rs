mod common;

use common::{gcd, q};
use proptest::prelude::*;
use robin_corner::exactq::{
    classify, fraction_form, is_cos_zero, is_lambda_shift_zero, is_sin_zero, Approach, CornerConfig, FractionForm, Rational,
    Real, SeriesKind,
};

fn ex(r: Rational) -> Real {
    Real::Exact(r)
}

#[test]
fn b0_no_sine_zero_before_q() {
    for p in 1..=50i64 {
        for qq in 1..=50i64 {
            if gcd(2 * p - 1, 2 * qq) != 1 {
                continue;
            }
            let rho = ex(q(2 * p - 1, 2 * qq));
            for k in 1..=qq as u32 {
                assert!(!is_sin_zero(k, &rho), "p={p} q={qq} k={k}");
            }
        }
    }
}

#[test]
fn b1_b2_triggers_are_exclusive() {
    for j in 1..=50i64 {
        for k in 1..=50u32 {
            let rho = ex(q(-(2 * j - 1), 2 * k as i64));
            assert!(is_lambda_shift_zero(Approach::DirichletNeumann, j as u32, k, &rho));
            assert!(!is_sin_zero(k, &rho), "sin zero at j={j} k={k}");
            assert!(!is_cos_zero(k - 1, &rho), "cos zero at j={j} k={k}");
        }
    }
}

#[test]
fn b4_partial_sums_converge() {
    for i in 1..200 {
        let r = i as f64 / 200.0;
        let x = r * r.ln().abs();
        assert!(x < 1.0);
        let limit = 1.0 / (1.0 - x);
        let partial: f64 = (0..400).map(|n| x.powi(n)).sum();
        assert!((partial - limit).abs() <= 1e-12 * limit);
    }
}

// What the tables say for one reduced rho (realised at omega = pi, so
// alpha + 1 = rho) and j, from raw numerator and denominator.
fn expected(approach: Approach, n: i64, d: i64, j: u32) -> (SeriesKind, bool, bool) {
    let dn = approach == Approach::DirichletNeumann;
    let positive = n > 0;
    let natural = dn == positive;
    if d % 2 == 0 {
        let p = ((n.abs() + 1) / 2) as u32;
        let qq = (d / 2) as u32;
        if natural {
            return (SeriesKind::FiniteExact { last: qq }, true, true);
        }
        if dn {
            if j == p {
                return (SeriesKind::InfiniteWithLog { period: 2 * qq }, false, false);
            }
            return (SeriesKind::FiniteExact { last: qq }, true, j > p);
        }
        return (SeriesKind::FiniteExact { last: qq }, true, j >= p);
    }
    (SeriesKind::InfiniteWithLog { period: d as u32 }, natural, natural)
}

#[test]
fn classification_snapshot() {
    let mut seen = 0;
    for d in 1..=20i64 {
        for n in -20..=20i64 {
            if n == 0 || gcd(n, d) != 1 {
                continue;
            }
            let alpha = &q(n, d) - &Rational::one();
            for approach in [Approach::DirichletNeumann, Approach::DirichletDirichlet] {
                let c = CornerConfig::exact(q(1, 1), alpha.clone(), 1.0, approach).unwrap();
                for j in 1..=6 {
                    let got = classify(&c, j).unwrap();
                    let (kind, conv, finite) = expected(approach, n, d, j);
                    assert_eq!(got.series_kind, kind, "rho={n}/{d} {approach:?} j={j}");
                    assert_eq!(got.converges_near_zero, conv, "rho={n}/{d} {approach:?} j={j}");
                    assert_eq!(got.energy.is_finite_for(j), finite, "rho={n}/{d} {approach:?} j={j}");
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 5000);
}

#[test]
fn spec_predicate_examples() {
    assert!(!is_sin_zero(1, &ex(q(5, 4))));
    assert!(is_sin_zero(2, &ex(q(-1, 2))));
    assert!(is_sin_zero(3, &ex(q(-2, 3))));
    assert!(is_cos_zero(1, &ex(q(1, 2))));
    assert!(!is_cos_zero(1, &ex(q(5, 4))));
    assert!(is_cos_zero(2, &ex(q(-3, 4))));
    assert!(is_lambda_shift_zero(Approach::DirichletNeumann, 2, 2, &ex(q(-3, 4))));
    assert!(!is_lambda_shift_zero(Approach::DirichletNeumann, 1, 1, &ex(q(5, 4))));
    assert!(is_lambda_shift_zero(Approach::DirichletDirichlet, 1, 2, &ex(q(1, 2))));
    assert_eq!(fraction_form(&ex(q(5, 4))).unwrap(), FractionForm::OddOverEven { p: 3, q: 2, negative: false });
    assert_eq!(fraction_form(&ex(q(2, 1))).unwrap(), FractionForm::AnyOverOdd { p: 2, q: 1 });
    assert_eq!(fraction_form(&ex(q(-3, 4))).unwrap(), FractionForm::OddOverEven { p: 2, q: 2, negative: true });
}

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #[test]
    fn addition_associates(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_associates(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn stored_reduced(n in -10_000i64..10_000, d in 1i64..10_000, m in 1i64..50) {
        let a = q(n * m, d * m);
        prop_assert_eq!(&a, &q(n, d));
        let (nn, dd) = a.to_i64_pair().unwrap();
        prop_assert!(dd > 0);
        prop_assert_eq!(gcd(nn, dd), 1);
        prop_assert_eq!(q(nn, dd), a);
    }

    #[test]
    fn order_is_total_and_matches_floats(a in rational(), b in rational()) {
        let ord = a.cmp(&b);
        prop_assert_eq!(ord.reverse(), b.cmp(&a));
        if (a.to_f64() - b.to_f64()).abs() > 1e-9 {
            prop_assert_eq!(ord, a.to_f64().total_cmp(&b.to_f64()));
        }
        prop_assert_eq!(ord == std::cmp::Ordering::Equal, a == b);
    }

    #[test]
    fn string_round_trip(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }
}
