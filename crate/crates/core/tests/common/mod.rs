#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robin_corner::exactq::{AngleSpec, Approach, CornerConfig, Rational, Real};
use robin_corner::series::{build_series, AsymptoticSeries};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

pub fn dn(w: Rational, a: Rational) -> CornerConfig {
    CornerConfig::exact(w, a, 1.0, Approach::DirichletNeumann).unwrap()
}

pub fn dd(w: Rational, a: Rational) -> CornerConfig {
    CornerConfig::exact(w, a, 1.0, Approach::DirichletDirichlet).unwrap()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// An apparent critical configuration with `rho = sign (2p-1)/(2q)`.
#[derive(Clone, Debug)]
pub struct ApparentCase {
    pub config: CornerConfig,
    pub p: u32,
    pub q: u32,
    pub negative: bool,
}

/// Every reduced `(2p-1)/(2q)` with `p, q <= n`, both signs, both
/// approaches, realised at each angle in `angles` (`omega/pi`). The sign
/// picks the side of `alpha = -1`.
pub fn apparent_cases(n: u32, angles: &[Rational], gamma: f64) -> Vec<ApparentCase> {
    let mut out = Vec::new();
    for p in 1..=n as i64 {
        for qq in 1..=n as i64 {
            if gcd(2 * p - 1, 2 * qq) != 1 {
                continue;
            }
            for negative in [false, true] {
                let rho = if negative { q(-(2 * p - 1), 2 * qq) } else { q(2 * p - 1, 2 * qq) };
                for w in angles {
                    let alpha = &(&rho / w) - &Rational::one();
                    for approach in [Approach::DirichletNeumann, Approach::DirichletDirichlet] {
                        let config = CornerConfig::exact(w.clone(), alpha.clone(), gamma, approach).unwrap();
                        out.push(ApparentCase { config, p: p as u32, q: qq as u32, negative });
                    }
                }
            }
        }
    }
    out
}

/// The D-N `j = p` row of the `alpha < -1` table is the one apparent
/// critical pair that does not terminate.
pub fn admissible(case: &ApparentCase, j: u32) -> bool {
    !(case.negative && case.config.approach == Approach::DirichletNeumann && j == case.p)
}

/// A configuration from the randomized suite, with its `j` and term limit.
#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub config: CornerConfig,
    pub j: u32,
    pub max_terms: u32,
}

impl SuiteCase {
    pub fn build(&self) -> AsymptoticSeries {
        build_series(&self.config, self.j, self.max_terms)
            .unwrap_or_else(|e| panic!("{:?} j={} max={}: {e}", self.config, self.j, self.max_terms))
    }
}

const ANGLES: [(i64, i64); 8] = [(1, 3), (1, 2), (2, 3), (3, 4), (1, 1), (4, 3), (3, 2), (2, 1)];

fn random_alpha(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let d = rng.random_range(1..=6i64);
        let n = rng.random_range(-3 * d..=3 * d);
        let a = q(n, d);
        if a != Rational::from_integer(-1) {
            return a;
        }
    }
}

/// Seeded mix of rational and irrational `rho`, both approaches, at most
/// six shadow terms.
pub fn random_suite(n: usize, seed: u64) -> Vec<SuiteCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let approach = if i % 2 == 0 { Approach::DirichletNeumann } else { Approach::DirichletDirichlet };
            let gamma = rng.random_range(0.25..3.0);
            let config = match i % 4 {
                0 | 1 => {
                    let (a, b) = ANGLES[rng.random_range(0..ANGLES.len())];
                    CornerConfig::exact(q(a, b), random_alpha(&mut rng), gamma, approach).unwrap()
                }
                2 => {
                    let w = rng.random_range(0.3..6.2);
                    CornerConfig::new(AngleSpec::DeclaredIrrational(w), Real::Exact(random_alpha(&mut rng)), gamma, approach)
                        .unwrap()
                }
                _ => {
                    let (a, b) = ANGLES[rng.random_range(0..ANGLES.len())];
                    let mut alpha = rng.random_range(-2.8..2.8);
                    if (alpha + 1.0f64).abs() < 0.05 {
                        alpha += 0.3;
                    }
                    CornerConfig::new(AngleSpec::Exact(q(a, b)), Real::Irrational(alpha), gamma, approach).unwrap()
                }
            };
            SuiteCase { config, j: rng.random_range(1..=3), max_terms: rng.random_range(1..=7) }
        })
        .collect()
}

/// Interior sample points `(r, theta)`.
pub fn interior_points(omega: f64, n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (rng.random_range(0.1..2.0), omega * rng.random_range(0.05..0.95)))
        .collect()
}

/// The series consisting of a single term of `s`.
pub fn single_term(s: &AsymptoticSeries, k: usize) -> AsymptoticSeries {
    let mut t = s.clone();
    t.terms = vec![s.terms[k].clone()];
    t
}
