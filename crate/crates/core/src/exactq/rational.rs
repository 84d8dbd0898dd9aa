use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Exact rational number, always stored reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`. Fails when `den == 0`.
    pub fn new(num: i64, den: i64) -> Result<Rational, Error> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn from_integer(n: i64) -> Rational {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rational, Error> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    /// Greatest integer not above `self`.
    pub fn floor(&self) -> Rational {
        Rational(self.0.floor())
    }

    /// `self mod m` in `[0, m)` for positive `m`.
    pub fn rem_euclid(&self, m: &Rational) -> Rational {
        let q = (&self.0 / &m.0).floor();
        Rational(&self.0 - q * &m.0)
    }

    /// Nearest double (correctly rounded by `num-rational`).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Numerator and denominator as `i64`, if they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.numer().to_i64()?, self.denom().to_i64()?))
    }

    pub fn mul_int(&self, k: i64) -> Rational {
        Rational(&self.0 * BigInt::from(k))
    }

    pub(crate) fn denom_is_even(&self) -> bool {
        self.denom().is_even()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"p/q"` or a bare integer `"p"`. Decimal points are rejected.
    fn from_str(s: &str) -> Result<Rational, Error> {
        let bad = || Error::Parse(format!("not a rational `p/q`: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// A real number that is either exactly rational or declared irrational.
///
/// Declared-irrational values carry a float for numerics but never take part
/// in structural zero decisions.
#[derive(Clone, Debug, PartialEq)]
pub enum Real {
    Exact(Rational),
    Irrational(f64),
}

impl Real {
    pub fn value(&self) -> f64 {
        match self {
            Real::Exact(q) => q.to_f64(),
            Real::Irrational(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Real::Exact(q) => Some(q),
            Real::Irrational(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn add(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            _ => Real::Irrational(self.value() + other.value()),
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(-a),
            Real::Irrational(x) => Real::Irrational(-x),
        }
    }

    /// Product; an exact zero factor keeps the result exact.
    pub fn mul(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            (Real::Exact(a), _) | (_, Real::Exact(a)) if a.is_zero() => Real::Exact(Rational::zero()),
            _ => Real::Irrational(self.value() * other.value()),
        }
    }

    pub fn mul_int(&self, k: i64) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(a.mul_int(k)),
            Real::Irrational(x) => Real::Irrational(*x * k as f64),
        }
    }

    pub fn add_rational(&self, q: &Rational) -> Real {
        self.add(&Real::Exact(q.clone()))
    }

    /// Sign comparison with zero. Declared irrationals use their float.
    pub fn cmp_zero(&self) -> Ordering {
        match self {
            Real::Exact(a) => a.cmp(&Rational::zero()),
            Real::Irrational(x) => x.partial_cmp(&0.0).unwrap_or(Ordering::Equal),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) => write!(f, "{q}"),
            Real::Irrational(x) => write!(f, "{x} (irrational)"),
        }
    }
}

/// `sin(pi x)`, returning exact `0` and `±1` at the quarter points.
///
/// Exact arguments are reduced modulo 2 before any float work.
pub fn sin_pi(x: &Real) -> f64 {
    match x {
        Real::Exact(q) => {
            let two = Rational::from_integer(2);
            let r = q.rem_euclid(&two);
            let half = Rational::new(1, 2).unwrap();
            if r.is_zero() || r == Rational::one() {
                0.0
            } else if r == half {
                1.0
            } else if r == Rational::new(3, 2).unwrap() {
                -1.0
            } else {
                sin_pi_reduced(r.to_f64())
            }
        }
        Real::Irrational(v) => sin_pi_reduced(v.rem_euclid(2.0)),
    }
}

/// `cos(pi x)` with the same exact handling as [`sin_pi`].
pub fn cos_pi(x: &Real) -> f64 {
    sin_pi(&x.add_rational(&Rational::new(1, 2).unwrap()))
}

// t in [0, 2); fold to [-1/2, 1/2] for accuracy.
fn sin_pi_reduced(t: f64) -> f64 {
    let (t, sign) = if t > 1.0 { (t - 1.0, -1.0) } else { (t, 1.0) };
    let t = if t > 0.5 { 1.0 - t } else { t };
    sign * (std::f64::consts::PI * t).sin()
}
