//! Exact rationals and exact complex numbers with rational parts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number used for every exact computation.
pub type Q = BigRational;

/// Rational from an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `n / d`; panics if `d == 0`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (whitespace tolerated).
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::BadInput(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::BadInput(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// Canonical `"p/q"` form (denominator always present, reduced, positive).
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Short display form: integers without a denominator.
pub fn show_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        fmt_q(x)
    }
}

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CQ {
    pub re: Q,
    pub im: Q,
}

impl CQ {
    pub fn new(re: Q, im: Q) -> Self {
        CQ { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        CQ::new(q(re), q(im))
    }

    pub fn zero() -> Self {
        CQ::new(Q::zero(), Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, k: &Q) -> CQ {
        CQ::new(&self.re * k, &self.im * k)
    }

    /// `Re(self)·Im(other) − Im(self)·Re(other)`; positive iff `other` is
    /// counterclockwise from `self` by less than a half turn.
    pub fn cross(&self, other: &CQ) -> Q {
        &self.re * &other.im - &self.im * &other.re
    }

    /// True iff the phase lies in `(0, π]`: `Im > 0`, or `Im = 0` and `Re < 0`.
    pub fn is_admissible(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }

    /// Floating-point argument, for diagnostics and float cross-checks only.
    pub fn arg_f64(&self) -> f64 {
        let re = to_f64(&self.re);
        let im = to_f64(&self.im);
        im.atan2(re)
    }

    /// Parses `"RE,IM"` with each part a rational.
    pub fn parse_pair(s: &str) -> Result<CQ> {
        let (re, im) = s
            .split_once(',')
            .ok_or_else(|| Error::BadInput(format!("expected RE,IM but got {s:?}")))?;
        Ok(CQ::new(parse_q(re)?, parse_q(im)?))
    }
}

impl fmt::Display for CQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}i", show_q(&self.re), sign, show_q(&self.im.abs()))
    }
}

impl Add for &CQ {
    type Output = CQ;
    fn add(self, rhs: &CQ) -> CQ {
        CQ::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &CQ {
    type Output = CQ;
    fn sub(self, rhs: &CQ) -> CQ {
        CQ::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &CQ {
    type Output = CQ;
    fn mul(self, rhs: &CQ) -> CQ {
        CQ::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &CQ {
    type Output = CQ;
    fn neg(self) -> CQ {
        CQ::new(-&self.re, -&self.im)
    }
}

/// Lossy conversion for diagnostics.
pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn denom_lcm<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num_integer::Integer;
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Greatest common divisor of the numerators of `xs` (0 for all-zero input).
pub fn numer_gcd<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num_integer::Integer;
    xs.into_iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "5", "0", " 10/4 "] {
            let x = parse_q(s).unwrap();
            assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
        }
        assert_eq!(fmt_q(&parse_q("10/4").unwrap()), "5/2");
        assert_eq!(fmt_q(&q(3)), "3/1");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn complex_arithmetic() {
        let u = CQ::from_ints(1, 1);
        let v = CQ::from_ints(-1, 2);
        assert_eq!(&u + &v, CQ::from_ints(0, 3));
        assert_eq!(&u * &v, CQ::from_ints(-3, 1));
        assert_eq!(u.cross(&v), q(3));
        assert!(CQ::from_ints(-1, 0).is_admissible());
        assert!(!CQ::from_ints(1, 0).is_admissible());
        assert_eq!(CQ::parse_pair("-1,2").unwrap(), v);
    }
}
