//! Exact rational scalars.
//!
//! Every computation in this crate runs over the rationals; there is no
//! floating point anywhere. `Scalar` wraps an arbitrary-precision rational
//! kept in canonical form (reduced, positive denominator), so equality is
//! literal equality.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// p/q with q != 0.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverting zero");
        Scalar(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// 1/n!, used by the alternation map.
    pub fn inv_factorial(n: usize) -> Self {
        let mut f = BigInt::one();
        for k in 2..=n {
            f *= BigInt::from(k);
        }
        Scalar(BigRational::new(BigInt::one(), f))
    }
}

impl fmt::Display for Scalar {
    /// `p` for integers, `p/q` otherwise; the form `parse_scalar` accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("bad rational literal {0:?}")]
pub struct ParseScalarError(String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n = BigInt::from_str(num).map_err(|_| ParseScalarError(s.to_string()))?;
        let d = match den {
            Some(d) => BigInt::from_str(d).map_err(|_| ParseScalarError(s.to_string()))?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(ParseScalarError(s.to_string()));
        }
        Ok(Scalar(BigRational::new(n, d)))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { Scalar(self.0 $op rhs.0) }
        }
        impl $tr for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { Scalar(&self.0 $op &rhs.0) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { Scalar(self.0 $op &rhs.0) }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

/// Sign (-1)^k for possibly negative exponents, e.g. the degree shifts
/// |p| = p - 1 that show up in operadic signs.
pub fn sign_pow(k: i64) -> Scalar {
    if k.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_and_parse() {
        let a: Scalar = "4/6".parse().unwrap();
        assert_eq!(a, Scalar::ratio(2, 3));
        assert_eq!(a.to_string(), "2/3");
        let b: Scalar = "-3/-9".parse().unwrap();
        assert_eq!(b, Scalar::ratio(1, 3));
        let c: Scalar = "7".parse().unwrap();
        assert_eq!(c.to_string(), "7");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Scalar::ratio(1, 2);
        let b = Scalar::ratio(1, 3);
        assert_eq!(&a + &b, Scalar::ratio(5, 6));
        assert_eq!(&a - &b, Scalar::ratio(1, 6));
        assert_eq!(&a * &b, Scalar::ratio(1, 6));
        assert_eq!(&a / &b, Scalar::ratio(3, 2));
        assert_eq!(a.inv(), Scalar::from_int(2));
        assert_eq!(-&b, Scalar::ratio(-1, 3));
    }

    #[test]
    fn signs_and_factorials() {
        assert_eq!(sign_pow(-1), -Scalar::one());
        assert_eq!(sign_pow(-2), Scalar::one());
        assert_eq!(sign_pow(3), -Scalar::one());
        assert_eq!(Scalar::inv_factorial(4), Scalar::ratio(1, 24));
        assert_eq!(Scalar::inv_factorial(0), Scalar::one());
    }
}
