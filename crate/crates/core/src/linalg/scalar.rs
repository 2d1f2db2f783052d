//! Exact p-local scalars: rationals whose denominator is prime to `p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of the localisation of the integers at a prime.
///
/// The prime itself is not stored; every operation that depends on it takes
/// `p` explicitly. The fraction is always kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
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

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Whether the denominator is prime to `p`.
    pub fn is_plocal(&self, p: u64) -> bool {
        !self.0.denom().is_multiple_of(&BigInt::from(p))
    }

    /// The p-adic valuation; `None` for zero.
    pub fn valuation(&self, p: u64) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        debug_assert!(self.is_plocal(p), "scalar {self} is not {p}-local");
        Some(int_valuation(self.0.numer(), p))
    }

    pub fn is_unit(&self, p: u64) -> bool {
        self.valuation(p) == Some(0)
    }

    /// Multiplicative inverse, defined only for p-local units.
    pub fn inverse_unit(&self, p: u64) -> Option<Scalar> {
        if self.is_unit(p) {
            Some(Scalar(self.0.recip()))
        } else {
            None
        }
    }

    /// Divides by `p^e`; the caller guarantees the valuation is at least `e`.
    pub fn div_p_pow(&self, p: u64, e: u32) -> Scalar {
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        debug_assert!(self.valuation(p).unwrap() >= e);
        let q = BigInt::from(p).pow(e);
        Scalar(BigRational::new(self.0.numer() / q, self.0.denom().clone()))
    }

    /// Exact quotient `self / other`, provided it stays p-local.
    pub fn div_exact(&self, other: &Scalar, p: u64) -> Option<Scalar> {
        if other.is_zero() {
            return None;
        }
        let q = Scalar(&self.0 / &other.0);
        if q.is_plocal(p) {
            Some(q)
        } else {
            None
        }
    }

    /// The unit part `u` of `self = p^v u`.
    pub fn unit_part(&self, p: u64) -> Scalar {
        match self.valuation(p) {
            None => Scalar::zero(),
            Some(v) => self.div_p_pow(p, v),
        }
    }

    pub fn p_pow(p: u64, e: u32) -> Scalar {
        Scalar::from_bigint(BigInt::from(p).pow(e))
    }

    pub fn pow(&self, e: i64) -> Scalar {
        if e >= 0 {
            Scalar(num_traits::pow::Pow::pow(&self.0, e as u32))
        } else {
            Scalar(num_traits::pow::Pow::pow(&self.0.recip(), (-e) as u32))
        }
    }

    /// Canonical integer representative in `[0, p^e)` of the class mod `p^e`.
    pub fn reduce_mod_p_pow(&self, p: u64, e: u32) -> Scalar {
        let m = BigInt::from(p).pow(e);
        let num = self.0.numer().mod_floor(&m);
        let den = self.0.denom().mod_floor(&m);
        let inv = mod_inverse(&den, &m).expect("denominator must be prime to p");
        Scalar::from_bigint((num * inv).mod_floor(&m))
    }

    /// Whether `self ≡ 0 (mod p^e)` in the p-local integers.
    pub fn divisible_by_p_pow(&self, p: u64, e: u32) -> bool {
        match self.valuation(p) {
            None => true,
            Some(v) => v >= e,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn assert_plocal(&self, p: u64) {
        assert!(self.is_plocal(p), "scalar {self} has denominator divisible by {p}");
    }
}

pub(crate) fn int_valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    v
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else if m.is_one() {
        Some(BigInt::zero())
    } else {
        None
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar {s:?}"));
        match s.split_once('/') {
            None => Ok(Scalar::from_bigint(s.parse().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: Scalar = "-6/4".parse().unwrap();
        assert_eq!(s.to_string(), "-3/2");
        assert_eq!("7".parse::<Scalar>().unwrap(), Scalar::from_int(7));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn valuation_and_units() {
        let p = 3;
        assert_eq!(Scalar::from_int(18).valuation(p), Some(2));
        assert_eq!(Scalar::ratio(9, 2).valuation(p), Some(2));
        assert!(Scalar::from_int(2).is_unit(p));
        assert!(!Scalar::from_int(6).is_unit(p));
        assert_eq!(Scalar::zero().valuation(p), None);
        assert!(!Scalar::ratio(1, 3).is_plocal(p));
    }

    #[test]
    fn reduction_mod_prime_power() {
        // 1/2 mod 9 = 5
        assert_eq!(Scalar::ratio(1, 2).reduce_mod_p_pow(3, 2), Scalar::from_int(5));
        assert_eq!(Scalar::from_int(-1).reduce_mod_p_pow(3, 1), Scalar::from_int(2));
        assert_eq!(Scalar::from_int(5).reduce_mod_p_pow(3, 0), Scalar::zero());
    }
}
