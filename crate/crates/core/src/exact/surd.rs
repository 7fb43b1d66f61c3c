use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::{Precision, PrecisionReal};

pub(crate) fn is_squarefree(n: &BigInt) -> bool {
    if !n.is_positive() {
        return false;
    }
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            m /= &p;
            if (&m % &p).is_zero() {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Exact `a + b√d` with rational `a`, `b` and squarefree `d > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

impl QuadraticSurd {
    pub fn new(a: BigRational, b: BigRational, d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d <= BigInt::one() || !is_squarefree(&d) {
            return Err(Error::domain("QuadraticSurd", format!("radicand {d} is not a squarefree integer > 1")));
        }
        Ok(QuadraticSurd { a, b, d })
    }

    /// `(a + b√d) / den` from small integers. Panics on invalid `d` or `den == 0`.
    pub fn from_ints(a: i64, b: i64, den: i64, d: i64) -> Self {
        let den = BigInt::from(den);
        Self::new(
            BigRational::new(a.into(), den.clone()),
            BigRational::new(b.into(), den),
            d,
        )
        .expect("valid radicand")
    }

    pub fn rational(q: BigRational, d: impl Into<BigInt>) -> Result<Self> {
        Self::new(q, BigRational::zero(), d)
    }

    pub fn one(d: impl Into<BigInt>) -> Result<Self> {
        Self::rational(BigRational::one(), d)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// a² − d·b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from(self.d.clone()) * &self.b * &self.b
    }

    pub fn trace(&self) -> BigRational {
        &self.a * BigRational::from_integer(2.into())
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// The rational value when `b == 0`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// conjugate / norm.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::domain("QuadraticSurd::inverse", "zero norm"));
        }
        let c = self.conjugate();
        Ok(QuadraticSurd {
            a: c.a / &n,
            b: c.b / &n,
            d: c.d,
        })
    }

    /// Exact integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.d.clone())?;
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn to_real(&self, prec: Precision) -> PrecisionReal {
        let work = prec.guarded(4);
        let root = PrecisionReal::from_int(self.d.clone(), work).sqrt().expect("d > 0");
        let v = PrecisionReal::from_rational(&self.a, work) + root.mul_rational(&self.b);
        v.with_precision(prec)
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "surds from different quadratic fields");
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        let b = self.b.abs();
        let b = if b.is_one() { String::new() } else { format!("{b}*") };
        if self.a.is_zero() {
            write!(f, "{}{b}sqrt({})", if sign == "-" { "-" } else { "" }, self.d)
        } else {
            write!(f, "{} {sign} {b}sqrt({})", self.a, self.d)
        }
    }
}

impl Add for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn add(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        self.check_same_field(rhs);
        QuadraticSurd {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: self.d.clone(),
        }
    }
}

impl Sub for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn sub(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        self.check_same_field(rhs);
        QuadraticSurd {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d: self.d.clone(),
        }
    }
}

impl Mul for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn mul(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        self.check_same_field(rhs);
        let d = BigRational::from(self.d.clone());
        QuadraticSurd {
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d.clone(),
        }
    }
}

impl Neg for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        QuadraticSurd {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u29() -> QuadraticSurd {
        QuadraticSurd::from_ints(5, 1, 2, 29)
    }

    #[test]
    fn norm_of_u29_is_minus_one() {
        assert_eq!(u29().norm(), BigRational::from_integer((-1).into()));
    }

    #[test]
    fn powers_of_u29() {
        assert_eq!(u29().pow(3).unwrap(), QuadraticSurd::from_ints(70, 13, 1, 29));
        assert_eq!(u29().pow(6).unwrap(), QuadraticSurd::from_ints(9801, 1820, 1, 29));
        assert_eq!(u29().pow(0).unwrap(), QuadraticSurd::one(29).unwrap());
        assert_eq!(u29().pow(-6).unwrap(), QuadraticSurd::from_ints(9801, -1820, 1, 29));
        assert_eq!(u29().pow(2).unwrap(), QuadraticSurd::from_ints(27, 5, 2, 29));
    }

    #[test]
    fn inverse_of_zero_norm_fails() {
        let zero = QuadraticSurd::rational(BigRational::zero(), 29).unwrap();
        assert!(zero.inverse().is_err());
        assert!(zero.pow(-1).is_err());
    }

    #[test]
    fn rejects_non_squarefree_radicand() {
        assert!(QuadraticSurd::one(12).is_err());
        assert!(QuadraticSurd::one(1).is_err());
        assert!(QuadraticSurd::one(58).is_ok());
    }

    #[test]
    fn display() {
        assert_eq!(u29().to_string(), "5/2 + 1/2*sqrt(29)");
        assert_eq!(QuadraticSurd::from_ints(70, -13, 1, 29).to_string(), "70 - 13*sqrt(29)");
    }

    #[test]
    fn embedding() {
        let p = Precision::new(30);
        let v = u29().to_real(p);
        assert_eq!(v.to_fixed(20), "5.19258240356725201562");
    }
}
