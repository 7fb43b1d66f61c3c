use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::surd::is_squarefree;
use crate::error::{Error, Result};
use crate::kernel::{Precision, PrecisionReal};

/// Exact element `c0 + c1·√r + c2·√s + c3·√(rs)` of ℚ(√r, √s).
///
/// `r` and `s` are coprime squarefree integers > 1, so `rs` is squarefree and
/// the four basis elements are linearly independent over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiquadraticSurd {
    c: [BigRational; 4],
    r: i64,
    s: i64,
}

impl BiquadraticSurd {
    pub fn new(r: i64, s: i64, c: [BigRational; 4]) -> Result<Self> {
        let ok = r > 1
            && s > 1
            && r != s
            && r.gcd(&s) == 1
            && is_squarefree(&BigInt::from(r))
            && is_squarefree(&BigInt::from(s));
        if !ok {
            return Err(Error::domain(
                "BiquadraticSurd",
                format!("({r}, {s}) must be distinct coprime squarefree integers > 1"),
            ));
        }
        Ok(BiquadraticSurd { c, r, s })
    }

    /// From integer coefficients over a common denominator.
    pub fn from_ints(r: i64, s: i64, c: [i64; 4], den: i64) -> Result<Self> {
        let den = BigInt::from(den);
        Self::new(r, s, c.map(|x| BigRational::new(x.into(), den.clone())))
    }

    pub fn rational(r: i64, s: i64, q: BigRational) -> Result<Self> {
        Self::new(r, s, [q, BigRational::zero(), BigRational::zero(), BigRational::zero()])
    }

    pub fn coefficients(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn radicands(&self) -> (i64, i64) {
        (self.r, self.s)
    }

    /// The rational value when the three irrational coefficients vanish.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    /// √r ↦ −√r.
    pub fn conjugate_r(&self) -> Self {
        let [c0, c1, c2, c3] = self.c.clone();
        BiquadraticSurd { c: [c0, -c1, c2, -c3], r: self.r, s: self.s }
    }

    /// √s ↦ −√s.
    pub fn conjugate_s(&self) -> Self {
        let [c0, c1, c2, c3] = self.c.clone();
        BiquadraticSurd { c: [c0, c1, -c2, -c3], r: self.r, s: self.s }
    }

    /// Field norm to ℚ: the product of all four conjugates.
    pub fn norm(&self) -> BigRational {
        let p = self * &self.conjugate_r();
        let full = &p * &p.conjugate_s();
        full.as_rational().cloned().expect("norm is rational")
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::domain("BiquadraticSurd::inverse", "zero element"));
        }
        let cr = self.conjugate_r();
        let cs = self.conjugate_s();
        let crs = cr.conjugate_s();
        let adj = &(&cr * &cs) * &crs;
        Ok(BiquadraticSurd {
            c: adj.c.map(|x| x / &n),
            r: self.r,
            s: self.s,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::rational(self.r, self.s, BigRational::one())?;
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
        let root = |n: i64| PrecisionReal::from_int(n, work).sqrt().expect("positive");
        let basis = [
            PrecisionReal::one(work),
            root(self.r),
            root(self.s),
            root(self.r * self.s),
        ];
        let sum = self
            .c
            .iter()
            .zip(basis.iter())
            .fold(PrecisionReal::zero(work), |acc, (c, b)| acc + b.mul_rational(c));
        sum.with_precision(prec)
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!((self.r, self.s), (other.r, other.s), "elements of different fields");
    }
}

impl fmt::Display for BiquadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [
            String::new(),
            format!("*sqrt({})", self.r),
            format!("*sqrt({})", self.s),
            format!("*sqrt({})", self.r * self.s),
        ];
        let parts: Vec<String> = self
            .c
            .iter()
            .zip(names.iter())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("({c}){n}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for &BiquadraticSurd {
    type Output = BiquadraticSurd;
    fn add(self, rhs: &BiquadraticSurd) -> BiquadraticSurd {
        self.check_same_field(rhs);
        let c = std::array::from_fn(|i| &self.c[i] + &rhs.c[i]);
        BiquadraticSurd { c, r: self.r, s: self.s }
    }
}

impl Sub for &BiquadraticSurd {
    type Output = BiquadraticSurd;
    fn sub(self, rhs: &BiquadraticSurd) -> BiquadraticSurd {
        self.check_same_field(rhs);
        let c = std::array::from_fn(|i| &self.c[i] - &rhs.c[i]);
        BiquadraticSurd { c, r: self.r, s: self.s }
    }
}

impl Neg for &BiquadraticSurd {
    type Output = BiquadraticSurd;
    fn neg(self) -> BiquadraticSurd {
        BiquadraticSurd { c: self.c.clone().map(|x| -x), r: self.r, s: self.s }
    }
}

impl Mul for &BiquadraticSurd {
    type Output = BiquadraticSurd;
    fn mul(self, rhs: &BiquadraticSurd) -> BiquadraticSurd {
        self.check_same_field(rhs);
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &rhs.c;
        let r = BigRational::from_integer(self.r.into());
        let s = BigRational::from_integer(self.s.into());
        let rs = &r * &s;
        // √r·√s = √(rs), √r·√(rs) = r√s, √s·√(rs) = s√r
        let c0 = a0 * b0 + &r * a1 * b1 + &s * a2 * b2 + &rs * a3 * b3;
        let c1 = a0 * b1 + a1 * b0 + &s * (a2 * b3 + a3 * b2);
        let c2 = a0 * b2 + a2 * b0 + &r * (a1 * b3 + a3 * b1);
        let c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
        BiquadraticSurd { c: [c0, c1, c2, c3], r: self.r, s: self.s }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn arb_elem() -> impl Strategy<Value = BiquadraticSurd> {
        prop::array::uniform4(-1000i64..=1000).prop_map(|c| BiquadraticSurd::from_ints(2, 29, c, 1).unwrap())
    }

    #[test]
    fn basis_products() {
        let root2 = BiquadraticSurd::from_ints(2, 29, [0, 1, 0, 0], 1).unwrap();
        let root29 = BiquadraticSurd::from_ints(2, 29, [0, 0, 1, 0], 1).unwrap();
        let root58 = BiquadraticSurd::from_ints(2, 29, [0, 0, 0, 1], 1).unwrap();
        assert_eq!((&root2 * &root2).as_rational(), Some(&q(2)));
        assert_eq!((&root58 * &root58).as_rational(), Some(&q(58)));
        assert_eq!(&root2 * &root29, root58);
        assert_eq!(&root2 * &root58, BiquadraticSurd::from_ints(2, 29, [0, 0, 2, 0], 1).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let x = BiquadraticSurd::from_ints(2, 29, [3, -1, 2, 5], 7).unwrap();
        let one = &x * &x.inverse().unwrap();
        assert_eq!(one.as_rational(), Some(&q(1)));
        let zero = BiquadraticSurd::rational(2, 29, q(0)).unwrap();
        assert!(zero.inverse().is_err());
    }

    #[test]
    fn rejects_bad_radicands() {
        assert!(BiquadraticSurd::rational(2, 8, q(1)).is_err());
        assert!(BiquadraticSurd::rational(6, 10, q(1)).is_err());
        assert!(BiquadraticSurd::rational(3, 3, q(1)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn embedding_is_multiplicative(a in arb_elem(), b in arb_elem()) {
            let p = Precision::new(30);
            let lhs = (&a * &b).to_real(p);
            let rhs = &a.to_real(p) * &b.to_real(p);
            prop_assert!(lhs.within_pow10(&rhs, -28));
        }
    }
}
