//! Precision-controlled real arithmetic.
//!
//! [`PrecisionReal`] is a binary fixed-point number: an arbitrary-size integer
//! mantissa over `2^bits`, where `bits` is derived from the value's
//! [`Precision`]. Each value targets an absolute error of at most
//! `10^(-digits)`; the mantissa carries [`BASE_GUARD_DIGITS`] extra decimal
//! digits so that chains of operations stay inside that contract.
//!
//! Binary operations on values of different precision produce a result at the
//! smaller of the two. Comparisons never hide a tolerance: use
//! [`PrecisionReal::within`] or [`PrecisionReal::abs_diff`].

pub(crate) mod fixed;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Guard digits carried by every value beyond its nominal precision.
pub const BASE_GUARD_DIGITS: u32 = 10;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Target accuracy in decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    /// Panics when `digits == 0`; see [`Precision::try_new`].
    pub const fn new(digits: u32) -> Self {
        assert!(digits >= 1, "precision must be at least one digit");
        Precision { digits }
    }

    pub fn try_new(digits: u32) -> Result<Self> {
        if digits == 0 {
            return Err(Error::domain("Precision", "digits must be >= 1"));
        }
        Ok(Precision { digits })
    }

    pub const fn digits(self) -> u32 {
        self.digits
    }

    /// Fractional bits used by the mantissa of a value at this precision.
    pub fn bits(self) -> u64 {
        ((self.digits + BASE_GUARD_DIGITS) as f64 * LOG2_10).ceil() as u64 + 4
    }

    pub fn guarded(self, extra: u32) -> Self {
        Precision {
            digits: self.digits + extra,
        }
    }

    /// Working precision for a computation that composes `terms` operations:
    /// `ceil(log10(terms))` digits on top of the base guard.
    pub fn for_terms(self, terms: u64) -> Self {
        let extra = (terms.max(1) as f64).log10().ceil() as u32;
        self.guarded(extra)
    }

    pub fn min(self, other: Precision) -> Precision {
        if self.digits <= other.digits {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} digits", self.digits)
    }
}

/// A real number tagged with the precision it was computed to.
#[derive(Clone)]
pub struct PrecisionReal {
    mant: BigInt,
    prec: Precision,
}

impl PrecisionReal {
    pub(crate) fn from_mantissa(mant: BigInt, prec: Precision) -> Self {
        PrecisionReal { mant, prec }
    }

    pub(crate) fn mantissa_at(&self, bits: u64) -> BigInt {
        fixed::rescale(&self.mant, self.prec.bits(), bits)
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_mantissa(BigInt::zero(), prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(v: impl Into<BigInt>, prec: Precision) -> Self {
        Self::from_mantissa(v.into() << prec.bits(), prec)
    }

    /// `num / den`, correctly rounded. Panics if `den == 0`.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, prec: Precision) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "from_ratio: zero denominator");
        let m = fixed::div_round_int(&(num.into() << prec.bits()), &den);
        Self::from_mantissa(m, prec)
    }

    pub fn from_rational(q: &BigRational, prec: Precision) -> Self {
        Self::from_ratio(q.numer().clone(), q.denom().clone(), prec)
    }

    /// Exact conversion of a finite `f64` (rounded to the mantissa grid).
    pub fn from_f64(v: f64, prec: Precision) -> Self {
        assert!(v.is_finite(), "from_f64: non-finite input");
        let q = BigRational::from_float(v).expect("finite");
        Self::from_rational(&q, prec)
    }

    /// Parse a decimal literal such as `-12.5e-3`.
    pub fn parse(s: &str, prec: Precision) -> Result<Self> {
        let bad = || Error::domain("PrecisionReal::parse", format!("not a decimal literal: {s:?}"));
        let s = s.trim();
        let (body, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (negative, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, body.strip_prefix('+').unwrap_or(body)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let scale = exp - frac_part.len() as i64;
        let ten = BigInt::from(10);
        Ok(if scale >= 0 {
            Self::from_int(num * num_traits::pow(ten, scale as usize), prec)
        } else {
            Self::from_ratio(num, num_traits::pow(ten, (-scale) as usize), prec)
        })
    }

    /// `10^e`.
    pub fn pow10(e: i32, prec: Precision) -> Self {
        let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_int(p, prec)
        } else {
            Self::from_ratio(1, p, prec)
        }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Re-tag at another precision. Raising the precision of an inexact value
    /// does not make it more accurate.
    pub fn with_precision(&self, prec: Precision) -> Self {
        Self::from_mantissa(self.mantissa_at(prec.bits()), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self::from_mantissa(self.mant.abs(), self.prec)
    }

    pub fn to_f64(&self) -> f64 {
        fixed::to_f64(&self.mant, self.prec.bits())
    }

    /// |self − other|.
    pub fn abs_diff(&self, other: &PrecisionReal) -> PrecisionReal {
        (self - other).abs()
    }

    /// True when |self − other| ≤ tol.
    pub fn within(&self, other: &PrecisionReal, tol: &PrecisionReal) -> bool {
        self.abs_diff(other) <= *tol
    }

    /// True when |self − other| ≤ 10^exp10.
    pub fn within_pow10(&self, other: &PrecisionReal, exp10: i32) -> bool {
        let prec = self.prec.min(other.prec);
        self.within(other, &Self::pow10(exp10, prec))
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Self {
        Self::from_mantissa(&self.mant * k.into(), self.prec)
    }

    /// Division by an integer, correctly rounded. Panics if `k == 0`.
    pub fn div_int(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        assert!(!k.is_zero(), "div_int: division by zero");
        Self::from_mantissa(fixed::div_round_int(&self.mant, &k), self.prec)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        self.mul_int(q.numer().clone()).div_int(q.denom().clone())
    }

    /// Multiply by `2^k` (exact for k ≥ 0).
    pub fn mul_pow2(&self, k: i64) -> Self {
        let mant = if k >= 0 {
            &self.mant << k as u64
        } else {
            fixed::shr_round(&self.mant, k.unsigned_abs())
        };
        Self::from_mantissa(mant, self.prec)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("recip", "division by zero"));
        }
        Ok(&Self::one(self.prec) / self)
    }

    pub fn checked_div(&self, other: &PrecisionReal) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::domain("div", "division by zero"));
        }
        Ok(self / other)
    }

    /// Square root; negative input is a domain error.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::domain("sqrt", format!("negative input {}", self.to_f64())));
        }
        let bits = self.prec.bits();
        Ok(Self::from_mantissa(fixed::sqrt(&self.mant, bits), self.prec))
    }

    /// Real n-th root of a non-negative value.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("nth_root", "zeroth root"));
        }
        if self.is_negative() {
            return Err(Error::domain("nth_root", "negative input"));
        }
        let bits = self.prec.bits();
        let shifted = &self.mant << (bits * (n as u64 - 1) + 2 * n as u64);
        let root = shifted.nth_root(n);
        Ok(Self::from_mantissa(fixed::shr_round(&root, 2), self.prec))
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let work = self.prec.guarded(2 + (n.unsigned_abs().max(1) as f64).log10().ceil() as u32 * 2);
        let base = self.with_precision(work);
        let mut acc = Self::one(work);
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
        let out = if n < 0 { acc.recip()? } else { acc };
        Ok(out.with_precision(self.prec))
    }

    pub fn exp(&self) -> Self {
        let bits = self.prec.bits();
        Self::from_mantissa(fixed::exp(&self.mant, bits), self.prec)
    }

    /// Natural logarithm; non-positive input is a domain error.
    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::domain("ln", format!("non-positive input {}", self.to_f64())));
        }
        let bits = self.prec.bits();
        Ok(Self::from_mantissa(fixed::ln(&self.mant, bits), self.prec))
    }

    pub fn log10(&self) -> Result<Self> {
        let ln10 = Self::from_int(10, self.prec).ln()?;
        Ok(&self.ln()? / &ln10)
    }

    pub fn atan(&self) -> Self {
        let bits = self.prec.bits();
        Self::from_mantissa(fixed::atan(&self.mant, bits), self.prec)
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let bits = self.prec.bits();
        let (s, c) = fixed::sin_cos(&self.mant, bits);
        (Self::from_mantissa(s, self.prec), Self::from_mantissa(c, self.prec))
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn sinh(&self) -> Self {
        let e = self.exp();
        let inv = e.recip().expect("exp is positive");
        (&e - &inv).mul_pow2(-1)
    }

    pub fn cosh(&self) -> Self {
        let e = self.exp();
        let inv = e.recip().expect("exp is positive");
        (&e + &inv).mul_pow2(-1)
    }

    /// π by Machin's formula.
    pub fn pi(prec: Precision) -> Self {
        Self::from_mantissa(fixed::pi_machin(prec.bits()), prec)
    }

    pub fn ln2(prec: Precision) -> Self {
        Self::from_mantissa(fixed::ln2(prec.bits()), prec)
    }

    /// Decimal expansion with `decimals` places, truncated toward zero.
    pub fn to_fixed(&self, decimals: u32) -> String {
        let bits = self.prec.bits();
        // a few ulps of slack so binary images of short decimals (0.001 is
        // stored as 0.000999…) do not truncate one digit low
        let slack = if self.mant.is_zero() { BigInt::zero() } else { BigInt::from(16) };
        let scaled = ((self.mant.abs() + slack) * num_traits::pow(BigInt::from(10), decimals as usize)) >> bits;
        let mut s = scaled.to_string();
        if s.len() <= decimals as usize {
            s = format!("{}{}", "0".repeat(decimals as usize + 1 - s.len()), s);
        }
        let split = s.len() - decimals as usize;
        let sign = if self.is_negative() && !scaled.is_zero() { "-" } else { "" };
        if decimals == 0 {
            format!("{sign}{s}")
        } else {
            format!("{sign}{}.{}", &s[..split], &s[split..])
        }
    }

    /// Decimal expansion with `sig` significant digits in total, truncated.
    /// Values below one in magnitude count digits after the decimal point.
    pub fn to_significant(&self, sig: u32) -> String {
        let int_part: BigInt = self.mant.abs() >> self.prec.bits();
        let int_digits = if int_part.is_zero() {
            0
        } else {
            int_part.to_string().len() as u32
        };
        if int_digits == 0 {
            self.to_fixed(sig)
        } else {
            self.to_fixed(sig.saturating_sub(int_digits))
        }
    }

    /// Short scientific rendering for reports, e.g. `3.142e0`.
    pub fn to_sci(&self, sig: usize) -> String {
        format!("{:.*e}", sig.saturating_sub(1), self.to_f64())
    }

    fn aligned(a: &PrecisionReal, b: &PrecisionReal) -> (BigInt, BigInt, Precision) {
        let prec = a.prec.min(b.prec);
        let bits = prec.bits();
        (a.mantissa_at(bits), b.mantissa_at(bits), prec)
    }
}

impl fmt::Debug for PrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrecisionReal({} @ {})", self.to_fixed(self.prec.digits), self.prec)
    }
}

impl fmt::Display for PrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let decimals = f.precision().map(|p| p as u32).unwrap_or(self.prec.digits);
        f.write_str(&self.to_fixed(decimals))
    }
}

impl PartialEq for PrecisionReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl PartialOrd for PrecisionReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl PrecisionReal {
    /// Compares the stored dyadic values exactly.
    fn cmp_exact(&self, other: &Self) -> Ordering {
        let bits = self.prec.bits().max(other.prec.bits());
        self.mantissa_at(bits).cmp(&other.mantissa_at(bits))
    }
}

impl Neg for &PrecisionReal {
    type Output = PrecisionReal;
    fn neg(self) -> PrecisionReal {
        PrecisionReal::from_mantissa(-&self.mant, self.prec)
    }
}

impl Neg for PrecisionReal {
    type Output = PrecisionReal;
    fn neg(self) -> PrecisionReal {
        PrecisionReal::from_mantissa(-self.mant, self.prec)
    }
}

impl Add for &PrecisionReal {
    type Output = PrecisionReal;
    fn add(self, rhs: &PrecisionReal) -> PrecisionReal {
        let (a, b, prec) = PrecisionReal::aligned(self, rhs);
        PrecisionReal::from_mantissa(a + b, prec)
    }
}

impl Sub for &PrecisionReal {
    type Output = PrecisionReal;
    fn sub(self, rhs: &PrecisionReal) -> PrecisionReal {
        let (a, b, prec) = PrecisionReal::aligned(self, rhs);
        PrecisionReal::from_mantissa(a - b, prec)
    }
}

impl Mul for &PrecisionReal {
    type Output = PrecisionReal;
    fn mul(self, rhs: &PrecisionReal) -> PrecisionReal {
        let (a, b, prec) = PrecisionReal::aligned(self, rhs);
        PrecisionReal::from_mantissa(fixed::mul(&a, &b, prec.bits()), prec)
    }
}

/// Panics on a zero divisor, like integer division; see
/// [`PrecisionReal::checked_div`].
impl Div for &PrecisionReal {
    type Output = PrecisionReal;
    fn div(self, rhs: &PrecisionReal) -> PrecisionReal {
        let (a, b, prec) = PrecisionReal::aligned(self, rhs);
        assert!(!b.is_zero(), "PrecisionReal division by zero");
        PrecisionReal::from_mantissa(fixed::div(&a, &b, prec.bits()), prec)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for PrecisionReal {
            type Output = PrecisionReal;
            fn $method(self, rhs: PrecisionReal) -> PrecisionReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&PrecisionReal> for PrecisionReal {
            type Output = PrecisionReal;
            fn $method(self, rhs: &PrecisionReal) -> PrecisionReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<PrecisionReal> for &PrecisionReal {
            type Output = PrecisionReal;
            fn $method(self, rhs: PrecisionReal) -> PrecisionReal {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

/// `x^(1/12)`-style rational powers of positive values, via `nth_root` and `powi`.
pub fn pow_ratio(x: &PrecisionReal, num: i64, den: u32) -> Result<PrecisionReal> {
    let work = x.precision().guarded(4);
    let root = x.with_precision(work).nth_root(den)?;
    Ok(root.powi(num)?.with_precision(x.precision()))
}

/// Reference π by Machin's formula, independent of every series in this crate.
pub fn pi_oracle(prec: Precision) -> PrecisionReal {
    PrecisionReal::pi(prec)
}

/// π by Gauss's three-term arctangent formula; a second independent route.
pub fn pi_gauss(prec: Precision) -> PrecisionReal {
    PrecisionReal::from_mantissa(fixed::pi_gauss(prec.bits()), prec)
}

/// Leibniz partial sum 4·Σ_{n<terms} (−1)ⁿ/(2n+1), in `f64`.
pub fn leibniz_partial(terms: u64) -> f64 {
    // pairwise from the small end keeps the rounding noise below the truncation error
    (0..terms)
        .rev()
        .map(|n| if n % 2 == 0 { 1.0 } else { -1.0 } / (2 * n + 1) as f64)
        .sum::<f64>()
        * 4.0
}

#[cfg(test)]
mod tests {
    use super::*;

    const P30: Precision = Precision::new(30);

    #[test]
    fn sqrt_of_zero_and_exact_square() {
        assert!(PrecisionReal::zero(P30).sqrt().unwrap().is_zero());
        let two = PrecisionReal::from_int(4, P30).sqrt().unwrap();
        assert_eq!(two, PrecisionReal::from_int(2, P30));
    }

    #[test]
    fn sqrt2_matches_integer_isqrt_oracle() {
        // floor(sqrt(2 * 10^60)) gives the first 31 digits of sqrt 2
        let oracle = (BigInt::from(2) * num_traits::pow(BigInt::from(10), 60)).sqrt();
        let got = PrecisionReal::from_int(2, P30).sqrt().unwrap();
        let expected = PrecisionReal::from_ratio(oracle, num_traits::pow(BigInt::from(10), 30), P30);
        assert!(got.within_pow10(&expected, -30));
        assert_eq!(got.to_fixed(29), "1.41421356237309504880168872420");
    }

    #[test]
    fn sqrt_negative_is_domain_error() {
        let r = PrecisionReal::from_int(-1, P30).sqrt();
        assert!(matches!(r, Err(Error::Domain { .. })));
    }

    #[test]
    fn exp_log_trivial_points() {
        assert_eq!(PrecisionReal::zero(P30).exp(), PrecisionReal::one(P30));
        assert!(PrecisionReal::one(P30).ln().unwrap().is_zero());
        assert!(PrecisionReal::zero(P30).ln().is_err());
        assert!(PrecisionReal::from_int(-3, P30).ln().is_err());
    }

    #[test]
    fn exp_of_one_is_e() {
        let e = PrecisionReal::one(P30).exp();
        assert_eq!(e.to_fixed(30), "2.718281828459045235360287471352");
    }

    #[test]
    fn ln_two_and_ten() {
        let l2 = PrecisionReal::from_int(2, P30).ln().unwrap();
        assert!(l2.within(&PrecisionReal::ln2(P30), &PrecisionReal::pow10(-30, P30)));
        let l10 = PrecisionReal::from_int(10, P30).ln().unwrap();
        assert_eq!(l10.to_fixed(30), "2.302585092994045684017991454684");
    }

    #[test]
    fn exp_log_round_trip_on_golden_unit() {
        let u = PrecisionReal::parse("5.19258240356725201562535524577", P30).unwrap();
        let back = u.ln().unwrap().exp();
        assert!(back.within_pow10(&u, -29));
    }

    #[test]
    fn atan_and_trig_known_values() {
        let pi = PrecisionReal::pi(P30);
        let quarter = PrecisionReal::one(P30).atan();
        assert!(quarter.within_pow10(&pi.div_int(4), -30));
        let (s, c) = pi.div_int(6).sin_cos();
        assert!(s.within_pow10(&PrecisionReal::from_ratio(1, 2, P30), -30));
        let root3_2 = PrecisionReal::from_int(3, P30).sqrt().unwrap().div_int(2);
        assert!(c.within_pow10(&root3_2, -30));
        let big = PrecisionReal::from_int(-7, P30).atan();
        let expect = -(&pi.div_int(2) - PrecisionReal::from_ratio(1, 7, P30).atan());
        assert!(big.within_pow10(&expect, -30));
    }

    #[test]
    fn pi_oracle_digits() {
        assert_eq!(pi_oracle(Precision::new(15)).to_significant(15), "3.14159265358979");
        let one = pi_oracle(Precision::new(1));
        assert!(one.within(&PrecisionReal::parse("3.1", Precision::new(1)).unwrap(), &PrecisionReal::pow10(-1, Precision::new(1))));
    }

    #[test]
    fn two_machin_formulas_agree() {
        for d in [10, 100, 1000] {
            let p = Precision::new(d);
            assert_eq!(pi_oracle(p).to_fixed(d), pi_gauss(p).to_fixed(d));
            assert!(pi_oracle(p).within_pow10(&pi_gauss(p), -(d as i32)));
        }
    }

    #[test]
    fn leibniz_million_terms_near_pi() {
        let approx = leibniz_partial(1_000_000);
        assert!((approx - std::f64::consts::PI).abs() < 2e-6);
    }

    #[test]
    fn parse_and_render() {
        let x = PrecisionReal::parse("-12.5e-1", P30).unwrap();
        assert_eq!(x.to_fixed(3), "-1.250");
        assert_eq!(PrecisionReal::parse("0.001", P30).unwrap().to_fixed(4), "0.0010");
        assert!(PrecisionReal::parse("1.2.3", P30).is_err());
        assert!(PrecisionReal::parse("", P30).is_err());
    }

    #[test]
    fn mixed_precision_takes_minimum() {
        let a = PrecisionReal::one(Precision::new(50));
        let b = PrecisionReal::one(Precision::new(20));
        assert_eq!((&a + &b).precision(), Precision::new(20));
    }

    #[test]
    fn nth_root_and_powi() {
        let x = PrecisionReal::from_int(4096, P30);
        assert_eq!(x.nth_root(12).unwrap(), PrecisionReal::from_int(2, P30));
        let y = PrecisionReal::from_ratio(3, 2, P30).powi(-3).unwrap();
        assert!(y.within_pow10(&PrecisionReal::from_ratio(8, 27, P30), -30));
    }

    #[test]
    fn large_and_small_exponentials() {
        let a = PrecisionReal::from_int(40, P30).exp();
        let b = PrecisionReal::from_int(-40, P30).exp();
        assert!(b.within_pow10(&a.recip().unwrap(), -30));
        assert_eq!(a.to_fixed(5), "235385266837019985.40789");
    }
}
