//! Pell equations and fundamental units of real quadratic fields, both by
//! periodic continued fractions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::surd::{is_squarefree, QuadraticSurd};
use crate::error::{Error, Result};

/// A solution of x² − D·y² = norm_sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    #[serde(serialize_with = "ser_big")]
    pub x: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub y: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub d: BigInt,
    pub norm_sign: i8,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl PellSolution {
    /// Re-checks x² − D·y² = norm_sign in exact integer arithmetic.
    pub fn verify(&self) -> bool {
        &self.x * &self.x - &self.d * &self.y * &self.y == BigInt::from(self.norm_sign)
    }

    pub fn as_surd(&self) -> Result<QuadraticSurd> {
        QuadraticSurd::new(self.x.clone().into(), self.y.clone().into(), self.d.clone())
    }
}

/// Convergents of √D, one per step of the periodic expansion.
struct SqrtConvergents {
    d: BigInt,
    a0: BigInt,
    m: BigInt,
    q: BigInt,
    a: BigInt,
    p_prev: BigInt,
    p: BigInt,
    y_prev: BigInt,
    y: BigInt,
}

impl SqrtConvergents {
    fn new(d: &BigInt) -> Self {
        let a0 = d.sqrt();
        SqrtConvergents {
            d: d.clone(),
            a0: a0.clone(),
            m: BigInt::zero(),
            q: BigInt::one(),
            a: a0.clone(),
            p_prev: BigInt::one(),
            p: a0,
            y_prev: BigInt::zero(),
            y: BigInt::one(),
        }
    }
}

impl Iterator for SqrtConvergents {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.p.clone(), self.y.clone());
        self.m = &self.q * &self.a - &self.m;
        self.q = (&self.d - &self.m * &self.m) / &self.q;
        self.a = (&self.a0 + &self.m) / &self.q;
        let p_next = &self.a * &self.p + &self.p_prev;
        let y_next = &self.a * &self.y + &self.y_prev;
        self.p_prev = std::mem::replace(&mut self.p, p_next);
        self.y_prev = std::mem::replace(&mut self.y, y_next);
        Some(out)
    }
}

fn check_nonsquare(d: &BigInt, op: &'static str) -> Result<()> {
    if d < &BigInt::from(2) {
        return Err(Error::domain(op, format!("D = {d} must be >= 2")));
    }
    let r = d.sqrt();
    if &(&r * &r) == d {
        return Err(Error::domain(op, format!("D = {d} is a perfect square")));
    }
    Ok(())
}

/// Least positive solution of x² − D·y² = 1.
pub fn pell_fundamental(d: impl Into<BigInt>) -> Result<PellSolution> {
    let d = d.into();
    check_nonsquare(&d, "pell_fundamental")?;
    let one = BigInt::one();
    let (x, y) = SqrtConvergents::new(&d)
        .find(|(p, q)| p * p - &d * q * q == one)
        .expect("the expansion of a quadratic irrational is periodic");
    Ok(PellSolution { x, y, d, norm_sign: 1 })
}

/// Least positive solution of x² − D·y² = −1, if the period of √D is odd.
pub fn pell_negative(d: impl Into<BigInt>) -> Result<Option<PellSolution>> {
    let d = d.into();
    check_nonsquare(&d, "pell_negative")?;
    let minus_one = -BigInt::one();
    let one = BigInt::one();
    for (p, q) in SqrtConvergents::new(&d) {
        let n = &p * &p - &d * &q * &q;
        if n == minus_one {
            return Ok(Some(PellSolution { x: p, y: q, d, norm_sign: -1 }));
        }
        if n == one {
            // a +1 solution always comes after every −1 solution in the period
            return Ok(None);
        }
    }
    unreachable!("convergent iterator is infinite")
}

/// Fundamental unit ε of ℚ(√d), d ≡ 1 (mod 4), together with its norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub epsilon: QuadraticSurd,
    pub norm: i8,
}

impl FundamentalUnit {
    /// E = ε when N(ε) = 1, otherwise ε².
    pub fn norm_one_unit(&self) -> QuadraticSurd {
        if self.norm == 1 {
            self.epsilon.clone()
        } else {
            &self.epsilon * &self.epsilon
        }
    }
}

/// Fundamental unit (a + b√d)/2 from the continued fraction of ω = (1+√d)/2.
///
/// The first convergent p/q of ω with N(p − q·ω̄) = ±1 gives ε = p − q·ω̄,
/// which covers the half-integer units missed by plain Pell solutions.
pub fn fundamental_unit(d: i64) -> Result<FundamentalUnit> {
    let dd = BigInt::from(d);
    if d <= 1 || d.rem_euclid(4) != 1 || !is_squarefree(&dd) {
        return Err(Error::domain(
            "fundamental_unit",
            format!("d = {d} must be a squarefree integer > 1 with d ≡ 1 (mod 4)"),
        ));
    }
    let floor_root = dd.sqrt();
    let c = BigInt::from((d - 1) / 4);
    // ω = (P + √d)/Q with P = 1, Q = 2
    let (mut big_p, mut big_q) = (BigInt::one(), BigInt::from(2));
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (&big_p + &floor_root) / &big_q;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);

        let norm = &p * &p - &p * &q - &c * &q * &q;
        if norm.abs().is_one() {
            let two = BigInt::from(2);
            let epsilon = QuadraticSurd::new(
                BigRational::new(&p * &two - &q, two.clone()),
                BigRational::new(q.clone(), two),
                dd.clone(),
            )?;
            let sign = if norm.is_positive() { 1 } else { -1 };
            return Ok(FundamentalUnit { epsilon, norm: sign });
        }

        big_p = &a * &big_q - &big_p;
        big_q = (&dd - &big_p * &big_p) / &big_q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pell_instances() {
        let s = pell_fundamental(2).unwrap();
        assert_eq!((s.x, s.y), (3.into(), 2.into()));
        let s = pell_fundamental(29).unwrap();
        assert_eq!((s.x.clone(), s.y.clone()), (9801.into(), 1820.into()));
        assert!(s.verify());
    }

    #[test]
    fn pell_61_is_large() {
        let s = pell_fundamental(61).unwrap();
        assert_eq!(s.x, BigInt::from(1_766_319_049u64));
        assert_eq!(s.y, BigInt::from(226_153_980u64));
        assert!(s.verify());
    }

    #[test]
    fn pell_rejects_squares() {
        assert!(pell_fundamental(49).is_err());
        assert!(pell_fundamental(1).is_err());
        assert!(pell_fundamental(0).is_err());
    }

    #[test]
    fn negative_pell_29_is_70_13() {
        let s = pell_negative(29).unwrap().unwrap();
        assert_eq!((s.x.clone(), s.y.clone()), (70.into(), 13.into()));
        assert!(s.verify());
        assert!(pell_negative(3).unwrap().is_none());
    }

    // brute force: smallest y with D·y² + 1 a perfect square
    fn brute_pell(d: u64) -> (u64, u64) {
        (1u64..)
            .find_map(|y| {
                let t = d * y * y + 1;
                let x = (t as f64).sqrt().round() as u64;
                (x * x == t).then_some((x, y))
            })
            .unwrap()
    }

    #[test]
    fn pell_matches_brute_force_up_to_100() {
        for d in 2u64..=100 {
            let r = (d as f64).sqrt() as u64;
            if r * r == d {
                continue;
            }
            let s = pell_fundamental(d).unwrap();
            assert!(s.verify(), "D = {d}");
            // skip the few D whose fundamental y is too large for u64 brute force
            if s.y > BigInt::from(2_000_000u64) {
                continue;
            }
            let (x, y) = brute_pell(d);
            assert_eq!((s.x, s.y), (x.into(), y.into()), "D = {d}");
        }
    }

    #[test]
    fn units_of_5_and_29() {
        let u = fundamental_unit(5).unwrap();
        assert_eq!(u.epsilon, QuadraticSurd::from_ints(1, 1, 2, 5));
        assert_eq!(u.norm, -1);
        let u = fundamental_unit(29).unwrap();
        assert_eq!(u.epsilon, QuadraticSurd::from_ints(5, 1, 2, 29));
        assert_eq!(u.norm, -1);
        assert_eq!(u.norm_one_unit(), QuadraticSurd::from_ints(27, 5, 2, 29));
    }

    #[test]
    fn unit_rejects_invalid_d() {
        for d in [0, 1, 3, 9, 45, -3] {
            assert!(fundamental_unit(d).is_err(), "d = {d}");
        }
    }

    // brute force over (a + b√d)/2 with a, b ≤ 10⁴: the smallest unit > 1
    fn brute_unit(d: i64) -> Option<(i64, i64, i64)> {
        let mut best: Option<(f64, i64, i64, i64)> = None;
        for b in 1..=10_000i64 {
            for target in [4i64, -4] {
                let t = d * b * b + target;
                if t < 0 {
                    continue;
                }
                let a = (t as f64).sqrt().round() as i64;
                if a * a == t && (a - b) % 2 == 0 {
                    let v = (a as f64 + b as f64 * (d as f64).sqrt()) / 2.0;
                    if best.map_or(true, |(bv, ..)| v < bv) {
                        best = Some((v, a, b, target / 4));
                    }
                }
            }
            if best.is_some() {
                break;
            }
        }
        best.map(|(_, a, b, n)| (a, b, n))
    }

    #[test]
    fn units_minimal_for_d_up_to_60() {
        for d in (5..=60i64).filter(|d| d % 4 == 1) {
            if !is_squarefree(&BigInt::from(d)) {
                continue;
            }
            let u = fundamental_unit(d).unwrap();
            let two = BigRational::from_integer(2.into());
            let a = (u.epsilon.a() * &two).to_integer();
            let b = (u.epsilon.b() * &two).to_integer();
            if let Some((ba, bb, bn)) = brute_unit(d) {
                assert_eq!((a, b, u.norm as i64), (ba.into(), bb.into(), bn), "d = {d}");
            } else {
                assert!(b > BigInt::from(10_000), "d = {d}: no unit found below the search bound");
            }
        }
    }
}
