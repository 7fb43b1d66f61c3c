//! Pochhammer symbols, ₂F₁/₃F₂ series and the hypergeometric identities
//! that turn K(k) into a series in x = 2/(g¹² + g⁻¹²).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::kernel::{Precision, PrecisionReal, BASE_GUARD_DIGITS};

/// Largest |z| accepted by the series evaluator.
///
/// Kummer's identity at k = 0.7 needs z = (2kk′)² ≈ 0.9996, so the cutoff
/// sits just above that rather than at a rounder 0.99.
pub const Z_MAX: f64 = 0.9999;

/// (q)ₙ together with its inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochhammerValue {
    pub base: BigRational,
    pub n: u32,
    pub value: BigRational,
}

/// Rising factorial (q)ₙ = q(q+1)…(q+n−1), exact.
pub fn pochhammer(q: &BigRational, n: u32) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, i| acc * (q + BigRational::from_integer(i.into())))
}

pub fn pochhammer_value(q: &BigRational, n: u32) -> PochhammerValue {
    PochhammerValue {
        base: q.clone(),
        n,
        value: pochhammer(q, n),
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Both sides of (1/4)ₙ(1/2)ₙ(3/4)ₙ = (4n)! / (256ⁿ·n!).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub n: u32,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub equal: bool,
}

pub fn lemma_256(n: u32) -> LemmaCheck {
    let lhs = pochhammer(&ratio(1, 4), n) * pochhammer(&ratio(1, 2), n) * pochhammer(&ratio(3, 4), n);
    let den = num_traits::pow(BigInt::from(256), n as usize) * factorial(n);
    let rhs = BigRational::new(factorial(4 * n), den);
    LemmaCheck { n, equal: lhs == rhs, lhs, rhs }
}

/// Parameters and argument of a pFq series.
#[derive(Debug, Clone)]
pub struct HyperSeriesSpec {
    pub upper: Vec<BigRational>,
    pub lower: Vec<BigRational>,
    pub z: PrecisionReal,
}

impl HyperSeriesSpec {
    pub fn new(upper: Vec<BigRational>, lower: Vec<BigRational>, z: PrecisionReal) -> Self {
        HyperSeriesSpec { upper, lower, z }
    }

    fn validate(&self) -> Result<()> {
        for b in &self.lower {
            if b.is_integer() && !b.is_positive() {
                return Err(Error::domain("hypergeometric", format!("lower parameter {b} is a non-positive integer")));
            }
        }
        if self.z.abs().to_f64() > Z_MAX {
            return Err(Error::domain(
                "hypergeometric",
                format!("|z| = {} exceeds {Z_MAX}; no analytic continuation", self.z.abs().to_f64()),
            ));
        }
        Ok(())
    }
}

/// Σ Π(aᵢ)ₙ/Π(bⱼ)ₙ · zⁿ/n! by the term recurrence.
///
/// Stops when |tₙ|·ρ/(1−ρ) < 10^(−p−guard), with ρ the larger of the current
/// term ratio and |z|. Every parameter set used here has a rational factor
/// that increases towards 1, so ρ bounds all later ratios and the geometric
/// tail bound is honest.
pub fn eval_hyper(spec: &HyperSeriesSpec, p: Precision) -> Result<PrecisionReal> {
    spec.validate()?;
    if spec.z.is_zero() {
        return Ok(PrecisionReal::one(p));
    }
    let zabs = spec.z.abs().to_f64();
    let target = (p.digits() + BASE_GUARD_DIGITS) as f64 * std::f64::consts::LN_10;
    let expected_terms = (target / -zabs.ln()).ceil().max(1.0) as u64;
    let work = p.for_terms(expected_terms).guarded(2);
    let z = spec.z.with_precision(work);
    let eps = PrecisionReal::pow10(-((p.digits() + BASE_GUARD_DIGITS) as i32), work).to_f64();

    let mut term = PrecisionReal::one(work);
    let mut sum = PrecisionReal::one(work);
    let mut n: u64 = 0;
    loop {
        let nq = BigRational::from_integer(n.into());
        let num = spec.upper.iter().fold(BigRational::one(), |acc, a| acc * (a + &nq));
        let den = spec.lower.iter().fold(BigRational::from_integer((n + 1).into()), |acc, b| acc * (b + &nq));
        let factor = num / den;
        if factor.is_zero() {
            break;
        }
        term = term.mul_rational(&factor) * &z;
        sum = sum + &term;
        n += 1;

        let rho = (factor.abs().to_f64().unwrap_or(f64::INFINITY) * zabs).max(zabs);
        if rho < 1.0 && term.abs().to_f64() * rho / (1.0 - rho) < eps {
            break;
        }
        if n > 50 * expected_terms + 1000 {
            return Err(Error::divergence("hypergeometric", format!("no convergence after {n} terms")));
        }
    }
    Ok(sum.with_precision(p))
}

fn expect_shape(spec: &HyperSeriesSpec, p_up: usize, q_low: usize, op: &'static str) -> Result<()> {
    if spec.upper.len() != p_up || spec.lower.len() != q_low {
        return Err(Error::domain(op, format!("expected {p_up} upper and {q_low} lower parameters")));
    }
    Ok(())
}

#[allow(non_snake_case)]
pub fn eval_2F1(spec: &HyperSeriesSpec, p: Precision) -> Result<PrecisionReal> {
    expect_shape(spec, 2, 1, "eval_2F1")?;
    eval_hyper(spec, p)
}

#[allow(non_snake_case)]
pub fn eval_3F2(spec: &HyperSeriesSpec, p: Precision) -> Result<PrecisionReal> {
    expect_shape(spec, 3, 2, "eval_3F2")?;
    eval_hyper(spec, p)
}

/// ₂F₁(a, b; c; z) for small rational parameters.
#[allow(non_snake_case)]
pub fn hyp2f1(a: (i64, i64), b: (i64, i64), c: (i64, i64), z: &PrecisionReal, p: Precision) -> Result<PrecisionReal> {
    let spec = HyperSeriesSpec::new(vec![ratio(a.0, a.1), ratio(b.0, b.1)], vec![ratio(c.0, c.1)], z.clone());
    eval_2F1(&spec, p)
}

/// ₃F₂(a, b, c; d, e; z) for small rational parameters.
#[allow(non_snake_case)]
pub fn hyp3f2(upper: [(i64, i64); 3], lower: [(i64, i64); 2], z: &PrecisionReal, p: Precision) -> Result<PrecisionReal> {
    let spec = HyperSeriesSpec::new(
        upper.iter().map(|&(n, d)| ratio(n, d)).collect(),
        lower.iter().map(|&(n, d)| ratio(n, d)).collect(),
        z.clone(),
    );
    eval_3F2(&spec, p)
}

/// (k′, z = (2kk′)²) after checking 0 ≤ k ≤ 1/√2.
fn identity_branch(k: &PrecisionReal, p: Precision, op: &'static str) -> Result<(PrecisionReal, PrecisionReal)> {
    let work = p.guarded(4);
    let k = k.with_precision(work);
    let k2 = &k * &k;
    if k.is_negative() || k2 > PrecisionReal::from_ratio(1, 2, work) {
        return Err(Error::domain(op, format!("k = {} outside [0, 1/√2]", k.to_f64())));
    }
    let kp = (PrecisionReal::one(work) - &k2).sqrt()?;
    let two_kkp = (&k * &kp).mul_int(2);
    Ok((kp, &two_kkp * &two_kkp))
}

/// ₂F₁(1/4,1/4;1;(2kk′)²) − ₂F₁(1/2,1/2;1;k²), zero for k ∈ [0, 1/√2].
pub fn kummer_check(k: &PrecisionReal, p: Precision) -> Result<PrecisionReal> {
    let work = p.guarded(4);
    let (_, z) = identity_branch(k, p, "kummer_check")?;
    let k = k.with_precision(work);
    let lhs = hyp2f1((1, 4), (1, 4), (1, 1), &z, work)?;
    let rhs = hyp2f1((1, 2), (1, 2), (1, 1), &(&k * &k), work)?;
    Ok((lhs - rhs).with_precision(p))
}

/// ₂F₁(1/4,1/4;1;z)² − ₃F₂(1/2,1/2,1/2;1,1;z) at z = (2kk′)².
pub fn clausen_check(k: &PrecisionReal, p: Precision) -> Result<PrecisionReal> {
    let work = p.guarded(4);
    let (_, z) = identity_branch(k, p, "clausen_check")?;
    let f = hyp2f1((1, 4), (1, 4), (1, 1), &z, work)?;
    let g = hyp3f2([(1, 2), (1, 2), (1, 2)], [(1, 1), (1, 1)], &z, work)?;
    Ok((&f * &f - g).with_precision(p))
}

/// Both candidate right-hand sides for [(2/π)K(k)]² as a ₃F₂ in x², and the
/// directly evaluated left-hand side.
#[derive(Debug, Clone)]
pub struct K2Evaluation {
    /// x = 2/(g¹² + g⁻¹²).
    pub x: PrecisionReal,
    /// k recovered from g.
    pub k: PrecisionReal,
    /// ₃F₂(1/4,3/4,1/2;1,1;x²)/k², the prefactor as usually transcribed.
    pub with_inverse_k2: PrecisionReal,
    /// ₃F₂(1/4,3/4,1/2;1,1;x²)/(1+k²), the prefactor that holds numerically.
    pub with_inverse_one_plus_k2: PrecisionReal,
    /// [(2/π)K(k)]² from the AGM.
    pub direct: PrecisionReal,
}

impl K2Evaluation {
    /// The value of the identity, using the prefactor that matches.
    pub fn value(&self) -> &PrecisionReal {
        &self.with_inverse_one_plus_k2
    }
}

/// k = g⁶√(g¹² + g⁻¹²) − g¹², rearranged as g⁻⁶/(√(g¹² + g⁻¹²) + g⁶) so
/// that large g does not cancel away every digit.
pub(crate) fn k_of_g(g: &PrecisionReal) -> Result<PrecisionReal> {
    let g6 = g.powi(6)?;
    let g12 = &g6 * &g6;
    let inv12 = g12.recip()?;
    let root = (&g12 + &inv12).sqrt()?;
    Ok(&g6.recip()? / &(root + g6))
}

/// [(2/π)K(k)]² as ₃F₂(1/4,3/4,1/2;1,1;x²) with x = 2/(g¹² + g⁻¹²), g > 1.
#[allow(non_snake_case)]
pub fn K2_from_g(g: &PrecisionReal, p: Precision) -> Result<K2Evaluation> {
    let work = p.guarded(6);
    let g = g.with_precision(work);
    if g <= PrecisionReal::one(work) {
        return Err(Error::domain("K2_from_g", "g must exceed 1 so that x < 1"));
    }
    let g12 = g.powi(12)?;
    let x = (PrecisionReal::from_int(2, work) / (&g12 + &g12.recip()?)).with_precision(work);
    if x >= PrecisionReal::one(work) {
        return Err(Error::domain("K2_from_g", "argument x² must be below 1"));
    }
    let k = k_of_g(&g)?;
    let f = hyp3f2([(1, 4), (3, 4), (1, 2)], [(1, 1), (1, 1)], &(&x * &x), work)?;
    let k2 = &k * &k;
    let with_inverse_k2 = &f / &k2;
    let with_inverse_one_plus_k2 = &f / &(PrecisionReal::one(work) + &k2);
    let m = crate::elliptic::EllipticModulus::new(k.clone())?;
    let two_k_over_pi = crate::elliptic::ell_K(&m, work)?.mul_int(2) / PrecisionReal::pi(work);
    let direct = &two_k_over_pi * &two_k_over_pi;
    Ok(K2Evaluation {
        x: x.with_precision(p),
        k: k.with_precision(p),
        with_inverse_k2: with_inverse_k2.with_precision(p),
        with_inverse_one_plus_k2: with_inverse_one_plus_k2.with_precision(p),
        direct: direct.with_precision(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{ell_K, EllipticModulus};

    const P30: Precision = Precision::new(30);

    fn q(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    fn two_over_pi_k(k: &PrecisionReal) -> PrecisionReal {
        let m = EllipticModulus::new(k.clone()).unwrap();
        ell_K(&m, P30).unwrap().mul_int(2) / PrecisionReal::pi(P30)
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&q(7, 3), 0), q(1, 1));
        assert_eq!(pochhammer(&q(1, 1), 5), q(120, 1));
        assert_eq!(pochhammer(&q(1, 2), 3), q(15, 8));
        let v = pochhammer_value(&q(1, 2), 3);
        assert_eq!(v.value, q(15, 8));
    }

    #[test]
    fn lemma_small_cases() {
        assert!(lemma_256(0).equal);
        assert_eq!(lemma_256(1).lhs, q(3, 32));
        assert_eq!(lemma_256(2).rhs, q(315, 1024));
    }

    #[test]
    fn lemma_holds_to_fifty() {
        for n in 0..=50 {
            assert!(lemma_256(n).equal, "n = {n}");
        }
    }

    #[test]
    fn zero_argument_is_one() {
        let z = PrecisionReal::zero(P30);
        assert_eq!(hyp2f1((1, 2), (1, 2), (1, 1), &z, P30).unwrap(), PrecisionReal::one(P30));
        assert_eq!(hyp3f2([(1, 4), (3, 4), (1, 2)], [(1, 1), (1, 1)], &z, P30).unwrap(), PrecisionReal::one(P30));
    }

    #[test]
    fn rejects_bad_specs() {
        let z = PrecisionReal::from_ratio(1, 2, P30);
        let bad = HyperSeriesSpec::new(vec![q(1, 2), q(1, 2)], vec![q(-2, 1)], z);
        assert!(eval_2F1(&bad, P30).is_err());
        assert!(hyp2f1((1, 2), (1, 2), (1, 1), &PrecisionReal::one(P30), P30).is_err());
        let wrong_shape = HyperSeriesSpec::new(vec![q(1, 2)], vec![q(1, 1)], PrecisionReal::zero(P30));
        assert!(eval_3F2(&wrong_shape, P30).is_err());
    }

    #[test]
    fn closed_form_sanity() {
        // ₂F₁(1,1;2;z) = −ln(1−z)/z
        let z = PrecisionReal::from_ratio(1, 2, P30);
        let v = hyp2f1((1, 1), (1, 1), (2, 1), &z, P30).unwrap();
        let expect = PrecisionReal::from_int(2, P30).ln().unwrap().mul_int(2);
        assert!(v.within_pow10(&expect, -29));
    }

    #[test]
    fn k_as_gauss_series() {
        let k = PrecisionReal::from_ratio(1, 2, P30);
        let f = hyp2f1((1, 2), (1, 2), (1, 1), &(&k * &k), P30).unwrap();
        assert!(f.within_pow10(&two_over_pi_k(&k), -29));
    }

    #[test]
    fn k_squared_as_clausen_series() {
        let k = PrecisionReal::from_ratio(3, 10, P30);
        let kp = (PrecisionReal::one(P30) - &k * &k).sqrt().unwrap();
        let z = (&k * &kp).mul_int(2);
        let f = hyp3f2([(1, 2), (1, 2), (1, 2)], [(1, 1), (1, 1)], &(&z * &z), P30).unwrap();
        let t = two_over_pi_k(&k);
        assert!(f.within_pow10(&(&t * &t), -28));
    }

    #[test]
    fn quartic_argument_series_on_grid() {
        for i in 0..=7 {
            let k = PrecisionReal::from_ratio(i, 10, P30);
            let kp = (PrecisionReal::one(P30) - &k * &k).sqrt().unwrap();
            let z = (&k * &kp).mul_int(2);
            let f = hyp2f1((1, 4), (1, 4), (1, 1), &(&z * &z), P30).unwrap();
            assert!(f.within_pow10(&two_over_pi_k(&k), -25), "k = 0.{i}");
        }
    }

    #[test]
    fn kummer_and_clausen() {
        let zero = PrecisionReal::zero(P30);
        assert!(kummer_check(&zero, P30).unwrap().is_zero());
        assert!(clausen_check(&zero, P30).unwrap().is_zero());
        let k = PrecisionReal::from_ratio(2, 5, P30);
        assert!(kummer_check(&k, P30).unwrap().abs() < PrecisionReal::pow10(-25, P30));
        assert!(clausen_check(&k, P30).unwrap().abs() < PrecisionReal::pow10(-25, P30));
        let near = PrecisionReal::from_ratio(7, 10, P30);
        assert!(kummer_check(&near, P30).unwrap().abs() < PrecisionReal::pow10(-20, P30));
        assert!(clausen_check(&near, P30).unwrap().abs() < PrecisionReal::pow10(-20, P30));
        let beyond = PrecisionReal::from_ratio(3, 4, P30);
        assert!(kummer_check(&beyond, P30).is_err());
    }

    #[test]
    fn k2_from_g_prefactor() {
        let g = PrecisionReal::from_int(5, P30);
        let ev = K2_from_g(&g, P30).unwrap();
        assert!(ev.value().within_pow10(&ev.direct, -28));
        assert!(!ev.with_inverse_k2.within_pow10(&ev.direct, -1));
        // k = 0.2 ↦ g = ((1 − k²)/(2k))^(1/12)
        let g = crate::kernel::pow_ratio(&PrecisionReal::from_ratio(12, 5, Precision::new(40)), 1, 12).unwrap();
        let ev = K2_from_g(&g, P30).unwrap();
        assert!(ev.k.within_pow10(&PrecisionReal::from_ratio(1, 5, P30), -28));
        assert!(ev.value().within_pow10(&ev.direct, -28));
        assert!(K2_from_g(&PrecisionReal::one(P30), P30).is_err());
    }

    #[test]
    fn k_of_large_g_keeps_digits() {
        let g = PrecisionReal::from_int(10, P30);
        let k = k_of_g(&g).unwrap();
        // k ≈ 1/(2g¹²) = 5·10⁻¹³
        let rel = (&k / &PrecisionReal::parse("5e-13", P30).unwrap()).to_f64();
        assert!((rel - 1.0).abs() < 0.01);
    }
}
