//! The alternating lattice sum S₁(a, 0, c) = Σ' (−1)^m/(am² + cn²), its
//! closed form through the g-invariant, and the split of S₁(1, 0, 58) into
//! a product of L-values.

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::{exact58, g_from_k, g_product, lambda_star, sqrt_rational};
use crate::kernel::{Precision, PrecisionReal, BASE_GUARD_DIGITS};
use crate::lseries::{kronecker, l_class_number, l_negative, l_negative_primitive};

const GUARD: u32 = 6;

/// Digits an f64 lattice sum is trusted to.
const F64_DIGITS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summation {
    /// Square truncation max(|m|, |n|) ≤ R, rows in n, ±m paired.
    TruncatedSymmetric,
    /// Closed form through log(2g⁴).
    CschProduct,
}

/// The quadratic form am² + bmn + cn² and exponent s of S₁(a, b, c; s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSumSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub s: u32,
    pub summation: Summation,
}

impl LatticeSumSpec {
    pub fn new(a: i64, b: i64, c: i64, s: u32, summation: Summation) -> Result<Self> {
        if a <= 0 || 4 * a * c - b * b <= 0 {
            return Err(Error::domain(
                "LatticeSumSpec",
                format!("{a}m² + {b}mn + {c}n² is not positive definite"),
            ));
        }
        if s != 1 {
            return Err(Error::domain("LatticeSumSpec", "only s = 1 is supported"));
        }
        Ok(LatticeSumSpec { a, b, c, s, summation })
    }

    /// S₁(1, 0, r; 1) summed by square truncation.
    pub fn diagonal(r: i64) -> Result<Self> {
        Self::new(1, 0, r, 1, Summation::TruncatedSymmetric)
    }
}

#[derive(Debug, Clone)]
pub struct TruncatedSum {
    pub radius: u32,
    /// Σ over 0 < max(|m|, |n|) ≤ R, good to about 12 digits.
    pub value: PrecisionReal,
    /// Leading estimate of (truncated − full), (−1)^R·Σ_n 1/(aR² + cn²).
    /// Reported, never added to `value`.
    pub tail_estimate: f64,
}

fn neumaier(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Σ_{|m| ≤ R} (−1)^m/(am² + cn²), skipping the origin, with ±m paired.
fn row(a: f64, c: f64, n: i64, radius: i64) -> f64 {
    let cn2 = c * (n * n) as f64;
    let paired = (1..=radius).rev().map(|m| {
        let sign = if m % 2 == 0 { 2.0 } else { -2.0 };
        sign / (a * (m * m) as f64 + cn2)
    });
    let centre = if n == 0 { 0.0 } else { 1.0 / cn2 };
    neumaier(paired.chain(std::iter::once(centre)))
}

/// The alternating sum over the square 0 < max(|m|, |n|) ≤ R.
///
/// Rows are independent and summed in parallel; they are combined
/// sequentially in the order n = −R, …, R so the result does not depend on
/// scheduling.
pub fn s1_truncated(spec: &LatticeSumSpec, radius: u32) -> Result<TruncatedSum> {
    if spec.b != 0 {
        return Err(Error::domain("s1_truncated", "only forms with b = 0 are supported"));
    }
    if radius < 10 {
        return Err(Error::domain("s1_truncated", "radius must be at least 10"));
    }
    let r = radius as i64;
    let (a, c) = (spec.a as f64, spec.c as f64);
    let rows: Vec<f64> = (-r..=r).into_par_iter().map(|n| row(a, c, n, r)).collect();
    let total = neumaier(rows);
    let edge = neumaier((-r..=r).map(|n| 1.0 / (a * (r * r) as f64 + c * (n * n) as f64)));
    let tail_estimate = if radius % 2 == 0 { edge } else { -edge };
    Ok(TruncatedSum {
        radius,
        value: PrecisionReal::from_f64(total, Precision::new(F64_DIGITS)),
        tail_estimate,
    })
}

/// log(2gᵣ⁴) = π√r/6 + 4·Σ_{k odd} log(1 − e^(−kπ√r)).
pub fn log_two_g4(r: &BigRational, p: Precision) -> Result<PrecisionReal> {
    let work = p.guarded(GUARD);
    let s = &PrecisionReal::pi(work) * &sqrt_rational(r, work)?;
    let q = (-&s).exp();
    let q2 = &q * &q;
    let eps = PrecisionReal::pow10(-((p.digits() + BASE_GUARD_DIGITS) as i32), work);
    let one = PrecisionReal::one(work);
    let mut logs = PrecisionReal::zero(work);
    let mut term = q;
    while term >= eps {
        logs = logs + (&one - &term).ln()?;
        term = &term * &q2;
    }
    Ok((s.div_int(6) + logs.mul_int(4)).with_precision(p))
}

/// S₁(1, 0, r; 1) = −(π/√r)·log(2gᵣ⁴), with log(2gᵣ⁴) from its product.
pub fn s1_csch(r: &BigRational, p: Precision) -> Result<PrecisionReal> {
    if r < &BigRational::from_integer(1.into()) {
        return Err(Error::domain("s1_csch", format!("r = {r} must be at least 1")));
    }
    let work = p.guarded(GUARD);
    let value = -(PrecisionReal::pi(work) / sqrt_rational(r, work)? * log_two_g4(r, work)?);
    Ok(value.with_precision(p))
}

/// The same sum row by row: −π²/6 + (2π/√r)·Σ_{n≥1} csch(πn√r)/n.
///
/// Each row Σ_m (−1)^m/(m² + rn²) equals π·csch(πn√r)/(n√r).
pub fn s1_rows(r: &BigRational, p: Precision) -> Result<PrecisionReal> {
    if r < &BigRational::from_integer(1.into()) {
        return Err(Error::domain("s1_rows", format!("r = {r} must be at least 1")));
    }
    let work = p.guarded(GUARD);
    let pi = PrecisionReal::pi(work);
    let root = sqrt_rational(r, work)?;
    let q = (-(&pi * &root)).exp();
    let eps = PrecisionReal::pow10(-((p.digits() + BASE_GUARD_DIGITS) as i32), work);
    let mut sum = PrecisionReal::zero(work);
    let mut qn = q.clone();
    let mut n = 1u64;
    while qn >= eps {
        sum = sum + csch_from_exp(&qn).div_int(n);
        qn = &qn * &q;
        n += 1;
    }
    let basel = (&pi * &pi).div_int(6);
    Ok((&(&pi * &sum).mul_int(2) / &root - basel).with_precision(p))
}

/// csch z = 2e^(−z)/(1 − e^(−2z)), given e^(−z).
fn csch_from_exp(e: &PrecisionReal) -> PrecisionReal {
    let one = PrecisionReal::one(e.precision());
    e.mul_int(2) / (one - e * e)
}

/// 2·Σ_{n ≥ 1} e^(−(2n−1)z), stopped once the terms drop below the precision.
pub fn csch_series(z: &PrecisionReal, p: Precision) -> Result<PrecisionReal> {
    if !z.is_positive() {
        return Err(Error::domain("csch_series", "z must be positive"));
    }
    let work = p.guarded(GUARD);
    let q = (-z.with_precision(work)).exp();
    let q2 = &q * &q;
    let eps = PrecisionReal::pow10(-((p.digits() + BASE_GUARD_DIGITS) as i32), work);
    let mut sum = PrecisionReal::zero(work);
    let mut term = q;
    while term >= eps {
        sum = sum + &term;
        term = &term * &q2;
    }
    Ok(sum.mul_int(2).with_precision(p))
}

/// The partial-fraction side 1/z + Σ_{k≥1} 2z(−1)^k/(z² + k²) of π·csch(πz),
/// in f64 with the last two partial sums averaged.
pub fn csch_partial_fractions(z: f64, terms: u64) -> f64 {
    let tz = 2.0 * z;
    let z2 = z * z;
    let terms_iter = (1..=terms).map(|k| {
        let kf = k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sign * tz / (z2 + kf * kf)
    });
    let partial = neumaier(std::iter::once(1.0 / z).chain(terms_iter));
    let next = {
        let kf = (terms + 1) as f64;
        let sign = if (terms + 1) % 2 == 0 { 1.0 } else { -1.0 };
        sign * tz / (z2 + kf * kf)
    };
    partial + next / 2.0
}

/// Σ_{m≠0} 1/(rm²) over |m| ≤ N plus the tail 2/(rN) − 1/(rN²) + …, and the
/// closed value π²/(3r).
pub fn row_sum_plain(r: f64, terms: u64) -> (f64, f64) {
    let direct = 2.0 * neumaier((1..=terms).rev().map(|m| 1.0 / (m as f64 * m as f64))) / r;
    let n = terms as f64;
    let tail = 2.0 * (1.0 / n - 1.0 / (2.0 * n * n) + 1.0 / (6.0 * n * n * n)) / r;
    (direct + tail, std::f64::consts::PI.powi(2) / (3.0 * r))
}

/// Σ_{m≠0} (−1)^m/m² over |m| ≤ N with the alternating tail halved in, and
/// the closed value −π²/6.
pub fn row_sum_alternating(terms: u64) -> (f64, f64) {
    let sign = |m: u64| if m % 2 == 0 { 1.0 } else { -1.0 };
    let direct = 2.0 * neumaier((1..=terms).rev().map(|m| sign(m) / (m as f64 * m as f64)));
    let next = (terms + 1) as f64;
    let tail = sign(terms + 1) / (next * next);
    (direct + tail, -std::f64::consts::PI.powi(2) / 6.0)
}

/// Both readings of the L-value split of S₁(1, 0, 2P) for P = 29.
#[derive(Debug, Clone)]
pub struct ZuckerRobertson {
    pub p: i64,
    /// (π/√(2P))·log 2.
    pub log_term: PrecisionReal,
    /// L₋₈(1)·L₂₉(1), with L₋₈ from Edwards' modulus.
    pub l_product: PrecisionReal,
    /// The same product with L₋₈ over its conductor.
    pub l_product_primitive: PrecisionReal,
    /// 2^(1−t)·Σ_{μ|P}(1 − (2/μ)·2^(1−s)) at s = t = 1, read off the formula.
    pub literal_constant: i64,
    /// log_term + 2·l_product.
    pub with_two: PrecisionReal,
    /// log_term + 4·l_product.
    pub with_four: PrecisionReal,
    /// log_term + literal_constant·l_product_primitive.
    pub literal_primitive: PrecisionReal,
}

impl ZuckerRobertson {
    /// log_term + 4·L₋₈·L₂₉, the stated value.
    pub fn value(&self) -> &PrecisionReal {
        &self.with_four
    }
}

pub fn zucker_robertson(big_p: i64, p: Precision) -> Result<ZuckerRobertson> {
    if big_p != 29 {
        return Err(Error::domain("zucker_robertson", format!("P = {big_p} is not supported (only 29)")));
    }
    let work = p.guarded(GUARD);
    // μ ranges over the divisors 1 and P; at s = 1 the bracket is 1 − (2/μ)
    let literal_constant: i64 = [1, big_p].iter().map(|&mu| 1 - kronecker(2, mu) as i64).sum();
    let pi = PrecisionReal::pi(work);
    let log_term = &pi / &PrecisionReal::from_int(2 * big_p, work).sqrt()? * PrecisionReal::ln2(work);
    let l29 = l_class_number(big_p, 1, work)?.value;
    let l_product = &l_negative(-8, work)?.value * &l29;
    let l_product_primitive = &l_negative_primitive(-8, work)?.value * &l29;
    let with_two = &log_term + &l_product.mul_int(2);
    let with_four = &log_term + &l_product.mul_int(4);
    let literal_primitive = &log_term + &l_product_primitive.mul_int(literal_constant);
    Ok(ZuckerRobertson {
        p: big_p,
        log_term: log_term.with_precision(p),
        l_product: l_product.with_precision(p),
        l_product_primitive: l_product_primitive.with_precision(p),
        literal_constant,
        with_two: with_two.with_precision(p),
        with_four: with_four.with_precision(p),
        literal_primitive: literal_primitive.with_precision(p),
    })
}

/// Residuals around the closed form −(π/√r)·log(2gᵣ⁴).
#[derive(Debug, Clone)]
pub struct WongCheck {
    pub r: BigRational,
    /// |s1_csch + (π/√r)·log(2g⁴)| with g from the theta route.
    pub closed_form: PrecisionReal,
    /// |s1_rows − s1_csch|, the csch row series against the product.
    pub rows_vs_product: PrecisionReal,
    /// (R, |s1_truncated(R) − s1_csch|) for each requested radius.
    pub truncated: Vec<(u32, f64)>,
}

pub fn wong_check(r: i64, radii: &[u32], p: Precision) -> Result<WongCheck> {
    let rq = BigRational::from_integer(r.into());
    let work = p.guarded(GUARD);
    let csch = s1_csch(&rq, work)?;
    let g = g_from_k(&lambda_star(&rq, work)?, work)?;
    let g4 = g.powi(4)?;
    let closed = -(PrecisionReal::pi(work) / sqrt_rational(&rq, work)? * g4.mul_int(2).ln()?);
    let rows = s1_rows(&rq, work)?;
    let spec = LatticeSumSpec::diagonal(r)?;
    let csch_f64 = csch.to_f64();
    let truncated = radii
        .iter()
        .map(|&radius| Ok((radius, (s1_truncated(&spec, radius)?.value.to_f64() - csch_f64).abs())))
        .collect::<Result<Vec<_>>>()?;
    Ok(WongCheck {
        r: rq,
        closed_form: csch.abs_diff(&closed).with_precision(p),
        rows_vs_product: rows.abs_diff(&csch).with_precision(p),
        truncated,
    })
}

/// Both sides of (π/√58)·log(g₅₈⁴) = 4·L₋₈(1)·L₂₉(1).
#[derive(Debug, Clone)]
pub struct TheoremG58 {
    /// Left side with g₅₈² = (5 + √29)/2.
    pub lhs_exact: PrecisionReal,
    /// Left side with g₅₈ from its infinite product.
    pub lhs_product: PrecisionReal,
    pub rhs: PrecisionReal,
    /// g₅₈ from the product and from the closed form.
    pub g_product: PrecisionReal,
    pub g_exact: PrecisionReal,
}

pub fn theorem_g58(p: Precision) -> Result<TheoremG58> {
    let work = p.guarded(GUARD);
    let scale = PrecisionReal::pi(work) / PrecisionReal::from_int(58, work).sqrt()?;
    let g2 = exact58().g_squared.to_real(work);
    let g_exact = g2.sqrt()?;
    let lhs_exact = &scale * &(&g2 * &g2).ln()?;
    let g_prod = g_product(&BigRational::from_integer(58.into()), work)?;
    let lhs_product = &scale * &g_prod.powi(4)?.ln()?;
    let rhs = (&l_negative(-8, work)?.value * &l_class_number(29, 1, work)?.value).mul_int(4);
    Ok(TheoremG58 {
        lhs_exact: lhs_exact.with_precision(p),
        lhs_product: lhs_product.with_precision(p),
        rhs: rhs.with_precision(p),
        g_product: g_prod.with_precision(p),
        g_exact: g_exact.with_precision(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P30: Precision = Precision::new(30);

    fn rq(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn parse(s: &str) -> PrecisionReal {
        PrecisionReal::parse(s, P30).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(LatticeSumSpec::new(1, 0, 58, 1, Summation::TruncatedSymmetric).is_ok());
        assert!(LatticeSumSpec::new(1, 2, 1, 1, Summation::CschProduct).is_err());
        assert!(LatticeSumSpec::new(-1, 0, 5, 1, Summation::CschProduct).is_err());
        assert!(LatticeSumSpec::new(1, 0, 5, 2, Summation::CschProduct).is_err());
        let skew = LatticeSumSpec::new(1, 1, 1, 1, Summation::TruncatedSymmetric).unwrap();
        assert!(s1_truncated(&skew, 20).is_err());
        assert!(s1_truncated(&LatticeSumSpec::diagonal(2).unwrap(), 5).is_err());
    }

    #[test]
    fn csch_route_values() {
        let s58 = s1_csch(&rq(58), P30).unwrap();
        assert!(s58.within_pow10(&parse("-1.644934066781127578982537693212671"), -29));
        let s1 = s1_csch(&rq(1), P30).unwrap();
        assert!(s1.within_pow10(&parse("-1.088793045151801065250344449118"), -29));
        // g₁ = 2^(−1/8), so S₁(1, 0, 1) = −(π/2)·log 2
        let expect = -(PrecisionReal::pi(P30) * PrecisionReal::ln2(P30)).mul_pow2(-1);
        assert!(s1.within_pow10(&expect, -29));
        let s2 = s1_csch(&rq(2), P30).unwrap();
        assert!(s2.within_pow10(&parse("-1.5397858910711787095189"), -21));
        assert!(s1_csch(&BigRational::new(1.into(), 2.into()), P30).is_err());
    }

    #[test]
    fn rows_and_product_agree() {
        for r in [1, 2, 5, 58] {
            let a = s1_csch(&rq(r), P30).unwrap();
            let b = s1_rows(&rq(r), P30).unwrap();
            assert!(a.within_pow10(&b, -28), "r = {r}");
        }
    }

    #[test]
    fn truncated_sum_at_58() {
        let spec = LatticeSumSpec::diagonal(58).unwrap();
        let t = s1_truncated(&spec, 200).unwrap();
        let csch = s1_csch(&rq(58), P30).unwrap().to_f64();
        assert!((t.value.to_f64() - csch).abs() < 2e-3);
        // the edge estimate accounts for almost all of the gap
        assert!((t.value.to_f64() - csch - t.tail_estimate).abs() < 1e-5);
        let t500 = s1_truncated(&spec, 500).unwrap();
        assert!((t500.value.to_f64() - csch).abs() < 1e-3);
    }

    #[test]
    fn truncated_sum_is_deterministic() {
        let spec = LatticeSumSpec::diagonal(2).unwrap();
        let a = s1_truncated(&spec, 300).unwrap().value.to_f64();
        let b = s1_truncated(&spec, 300).unwrap().value.to_f64();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn truncation_error_shrinks_like_one_over_r() {
        for r in [1i64, 2, 58] {
            let check = wong_check(r, &[50, 100, 200, 500], P30).unwrap();
            let errs: Vec<f64> = check.truncated.iter().map(|t| t.1).collect();
            assert!(errs.windows(2).all(|w| w[1] < w[0]), "r = {r}: {errs:?}");
            // the gap is the edge term 2·atan(√r)/(R√r) to within 2%
            for &(radius, err) in &check.truncated {
                let root = (r as f64).sqrt();
                let edge = 2.0 * root.atan() / (radius as f64 * root);
                assert!((err / edge - 1.0).abs() < 0.02, "r = {r}, R = {radius}");
            }
        }
    }

    #[test]
    fn wong_closed_form() {
        for r in [1, 2, 58] {
            let check = wong_check(r, &[], P30).unwrap();
            assert!(check.closed_form.within_pow10(&PrecisionReal::zero(P30), -26), "r = {r}");
            assert!(check.rows_vs_product.within_pow10(&PrecisionReal::zero(P30), -28), "r = {r}");
        }
    }

    #[test]
    fn row_identities() {
        let (direct, closed) = row_sum_alternating(1_000_000);
        assert!((direct - closed).abs() < 1e-6);
        for r in [1.0, 2.0, 58.0] {
            let (direct, closed) = row_sum_plain(r, 1_000_000);
            assert!((direct - closed).abs() < 1e-6);
        }
    }

    #[test]
    fn csch_partial_fraction_identity() {
        for z in [1.0f64, 2f64.sqrt(), 3.0] {
            let lhs = std::f64::consts::PI / (std::f64::consts::PI * z).sinh();
            assert!((csch_partial_fractions(z, 100_000) - lhs).abs() < 1e-8, "z = {z}");
        }
    }

    #[test]
    fn csch_exponential_series() {
        let p = Precision::new(20);
        let two = PrecisionReal::from_int(2, p);
        let direct = PrecisionReal::from_int(2, p) / (two.exp() - (-&two).exp());
        assert!(csch_series(&two, p).unwrap().within_pow10(&direct, -18));
        assert!(csch_series(&PrecisionReal::zero(p), p).is_err());
    }

    #[test]
    fn zucker_robertson_constants() {
        let z = zucker_robertson(29, P30).unwrap();
        assert_eq!(z.literal_constant, 2);
        let target = -s1_csch(&rq(58), P30).unwrap();
        assert!(z.with_four.within_pow10(&target, -28));
        assert!(!z.with_two.within_pow10(&target, -3));
        // a factor 2 in L₋₈ and the literal constant 2 compensate each other
        assert!(z.literal_primitive.within_pow10(&target, -28));
        assert!(zucker_robertson(5, P30).is_err());
        assert_eq!(kronecker(2, 1), 1);
    }

    #[test]
    fn theorem_for_g58_end_to_end() {
        let t = theorem_g58(P30).unwrap();
        assert!(t.lhs_exact.within_pow10(&t.rhs, -28));
        assert!(t.lhs_product.within_pow10(&t.rhs, -28));
        assert!(t.g_product.within_pow10(&t.g_exact, -29));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn csch_route_tends_to_minus_basel(r in 20i64..100) {
            let p = Precision::new(40);
            let pi = PrecisionReal::pi(p);
            let gap = s1_csch(&rq(r), p).unwrap() + (&pi * &pi).div_int(6);
            // the rows n ≠ 0 add about (2π/√r)·csch(π√r) ≈ (4π/√r)·e^(−π√r)
            let root = PrecisionReal::from_int(r, p).sqrt().unwrap();
            let lead = pi.mul_int(4) / &root * (-(&pi * &root)).exp();
            prop_assert!(gap.is_positive());
            prop_assert!((gap.to_f64() / lead.to_f64() - 1.0).abs() < 1e-3);
        }
    }
}
