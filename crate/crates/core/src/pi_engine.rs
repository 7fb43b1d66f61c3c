//! The level-58 series for 1/π: termwise agreement between the assembled
//! hypergeometric form and the classical integer form, and a binary-splitting
//! π engine built on the latter.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hyper::pochhammer;
use crate::invariants::{context58, sato_coefficients};
use crate::kernel::{pi_oracle, Precision, PrecisionReal};

/// Largest digit count accepted by [`pi_ramanujan`].
pub const MAX_DIGITS: u32 = 100_000;

/// log₁₀(396⁴/256), used for term counts.
const DIGITS_PER_TERM: f64 = 7.98;

/// Ranges shorter than this are split sequentially.
const PARALLEL_CUTOFF: u64 = 256;

/// One instantiation 1/π = Σ (1/4)ₙ(1/2)ₙ(3/4)ₙ/(n!)³ · (A + Bn) · x^(2n+1).
#[derive(Debug, Clone)]
pub struct SatoSeriesParams {
    pub a: PrecisionReal,
    pub b: PrecisionReal,
    pub x: PrecisionReal,
    /// x as an exact rational, when the level has one (1/9801 at N = 58).
    pub x_exact: Option<BigRational>,
    pub level: BigRational,
}

impl SatoSeriesParams {
    pub fn new(
        a: PrecisionReal,
        b: PrecisionReal,
        x: PrecisionReal,
        x_exact: Option<BigRational>,
        level: BigRational,
    ) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::domain("SatoSeriesParams", "A and B must be positive"));
        }
        if !x.is_positive() || x >= PrecisionReal::one(x.precision()) {
            return Err(Error::domain("SatoSeriesParams", "x must lie in (0, 1)"));
        }
        Ok(SatoSeriesParams { a, b, x, x_exact, level })
    }

    /// The n-th term (1/4)ₙ(1/2)ₙ(3/4)ₙ/(n!)³ · (A + Bn) · x^(2n+1).
    pub fn term(&self, n: u32, p: Precision) -> PrecisionReal {
        let work = p.guarded(4);
        let quarter = |k: i64| BigRational::new(k.into(), 4.into());
        let fact = pochhammer(&BigRational::one(), n);
        let coeff = pochhammer(&quarter(1), n) * pochhammer(&quarter(2), n) * pochhammer(&quarter(3), n)
            / (&fact * &fact * &fact);
        let power = match &self.x_exact {
            Some(x) => PrecisionReal::from_rational(&num_traits::pow(x.clone(), 2 * n as usize + 1), work),
            None => self.x.with_precision(work).powi(2 * n as i64 + 1).expect("x > 0"),
        };
        let bracket = self.a.with_precision(work) + self.b.with_precision(work).mul_int(n);
        (bracket.mul_rational(&coeff) * power).with_precision(p)
    }

    pub fn partial_sum(&self, terms: u32, p: Precision) -> PrecisionReal {
        let work = p.for_terms(terms as u64);
        (0..terms)
            .fold(PrecisionReal::zero(work), |acc, n| acc + self.term(n, work))
            .with_precision(p)
    }
}

/// (26390n + 1103)(4n)! / ((n!)⁴ 396⁴ⁿ) as an exact integer pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralRamanujanTerm {
    pub n: u32,
    pub numerator: BigInt,
    pub denominator: BigInt,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

impl LiteralRamanujanTerm {
    pub fn new(n: u32) -> Self {
        let numerator = (BigInt::from(26390) * n + 1103) * factorial(4 * n);
        let f = factorial(n);
        let denominator = (&f * &f) * (&f * &f) * num_traits::pow(BigInt::from(396), 4 * n as usize);
        LiteralRamanujanTerm { n, numerator, denominator }
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), self.denominator.clone())
    }

    /// The term with the prefactor 2√2/9801 applied.
    pub fn scaled(&self, p: Precision) -> PrecisionReal {
        let work = p.guarded(4);
        let root2 = PrecisionReal::from_int(2, work).sqrt().expect("positive");
        let v = root2.mul_int(2 * &self.numerator).div_int(9801 * &self.denominator);
        v.with_precision(p)
    }
}

/// One row of the termwise comparison.
#[derive(Debug, Clone)]
pub struct TermComparison {
    pub n: u32,
    /// assembled term / literal term.
    pub ratio: PrecisionReal,
}

#[derive(Debug, Clone)]
pub struct TermwiseReport {
    pub rows: Vec<TermComparison>,
    /// max |ratio − 1| over all rows.
    pub max_deviation: PrecisionReal,
}

/// assembled(n) / literal(n) without forming either term.
///
/// Both terms fall like 10⁻⁸ⁿ, below the fixed-point floor for large n, so
/// the quotient is regrouped as
///
/// ```text
/// [(1/4)ₙ(1/2)ₙ(3/4)ₙ·256ⁿ·n! / (4n)!] · (9801x)^(2n+1) · (A + Bn) / (2√2(26390n + 1103))
/// ```
///
/// using 396⁴ⁿ = 256ⁿ·9801²ⁿ. The first factor is computed from Pochhammer
/// symbols and factorials independently and is not assumed to be 1.
pub fn term_ratio(params: &SatoSeriesParams, n: u32, p: Precision) -> PrecisionReal {
    let work = p.guarded(6);
    let quarter = |k: i64| BigRational::new(k.into(), 4.into());
    let poch = pochhammer(&quarter(1), n) * pochhammer(&quarter(2), n) * pochhammer(&quarter(3), n);
    let scale = BigRational::new(num_traits::pow(BigInt::from(256), n as usize) * factorial(n), factorial(4 * n));
    let combinatorial = PrecisionReal::from_rational(&(poch * scale), work);
    let power = match &params.x_exact {
        Some(x) => PrecisionReal::from_rational(&num_traits::pow(x * BigInt::from(9801), 2 * n as usize + 1), work),
        None => params.x.with_precision(work).mul_int(9801).powi(2 * n as i64 + 1).expect("x > 0"),
    };
    let bracket = params.a.with_precision(work) + params.b.with_precision(work).mul_int(n);
    let root2 = PrecisionReal::from_int(2, work).sqrt().expect("positive");
    let literal = root2.mul_int(2 * (26390 * n as u64 + 1103));
    (combinatorial * power * bracket / literal).with_precision(p)
}

/// Compares the terms assembled from α(58), g₅₈, k₅₈, x₅₈ with the classical
/// integer terms for n = 0..=nmax.
pub fn termwise_equivalence(nmax: u32, p: Precision) -> Result<TermwiseReport> {
    if nmax < 3 {
        return Err(Error::domain("termwise_equivalence", "nmax must be at least 3"));
    }
    let work = p.guarded(6);
    let params = sato_coefficients(&context58(work), work)?;
    let one = PrecisionReal::one(p);
    let rows: Vec<TermComparison> = (0..=nmax)
        .map(|n| TermComparison { n, ratio: term_ratio(&params, n, p) })
        .collect();
    let max_deviation = rows
        .iter()
        .map(|r| r.ratio.abs_diff(&one))
        .fold(PrecisionReal::zero(p), |m, d| if d > m { d } else { m });
    Ok(TermwiseReport { rows, max_deviation })
}

/// 256ⁿ·9801²ⁿ = 396⁴ⁿ for every n ≤ nmax, as exact integers.
pub fn prefactor_consistency(nmax: u32) -> bool {
    (0..=nmax as usize).all(|n| {
        num_traits::pow(BigInt::from(256), n) * num_traits::pow(BigInt::from(9801), 2 * n)
            == num_traits::pow(BigInt::from(396), 4 * n)
    })
}

/// Products over a range of terms: P = Π p(j), Q = Π q(j), and T with
/// T/Q = Σ a(j)·Π_{i≤j} p(i)/q(i) over the range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub p: BigInt,
    pub q: BigInt,
    pub t: BigInt,
}

fn leaf(n: u64) -> Split {
    let a = BigInt::from(1103) + BigInt::from(26390) * n;
    if n == 0 {
        return Split { p: BigInt::one(), q: BigInt::one(), t: a };
    }
    let m = BigInt::from(n);
    let p = BigInt::from(4 * n - 3) * (4 * n - 2) * (4 * n - 1) * (4 * n);
    let q = num_traits::pow(m, 4) * BigInt::from(24_591_257_856u64);
    let t = &a * &p;
    Split { p, q, t }
}

fn merge(left: Split, right: Split) -> Split {
    Split {
        t: &left.t * &right.q + &left.p * &right.t,
        p: left.p * right.p,
        q: left.q * right.q,
    }
}

/// Binary splitting over [a, b). Halves are computed in parallel above a
/// cutoff; the merge is fixed by the tree, so the result is schedule-free.
pub fn binary_split(a: u64, b: u64) -> Split {
    debug_assert!(a < b);
    if b - a == 1 {
        return leaf(a);
    }
    let mid = a + (b - a) / 2;
    let (left, right) = if b - a >= PARALLEL_CUTOFF {
        rayon::join(|| binary_split(a, mid), || binary_split(mid, b))
    } else {
        (binary_split(a, mid), binary_split(mid, b))
    };
    merge(left, right)
}

/// Σ_{n<terms} (26390n + 1103)(4n)!/((n!)⁴ 396⁴ⁿ) as an exact rational.
pub fn exact_partial_sum(terms: u64) -> BigRational {
    if terms == 0 {
        return BigRational::zero();
    }
    let s = binary_split(0, terms);
    BigRational::new(s.t, s.q)
}

pub fn terms_for_digits(digits: u32) -> u64 {
    (digits as f64 / DIGITS_PER_TERM).ceil() as u64 + 2
}

/// π to `digits` digits from the level-58 series.
///
/// The rational part is exact; the only rounded steps are one √2 and one
/// division: π = 9801·Q·√2 / (4T).
pub fn pi_ramanujan(digits: u32) -> Result<PrecisionReal> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(Error::domain("pi_ramanujan", format!("digits = {digits} outside [1, {MAX_DIGITS}]")));
    }
    let p = Precision::new(digits);
    let work = p.guarded(4);
    let s = binary_split(0, terms_for_digits(digits));
    let root2 = PrecisionReal::from_int(2, work).sqrt()?;
    let pi = root2.mul_int(s.q * 9801).div_int(s.t * 4);
    Ok(pi.with_precision(p))
}

/// Analytic and measured digits gained per term.
#[derive(Debug, Clone)]
pub struct DigitsPerTerm {
    /// log₁₀(396⁴/256).
    pub analytic: PrecisionReal,
    /// |1/π − Sₙ₊₁| / |1/π − Sₙ| for n = 0..9, Sₙ the sum of n+1 terms.
    pub reduction_factors: Vec<f64>,
}

impl DigitsPerTerm {
    pub fn worst_factor(&self) -> f64 {
        self.reduction_factors.iter().cloned().fold(0.0, f64::max)
    }

    pub fn best_factor(&self) -> f64 {
        self.reduction_factors.iter().cloned().fold(1.0, f64::min)
    }
}

pub fn digits_per_term() -> DigitsPerTerm {
    let p = Precision::new(30);
    let analytic = PrecisionReal::from_ratio(24_591_257_856u64, 256, p).log10().expect("positive");
    // ten partial sums reach 10⁻⁸⁸, so measure well beyond that
    let hp = Precision::new(130);
    let inv_pi = pi_oracle(hp).recip().expect("nonzero");
    let root2 = PrecisionReal::from_int(2, hp).sqrt().expect("positive");
    let errors: Vec<PrecisionReal> = (1..=11u64)
        .map(|terms| {
            let s = exact_partial_sum(terms);
            let approx = root2.mul_rational(&s).mul_int(2).div_int(9801);
            (&inv_pi - &approx).abs()
        })
        .collect();
    let reduction_factors = errors
        .windows(2)
        .map(|w| (&w[1] / &w[0]).to_f64())
        .collect();
    DigitsPerTerm { analytic, reduction_factors }
}

/// Basel and Leibniz partial sums with their simple corrections.
#[derive(Debug, Clone)]
pub struct SanityReport {
    pub terms: u32,
    /// Σ_{n≤N} 1/n².
    pub basel_raw: PrecisionReal,
    /// Σ_{n≤N} 1/n² + 1/N.
    pub basel_corrected: PrecisionReal,
    /// π²/6.
    pub basel_target: PrecisionReal,
    /// Mean of the Leibniz partial sums with N and N+1 terms.
    pub leibniz_averaged: PrecisionReal,
    /// π/4.
    pub leibniz_target: PrecisionReal,
}

pub fn sanity_series(p: Precision) -> SanityReport {
    const N: u32 = 10_000;
    let work = p.for_terms(N as u64);
    let basel_raw = (1..=N as u64).rev().fold(PrecisionReal::zero(work), |acc, n| {
        acc + PrecisionReal::from_ratio(1, n * n, work)
    });
    let basel_corrected = &basel_raw + &PrecisionReal::from_ratio(1, N, work);
    let pi = pi_oracle(work);
    let basel_target = (&pi * &pi).div_int(6);

    let mut partial = PrecisionReal::zero(work);
    for n in 0..N as u64 {
        let t = PrecisionReal::from_ratio(1, 2 * n + 1, work);
        partial = if n % 2 == 0 { partial + t } else { partial - t };
    }
    let next_term = PrecisionReal::from_ratio(1, 2 * N as u64 + 1, work);
    let next = if N % 2 == 0 { &partial + &next_term } else { &partial - &next_term };
    let leibniz_averaged = (partial + next).mul_pow2(-1);

    SanityReport {
        terms: N,
        basel_raw: basel_raw.with_precision(p),
        basel_corrected: basel_corrected.with_precision(p),
        basel_target: basel_target.with_precision(p),
        leibniz_averaged: leibniz_averaged.with_precision(p),
        leibniz_target: pi.div_int(4).with_precision(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    const P30: Precision = Precision::new(30);

    #[test]
    fn first_literal_term() {
        let t0 = LiteralRamanujanTerm::new(0).scaled(P30);
        assert!(t0.within_pow10(&PrecisionReal::parse("0.318309878440470123", P30).unwrap(), -17));
        let gap = pi_oracle(P30).recip().unwrap() - t0;
        let expect = PrecisionReal::parse("7.74e-9", P30).unwrap();
        assert!(gap.within_pow10(&expect, -10));
    }

    #[test]
    fn literal_terms_decrease() {
        let terms: Vec<_> = (0..12).map(|n| LiteralRamanujanTerm::new(n).ratio()).collect();
        assert!(terms.iter().all(|t| t.is_positive()));
        assert!(terms.windows(2).all(|w| w[1] < w[0]));
        let limit = BigRational::new(256.into(), 24_591_257_856u64.into());
        let last = LiteralRamanujanTerm::new(301).ratio() / LiteralRamanujanTerm::new(300).ratio();
        let rel: f64 = num_traits::ToPrimitive::to_f64(&(last / &limit)).unwrap();
        assert!((rel - 1.0).abs() < 0.02);
    }

    #[test]
    fn termwise_ratios_are_one() {
        let report = termwise_equivalence(10, P30).unwrap();
        assert_eq!(report.rows.len(), 11);
        assert!(report.max_deviation < PrecisionReal::pow10(-25, P30));
        assert!(termwise_equivalence(2, P30).is_err());
        // direct term values agree where they are still representable
        let params = sato_coefficients(&context58(P30), P30).unwrap();
        for n in 0..3 {
            let direct = &params.term(n, P30) / &LiteralRamanujanTerm::new(n).scaled(P30);
            assert!(direct.within_pow10(&report.rows[n as usize].ratio, -12), "n = {n}");
        }
    }

    #[test]
    fn prefactor_identity() {
        assert!(prefactor_consistency(10));
    }

    #[test]
    fn binary_splitting_equals_naive_sum() {
        for terms in 1..=21u64 {
            let naive = (0..terms as u32).fold(BigRational::zero(), |acc, n| acc + LiteralRamanujanTerm::new(n).ratio());
            assert_eq!(exact_partial_sum(terms), naive, "terms = {terms}");
        }
    }

    #[test]
    fn parallel_split_is_deterministic() {
        let a = binary_split(0, 700);
        let b = binary_split(0, 700);
        assert_eq!(a, b);
        let sequential = (0..700).map(leaf).reduce(merge).unwrap();
        assert_eq!(a.t * &sequential.q, sequential.t * &a.q);
    }

    #[test]
    fn pi_small_and_bounds() {
        assert_eq!(pi_ramanujan(15).unwrap().to_significant(15), "3.14159265358979");
        assert_eq!(pi_ramanujan(1).unwrap().to_significant(1), "3");
        assert!(pi_ramanujan(0).is_err());
        assert!(pi_ramanujan(MAX_DIGITS + 1).is_err());
    }

    #[test]
    fn pi_matches_oracle() {
        for d in [10, 100, 1000] {
            let p = Precision::new(d);
            assert_eq!(pi_ramanujan(d).unwrap().to_significant(d), pi_oracle(p).to_significant(d), "{d} digits");
        }
        assert!(terms_for_digits(1000) <= 128);
    }

    #[test]
    fn convergence_rate() {
        let d = digits_per_term();
        assert!(d.analytic.within_pow10(&PrecisionReal::parse("7.98254077839", P30).unwrap(), -10));
        assert_eq!(d.reduction_factors.len(), 10);
        assert!(d.worst_factor() < 10f64.powf(-7.5));
        assert!(d.best_factor() > 10f64.powf(-8.5));
        // |S₅ − 1/π| / |S₄ − 1/π|, independently 9.5891e-9; the factors climb
        // towards the limit 256/396⁴ = 1.041e-8
        let f4 = d.reduction_factors[4];
        assert!((f4 / 9.5891e-9 - 1.0).abs() < 1e-4, "{f4:e}");
        assert!(d.reduction_factors.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn partial_sums_increase() {
        let sums: Vec<_> = (1..8).map(exact_partial_sum).collect();
        assert!(sums.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn assembled_series_sums_to_inverse_pi() {
        let params = sato_coefficients(&context58(P30), P30).unwrap();
        let s = params.partial_sum(5, P30);
        assert!(s.within_pow10(&pi_oracle(P30).recip().unwrap(), -28));
        let zeroed = SatoSeriesParams {
            a: PrecisionReal::zero(P30),
            b: PrecisionReal::zero(P30),
            ..params
        };
        assert!(zeroed.partial_sum(5, P30).is_zero());
    }

    #[test]
    fn sanity_sums() {
        let r = sanity_series(Precision::new(20));
        assert!(r.basel_corrected.within_pow10(&r.basel_target, -8));
        assert!(r.leibniz_averaged.within_pow10(&r.leibniz_target, -8));
        let raw_gap = (&r.basel_target - &r.basel_raw).to_f64();
        assert!(raw_gap > 0.9e-4 && raw_gap < 1.1e-4);
    }
}
