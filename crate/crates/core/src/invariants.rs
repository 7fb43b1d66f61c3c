//! Ramanujan's g-invariant, the singular values λ*(r) and α(r), and the exact
//! level-58 constants that feed the series for 1/π.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::elliptic::{complementary, ell_E, ell_K, ell_dK_dk, EllipticModulus};
use crate::error::{Error, Result};
use crate::exact::{fundamental_unit, BiquadraticSurd, QuadraticSurd};
use crate::hyper::k_of_g;
use crate::kernel::{pow_ratio, Precision, PrecisionReal, BASE_GUARD_DIGITS};
use crate::pi_engine::SatoSeriesParams;
use crate::theta::{k_from_q, Nome};

const GUARD: u32 = 6;

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// √r for a positive rational r, as √(num·den)/den.
pub fn sqrt_rational(r: &BigRational, p: Precision) -> Result<PrecisionReal> {
    if !r.is_positive() {
        return Err(Error::domain("sqrt_rational", format!("r = {r} must be positive")));
    }
    let work = p.guarded(2);
    let root = PrecisionReal::from_int(r.numer() * r.denom(), work).sqrt()?;
    Ok(root.div_int(r.denom().clone()).with_precision(p))
}

/// g = ((k′)²/(2k))^(1/12).
pub fn g_from_k(m: &EllipticModulus, p: Precision) -> Result<PrecisionReal> {
    if m.k().is_zero() || m.kprime().is_zero() {
        return Err(Error::domain("g_from_k", "k must lie strictly inside (0, 1)"));
    }
    let work = p.guarded(GUARD);
    let kp = m.kprime().with_precision(work);
    let base = &(&kp * &kp) / &m.k().with_precision(work).mul_int(2);
    Ok(pow_ratio(&base, 1, 12)?.with_precision(p))
}

/// k = g⁶√(g¹² + g⁻¹²) − g¹², evaluated in a cancellation-free arrangement.
pub fn k_from_g(g: &PrecisionReal, p: Precision) -> Result<EllipticModulus> {
    if !g.is_positive() {
        return Err(Error::domain("k_from_g", "g must be positive"));
    }
    let work = p.guarded(GUARD);
    let k = k_of_g(&g.with_precision(work))?;
    if !k.is_positive() || k >= PrecisionReal::one(work) {
        return Err(Error::domain("k_from_g", format!("k = {} outside (0, 1) for g = {}", k.to_f64(), g.to_f64())));
    }
    EllipticModulus::new(k.with_precision(p))
}

/// gₙ = 2^(−1/4)·e^(π√n/24)·Π_{j odd}(1 − e^(−jπ√n)).
pub fn g_product(n: &BigRational, p: Precision) -> Result<PrecisionReal> {
    let work = p.guarded(GUARD);
    let s = &PrecisionReal::pi(work) * &sqrt_rational(n, work)?;
    let q = (-&s).exp();
    let q2 = &q * &q;
    let eps = PrecisionReal::pow10(-((p.digits() + BASE_GUARD_DIGITS) as i32), work);
    let one = PrecisionReal::one(work);
    let mut product = one.clone();
    let mut term = q;
    while term >= eps {
        product = &product * &(&one - &term);
        term = &term * &q2;
    }
    let scale = s.div_int(24).exp();
    let two_quarter = pow_ratio(&PrecisionReal::from_int(2, work), 1, 4)?;
    Ok((product * scale / two_quarter).with_precision(p))
}

/// λ*(r) = k(e^(−π√r)) through the theta functions.
pub fn lambda_star(r: &BigRational, p: Precision) -> Result<EllipticModulus> {
    let work = p.guarded(GUARD);
    let nome = Nome::singular(&PrecisionReal::from_rational(r, work))?;
    let m = k_from_q(&nome, work)?;
    EllipticModulus::from_parts(m.k().with_precision(p), m.kprime().with_precision(p))
}

/// K, E, K′, E′ at λ*(r), all at the working precision.
fn singular_integrals(r: &BigRational, work: Precision) -> Result<[PrecisionReal; 4]> {
    let m = lambda_star(r, work)?;
    let k = ell_K(&m, work)?;
    let e = ell_E(&m, work)?;
    let (kc, ec) = complementary(&m, work)?;
    Ok([k, e, kc, ec])
}

/// α(r) = π/(4K²) − √r·(E/K − 1) at k = λ*(r).
pub fn alpha(r: &BigRational, p: Precision) -> Result<PrecisionReal> {
    let work = p.guarded(GUARD);
    let [k, e, _, _] = singular_integrals(r, work)?;
    let first = PrecisionReal::pi(work) / (&k * &k).mul_int(4);
    let second = sqrt_rational(r, work)? * (&e / &k - PrecisionReal::one(work));
    Ok((first - second).with_precision(p))
}

/// α(r) = E′/K − π/(4K²), the defining form.
pub fn alpha_definition(r: &BigRational, p: Precision) -> Result<PrecisionReal> {
    let work = p.guarded(GUARD);
    let [k, _, _, ec] = singular_integrals(r, work)?;
    let first = &ec / &k;
    let second = PrecisionReal::pi(work) / (&k * &k).mul_int(4);
    Ok((first - second).with_precision(p))
}

/// 16√r·e^(−π√r), the bound on α(r) − 1/π.
pub fn alpha_bound(r: &BigRational, p: Precision) -> Result<PrecisionReal> {
    let work = p.guarded(GUARD);
    let root = sqrt_rational(r, work)?;
    let decay = (-(&PrecisionReal::pi(work) * &root)).exp();
    Ok((root.mul_int(16) * decay).with_precision(p))
}

/// Right side of
/// 1/π = √r·k·k′²·(2/π)²·K·dK/dk + (α(r) − √r·k²)·((2/π)K)² at k = λ*(r).
pub fn master_identity(r: &BigRational, p: Precision) -> Result<PrecisionReal> {
    let work = p.guarded(GUARD);
    let m = lambda_star(r, work)?;
    let k_int = ell_K(&m, work)?;
    let dk = ell_dK_dk(&m, work)?;
    let a = alpha(r, work)?;
    let root = sqrt_rational(r, work)?;
    let (k, kp) = (m.k(), m.kprime());
    let two_over_pi = PrecisionReal::from_int(2, work) / PrecisionReal::pi(work);
    let scaled = &two_over_pi * &k_int;
    let first = &root * k * kp * kp * &two_over_pi * &two_over_pi * &k_int * &dk;
    let second = (a - &root * k * k) * &scaled * &scaled;
    Ok((first + second).with_precision(p))
}

/// Closed forms at level 58, all exact.
#[derive(Debug, Clone)]
pub struct Exact58 {
    /// g₅₈² = u₂₉ = (5 + √29)/2.
    pub g_squared: QuadraticSurd,
    /// g₅₈¹² = u₂₉⁶.
    pub g12: QuadraticSurd,
    /// g₅₈⁻¹² = u₂₉⁻⁶.
    pub g_minus12: QuadraticSurd,
    /// (g¹² + g⁻¹²)/2.
    pub half_sum: QuadraticSurd,
    /// (g¹² − g⁻¹²)/2.
    pub half_difference: QuadraticSurd,
    /// k₅₈ = (√2 − 1)⁶(13√58 − 99) in ℚ(√2, √29).
    pub k: BiquadraticSurd,
    /// 4k(k′)²/(1 + k²)², computed in ℚ(√2, √29).
    pub x_from_k: BiquadraticSurd,
    /// 2/(g¹² + g⁻¹²), computed in ℚ(√29).
    pub x_from_g: QuadraticSurd,
    /// α(58) = 3g⁶k(33√29 − 148).
    pub alpha: BiquadraticSurd,
}

fn lift(q: &QuadraticSurd) -> BiquadraticSurd {
    let zero = BigRational::from_integer(BigInt::from(0));
    BiquadraticSurd::new(2, 29, [q.a().clone(), zero.clone(), q.b().clone(), zero]).expect("valid field")
}

fn bq(c: [i64; 4]) -> BiquadraticSurd {
    BiquadraticSurd::from_ints(2, 29, c, 1).expect("valid field")
}

pub fn exact58() -> Exact58 {
    let u = fundamental_unit(29).expect("29 is a valid radicand").epsilon;
    let g12 = u.pow(6).expect("unit");
    let g_minus12 = u.pow(-6).expect("unit");
    let half = BigRational::new(1.into(), 2.into());
    let scale = |s: &QuadraticSurd, q: &BigRational| {
        let factor = QuadraticSurd::rational(q.clone(), 29).expect("valid radicand");
        s * &factor
    };
    let half_sum = scale(&(&g12 + &g_minus12), &half);
    let half_difference = scale(&(&g12 - &g_minus12), &half);
    let x_from_g = (&g12 + &g_minus12).inverse().map(|inv| scale(&inv, &rational(2))).expect("nonzero");

    let k = &bq([-1, 1, 0, 0]).pow(6).expect("power") * &bq([-99, 0, 0, 13]);
    let one = bq([1, 0, 0, 0]);
    let k2 = &k * &k;
    let kp2 = &one - &k2;
    let one_plus = &one + &k2;
    let x_from_k = (&(&k * &kp2) * &bq([4, 0, 0, 0]))
        .checked_div(&(&one_plus * &one_plus))
        .expect("1 + k² is nonzero");

    let g6 = lift(&u.pow(3).expect("unit"));
    let alpha = &(&(&g6 * &k) * &bq([-148, 0, 33, 0])) * &bq([3, 0, 0, 0]);

    Exact58 {
        g_squared: u,
        g12,
        g_minus12,
        half_sum,
        half_difference,
        k,
        x_from_k,
        x_from_g,
        alpha,
    }
}

impl Exact58 {
    /// Constant term A and n-coefficient B of the series bracket, exactly:
    /// A = α/(x(1 + k²)) − √58/(4g¹²), B = √58·(g¹² − g⁻¹²)/2.
    pub fn sato_bracket(&self) -> (BiquadraticSurd, BiquadraticSurd) {
        let one = bq([1, 0, 0, 0]);
        let root58 = bq([0, 0, 0, 1]);
        let k2 = &self.k * &self.k;
        let denom = &self.x_from_k * &(&one + &k2);
        let first = self.alpha.checked_div(&denom).expect("nonzero");
        let second = root58.checked_div(&(&lift(&self.g12) * &bq([4, 0, 0, 0]))).expect("nonzero");
        let a = &first - &second;
        let b = &root58 * &lift(&self.half_difference);
        (a, b)
    }
}

/// Everything known about one singular modulus λ*(r).
#[derive(Debug, Clone)]
pub struct SingularValueContext {
    pub r: BigRational,
    pub k: EllipticModulus,
    pub g: PrecisionReal,
    pub alpha: PrecisionReal,
    pub x: PrecisionReal,
    /// Present for r = 58, where every quantity has a closed form.
    pub exact: Option<Exact58>,
}

/// Numeric context for any r > 0, from the theta route and the α formula.
pub fn context(r: &BigRational, p: Precision) -> Result<SingularValueContext> {
    let work = p.guarded(GUARD);
    let k = lambda_star(r, work)?;
    let g = g_from_k(&k, work)?;
    let a = alpha(r, work)?;
    let g12 = g.powi(12)?;
    let x = PrecisionReal::from_int(2, work) / (&g12 + &g12.recip()?);
    Ok(SingularValueContext {
        r: r.clone(),
        k: EllipticModulus::from_parts(k.k().with_precision(p), k.kprime().with_precision(p))?,
        g: g.with_precision(p),
        alpha: a.with_precision(p),
        x: x.with_precision(p),
        exact: None,
    })
}

/// Level 58 built from the exact closed forms, then embedded.
pub fn context58(p: Precision) -> SingularValueContext {
    let ex = exact58();
    let work = p.guarded(GUARD);
    let k = ex.k.to_real(work);
    let kp2 = (&BiquadraticSurd::rational(2, 29, BigRational::one()).expect("field") - &(&ex.k * &ex.k)).to_real(work);
    let kp = kp2.sqrt().expect("k < 1");
    let g = ex.g_squared.to_real(work).sqrt().expect("positive");
    let x = ex.x_from_k.as_rational().expect("x₅₈ is rational");
    let m = EllipticModulus::from_parts(k.with_precision(p), kp.with_precision(p)).expect("k² + k′² = 1");
    SingularValueContext {
        r: rational(58),
        k: m,
        g: g.with_precision(p),
        alpha: ex.alpha.to_real(p),
        x: PrecisionReal::from_rational(x, p),
        exact: Some(ex),
    }
}

/// A, B and x of 1/π = Σ (1/4)ₙ(1/2)ₙ(3/4)ₙ/(n!)³ · (A + Bn) · x^(2n+1).
pub fn sato_coefficients(ctx: &SingularValueContext, p: Precision) -> Result<SatoSeriesParams> {
    let work = p.guarded(GUARD);
    let root = sqrt_rational(&ctx.r, work)?;
    let g12 = ctx.g.with_precision(work).powi(12)?;
    let g_m12 = g12.recip()?;
    let k = ctx.k.k().with_precision(work);
    let x = ctx.x.with_precision(work);
    let a = &ctx.alpha.with_precision(work) / &(&x * &(PrecisionReal::one(work) + &k * &k)) - &root / &g12.mul_int(4);
    let b = &root * &(&g12 - &g_m12).mul_pow2(-1);
    let x_exact = ctx.exact.as_ref().and_then(|e| e.x_from_k.as_rational().cloned());
    SatoSeriesParams::new(a.with_precision(p), b.with_precision(p), x.with_precision(p), x_exact, ctx.r.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    const P30: Precision = Precision::new(30);

    fn parse(s: &str) -> PrecisionReal {
        PrecisionReal::parse(s, P30).unwrap()
    }

    fn g58() -> PrecisionReal {
        parse("2.278723854170849727629209611183")
    }

    #[test]
    fn g_at_self_dual_point() {
        let m = EllipticModulus::self_dual(Precision::new(40));
        let g = g_from_k(&m, P30).unwrap();
        let expect = pow_ratio(&PrecisionReal::from_int(2, Precision::new(40)), -1, 8).unwrap();
        assert!(g.within_pow10(&expect, -29));
        let back = k_from_g(&expect, P30).unwrap();
        assert!(back.k().within_pow10(m.k(), -28));
    }

    #[test]
    fn g_of_k58_and_back() {
        let k58 = exact58().k.to_real(Precision::new(40));
        let m = EllipticModulus::new(k58.clone()).unwrap();
        assert!(g_from_k(&m, P30).unwrap().within_pow10(&g58(), -29));
        let back = k_from_g(&g58(), P30).unwrap();
        assert!(back.k().within_pow10(&k58, -30));
        assert!(back.k().within_pow10(&parse("2.550760131496564575612e-5"), -25));
    }

    #[test]
    fn k_g_round_trip_and_asymptotics() {
        let m = EllipticModulus::from_ratio(1, 5, Precision::new(40)).unwrap();
        let g = g_from_k(&m, Precision::new(35)).unwrap();
        assert!(k_from_g(&g, P30).unwrap().k().within_pow10(m.k(), -28));
        let k = k_from_g(&PrecisionReal::from_int(10, P30), P30).unwrap();
        let rel = k.k().to_f64() / 0.5e-12;
        assert!((rel - 1.0).abs() < 0.01);
        assert!(k_from_g(&PrecisionReal::zero(P30), P30).is_err());
    }

    #[test]
    fn product_formula_for_g58() {
        let exact = exact58().g_squared.to_real(Precision::new(40)).sqrt().unwrap();
        let g = g_product(&rational(58), P30).unwrap();
        assert!(g.within_pow10(&exact, -29));
        // e^(−3π√58) is already below 10⁻³¹
        let third = (-(PrecisionReal::pi(P30) * sqrt_rational(&rational(58), P30).unwrap()).mul_int(3)).exp();
        assert!(third < PrecisionReal::pow10(-31, P30));
    }

    #[test]
    fn product_and_modulus_routes_agree() {
        for r in [2, 4, 10, 58] {
            let via_product = g_product(&rational(r), P30).unwrap();
            let via_k = g_from_k(&lambda_star(&rational(r), Precision::new(40)).unwrap(), P30).unwrap();
            assert!(via_product.within_pow10(&via_k, -28), "r = {r}");
        }
    }

    #[test]
    fn singular_values() {
        let m = lambda_star(&rational(1), P30).unwrap();
        assert!(m.k().within_pow10(EllipticModulus::self_dual(P30).k(), -29));
        let m4 = lambda_star(&rational(4), P30).unwrap();
        let ratio = complementary(&m4, P30).unwrap().0 / ell_K(&m4, P30).unwrap();
        assert!(ratio.within_pow10(&PrecisionReal::from_int(2, P30), -28));
        // λ*(4) = (√2 − 1)²
        let expect = (PrecisionReal::from_int(2, P30).sqrt().unwrap() - PrecisionReal::one(P30)).powi(2).unwrap();
        assert!(m4.k().within_pow10(&expect, -29));
        let m58 = lambda_star(&rational(58), P30).unwrap();
        assert!(m58.k().within_pow10(&exact58().k.to_real(P30), -30));
    }

    #[test]
    fn alpha_routes() {
        let half = PrecisionReal::from_ratio(1, 2, P30);
        assert!(alpha(&rational(1), P30).unwrap().within_pow10(&half, -28));
        for r in [1, 2, 4, 58] {
            let a = alpha(&rational(r), P30).unwrap();
            let b = alpha_definition(&rational(r), P30).unwrap();
            assert!(a.within_pow10(&b, -28), "r = {r}");
        }
        // α(4) = 2(√2 − 1)²
        let a4 = alpha(&rational(4), P30).unwrap();
        let s = PrecisionReal::from_int(2, P30).sqrt().unwrap() - PrecisionReal::one(P30);
        assert!(a4.within_pow10(&(&s * &s).mul_int(2), -28));
    }

    #[test]
    fn alpha58_closed_form() {
        let a = alpha(&rational(58), P30).unwrap();
        let closed = exact58().alpha.to_real(P30);
        assert!(a.within_pow10(&closed, -28));
        assert!(closed.within_pow10(&parse("0.3183098885577931049165714"), -24));
    }

    #[test]
    fn alpha_tends_to_inverse_pi() {
        let inv_pi = PrecisionReal::pi(P30).recip().unwrap();
        for r in [25, 49, 100] {
            let gap = alpha(&rational(r), P30).unwrap() - &inv_pi;
            assert!(gap.is_positive(), "r = {r}");
            assert!(gap <= alpha_bound(&rational(r), P30).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn master_identity_gives_inverse_pi() {
        let inv_pi = PrecisionReal::pi(P30).recip().unwrap();
        for r in [2, 4] {
            let v = master_identity(&rational(r), P30).unwrap();
            assert!(v.within_pow10(&inv_pi, -28), "r = {r}");
        }
    }

    #[test]
    fn exact_level_58() {
        let ex = exact58();
        assert_eq!(ex.g_squared, QuadraticSurd::from_ints(5, 1, 2, 29));
        assert_eq!(ex.g12, QuadraticSurd::from_ints(9801, 1820, 1, 29));
        assert_eq!(ex.half_sum.as_rational(), Some(&rational(9801)));
        assert_eq!(ex.half_difference, QuadraticSurd::from_ints(0, 1820, 1, 29));
        let ninety_eight_oh_one = BigRational::new(1.into(), 9801.into());
        assert_eq!(ex.x_from_k.as_rational(), Some(&ninety_eight_oh_one));
        assert_eq!(ex.x_from_g.as_rational(), Some(&ninety_eight_oh_one));
    }

    #[test]
    fn exact_sato_bracket() {
        let (a, b) = exact58().sato_bracket();
        assert_eq!(a, bq([0, 2206, 0, 0]));
        assert_eq!(b, bq([0, 52780, 0, 0]));
    }

    #[test]
    fn numeric_context_matches_exact() {
        let exact = context58(P30);
        let numeric = context(&rational(58), P30).unwrap();
        assert!(exact.g.within_pow10(&g58(), -29));
        assert!(numeric.g.within_pow10(&exact.g, -28));
        assert!(numeric.x.within_pow10(&exact.x, -30));
        assert!(numeric.alpha.within_pow10(&exact.alpha, -28));
        let params = sato_coefficients(&exact, P30).unwrap();
        let root2 = PrecisionReal::from_int(2, P30).sqrt().unwrap();
        assert!(params.a.within_pow10(&root2.mul_int(2206), -25));
        assert!(params.b.within_pow10(&root2.mul_int(52780), -24));
    }
}
