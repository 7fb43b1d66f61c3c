//! Complete elliptic integrals K(k), E(k), their derivatives and the Legendre
//! relation.
//!
//! K and E come from the arithmetic-geometric mean. A tanh-sinh quadrature of
//! the defining integrals is kept alongside as an independent check.

use crate::error::{Error, Result};
use crate::kernel::{Precision, PrecisionReal};
use crate::quadrature::tanh_sinh;

/// Extra digits carried through an AGM evaluation.
const AGM_GUARD: u32 = 6;

/// Cap on the precision the quadrature evaluator is asked for.
pub const QUADRATURE_MAX_DIGITS: u32 = 30;

/// A modulus k ∈ [0, 1] paired with k′ = √(1 − k²).
///
/// Both are stored so that swapping them (for K′, E′) loses nothing to
/// cancellation in 1 − k².
#[derive(Debug, Clone)]
pub struct EllipticModulus {
    k: PrecisionReal,
    kprime: PrecisionReal,
}

impl EllipticModulus {
    pub fn new(k: PrecisionReal) -> Result<Self> {
        if k.is_negative() || k > PrecisionReal::one(k.precision()) {
            return Err(Error::domain("EllipticModulus", format!("k = {} outside [0, 1]", k.to_f64())));
        }
        let one = PrecisionReal::one(k.precision());
        let kprime = (&one - &(&k * &k)).sqrt()?;
        Ok(EllipticModulus { k, kprime })
    }

    /// From k′ directly; k is derived.
    pub fn from_kprime(kprime: PrecisionReal) -> Result<Self> {
        Ok(Self::new(kprime)?.complement())
    }

    /// From both parts, checking k² + k′² = 1 to the shared precision.
    pub fn from_parts(k: PrecisionReal, kprime: PrecisionReal) -> Result<Self> {
        let prec = k.precision().min(kprime.precision());
        let sum = &(&k * &k) + &(&kprime * &kprime);
        if k.is_negative() || kprime.is_negative() || !sum.within_pow10(&PrecisionReal::one(prec), -(prec.digits() as i32) + 2) {
            return Err(Error::domain("EllipticModulus", "k² + k′² differs from 1"));
        }
        Ok(EllipticModulus { k, kprime })
    }

    pub fn from_ratio(num: i64, den: i64, prec: Precision) -> Result<Self> {
        Self::new(PrecisionReal::from_ratio(num, den, prec))
    }

    /// k = 1/√2, the self-complementary point.
    pub fn self_dual(prec: Precision) -> Self {
        let k = PrecisionReal::from_ratio(1, 2, prec).sqrt().expect("positive");
        EllipticModulus { kprime: k.clone(), k }
    }

    pub fn k(&self) -> &PrecisionReal {
        &self.k
    }

    pub fn kprime(&self) -> &PrecisionReal {
        &self.kprime
    }

    /// The modulus k′ with complement k.
    pub fn complement(&self) -> Self {
        EllipticModulus {
            k: self.kprime.clone(),
            kprime: self.k.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.k.is_zero()
    }

    fn is_one(&self) -> bool {
        self.kprime.is_zero()
    }
}

/// (K, E) together; they share one AGM run.
fn agm_k_e(m: &EllipticModulus, p: Precision) -> (PrecisionReal, PrecisionReal) {
    let work = p.guarded(AGM_GUARD);
    let mut a = PrecisionReal::one(work);
    let mut b = m.kprime.with_precision(work);
    let c0 = m.k.with_precision(work);
    // Σ 2^(n−1) c_n², starting with n = 0
    let mut csum = (&c0 * &c0).mul_pow2(-1);
    let mut n: i64 = 0;
    loop {
        let c = (&a - &b).mul_pow2(-1);
        if c.is_zero() {
            break;
        }
        let next_a = (&a + &b).mul_pow2(-1);
        let next_b = (&a * &b).sqrt().expect("positive");
        n += 1;
        csum = csum + (&c * &c).mul_pow2(n - 1);
        a = next_a;
        b = next_b;
        if n > 4 * work.bits() as i64 {
            break;
        }
    }
    let k = &PrecisionReal::pi(work) / &a.mul_pow2(1);
    let e = &k * &(PrecisionReal::one(work) - csum);
    (k.with_precision(p), e.with_precision(p))
}

/// K(k) by K = π / (2·agm(1, k′)). K(1) diverges.
#[allow(non_snake_case)]
pub fn ell_K(m: &EllipticModulus, p: Precision) -> Result<PrecisionReal> {
    if m.is_one() {
        return Err(Error::divergence("ell_K", "K(1) is infinite"));
    }
    if m.is_zero() {
        return Ok(PrecisionReal::pi(p).mul_pow2(-1));
    }
    Ok(agm_k_e(m, p).0)
}

/// E(k) from the AGM c-sequence: E/K = 1 − Σ 2^(n−1) c_n².
#[allow(non_snake_case)]
pub fn ell_E(m: &EllipticModulus, p: Precision) -> Result<PrecisionReal> {
    if m.is_one() {
        return Ok(PrecisionReal::one(p));
    }
    if m.is_zero() {
        return Ok(PrecisionReal::pi(p).mul_pow2(-1));
    }
    Ok(agm_k_e(m, p).1)
}

fn require_interior(m: &EllipticModulus, op: &'static str) -> Result<()> {
    if m.is_zero() || m.is_one() {
        return Err(Error::singularity(op, "k must lie strictly inside (0, 1)"));
    }
    Ok(())
}

/// dK/dk = (E − k′²K) / (k·k′²).
#[allow(non_snake_case)]
pub fn ell_dK_dk(m: &EllipticModulus, p: Precision) -> Result<PrecisionReal> {
    require_interior(m, "ell_dK_dk")?;
    let work = p.guarded(4);
    let (k_val, e_val) = agm_k_e(m, work);
    let kp2 = m.kprime.with_precision(work) * &m.kprime;
    let num = &e_val - &(&kp2 * &k_val);
    let den = &m.k.with_precision(work) * &kp2;
    Ok((&num / &den).with_precision(p))
}

/// dE/dk = (E − K) / k.
#[allow(non_snake_case)]
pub fn ell_dE_dk(m: &EllipticModulus, p: Precision) -> Result<PrecisionReal> {
    require_interior(m, "ell_dE_dk")?;
    let work = p.guarded(4);
    let (k_val, e_val) = agm_k_e(m, work);
    Ok((&(&e_val - &k_val) / &m.k.with_precision(work)).with_precision(p))
}

/// (K′, E′) = (K(k′), E(k′)).
pub fn complementary(m: &EllipticModulus, p: Precision) -> Result<(PrecisionReal, PrecisionReal)> {
    require_interior(m, "complementary")?;
    Ok(agm_k_e(&m.complement(), p))
}

/// K·E′ + E·K′ − K·K′ − π/2, which vanishes identically.
pub fn legendre_residual(m: &EllipticModulus, p: Precision) -> Result<PrecisionReal> {
    require_interior(m, "legendre_residual")?;
    let work = p.guarded(4);
    let (k, e) = agm_k_e(m, work);
    let (kc, ec) = agm_k_e(&m.complement(), work);
    let r = &(&(&k * &ec) + &(&e * &kc)) - &(&k * &kc);
    Ok((r - PrecisionReal::pi(work).mul_pow2(-1)).with_precision(p))
}

/// K(k) by tanh-sinh quadrature of ∫₀^{π/2} dθ / √(1 − k² sin²θ), at most 30 digits.
#[allow(non_snake_case)]
pub fn quad_K(m: &EllipticModulus, p: Precision) -> Result<PrecisionReal> {
    if m.is_one() {
        return Err(Error::divergence("quad_K", "K(1) is infinite"));
    }
    quad_integrand(m, p, |s| s.recip().expect("positive"))
}

/// E(k) by tanh-sinh quadrature of ∫₀^{π/2} √(1 − k² sin²θ) dθ, at most 30 digits.
#[allow(non_snake_case)]
pub fn quad_E(m: &EllipticModulus, p: Precision) -> Result<PrecisionReal> {
    quad_integrand(m, p, |s| s.clone())
}

fn quad_integrand(
    m: &EllipticModulus,
    p: Precision,
    g: impl Fn(&PrecisionReal) -> PrecisionReal,
) -> Result<PrecisionReal> {
    let qp = Precision::new(p.digits().min(QUADRATURE_MAX_DIGITS));
    let work = qp.guarded(8);
    let k2 = m.k.with_precision(work) * &m.k;
    let one = PrecisionReal::one(work);
    let upper = PrecisionReal::pi(work).mul_pow2(-1);
    let v = tanh_sinh(
        |theta| {
            let s = theta.sin();
            let root = (&one - &(&k2 * &(&s * &s))).sqrt().expect("k < 1");
            g(&root)
        },
        &PrecisionReal::zero(work),
        &upper,
        qp,
    );
    Ok(v)
}
