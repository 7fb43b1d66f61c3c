//! Jacobi theta functions θ₂, θ₃, θ₄ of a real nome, and the nome ↔ modulus
//! correspondence.

use crate::elliptic::{complementary, ell_K, EllipticModulus};
use crate::error::{Error, Result};
use crate::kernel::{Precision, PrecisionReal, BASE_GUARD_DIGITS};

const THETA_GUARD: u32 = 4;

/// A real nome 0 ≤ q < 1.
///
/// θ₂ needs q^(1/4). For the small nomes used here (e^(−π√58) ≈ 4·10⁻¹¹)
/// taking a fourth root of a fixed-point q would throw away digits, so a nome
/// built from its logarithm carries q^(1/4) computed from log q directly.
#[derive(Debug, Clone)]
pub struct Nome {
    q: PrecisionReal,
    quarter: PrecisionReal,
}

impl Nome {
    pub fn new(q: PrecisionReal) -> Result<Self> {
        if q.is_negative() || q >= PrecisionReal::one(q.precision()) {
            return Err(Error::domain("Nome", format!("q = {} outside [0, 1)", q.to_f64())));
        }
        let quarter = q.nth_root(4)?;
        Ok(Nome { q, quarter })
    }

    /// q = exp(log_q), with log_q < 0.
    pub fn from_log(log_q: &PrecisionReal) -> Result<Self> {
        if !log_q.is_negative() {
            return Err(Error::domain("Nome::from_log", "log q must be negative"));
        }
        Ok(Nome {
            q: log_q.exp(),
            quarter: log_q.mul_pow2(-2).exp(),
        })
    }

    /// q = e^(−π√r), the nome of the singular modulus λ*(r).
    pub fn singular(r: &PrecisionReal) -> Result<Self> {
        let prec = r.precision();
        let exponent = -(&PrecisionReal::pi(prec) * &r.sqrt()?);
        Self::from_log(&exponent)
    }

    pub fn q(&self) -> &PrecisionReal {
        &self.q
    }

    pub fn quarter_power(&self) -> &PrecisionReal {
        &self.quarter
    }
}

/// Stop once q^(N²)/(1−q) drops below 10^(−p − guard).
fn tail_small(term: &PrecisionReal, one_minus_q: &PrecisionReal, eps: &PrecisionReal) -> bool {
    term <= &(eps * one_minus_q)
}

/// Σ_{n≥1} sign(n)·q^(n² + shift·n), the shared core of all three series.
fn theta_tail(q: &PrecisionReal, shift: u64, alternating: bool, p: Precision) -> PrecisionReal {
    let work = p.guarded(THETA_GUARD);
    let q = q.with_precision(work);
    let eps = PrecisionReal::pow10(-((p.digits() + BASE_GUARD_DIGITS) as i32), work);
    let one_minus_q = PrecisionReal::one(work) - &q;
    let mut sum = PrecisionReal::zero(work);
    if q.is_zero() {
        return sum;
    }
    // q^(n² + shift·n) from its predecessor by the factor q^(2n − 1 + shift)
    let q_sq = &q * &q;
    let mut factor = if shift == 0 { q.clone() } else { q_sq.clone() };
    let mut term = factor.clone();
    let mut n = 1u64;
    while !tail_small(&term, &one_minus_q, &eps) {
        if alternating && n % 2 == 1 {
            sum = sum - &term;
        } else {
            sum = sum + &term;
        }
        factor = &factor * &q_sq;
        term = &term * &factor;
        n += 1;
    }
    sum
}

/// θ₂(q) = 2·q^(1/4)·Σ_{n≥0} q^(n(n+1)).
pub fn theta2(q: &Nome, p: Precision) -> PrecisionReal {
    let work = p.guarded(THETA_GUARD);
    let series = PrecisionReal::one(work) + theta_tail(&q.q, 1, false, p);
    (series * q.quarter.with_precision(work)).mul_int(2).with_precision(p)
}

/// θ₃(q) = 1 + 2·Σ_{n≥1} q^(n²).
pub fn theta3(q: &Nome, p: Precision) -> PrecisionReal {
    let work = p.guarded(THETA_GUARD);
    (PrecisionReal::one(work) + theta_tail(&q.q, 0, false, p).mul_int(2)).with_precision(p)
}

/// θ₄(q) = θ₃(−q) = 1 + 2·Σ_{n≥1} (−1)ⁿ q^(n²).
pub fn theta4(q: &Nome, p: Precision) -> PrecisionReal {
    let work = p.guarded(THETA_GUARD);
    (PrecisionReal::one(work) + theta_tail(&q.q, 0, true, p).mul_int(2)).with_precision(p)
}

/// q = exp(−π K′/K).
pub fn nome_from_k(m: &EllipticModulus, p: Precision) -> Result<Nome> {
    let work = p.guarded(THETA_GUARD);
    let (kc, _) = complementary(m, work).map_err(|_| Error::domain("nome_from_k", "k must lie strictly inside (0, 1)"))?;
    let k = ell_K(m, work)?;
    let exponent = -(&PrecisionReal::pi(work) * &kc) / k;
    Nome::from_log(&exponent)
}

/// k = θ₂²/θ₃², k′ = θ₄²/θ₃²; q = 0 gives the limit k = 0.
pub fn k_from_q(q: &Nome, p: Precision) -> Result<EllipticModulus> {
    let work = p.guarded(THETA_GUARD);
    if q.q.is_zero() {
        return EllipticModulus::new(PrecisionReal::zero(p));
    }
    let t2 = theta2(q, work);
    let t3 = theta3(q, work);
    let t4 = theta4(q, work);
    let t3sq = &t3 * &t3;
    let k = (&(&t2 * &t2) / &t3sq).with_precision(p);
    let kp = (&(&t4 * &t4) / &t3sq).with_precision(p);
    EllipticModulus::from_parts(k, kp)
}

/// K = (π/2)·θ₃².
#[allow(non_snake_case)]
pub fn K_from_q(q: &Nome, p: Precision) -> PrecisionReal {
    let work = p.guarded(THETA_GUARD);
    let t3 = theta3(q, work);
    (PrecisionReal::pi(work).mul_pow2(-1) * &t3 * &t3).with_precision(p)
}
