//! Tanh-sinh (double exponential) quadrature on a finite interval.
//!
//! Used only as a second, independent evaluator for integrals that the main
//! code computes by other means, so it favours simplicity over speed.

use crate::kernel::{Precision, PrecisionReal};

const MAX_LEVEL: u32 = 12;

/// ∫ₐᵇ f(x) dx for an integrand analytic inside the interval.
///
/// Levels halve the step until two successive estimates agree to the target
/// precision. The integrand is evaluated at `prec` plus guard digits.
pub fn tanh_sinh<F>(f: F, a: &PrecisionReal, b: &PrecisionReal, prec: Precision) -> PrecisionReal
where
    F: Fn(&PrecisionReal) -> PrecisionReal,
{
    let work = prec.guarded(8);
    let a = a.with_precision(work);
    let b = b.with_precision(work);
    let mid = (&a + &b).mul_pow2(-1);
    let half = (&b - &a).mul_pow2(-1);
    let half_pi = PrecisionReal::pi(work).mul_pow2(-1);
    let tiny = PrecisionReal::pow10(-(work.digits() as i32) - 2, work);

    // contribution of the node pair at ±t, already weighted
    let pair = |t: &PrecisionReal| -> Option<PrecisionReal> {
        let et = t.exp();
        let inv_et = et.recip().expect("positive");
        let sinh_t = (&et - &inv_et).mul_pow2(-1);
        let cosh_t = (&et + &inv_et).mul_pow2(-1);
        let u = &half_pi * &sinh_t;
        let eu = u.exp();
        let inv_eu = eu.recip().expect("positive");
        let cosh_u = (&eu + &inv_eu).mul_pow2(-1);
        // 1 − tanh u = 2/(e^{2u} + 1), kept separate to avoid cancellation
        let one_minus = (&inv_eu * &inv_eu).mul_int(2) / (&inv_eu * &inv_eu + PrecisionReal::one(work));
        let w = &(&half_pi * &cosh_t) / &(&cosh_u * &cosh_u);
        if w < tiny {
            return None;
        }
        let right = &b - &(&half * &one_minus);
        let left = &a + &(&half * &one_minus);
        Some(&w * &(f(&right) + f(&left)))
    };

    let mut h = PrecisionReal::from_ratio(1, 2, work);
    let mut sum = f(&mid) * &half_pi;
    let mut k = 1u64;
    while let Some(v) = pair(&h.mul_int(k)) {
        sum = sum + v;
        k += 1;
    }
    let mut estimate = &(&sum * &h) * &half;
    for _ in 0..MAX_LEVEL {
        h = h.mul_pow2(-1);
        // new nodes are the odd multiples of the halved step
        let mut k = 1u64;
        while let Some(v) = pair(&h.mul_int(k)) {
            sum = sum + v;
            k += 2;
        }
        let next = &(&sum * &h) * &half;
        let settled = next.within_pow10(&estimate, -(prec.digits() as i32) - 4);
        estimate = next;
        if settled {
            break;
        }
    }
    estimate.with_precision(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_exponential() {
        let p = Precision::new(30);
        let zero = PrecisionReal::zero(p);
        let one = PrecisionReal::one(p);
        let cubic = tanh_sinh(|x| x * x * x, &zero, &one, p);
        assert!(cubic.within_pow10(&PrecisionReal::from_ratio(1, 4, p), -30));
        let e = tanh_sinh(|x| x.exp(), &zero, &one, p);
        assert!(e.within_pow10(&(one.exp() - &one), -30));
    }

    #[test]
    fn endpoint_singularity_is_tolerated() {
        // ∫₀¹ 1/√x dx = 2
        let p = Precision::new(20);
        let v = tanh_sinh(|x| x.sqrt().unwrap().recip().unwrap(), &PrecisionReal::zero(p), &PrecisionReal::one(p), p);
        assert!(v.within_pow10(&PrecisionReal::from_int(2, p), -15));
    }

    #[test]
    fn quarter_circle_gives_pi() {
        let p = Precision::new(25);
        let one = PrecisionReal::one(p);
        let v = tanh_sinh(|x| (&one - &(x * x)).sqrt().unwrap(), &PrecisionReal::zero(p), &one, p);
        assert!(v.mul_int(4).within_pow10(&PrecisionReal::pi(p), -24));
    }
}
