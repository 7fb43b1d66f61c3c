//! Raw binary fixed-point routines.
//!
//! A value `x` at `bits` fractional bits is the integer `round(x * 2^bits)`.
//! Everything here works on bare `BigInt`s; `PrecisionReal` wraps them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) fn one(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// `x / 2^s`, rounded half up.
pub(crate) fn shr_round(x: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    (x + (BigInt::one() << (s - 1))) >> s
}

/// Re-express a mantissa from `from` to `to` fractional bits.
pub(crate) fn rescale(x: &BigInt, from: u64, to: u64) -> BigInt {
    if to >= from {
        x << (to - from)
    } else {
        shr_round(x, from - to)
    }
}

pub(crate) fn mul(a: &BigInt, b: &BigInt, bits: u64) -> BigInt {
    shr_round(&(a * b), bits)
}

/// Rounded quotient of two integers, `den != 0`.
pub(crate) fn div_round_int(num: &BigInt, den: &BigInt) -> BigInt {
    let (n, d) = if den.is_negative() {
        (-num, -den)
    } else {
        (num.clone(), den.clone())
    };
    ((n << 1u32) + &d).div_floor(&(d << 1u32))
}

pub(crate) fn div(a: &BigInt, b: &BigInt, bits: u64) -> BigInt {
    div_round_int(&(a << bits), b)
}

pub(crate) fn sqrt(x: &BigInt, bits: u64) -> BigInt {
    shr_round(&(x << (bits + 2)).sqrt(), 1)
}

/// Approximate value as `f64`, keeping the leading 64 bits of the mantissa.
pub(crate) fn to_f64(x: &BigInt, bits: u64) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let len = x.bits();
    let (top, shift) = if len > 64 {
        (x >> (len - 64), (len - 64) as i64)
    } else {
        (x.clone(), 0)
    };
    let t = top.to_f64().unwrap_or(f64::NAN);
    let e = shift - bits as i64;
    // split the scaling so intermediate powers stay finite
    let half = e / 2;
    t * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
}

/// atan(1/n) by the alternating reciprocal series; integer work only.
pub(crate) fn atan_recip(n: u64, bits: u64) -> BigInt {
    let guard = 32;
    let wb = bits + guard;
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut power = one(wb) / BigInt::from(n);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &n2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    shr_round(&sum, guard)
}

/// π via Machin: π/4 = 4·atan(1/5) − atan(1/239).
pub(crate) fn pi_machin(bits: u64) -> BigInt {
    let wb = bits + 8;
    let s = atan_recip(5, wb) * 16 - atan_recip(239, wb) * 4;
    shr_round(&s, 8)
}

/// π via Gauss: π/4 = 12·atan(1/18) + 8·atan(1/57) − 5·atan(1/239).
pub(crate) fn pi_gauss(bits: u64) -> BigInt {
    let wb = bits + 8;
    let s = atan_recip(18, wb) * 48 + atan_recip(57, wb) * 32 - atan_recip(239, wb) * 20;
    shr_round(&s, 8)
}

/// ln 2 = 2·atanh(1/3).
pub(crate) fn ln2(bits: u64) -> BigInt {
    let guard = 32;
    let wb = bits + guard;
    let mut power: BigInt = (one(wb) * 2) / 3;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= 9;
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(2 * k + 1);
        k += 1;
    }
    shr_round(&sum, guard)
}

fn bit_len(n: i64) -> u64 {
    64 - n.unsigned_abs().leading_zeros() as u64
}

/// exp(x) at `bits`.
pub(crate) fn exp(x: &BigInt, bits: u64) -> BigInt {
    if x.is_zero() {
        return one(bits);
    }
    let n = (to_f64(x, bits) / std::f64::consts::LN_2).round() as i64;
    let squarings = ((bits as f64).sqrt() / 2.0).clamp(2.0, 48.0) as u64;
    let wb = bits + n.max(0) as u64 + squarings + 40 + bit_len(n);
    let xw = rescale(x, bits, wb);
    let ln2w = ln2(wb + bit_len(n));
    let r = xw - shr_round(&(ln2w * n), bit_len(n));
    let r = shr_round(&r, squarings);

    let mut sum = one(wb);
    let mut term = one(wb);
    let mut k: u64 = 1;
    loop {
        term = mul(&term, &r, wb) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    for _ in 0..squarings {
        sum = mul(&sum, &sum, wb);
    }
    let shift = wb as i64 - bits as i64 - n;
    if shift >= 0 {
        shr_round(&sum, shift as u64)
    } else {
        sum << (-shift) as u64
    }
}

/// ln(x) at `bits`, `x > 0`.
pub(crate) fn ln(x: &BigInt, bits: u64) -> BigInt {
    debug_assert!(x.is_positive());
    let roots = ((bits as f64).sqrt() / 3.0).clamp(3.0, 24.0) as u64;
    let wb = bits + 64 + roots;
    let xw = rescale(x, bits, wb);
    // x = 2^e · y with y in [1, 2)
    let e = xw.bits() as i64 - wb as i64 - 1;
    let mut y = if e >= 0 {
        shr_round(&xw, e as u64)
    } else {
        xw << (-e) as u64
    };
    for _ in 0..roots {
        y = sqrt(&y, wb);
    }
    let unit = one(wb);
    let t = div(&(&y - &unit), &(&y + &unit), wb);
    let t2 = mul(&t, &t, wb);
    let mut sum = t.clone();
    let mut power = t;
    let mut k: u64 = 1;
    loop {
        power = mul(&power, &t2, wb);
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(2 * k + 1);
        k += 1;
    }
    let ln_y = sum << (roots + 1);
    let e_bits = bit_len(e);
    let ln2w = ln2(wb + e_bits);
    let total = ln_y + shr_round(&(ln2w * e), e_bits);
    shr_round(&total, wb - bits)
}

/// atan(x) at `bits`.
pub(crate) fn atan(x: &BigInt, bits: u64) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let wb = bits + 48;
    let xw = rescale(x, bits, wb);
    let negative = xw.is_negative();
    let ax = xw.abs();
    let unit = one(wb);
    let result = if ax > unit {
        let half_pi = pi_machin(wb) >> 1u32;
        half_pi - atan_reduced(&div(&unit, &ax, wb), wb)
    } else {
        atan_reduced(&ax, wb)
    };
    let result = shr_round(&result, 48);
    if negative {
        -result
    } else {
        result
    }
}

/// atan for 0 <= x <= 1 via argument halving and Taylor.
fn atan_reduced(x: &BigInt, wb: u64) -> BigInt {
    const HALVINGS: u64 = 8;
    let unit = one(wb);
    let mut t = x.clone();
    for _ in 0..HALVINGS {
        // atan(t) = 2·atan(t / (1 + sqrt(1 + t²)))
        let root = sqrt(&(&unit + mul(&t, &t, wb)), wb);
        t = div(&t, &(&unit + root), wb);
    }
    let t2 = mul(&t, &t, wb);
    let mut sum = t.clone();
    let mut power = t;
    let mut k: u64 = 1;
    loop {
        power = mul(&power, &t2, wb);
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum << HALVINGS
}

/// (sin x, cos x) at `bits`.
pub(crate) fn sin_cos(x: &BigInt, bits: u64) -> (BigInt, BigInt) {
    const HALVINGS: u64 = 12;
    let turns = (to_f64(x, bits) / std::f64::consts::TAU).round() as i64;
    let wb = bits + 48 + HALVINGS + bit_len(turns);
    let xw = rescale(x, bits, wb);
    let two_pi = pi_machin(wb) << 1u32;
    let r = xw - two_pi * turns;
    let r = shr_round(&r, HALVINGS);

    let r2 = mul(&r, &r, wb);
    let mut s = r.clone();
    let mut c = one(wb);
    let mut term = r;
    let mut k: u64 = 1;
    // term_k = r^(2k+1)/(2k+1)!, alternating
    loop {
        term = mul(&term, &r2, wb) / BigInt::from((2 * k) * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            s -= &term;
        } else {
            s += &term;
        }
        k += 1;
    }
    let mut term = one(wb);
    let mut k: u64 = 1;
    loop {
        term = mul(&term, &r2, wb) / BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            c -= &term;
        } else {
            c += &term;
        }
        k += 1;
    }
    for _ in 0..HALVINGS {
        let s2 = mul(&s, &c, wb) << 1u32;
        let c2 = mul(&c, &c, wb) - mul(&s, &s, wb);
        s = s2;
        c = c2;
    }
    (shr_round(&s, wb - bits), shr_round(&c, wb - bits))
}
