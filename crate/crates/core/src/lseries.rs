//! Kronecker symbols, real Dirichlet characters and three routes to L_d(1):
//! Edwards' closed form for d < 0, the trigonometric product for d > 0 and
//! Dirichlet's class number formula.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{fundamental_unit, QuadraticSurd};
use crate::kernel::{Precision, PrecisionReal};

const GUARD: u32 = 6;

/// Kronecker symbol (d/n), by multiplicativity in n, the (d/2) rule and
/// Jacobi reciprocity.
pub fn kronecker(d: i64, n: i64) -> i8 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if d < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    n >>= twos;
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    result * jacobi(d.rem_euclid(n), n)
}

/// Jacobi symbol (a/n) for odd n > 0.
fn jacobi(a: i64, n: i64) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    let (mut a, mut n) = (a.rem_euclid(n), n);
    let mut result: i8 = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// m = |d| when d ≡ 1 (mod 4), otherwise |4d|.
pub fn edwards_modulus(d: i64) -> Result<u64> {
    if d == 0 {
        return Err(Error::domain("edwards_modulus", "d must be nonzero"));
    }
    Ok(if d.rem_euclid(4) == 1 { d.unsigned_abs() } else { 4 * d.unsigned_abs() })
}

/// The conductor of k ↦ (d/k): |d| when d ≡ 0, 1 (mod 4), otherwise |4d|.
pub fn conductor(d: i64) -> Result<u64> {
    if d == 0 {
        return Err(Error::domain("conductor", "d must be nonzero"));
    }
    Ok(if matches!(d.rem_euclid(4), 0 | 1) { d.unsigned_abs() } else { 4 * d.unsigned_abs() })
}

/// χ(k) = (d/k) tabulated over one period 1..=m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirichletCharacter {
    pub d: i64,
    pub m: u64,
    /// values[k − 1] = χ(k).
    pub values: Vec<i8>,
}

impl DirichletCharacter {
    /// Table with an explicit modulus.
    pub fn with_modulus(d: i64, m: u64) -> Result<Self> {
        if d == 0 || m == 0 {
            return Err(Error::domain("DirichletCharacter", "d and m must be nonzero"));
        }
        let values = (1..=m as i64).map(|k| kronecker(d, k)).collect();
        Ok(DirichletCharacter { d, m, values })
    }

    /// χ at any integer, using the period.
    pub fn chi(&self, k: i64) -> i8 {
        let r = k.rem_euclid(self.m as i64);
        if r == 0 {
            self.values[self.m as usize - 1]
        } else {
            self.values[r as usize - 1]
        }
    }

    /// χ(ab) = χ(a)χ(b) for all a, b in one period.
    pub fn is_completely_multiplicative(&self) -> bool {
        let m = self.m as i64;
        (1..=m).all(|a| (1..=m).all(|b| self.chi(a * b) == self.chi(a) * self.chi(b)))
    }

    /// The table agrees with the Kronecker symbol one period further on.
    pub fn is_periodic(&self) -> bool {
        let m = self.m as i64;
        (1..=m).all(|k| kronecker(self.d, k + m) == self.chi(k) && kronecker(self.d, k + 2 * m) == self.chi(k))
    }

    /// χ(a) = 0 exactly when gcd(a, m) > 1.
    pub fn vanishes_off_units(&self) -> bool {
        let m = self.m as i64;
        (1..=m).all(|a| (self.chi(a) == 0) == (a.gcd(&m) > 1))
    }

    /// Σ_{k=1}^{m} k·χ(k), the integer inside Edwards' d < 0 formula.
    pub fn weighted_sum(&self) -> i64 {
        self.values.iter().enumerate().map(|(i, &c)| (i as i64 + 1) * c as i64).sum()
    }
}

/// Character table with Edwards' modulus rule.
pub fn character_table(d: i64) -> Result<DirichletCharacter> {
    DirichletCharacter::with_modulus(d, edwards_modulus(d)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LRoute {
    NegativeClosed,
    TrigProduct,
    ClassNumber,
    PartialSum,
}

#[derive(Debug, Clone)]
pub struct LValue {
    pub d: i64,
    pub value: PrecisionReal,
    pub route: LRoute,
    /// Modulus the route was evaluated with.
    pub modulus: u64,
}

fn negative_closed(d: i64, m: u64, p: Precision) -> Result<LValue> {
    if d >= 0 {
        return Err(Error::domain("l_negative", format!("d = {d} must be negative")));
    }
    let table = DirichletCharacter::with_modulus(d, m)?;
    let work = p.guarded(GUARD);
    let inner = table.weighted_sum().unsigned_abs();
    let m_real = PrecisionReal::from_int(m, work);
    let m_three_halves = &m_real * &m_real.sqrt()?;
    let value = PrecisionReal::pi(work).mul_int(inner) / m_three_halves;
    Ok(LValue { d, value: value.with_precision(p), route: LRoute::NegativeClosed, modulus: m })
}

/// L_d(1) = π/m^(3/2) · |1 + Σ_{k=2}^{m} k·χ(k)| with Edwards' modulus.
pub fn l_negative(d: i64, p: Precision) -> Result<LValue> {
    if d >= 0 {
        return Err(Error::domain("l_negative", format!("d = {d} must be negative")));
    }
    negative_closed(d, edwards_modulus(d)?, p)
}

/// The same closed form over the conductor of (d/·).
///
/// For d = −8 and d = −4 Edwards' modulus is twice the conductor and the
/// closed form comes out at half of Σ (d/n)/n. Over the conductor it
/// reproduces the series.
pub fn l_negative_primitive(d: i64, p: Precision) -> Result<LValue> {
    if d >= 0 {
        return Err(Error::domain("l_negative_primitive", format!("d = {d} must be negative")));
    }
    negative_closed(d, conductor(d)?, p)
}

fn class_number_value(d: i64, h: u32, p: Precision) -> Result<(PrecisionReal, PrecisionReal)> {
    if h == 0 {
        return Err(Error::domain("l_class_number", "class number must be positive"));
    }
    let unit = fundamental_unit(d)
        .map_err(|_| Error::domain("l_class_number", format!("d = {d} must be squarefree, > 1 and ≡ 1 (mod 4)")))?;
    let work = p.guarded(GUARD);
    let log_e = unit.norm_one_unit().to_real(work).ln()?.mul_int(h);
    Ok((log_e, PrecisionReal::from_int(d, work)))
}

/// L_d(1) = h·log E/√d, E the fundamental unit of norm +1.
pub fn l_class_number(d: i64, h: u32, p: Precision) -> Result<LValue> {
    let (log_e, d_real) = class_number_value(d, h, p)?;
    let value = log_e / d_real.sqrt()?;
    Ok(LValue { d, value: value.with_precision(p), route: LRoute::ClassNumber, modulus: d as u64 })
}

/// h·log E/d, the class number formula with d itself in the denominator.
pub fn l_class_number_over_d(d: i64, h: u32, p: Precision) -> Result<PrecisionReal> {
    let (log_e, d_real) = class_number_value(d, h, p)?;
    Ok((log_e / d_real).with_precision(p))
}

/// Π sin(kπ/m) over χ(k) = 1 divided by the same over χ(k) = −1, 0 < k < m.
pub fn trig_quotient(table: &DirichletCharacter, p: Precision) -> PrecisionReal {
    let work = p.guarded(GUARD);
    let pi = PrecisionReal::pi(work);
    let one = PrecisionReal::one(work);
    let (mut num, mut den) = (one.clone(), one);
    for k in 1..table.m as i64 {
        let s = (&pi * &PrecisionReal::from_ratio(k, table.m, work)).sin();
        match table.chi(k) {
            1 => num = num * s,
            -1 => den = den * s,
            _ => {}
        }
    }
    (num / den).with_precision(p)
}

/// Outcome of the d > 0 product formula, which carries a ± in front.
#[derive(Debug, Clone)]
pub struct TrigProductEvaluation {
    pub lvalue: LValue,
    pub quotient: PrecisionReal,
    /// The sign in front of log|quotient|/√m that makes L positive.
    pub sign: i8,
}

/// L_d(1) = ±(1/√m)·log|quotient|, sign chosen so that L > 0.
pub fn l_trig_product(d: i64, p: Precision) -> Result<TrigProductEvaluation> {
    if d <= 0 {
        return Err(Error::domain("l_trig_product", format!("d = {d} must be positive")));
    }
    let table = character_table(d)?;
    let work = p.guarded(GUARD);
    let quotient = trig_quotient(&table, work);
    let log = quotient.abs().ln()? / PrecisionReal::from_int(table.m, work).sqrt()?;
    let (sign, value) = if log.is_negative() { (-1, -log) } else { (1, log) };
    Ok(TrigProductEvaluation {
        lvalue: LValue { d, value: value.with_precision(p), route: LRoute::TrigProduct, modulus: table.m },
        quotient: quotient.with_precision(p),
        sign,
    })
}

/// Multipliers k of π/29 in the squared sines of the long d = 29 quotient,
/// numerator then denominator.
pub const QUOTIENT_29_LONG: ([i64; 7], [i64; 7]) = ([2, 3, 8, 10, 11, 12, 14], [1, 4, 5, 6, 7, 9, 13]);

/// Multipliers k of π/58 in its reduced form, which also carries 2⁻¹⁰.
pub const QUOTIENT_29_SHORT: ([i64; 2], [i64; 7]) = ([4, 6], [1, 5, 7, 8, 9, 12, 13]);

fn sine_squares(ks: &[i64], m: i64, p: Precision) -> PrecisionReal {
    let pi = PrecisionReal::pi(p);
    ks.iter().fold(PrecisionReal::one(p), |acc, &k| {
        let s = (&pi * &PrecisionReal::from_ratio(k, m, p)).sin();
        acc * &s * &s
    })
}

/// The long d = 29 quotient of squared sines, as written out.
pub fn quotient29_long(p: Precision) -> PrecisionReal {
    let work = p.guarded(GUARD);
    let (num, den) = QUOTIENT_29_LONG;
    (sine_squares(&num, 29, work) / sine_squares(&den, 29, work)).with_precision(p)
}

/// The reduced form of the same quotient over π/58.
pub fn quotient29_short(p: Precision) -> PrecisionReal {
    let work = p.guarded(GUARD);
    let (num, den) = QUOTIENT_29_SHORT;
    (sine_squares(&num, 58, work) / sine_squares(&den, 58, work).mul_int(1024)).with_precision(p)
}

/// Three closed forms of L₂₉(1) that should coincide.
#[derive(Debug, Clone)]
pub struct L29Forms {
    /// log(9801 + 1820√29)/(3√29).
    pub from_pell: PrecisionReal,
    /// 2·log u₂₉/√29.
    pub from_unit: PrecisionReal,
    /// −(1/√29)·log[(2/(5 + √29))²].
    pub from_inverse_unit: PrecisionReal,
    /// 2/(5 + √29) = u₂₉⁻¹ holds exactly.
    pub inverse_exact: bool,
    /// (9801 + 1820√29) = u₂₉⁶ holds exactly.
    pub pell_exact: bool,
}

pub fn l29_forms(p: Precision) -> Result<L29Forms> {
    let work = p.guarded(GUARD);
    let u = QuadraticSurd::from_ints(5, 1, 2, 29);
    let pell = QuadraticSurd::from_ints(9801, 1820, 1, 29);
    let two_over = &QuadraticSurd::from_ints(2, 0, 1, 29) * &QuadraticSurd::from_ints(5, 1, 1, 29).inverse()?;
    let root29 = PrecisionReal::from_int(29, work).sqrt()?;
    let log_u = u.to_real(work).ln()?;
    let from_pell = pell.to_real(work).ln()? / root29.mul_int(3);
    let from_unit = log_u.mul_int(2) / &root29;
    let sq = two_over.to_real(work);
    let from_inverse_unit = -((&sq * &sq).ln()? / &root29);
    Ok(L29Forms {
        from_pell: from_pell.with_precision(p),
        from_unit: from_unit.with_precision(p),
        from_inverse_unit: from_inverse_unit.with_precision(p),
        inverse_exact: two_over == u.inverse()?,
        pell_exact: u.pow(6)? == pell,
    })
}

/// Σ_{n ≤ N} χ(n)/n in f64, summed one complete period at a time.
///
/// N is rounded down to a multiple of m. Over a full period Σ χ(k) = 0, so
/// each block is O(1/j²) and the block sums converge absolutely.
pub fn partial_sum(table: &DirichletCharacter, terms: u64) -> f64 {
    let m = table.m;
    let blocks = terms / m;
    let mut total = 0.0f64;
    let mut compensation = 0.0f64;
    for j in 0..blocks {
        let base = (j * m) as f64;
        let block: f64 = table
            .values
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| c as f64 / (base + i as f64 + 1.0))
            .sum();
        // Neumaier summation across blocks
        let t = total + block;
        if total.abs() >= block.abs() {
            compensation += (total - t) + block;
        } else {
            compensation += (block - t) + total;
        }
        total = t;
    }
    total + compensation
}

/// [`partial_sum`] over the conductor of (d/·), wrapped as an L-value.
pub fn l_partial_sum(d: i64, terms: u64) -> Result<LValue> {
    let table = DirichletCharacter::with_modulus(d, conductor(d)?)?;
    Ok(LValue {
        d,
        value: PrecisionReal::from_f64(partial_sum(&table, terms), Precision::new(15)),
        route: LRoute::PartialSum,
        modulus: table.m,
    })
}
