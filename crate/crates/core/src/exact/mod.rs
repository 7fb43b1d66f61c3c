//! Exact arithmetic: rationals, quadratic and biquadratic surds, Pell
//! equations and the integer coincidences behind the 58 series.

mod biquadratic;
mod pell;
mod surd;

pub use biquadratic::BiquadraticSurd;
pub use pell::{fundamental_unit, pell_fundamental, pell_negative, FundamentalUnit, PellSolution};
pub use surd::QuadraticSurd;


use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

pub type Rational = BigRational;

/// `u^n` for a quadratic surd, exact.
pub fn surd_pow(u: &QuadraticSurd, n: i64) -> crate::Result<QuadraticSurd> {
    u.pow(n)
}

/// One exact integer identity with both sides rendered as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coincidence {
    pub name: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

fn coincidence(name: &'static str, lhs: BigInt, rhs: BigInt) -> Coincidence {
    Coincidence {
        name,
        holds: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// The integer facts that tie 9801, 1103, 26390 and 396 to the field ℚ(√29).
pub fn coincidence_checks() -> Vec<Coincidence> {
    let b = |n: i64| BigInt::from(n);
    vec![
        coincidence("64*19602^2 = 396^4", b(64) * b(19602).pow(2), b(396).pow(4)),
        coincidence("26390 = 29*70*13", b(26390), b(29 * 70 * 13)),
        coincidence("70^2 - 29*13^2 = -1", b(70).pow(2) - b(29) * b(13).pow(2), b(-1)),
        coincidence("9801^2 - 29*1820^2 = 1", b(9801).pow(2) - b(29) * b(1820).pow(2), b(1)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_coincidences_hold() {
        let checks = coincidence_checks();
        assert_eq!(checks.len(), 4);
        for c in &checks {
            assert!(c.holds, "{}: {} vs {}", c.name, c.lhs, c.rhs);
        }
        assert_eq!(checks[0].rhs, "24591257856");
    }

    #[test]
    fn pell_29_is_cube_squared_of_unit() {
        let u = fundamental_unit(29).unwrap().epsilon;
        let minus = pell_negative(29).unwrap().unwrap().as_surd().unwrap();
        let plus = pell_fundamental(29).unwrap().as_surd().unwrap();
        assert_eq!(surd_pow(&u, 3).unwrap(), minus);
        assert_eq!(surd_pow(&u, 6).unwrap(), plus);
    }
}
