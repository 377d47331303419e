//! The exact scalar tower: Gaussian rationals `Q(i)`.
//!
//! Function and chain coefficients are kept over `Complex<BigRational>` so
//! that products, averages, boundaries and invariance checks are exact
//! identities, never float comparisons. Only point evaluation drops to
//! `Complex<f64>`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
/// Exact Gaussian rational a + b*i.
pub type ExactScalar = Complex<Rational>;
pub type Complex64 = Complex<f64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn exact(re: Rational, im: Rational) -> ExactScalar {
    Complex::new(re, im)
}

pub fn exact_int(re: i64, im: i64) -> ExactScalar {
    Complex::new(rat_int(re), rat_int(im))
}

pub fn exact_zero() -> ExactScalar {
    Complex::new(Rational::zero(), Rational::zero())
}

pub fn exact_one() -> ExactScalar {
    Complex::new(Rational::one(), Rational::zero())
}

/// The imaginary unit.
pub fn exact_i() -> ExactScalar {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

pub fn exact_to_c64(z: &ExactScalar) -> Complex64 {
    Complex::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// Fractional part in `[0, 1)`.
pub fn fract_mod1(r: &Rational) -> Rational {
    r - r.floor()
}

/// `exp(2*pi*i*q)` when it lies in `Q(i)`, i.e. when `4q` is an integer.
pub fn quarter_phase(q: &Rational) -> Option<ExactScalar> {
    let four_q = fract_mod1(q) * rat_int(4);
    if !four_q.is_integer() {
        return None;
    }
    let m = (four_q.numer() % BigInt::from(4i64)).to_i64().unwrap();
    Some(match m.rem_euclid(4) {
        0 => exact_int(1, 0),
        1 => exact_int(0, 1),
        2 => exact_int(-1, 0),
        _ => exact_int(0, -1),
    })
}

/// `exp(2*pi*i*q)` in the Gaussian tower, or a typed error.
pub fn quarter_phase_checked(q: &Rational) -> Result<ExactScalar> {
    quarter_phase(q).ok_or_else(|| Error::InexactPhase(q.to_string()))
}

/// Parses "3", "-1/2", "0" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::InvalidRational(s.to_string()))
}

/// Total order on Gaussian rationals (lexicographic on re, im); used only
/// for canonical sorting, not as a ring order.
pub fn cmp_exact(a: &ExactScalar, b: &ExactScalar) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

pub fn exact_is_zero(z: &ExactScalar) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

pub fn exact_conj(z: &ExactScalar) -> ExactScalar {
    Complex::new(z.re.clone(), -z.im.clone())
}

/// |z|^2 as an exact rational.
pub fn exact_norm_sqr(z: &ExactScalar) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

/// Format a rational compactly ("3", "-1/2").
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Human-readable Gaussian rational, e.g. "1/2 + 3i".
pub fn format_exact(z: &ExactScalar) -> String {
    if z.im.is_zero() {
        format_rational(&z.re)
    } else if z.re.is_zero() {
        format!("{}i", format_rational(&z.im))
    } else if z.im.is_negative() {
        format!("{} - {}i", format_rational(&z.re), format_rational(&(-z.im.clone())))
    } else {
        format!("{} + {}i", format_rational(&z.re), format_rational(&z.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_phases() {
        assert_eq!(quarter_phase(&rat(0, 1)), Some(exact_int(1, 0)));
        assert_eq!(quarter_phase(&rat(1, 4)), Some(exact_int(0, 1)));
        assert_eq!(quarter_phase(&rat(1, 2)), Some(exact_int(-1, 0)));
        assert_eq!(quarter_phase(&rat(-1, 4)), Some(exact_int(0, -1)));
        assert_eq!(quarter_phase(&rat(7, 2)), Some(exact_int(-1, 0)));
        assert_eq!(quarter_phase(&rat(1, 3)), None);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), rat_int(3));
        assert!(parse_rational("x").is_err());
        assert_eq!(format_exact(&exact(rat(1, 2), rat(-1, 1))), "1/2 - 1i");
    }

    #[test]
    fn fract_wraps_negatives() {
        assert_eq!(fract_mod1(&rat(-1, 4)), rat(3, 4));
        assert_eq!(fract_mod1(&rat(9, 4)), rat(1, 4));
    }
}
