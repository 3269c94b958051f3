//! Scalar fields the matrix code runs over.
//!
//! Everything that is an exact polynomial identity runs over [`Rational`].
//! `f64` is used only where the math forces it: Newton-sampled Toeplitz
//! parameters, the moment map, and torus canonicalization (which needs roots).

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// True when arithmetic is exact, so equality with zero is decisive.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Approximate conversion from a float. Exact scalars rationalize to
    /// within `1e-12`.
    fn from_f64_approx(v: f64) -> Self;

    fn mode_name() -> &'static str {
        if Self::EXACT {
            "exact"
        } else {
            "float"
        }
    }

    /// Zero test; exact for rationals, `|v| <= tol` for floats.
    fn is_zero_tol(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64().abs() <= tol
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64_approx(v: f64) -> Self {
        rationalize(v, 1e-12)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64_approx(v: f64) -> Self {
        v
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_int(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Best rational approximation of `x` within `tol`, found by walking the
/// continued-fraction convergents.
pub fn rationalize(x: f64, tol: f64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    let negative = x < 0.0;
    let mut rest = x.abs();
    // convergent recurrences h_n = a_n h_{n-1} + h_{n-2}, same for k
    let (mut hm2, mut hm1) = (BigInt::zero(), BigInt::one());
    let (mut km2, mut km1) = (BigInt::one(), BigInt::zero());
    let target = x.abs();
    for _ in 0..64 {
        let a = rest.floor();
        let a_int = BigInt::from_f64(a).unwrap_or_default();
        let hn = &a_int * &hm1 + &hm2;
        let kn = &a_int * &km1 + &km2;
        hm2 = std::mem::replace(&mut hm1, hn);
        km2 = std::mem::replace(&mut km1, kn);
        let approx = Rational::new(hm1.clone(), km1.clone());
        let err = (ToPrimitive::to_f64(&approx).unwrap_or(f64::INFINITY) - target).abs();
        let frac = rest - a;
        if err <= tol || frac <= f64::EPSILON {
            return if negative { -approx } else { approx };
        }
        rest = 1.0 / frac;
    }
    let approx = Rational::new(hm1, km1);
    if negative {
        -approx
    } else {
        approx
    }
}

/// Parses `"p/q"`, `"p"`, or a decimal literal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if s.contains('/') || s.contains(['e', 'E']) {
            return Err(Error::Parse(format!("unsupported rational literal '{s}'")));
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|e| Error::Parse(format!("'{s}': {e}")))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(num, den);
        return Ok(if negative { -r } else { r });
    }
    Rational::from_str(s).map_err(|e| Error::Parse(format!("'{s}': {e}")))
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced_with_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn parse_formats() {
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn rationalize_recovers_simple_fractions() {
        assert_eq!(rationalize(0.5, 1e-12), rat(1, 2));
        assert_eq!(rationalize(-2.0 / 3.0, 1e-12), rat(-2, 3));
        assert_eq!(rationalize(3.0, 1e-12), int(3));
        let pi = rationalize(std::f64::consts::PI, 1e-6);
        assert!((Scalar::to_f64(&pi) - std::f64::consts::PI).abs() <= 1e-6);
    }
}
