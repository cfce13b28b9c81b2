//! Rational numbers over arbitrary-precision integers.
//!
//! The crate uses [`num_rational::BigRational`] directly; it keeps every value
//! reduced with a positive denominator, and zero is `0/1`.  This module adds
//! parsing, formatting and a few conversions used across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Rational = BigRational;

/// Builds the rational `n / d`.
///
/// # Panics
/// Panics when `d` is zero.
#[must_use]
pub fn q(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
#[must_use]
pub fn qi(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `n` or `n/d`.
#[must_use]
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n` or `n/d` (optional leading sign on the numerator).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Best rational approximation of `x` whose denominator does not exceed
/// `max_den`, accepted only if it lies within `tol` of `x`.
#[must_use]
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1i64 } else { 1 };
    let mut v = x.abs();
    if v > 1e15 {
        return None;
    }
    // continued fraction convergents h/k
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut best: Option<(i128, i128)> = None;
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > i128::from(max_den) {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h2 as f64) / (k2 as f64) - x.abs()).abs() <= tol {
            best = Some((h2, k2));
            break;
        }
        let frac = v - a;
        if frac < 1e-300 {
            break;
        }
        v = 1.0 / frac;
    }
    let (h, k) = best?;
    Some(BigRational::new(
        BigInt::from(h * i128::from(sign)),
        BigInt::from(k),
    ))
}

/// Converts a rational to the nearest `f64` (lossy).
#[must_use]
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators and denominators together
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift = (nb.max(db) - 1000).max(0) as usize;
            let n = (r.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::MAX);
            let v = if d == 0.0 { f64::INFINITY } else { n / d };
            if r.is_negative() {
                -v
            } else {
                v
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_halves_and_thirds() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    }

    #[test]
    fn zero_is_canonical() {
        let z = q(0, 7);
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(format_rational(&z), "0");
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "7/2", "-5/12"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/6").unwrap(), q(2, 3));
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(-0.375, 1000, 1e-12), Some(q(-3, 8)));
        assert_eq!(rationalize(13.0 / 168.0, 10_000, 1e-12), Some(q(13, 168)));
        assert_eq!(rationalize(std::f64::consts::PI, 100, 1e-12), None);
    }
}
