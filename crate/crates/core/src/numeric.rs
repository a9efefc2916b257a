//! Exact rational helpers: parsing, integer square roots, formatting.
//!
//! Resonance membership is a measure-zero condition, so every `Δ = 0`
//! decision in this crate runs over [`BigRational`]. Floating point is
//! used only for bound scans and field coefficients.

use num::bigint::BigInt;
use num::integer::Roots;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

/// Exact rational scalar.
pub type Rational = BigRational;

/// Parse a rational from a decimal or fraction literal.
///
/// Accepted forms: `5`, `-3/4`, `0.25`, `2.5e-3`. Decimal forms convert
/// exactly (`0.1` becomes 1/10, not the nearest binary double).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidParams("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::InvalidParams(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let negative = int_part.starts_with('-');
    let digits: String = int_part
        .trim_start_matches(['-', '+'])
        .chars()
        .chain(frac_part.chars())
        .collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::InvalidParams(format!("bad rational literal {s:?}")));
    }
    let mut value = Rational::new(
        digits.parse::<BigInt>().unwrap(),
        BigInt::from(10u32).pow(frac_part.len() as u32),
    );
    let shift = Rational::from_integer(BigInt::from(10u32)).pow(exp10.unsigned_abs() as i32);
    if exp10 >= 0 {
        value *= shift;
    } else {
        value /= shift;
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Exact rational equivalent of an `f64`'s shortest decimal rendering.
///
/// `0.1f64` maps to 1/10 rather than to the binary value it stores.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::InvalidParams(format!("non-finite value {x}")));
    }
    parse_rational(&format!("{x}"))
}

/// Render a rational as `num` or `num/den`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy conversion to `f64`.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Largest integer `k >= 0` with `k^2 <= r`. Requires `r >= 0`.
pub fn floor_sqrt(r: &Rational) -> BigInt {
    assert!(!r.is_negative(), "floor_sqrt of a negative rational");
    if r.is_zero() {
        return BigInt::zero();
    }
    // sqrt(n/d) = sqrt(n*d)/d, so isqrt(n*d) div d never overshoots;
    // at most two upward corrections are needed.
    let n = r.numer();
    let d = r.denom();
    let mut k = (n * d).sqrt() / d;
    loop {
        let next = &k + BigInt::one();
        if Rational::from_integer(&next * &next) <= *r {
            k = next;
        } else {
            return k;
        }
    }
}

/// Exact square root when the rational is a perfect square.
pub fn rational_sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &sn * &sn == *r.numer() && &sd * &sd == *r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Whether the rational is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Integer value of the rational if it is a non-negative perfect square.
pub fn perfect_square_int(r: &Rational) -> Option<BigInt> {
    if !is_integer(r) || r.is_negative() {
        return None;
    }
    let root = r.numer().sqrt();
    (&root * &root == *r.numer()).then_some(root)
}

/// Format a float with 17 significant digits in scientific notation.
pub fn fmt_f64_17(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fraction_and_decimal() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("0.25").unwrap(), Rational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-1.5e-1").unwrap(), Rational::new((-3).into(), 20.into()));
        assert_eq!(parse_rational("5").unwrap(), Rational::from_integer(5.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn f64_roundtrips_through_decimal() {
        assert_eq!(rational_from_f64(0.1).unwrap(), Rational::new(1.into(), 10.into()));
        assert_eq!(rational_from_f64(-0.25).unwrap(), Rational::new((-1).into(), 4.into()));
    }

    #[test]
    fn floor_sqrt_matches_brute_force() {
        for num in 0..200i64 {
            for den in 1..8i64 {
                let r = Rational::new(num.into(), den.into());
                let k = floor_sqrt(&r);
                let k1 = &k + BigInt::one();
                assert!(Rational::from_integer(&k * &k) <= r);
                assert!(Rational::from_integer(&k1 * &k1) > r);
            }
        }
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(perfect_square_int(&Rational::from_integer(49.into())), Some(7.into()));
        assert_eq!(perfect_square_int(&Rational::from_integer(50.into())), None);
        assert_eq!(perfect_square_int(&Rational::new(1.into(), 4.into())), None);
        assert!(rational_sqrt_exact(&Rational::new(9.into(), 4.into())).is_some());
        assert!(rational_sqrt_exact(&Rational::new(2.into(), 1.into())).is_none());
    }
}
