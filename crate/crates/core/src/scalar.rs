//! Numeric backends.
//!
//! Every computation in the crate is generic over [`Scalar`], which has two
//! implementations: [`Rational`] (arbitrary precision, exact, always in lowest
//! terms) and `f64`. Sign decisions that carry mathematical claims are only
//! ever made on the exact backend.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, SubAssign};
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;

/// Exact rational number. Normalized on construction: gcd(p, q) = 1, q > 0.
pub type Rational = BigRational;

/// Relative tolerance used by the float backend when none is given.
pub const DEFAULT_EPSILON: f64 = 1e-12;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Signed
    + Send
    + Sync
    + 'static
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// True when arithmetic is exact and `==` is mathematical equality.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    /// Exact rational value, `None` for non-finite floats.
    fn to_rational(&self) -> Option<Rational>;

    fn to_f64(&self) -> f64;

    fn from_i64(v: i64) -> Self;

    /// `|self| <= eps * |scale|` on floats, `self == 0` on rationals.
    fn is_negligible(&self, scale: &Self, eps: f64) -> bool;

    /// Equality up to relative tolerance `eps` (exact on rationals).
    fn approx_eq(&self, other: &Self, eps: f64) -> bool;

    /// Determinant of the `n x n` row-major matrix `entries`.
    fn determinant(entries: &[Self], n: usize) -> Self;

    /// Total order. On rationals this cross-multiplies, which is much cheaper
    /// than the `Ord` impl for large denominators.
    fn compare(&self, other: &Self) -> Ordering;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn is_negligible(&self, _scale: &Self, _eps: f64) -> bool {
        self.is_zero()
    }

    fn approx_eq(&self, other: &Self, _eps: f64) -> bool {
        self == other
    }

    fn determinant(entries: &[Self], n: usize) -> Self {
        linalg::bareiss_det(entries, n)
    }

    fn compare(&self, other: &Self) -> Ordering {
        if self.denom() == other.denom() {
            return self.numer().cmp(other.numer());
        }
        (self.numer() * other.denom()).cmp(&(other.numer() * self.denom()))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn is_negligible(&self, scale: &Self, eps: f64) -> bool {
        self.abs() <= eps * scale.abs()
    }

    fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        (self - other).abs() <= eps * scale
    }

    fn determinant(entries: &[Self], n: usize) -> Self {
        linalg::lu_det(entries, n)
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

/// Parses `"p/q"`, an integer, or a decimal such as `"-0.25"` or `"1.5e-3"`
/// into an exact rational. Decimals are converted exactly: `"0.1"` is 1/10.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let t = token.trim();
    if t.is_empty() {
        return Err(Error::parse("scalar", "empty token"));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim())
            .map_err(|_| Error::parse("scalar", format!("bad numerator in {t:?}")))?;
        let q = BigInt::from_str(q.trim())
            .map_err(|_| Error::parse("scalar", format!("bad denominator in {t:?}")))?;
        if q.is_zero() {
            return Err(Error::parse("scalar", format!("zero denominator in {t:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(t).ok_or_else(|| Error::parse("scalar", format!("not a number: {t:?}")))
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], i64::from_str(&t[i + 1..]).ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    if exponent.unsigned_abs() > 10_000 {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&all_digits).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let power = num::pow(ten, scale.unsigned_abs() as usize);
    Some(if scale >= 0 {
        Rational::from_integer(numer * power)
    } else {
        Rational::new(numer, power)
    })
}

/// Parses a token for the float backend. Fractions are accepted and rounded.
pub fn parse_float(token: &str) -> Result<f64> {
    let t = token.trim();
    let value = if t.contains('/') {
        Scalar::to_f64(&parse_rational(t)?)
    } else {
        f64::from_str(t).map_err(|_| Error::parse("scalar", format!("not a number: {t:?}")))?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::parse("scalar", format!("non-finite value {t:?}")))
    }
}

/// Parses a scalar for backend `T`.
pub fn parse_scalar<T: Scalar>(token: &str) -> Result<T> {
    if T::EXACT {
        Ok(T::from_rational(&parse_rational(token)?))
    } else {
        Ok(T::from_rational(&Rational::from_float(parse_float(token)?).unwrap_or_else(Rational::zero)))
    }
}

/// Parses a comma separated list of scalars, e.g. `"-2/15,-7/5,0"`.
pub fn parse_list<T: Scalar>(text: &str) -> Result<Vec<T>> {
    text.split(',').map(parse_scalar::<T>).collect()
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &Rational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
