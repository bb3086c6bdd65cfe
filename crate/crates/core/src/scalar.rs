//! Scalar abstraction shared by exact and floating-point code paths.
//!
//! Graph weights are always exact rationals. Coordinates of a realization are
//! generic over [`Scalar`], so the same verification and congruence code runs
//! over `BigRational` (exact mode) and over `f64`/`f32` (real mode).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Exact rational number used for weights, anchors and exact coordinates.
pub type Rational = BigRational;

/// Numeric type usable as a realization coordinate.
pub trait Scalar:
    Clone + PartialOrd + Debug + Display + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Significand precision in bits, `None` for exact arithmetic.
    const PRECISION_BITS: Option<u32>;

    fn from_rational(r: &Rational) -> Self;

    /// Exact rational value of `self`. Floats convert without rounding.
    fn to_rational(&self) -> Option<Rational>;

    fn floor(&self) -> Self;
    fn ceil(&self) -> Self;
    fn round(&self) -> Self;

    /// Tolerance used by comparisons when the caller does not supply one.
    fn default_tolerance() -> Self;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `|a - b| <= tol * max(1, |a|, |b|)`; exact equality in exact mode.
    fn approx_eq(&self, other: &Self, tol: &Self) -> bool {
        if Self::EXACT {
            return self == other;
        }
        let diff = (self.clone() - other.clone()).abs();
        let mut scale = Self::one();
        if self.abs() > scale {
            scale = self.abs();
        }
        if other.abs() > scale {
            scale = other.abs();
        }
        diff <= tol.clone() * scale
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const PRECISION_BITS: Option<u32> = None;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn floor(&self) -> Self {
        BigRational::floor(self)
    }

    fn ceil(&self) -> Self {
        BigRational::ceil(self)
    }

    fn round(&self) -> Self {
        BigRational::round(self)
    }

    fn default_tolerance() -> Self {
        Rational::zero()
    }
}

macro_rules! float_scalar {
    ($t:ty, $bits:expr, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;
            const PRECISION_BITS: Option<u32> = Some($bits);

            fn from_rational(r: &Rational) -> Self {
                rational_to_f64(r) as $t
            }

            fn to_rational(&self) -> Option<Rational> {
                BigRational::from_float(*self)
            }

            fn floor(&self) -> Self {
                <$t>::floor(*self)
            }

            fn ceil(&self) -> Self {
                <$t>::ceil(*self)
            }

            fn round(&self) -> Self {
                <$t>::round(*self)
            }

            fn default_tolerance() -> Self {
                $tol
            }
        }
    };
}

float_scalar!(f64, 53, 1e-9);
float_scalar!(f32, 24, 1e-5);

/// Nearest `f64` to a rational; handles numerators/denominators beyond `f64` range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let (n, d) = (r.numer(), r.denom());
    let shift = (n.bits() as i64 - d.bits() as i64).max(0) as u32;
    let scaled = BigRational::new(n.clone(), d.clone() << shift as usize);
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Parses `p`, `p/q`, or a decimal literal such as `-1.25` or `3e-2` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let exp = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let mut value = if exp >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, exp as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-exp) as usize))
    };
    if neg {
        value = -value;
    }
    Some(value)
}

/// Reduced-fraction rendering: `3`, `-7/2`.
pub fn format_rational(r: &Rational) -> String {
    if is_integral(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
