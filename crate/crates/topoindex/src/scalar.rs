//! Scalar abstraction for evaluating edge-weight expressions either in
//! exact rational arithmetic or in floating point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

use crate::Rational;

/// Number type an expression evaluator can target.
///
/// `sqrt`/`cbrt` return `None` when the type cannot represent the result;
/// the exact rational implementation refuses both so that the syntactic
/// exactness classifier stays the single source of truth.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;
    fn from_degree(d: u32) -> Self;
    fn sqrt(&self) -> Option<Self>;
    fn cbrt(&self) -> Option<Self>;
}

macro_rules! impl_scalar_for_float {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_rational(r: &Rational) -> Self {
                let num = r.numer().to_f64().unwrap_or(f64::NAN);
                let den = r.denom().to_f64().unwrap_or(f64::NAN);
                (num / den) as $t
            }
            fn from_degree(d: u32) -> Self {
                d as $t
            }
            fn sqrt(&self) -> Option<Self> {
                Some(<$t>::sqrt(*self))
            }
            fn cbrt(&self) -> Option<Self> {
                Some(<$t>::cbrt(*self))
            }
        }
    };
}

impl_scalar_for_float!(f32);
impl_scalar_for_float!(f64);

impl Scalar for BigRational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_degree(d: u32) -> Self {
        BigRational::from_integer(d.into())
    }
    fn sqrt(&self) -> Option<Self> {
        None
    }
    fn cbrt(&self) -> Option<Self> {
        None
    }
}

/// A computed value, tagged by how it was obtained: exact rational or
/// binary64 float.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactScalar {
    Rational(Rational),
    Float(f64),
}

impl ExactScalar {
    pub fn is_exact(&self) -> bool {
        matches!(self, ExactScalar::Rational(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactScalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            ExactScalar::Float(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ExactScalar::Rational(r) => Some(r),
            ExactScalar::Float(_) => None,
        }
    }

    /// Lowest-terms `"p/q"` rendering (just `"p"` for integers), or `None`
    /// on the float path.
    pub fn exact_string(&self) -> Option<String> {
        self.as_rational().map(rational_string)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => f.write_str(&rational_string(r)),
            ExactScalar::Float(x) => write!(f, "{}", round_sig(*x)),
        }
    }
}

/// `"p/q"` in lowest terms with positive denominator, or `"p"` when
/// integral.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.denom().is_negative() {
        // Ratio keeps denominators positive, but don't rely on it.
        format!("{}/{}", -r.numer(), -r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rounds to 12 significant digits for display; the exact string is the
/// lossless channel.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn serialize_rounded<S: Serializer>(x: &f64, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_f64(round_sig(*x))
}

pub fn serialize_rounded_opt<S: Serializer>(
    x: &Option<f64>,
    ser: S,
) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser.serialize_some(&round_sig(*v)),
        None => ser.serialize_none(),
    }
}

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
