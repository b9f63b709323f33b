//! Exact scalar types.
//!
//! Everything in this crate is an exact identity or inequality, so the value
//! type is any exact ordered ring from `num`. Machine integers are the fast
//! path for rank functions; [`crate::Rational`] is the general case.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An exact, totally ordered number type.
pub trait Scalar:
    Clone + Ord + Num + Signed + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// True when the value is an integer.
    fn is_integral(&self) -> bool;
    /// Lossless conversion into an arbitrary-precision rational.
    fn to_rational(&self) -> BigRational;
    /// Exact conversion back, if the rational is representable.
    fn from_rational(r: &BigRational) -> Option<Self>;
}

macro_rules! machine_int {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn is_integral(&self) -> bool {
                true
            }
            fn to_rational(&self) -> BigRational {
                BigRational::from_integer(BigInt::from(*self))
            }
            fn from_rational(r: &BigRational) -> Option<Self> {
                if r.is_integer() { r.to_integer().to_string().parse().ok() } else { None }
            }
        }
    )*};
}
machine_int!(i32, i64, i128);

impl Scalar for BigInt {
    fn is_integral(&self) -> bool {
        true
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        r.is_integer().then(|| r.to_integer())
    }
}

impl Scalar for Ratio<i64> {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
    fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(Ratio::new(r.numer().to_i64()?, r.denom().to_i64()?))
    }
}

impl Scalar for BigRational {
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
}

/// Shorthand for building a rational `p/q`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integral rational.
pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}
