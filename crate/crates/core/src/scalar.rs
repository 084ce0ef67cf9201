//! Exact scalar fields.
//!
//! Every computation in this crate is exact: kernels, ranks and subspace
//! equalities are decided by testing for literal zero. The [`Scalar`] trait
//! captures the field operations we need on top of `num_traits::Num`.
//! Floating point types are deliberately not implementors.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Zero};

pub trait Scalar:
    Num + Clone + Debug + Display + Neg<Output = Self> + PartialOrd + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Lossless widening to an arbitrary-precision rational.
    fn to_rational(&self) -> BigRational;

    /// Narrowing from an arbitrary-precision rational. Panics if the value does
    /// not fit the representation.
    fn from_rational(q: &BigRational) -> Self;

    fn is_integral(&self) -> bool;
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

macro_rules! machine_ratio {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_int(n: i64) -> Self {
                Ratio::from_integer(n as $int)
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                Ratio::new(num as $int, den as $int)
            }

            fn to_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn from_rational(q: &BigRational) -> Self {
                let n: $int = q.numer().try_into().expect("numerator overflow");
                let d: $int = q.denom().try_into().expect("denominator overflow");
                Ratio::new(n, d)
            }

            fn is_integral(&self) -> bool {
                self.is_integer()
            }
        }
    };
}

machine_ratio!(i64);
machine_ratio!(i128);

/// Renders a scalar as `"p/q"`, or `"p"` when the denominator is one.
pub fn to_string_exact<S: Scalar>(x: &S) -> String {
    let q = x.to_rational();
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_exact<S: Scalar>(s: &str) -> Option<S> {
    let s = s.trim();
    let q = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(s.parse().ok()?),
    };
    Some(S::from_rational(&q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_strings_round_trip() {
        let x: BigRational = parse_exact("-7/3").unwrap();
        assert_eq!(to_string_exact(&x), "-7/3");
        let y: Ratio<i64> = parse_exact("4").unwrap();
        assert_eq!(to_string_exact(&y), "4");
        assert!(parse_exact::<BigRational>("1/0").is_none());
    }

    #[test]
    fn machine_ratios_widen_losslessly() {
        let x = Ratio::<i128>::from_ratio(-5, 10);
        assert_eq!(x.to_rational(), BigRational::from_ratio(-1, 2));
        assert!(!x.is_integral());
    }
}
