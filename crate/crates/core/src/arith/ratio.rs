//! Arbitrary-precision rational numbers, always kept in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::ArithError;

/// An exact fraction of arbitrary-precision integers.
///
/// Invariants (maintained by every operation): the fraction is fully
/// reduced, and the denominator is strictly positive. All bound
/// comparisons in this crate go through `ExactRatio` ordering, which is
/// exact cross-multiplication on big integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    /// Builds `numerator / denominator` in lowest terms. Zero denominators
    /// are rejected.
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self, ArithError> {
        if denominator.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(ExactRatio(BigRational::new(numerator, denominator)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        ExactRatio(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRatio(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Raises to a small non-negative integer power.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ExactRatio::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Renders the value with `sig` significant digits, rounding half to
    /// even. Used for display columns only; assertions never read this.
    pub fn to_decimal(&self, sig: u32) -> String {
        assert!(sig >= 1, "need at least one significant digit");
        if self.0.is_zero() {
            return "0".to_string();
        }
        let negative = self.0.is_negative();
        let mut num = self.0.numer().abs();
        let mut den = self.0.denom().clone();
        let ten = BigInt::from(10);
        // Scale so that sig digits of quotient remain, tracking the number
        // of fractional digits in `exp10`.
        let lower = num::pow(ten.clone(), (sig - 1) as usize);
        let upper = &lower * &ten;
        let mut exp10: i64 = 0;
        while &num / &den < lower {
            num *= &ten;
            exp10 += 1;
        }
        while &num / &den >= upper {
            den *= &ten;
            exp10 -= 1;
        }
        let mut q = &num / &den;
        let r = &num % &den;
        // round half to even
        let twice = &r * BigInt::from(2);
        let round_up = match twice.cmp(&den) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => (&q % BigInt::from(2)).is_one(),
        };
        if round_up {
            q += 1;
            if q == upper {
                q = &q / &ten;
                exp10 -= 1;
            }
        }
        let digits = q.to_string();
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        let int_len = digits.len() as i64 - exp10;
        if int_len <= 0 {
            out.push_str("0.");
            for _ in 0..(-int_len) {
                out.push('0');
            }
            out.push_str(&digits);
        } else if (int_len as usize) >= digits.len() {
            out.push_str(&digits);
            for _ in 0..(int_len as usize - digits.len()) {
                out.push('0');
            }
        } else {
            let (ip, fp) = digits.split_at(int_len as usize);
            out.push_str(ip);
            out.push('.');
            out.push_str(fp);
        }
        out
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fmt, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fmt, "ExactRatio({})", self)
    }
}

impl From<u64> for ExactRatio {
    fn from(value: u64) -> Self {
        ExactRatio::from_integer(value)
    }
}

impl From<i64> for ExactRatio {
    fn from(value: i64) -> Self {
        ExactRatio::from_integer(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                ExactRatio((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-&self.0)
    }
}
