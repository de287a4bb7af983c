//! Exact arithmetic: rationals, multi-quadratic fields, polynomials.

mod bivariate;
mod factor;
mod field;
mod matrix;
mod poly;

pub use bivariate::BivariatePolynomial;
pub use factor::{
    canonical_cmp, degree_guard, factor, factor_over, factor_rational, Factorization,
    DEFAULT_DEGREE_GUARD,
};
pub use field::{Adjoined, FieldDescriptor, FieldElement, MAX_RADICANDS};
pub use matrix::{from_int_rows, Matrix};
pub use poly::{Polynomial, Var};
pub(crate) use poly::{join_terms, term_string};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

/// A commutative ring with exact equality.
pub trait Ring:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn from_int(n: i64) -> Self {
        let mut acc = Self::zero();
        let mut base = Self::one();
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            m >>= 1;
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// A field of characteristic zero.
pub trait Field: Ring + Div<Output = Self> {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_int(n) / Self::from_int(d)
    }
}

impl Ring for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Exact square root of a rational, if it is a square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Splits a positive integer into `(s, m)` with `n = s^2 * m` and `m` square-free.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut m = n.clone();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let pp = &p * &p;
        while (&m % &pp).is_zero() {
            m /= &pp;
            s *= &p;
        }
        p += 1;
    }
    (s, m)
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
