//! The rational function field `K(t)`, its places and residue fields.

mod place;
mod residue;

pub use place::{places_of, poly_valuation, Place, Valuation};
pub use residue::Residue;

use crate::algebra::{BivariatePolynomial, Field, FieldElement, Polynomial, Ring, Var};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Base variable used throughout.
pub const T: Var = Var::new('t');

/// A reduced fraction of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial<FieldElement>,
    den: Polynomial<FieldElement>,
}

impl RationalFunction {
    pub fn new(num: Polynomial<FieldElement>, den: Polynomial<FieldElement>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let var = num.check_same_var(&den)?;
        let (num, den) = (num.with_var(var), den.with_var(var));
        if num.is_zero() {
            return Ok(Self::from_poly(Polynomial::new(var, vec![])));
        }
        let g = num.gcd(&den)?;
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = d.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RationalFunction { num: n, den: d })
    }

    pub fn from_poly(p: Polynomial<FieldElement>) -> Self {
        let var = p.var();
        RationalFunction { num: p, den: Polynomial::constant(var, FieldElement::one()) }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(Polynomial::constant(T, c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(FieldElement::from_int(n))
    }

    /// The function `t`.
    pub fn t() -> Self {
        Self::from_poly(Polynomial::var_poly(T))
    }

    pub fn num(&self) -> &Polynomial<FieldElement> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<FieldElement> {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<Polynomial<FieldElement>> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn valuation(&self, v: &Place) -> Valuation {
        if self.num.is_zero() {
            return Valuation::Infinite;
        }
        match v {
            Place::Infinity => {
                let dn = self.num.degree().unwrap() as i64;
                let dd = self.den.degree().unwrap() as i64;
                Valuation::Finite(dd - dn)
            }
            Place::Finite(p) => {
                let a = poly_valuation(&self.num, p);
                let b = poly_valuation(&self.den, p);
                Valuation::Finite(a as i64 - b as i64)
            }
        }
    }

    /// Image in the residue field at `v`; errors at a pole.
    pub fn reduce_at(&self, v: &Place) -> Result<Residue> {
        if self.valuation(v) < Valuation::Finite(0) {
            return Err(Error::Pole(v.to_string()));
        }
        match v {
            Place::Infinity => {
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap();
                let value = if self.num.is_zero() || dn < dd {
                    FieldElement::zero()
                } else {
                    self.num.leading().unwrap().clone()
                };
                Ok(Residue::constant(value))
            }
            Place::Finite(p) => {
                let n = Residue::of_poly(&self.num, p);
                let d = Residue::of_poly(&self.den, p);
                Ok(n / d)
            }
        }
    }

    /// `r(1/s)`, returned as a function of `t` again.
    pub fn invert_variable(&self) -> Self {
        let flip = |p: &Polynomial<FieldElement>| match p.degree() {
            None => (p.clone(), 0),
            Some(d) => (p.reversed(d), d),
        };
        let (n, dn) = flip(&self.num);
        let (d, dd) = flip(&self.den);
        // num(1/s)/den(1/s) = s^dd n~ / (s^dn d~)
        let var = self.var();
        let (n, d) = if dd >= dn { (n.shift(dd - dn), d) } else { (n, d.shift(dn - dd)) };
        RationalFunction::new(n.with_var(var), d.with_var(var)).unwrap()
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative() * self.den.clone() - self.num.clone() * self.den.derivative();
        let d = self.den.clone() * self.den.clone();
        RationalFunction::new(n, d).unwrap()
    }

    pub fn eval(&self, c: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(c);
        (!d.is_zero()).then(|| self.num.eval(c) / d)
    }

    pub fn pow_i(&self, e: i64) -> Self {
        if e >= 0 {
            Ring::pow(self, e as u32)
        } else {
            Ring::pow(&self.inv().expect("nonzero base"), (-e) as u32)
        }
    }
}

impl From<Polynomial<FieldElement>> for RationalFunction {
    fn from(p: Polynomial<FieldElement>) -> Self {
        Self::from_poly(p)
    }
}

impl From<FieldElement> for RationalFunction {
    fn from(c: FieldElement) -> Self {
        Self::constant(c)
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return RationalFunction::new(self.num + rhs.num, self.den).unwrap();
        }
        let n = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        RationalFunction::new(n, self.den * rhs.den).unwrap()
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(self.num * rhs.num, self.den * rhs.den).unwrap()
    }
}

impl Div for RationalFunction {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero rational function")
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction { num: Polynomial::one(), den: Polynomial::one() }
    }
}

impl Ring for RationalFunction {
    fn from_int(n: i64) -> Self {
        RationalFunction { num: Polynomial::from_int(n), den: Polynomial::one() }
    }
}

impl Field for RationalFunction {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RationalFunction::new(self.den.clone(), self.num.clone()).unwrap())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.to_string();
        if self.den.is_constant() {
            return write!(f, "{n}");
        }
        let wrap = |s: String, p: &Polynomial<FieldElement>| {
            let simple = p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
                && !s.contains(['/', '+']);
            if simple { s } else { format!("({s})") }
        };
        write!(f, "{}/{}", wrap(n, &self.num), wrap(self.den.to_string(), &self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Rewrites `p(t, x)` near `t = oo`: substitutes `t = 1/s`,
/// `x = x'' / s^wx` (with `t^i` contributing `s^(-i*wt)`) and multiplies by
/// the smallest power of `s` that clears all denominators. The result uses
/// the variables `s` and the original `x`.
pub fn flip_to_infinity(p: &BivariatePolynomial, weights: (u32, u32)) -> BivariatePolynomial {
    let (wt, wx) = (weights.0 as usize, weights.1 as usize);
    let (_, x) = p.vars();
    let s = Var::new('s');
    let terms = p.terms();
    let n = terms.iter().map(|(i, j, _)| i * wt + j * wx).max().unwrap_or(0);
    let mut out = BivariatePolynomial::zero_in(s, x);
    for (i, j, c) in terms {
        out = out + BivariatePolynomial::monomial(s, x, c, n - i * wt - j * wx, j);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(c: &[i64]) -> Polynomial<FieldElement> {
        Polynomial::new(T, c.iter().map(|&v| FieldElement::from_int(v)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(tp(n), tp(d)).unwrap()
    }

    #[test]
    fn normalization() {
        let r = rf(&[0, 2, 2], &[2, 2]);
        assert_eq!(r, rf(&[0, 1], &[1]));
        assert_eq!(rf(&[1], &[0, 2]).to_string(), "(1/2)/t");
        assert!(RationalFunction::new(tp(&[1]), tp(&[])).is_err());
    }

    #[test]
    fn valuations() {
        let t = Place::Finite(tp(&[0, 1]));
        assert_eq!(rf(&[0, 0, 0, 1], &[1, 1]).valuation(&t), Valuation::Finite(3));
        assert_eq!(rf(&[0, 2, 3, 1], &[1]).valuation(&Place::Infinity), Valuation::Finite(-3));
        let g = Place::Finite(tp(&[-1, 1, 1]));
        let r = RationalFunction::from_poly(tp(&[1, 1]) * tp(&[-1, 1, 1]));
        assert_eq!(r.valuation(&g), Valuation::Finite(1));
        assert_eq!(RationalFunction::zero().valuation(&g), Valuation::Infinite);
    }

    #[test]
    fn reductions() {
        let t = Place::Finite(tp(&[0, 1]));
        assert_eq!(rf(&[1, 0, 1], &[1]).reduce_at(&t).unwrap(), Residue::constant(FieldElement::from_int(1)));
        assert_eq!(
            rf(&[1, 1], &[2, 1]).reduce_at(&t).unwrap(),
            Residue::constant(FieldElement::from_ratio(1, 2))
        );
        let g = tp(&[-1, 1, 1]);
        let r = RationalFunction::t().reduce_at(&Place::Finite(g.clone())).unwrap();
        assert_eq!(r.representative(), &tp(&[0, 1]));
        // t^2 = 1 - t in the residue field
        let sq = r.clone() * r.clone();
        assert_eq!(sq.representative(), &tp(&[1, -1]));
        assert!(matches!(rf(&[1], &[0, 1]).reduce_at(&t), Err(Error::Pole(_))));
    }

    #[test]
    fn flips() {
        let (t, x) = (BivariatePolynomial::T, BivariatePolynomial::X);
        let one = FieldElement::from_int(1);
        let p = BivariatePolynomial::monomial(t, x, one.clone(), 0, 3)
            - BivariatePolynomial::monomial(t, x, one.clone(), 4, 1);
        let f = flip_to_infinity(&p, (1, 2));
        assert_eq!(f.to_string(), "x^3 - x");
        let c = BivariatePolynomial::constant(t, x, FieldElement::from_int(5));
        assert_eq!(flip_to_infinity(&c, (1, 2)).to_string(), "5");
        let r = rf(&[1, 0, 1], &[0, 1]);
        // (t^2 + 1)/t at t = 1/s is (1 + s^2)/s
        assert_eq!(r.invert_variable(), rf(&[1, 0, 1], &[0, 1]));
    }
}
