//! Dense univariate polynomials over an arbitrary coefficient ring.

use super::{Field, Ring};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Variable tag of a polynomial. [`Var::FREE`] marks constants built without
/// a variable (for instance through [`Zero::zero`]); it unifies with any tag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Var(char);

impl Var {
    pub const FREE: Var = Var('\0');

    pub const fn new(c: char) -> Var {
        Var(c)
    }

    pub fn name(self) -> char {
        if self == Var::FREE {
            '?'
        } else {
            self.0
        }
    }
}

#[derive(Clone)]
pub struct Polynomial<R> {
    var: Var,
    coeffs: Vec<R>,
}

impl<R: Ring> Polynomial<R> {
    /// Coefficients are given lowest degree first; trailing zeros are dropped.
    pub fn new(var: Var, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { var, coeffs }
    }

    pub fn constant(var: Var, c: R) -> Self {
        Self::new(var, vec![c])
    }

    /// The polynomial `var` itself.
    pub fn var_poly(var: Var) -> Self {
        Self::new(var, vec![R::zero(), R::one()])
    }

    pub fn monomial(var: Var, c: R, n: usize) -> Self {
        let mut coeffs = vec![R::zero(); n + 1];
        coeffs[n] = c;
        Self::new(var, coeffs)
    }

    /// `var - r`.
    pub fn linear_root(var: Var, r: R) -> Self {
        Self::new(var, vec![-r, R::one()])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> R {
        self.coeff(0)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial::new(self.var, self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    /// Horner evaluation after mapping coefficients into `S`.
    pub fn eval_map<S: Ring>(&self, f: impl Fn(&R) -> S, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + f(c);
        }
        acc
    }

    pub fn eval(&self, x: &R) -> R {
        self.eval_map(|c| c.clone(), x)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * R::from_int(i as i64))
            .collect();
        Self::new(self.var, coeffs)
    }

    /// `self(other)`.
    pub fn compose(&self, other: &Polynomial<R>) -> Polynomial<R> {
        let mut acc = Polynomial::new(other.var, vec![]);
        for c in self.coeffs.iter().rev() {
            acc = acc * other.clone() + Polynomial::constant(other.var, c.clone());
        }
        acc
    }

    /// Multiplies by `var^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.var, coeffs)
    }

    /// Coefficients reversed with respect to degree `n` (`x^n p(1/x)`).
    pub fn reversed(&self, n: usize) -> Self {
        assert!(self.degree().is_none_or(|d| d <= n));
        let mut coeffs: Vec<R> = (0..=n).map(|i| self.coeff(i)).collect();
        coeffs.reverse();
        Self::new(self.var, coeffs)
    }

    fn joined_var(&self, other: &Self) -> Var {
        if self.var == other.var || other.var == Var::FREE || other.is_constant() {
            self.var
        } else if self.var == Var::FREE || self.is_constant() {
            other.var
        } else {
            panic!(
                "mixing polynomials in `{}` and `{}`",
                self.var.name(),
                other.var.name()
            )
        }
    }

    pub fn check_same_var(&self, other: &Self) -> Result<Var> {
        if self.var == other.var
            || other.var == Var::FREE
            || self.var == Var::FREE
            || self.is_constant()
            || other.is_constant()
        {
            Ok(self.joined_var(other))
        } else {
            Err(Error::VariableMismatch(self.var.name(), other.var.name()))
        }
    }
}

impl<R: Ring> Polynomial<R> {
    /// Remainder modulo a polynomial with leading coefficient one. Works over
    /// any ring.
    pub fn rem_monic(&self, d: &Self) -> Self {
        let var = self.joined_var(d);
        let dd = d.degree().expect("division by the zero polynomial");
        assert!(d.leading().is_some_and(One::is_one), "divisor must be monic");
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let i = r.len() - 1 - dd;
            let c = r.pop().unwrap();
            if !c.is_zero() {
                for (j, dc) in d.coeffs[..dd].iter().enumerate() {
                    r[i + j] = r[i + j].clone() - c.clone() * dc.clone();
                }
            }
        }
        Polynomial::new(var, r)
    }
}

impl<F: Field> Polynomial<F> {
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let var = self.joined_var(d);
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = d.leading().unwrap().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Polynomial::new(var, vec![]), Polynomial::new(var, r));
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - c.clone() * dc.clone();
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Polynomial::new(var, q), Polynomial::new(var, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient if `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(p, 0) = monic(p)`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let var = self.check_same_var(other)?;
        let mut a = self.clone().with_var(var);
        let mut b = other.clone().with_var(var);
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let var = self.joined_var(other);
        let (mut r0, mut r1) = (self.clone().with_var(var), other.clone().with_var(var));
        let (mut s0, mut s1) = (Self::constant(var, F::one()), Self::new(var, vec![]));
        let (mut t0, mut t1) = (Self::new(var, vec![]), Self::constant(var, F::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0 - q.clone() * s1.clone();
            s0 = std::mem::replace(&mut s1, s);
            let t = t0 - q * t1.clone();
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Yun's algorithm: monic square-free, pairwise coprime factors with
    /// strictly increasing multiplicities. The unit is the leading coefficient.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.exact_div(&a0).unwrap();
        let c = df.exact_div(&a0).unwrap();
        let mut d = c - b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d)?;
            let nb = b.exact_div(&a).unwrap();
            let nc = d.exact_div(&a).unwrap();
            d = nc - nb.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            b = nb;
            i += 1;
        }
        Ok(out)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return Polynomial::constant(self.var, F::one());
        }
        let g = self.gcd(&self.derivative()).unwrap();
        self.exact_div(&g).unwrap().monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).map(|g| g.is_constant()).unwrap_or(false)
    }

    /// Resultant normalized so that `Res(x - a, x - b) = b - a`, i.e. the
    /// Sylvester determinant with the rows of `q` placed first.
    pub fn resultant(&self, q: &Self) -> Result<F> {
        self.check_same_var(q)?;
        if self.is_zero() && q.is_zero() {
            return Err(Error::BothZero);
        }
        if self.is_zero() || q.is_zero() {
            return Ok(F::zero());
        }
        let (m, n) = (self.degree().unwrap(), q.degree().unwrap());
        let r = resultant_std(self.clone(), q.clone());
        Ok(if (m * n) % 2 == 1 { -r } else { r })
    }

    /// `disc(p) = (-1)^(n(n-1)/2) Res(p, p') / lc(p)`.
    pub fn discriminant(&self) -> Result<F> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        let r = self.resultant(&self.derivative())?;
        let lc = self.leading().unwrap().clone();
        let d = r / lc;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
    }
}

/// `lc(f)^deg g * prod g(roots of f)`.
fn resultant_std<F: Field>(f: Polynomial<F>, g: Polynomial<F>) -> F {
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    if n == 0 {
        return g.coeffs[0].pow(m as u32);
    }
    if m == 0 {
        return f.coeffs[0].pow(n as u32);
    }
    let r = f.rem(&g);
    let sign = (m * n) % 2 == 1;
    let Some(k) = r.degree() else {
        return F::zero();
    };
    let lc = g.leading().unwrap().pow((m - k) as u32);
    let rest = resultant_std(g, r);
    let v = lc * rest;
    if sign {
        -v
    } else {
        v
    }
}

impl<R: Ring> PartialEq for Polynomial<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && (self.var == other.var
                || self.is_constant()
                || self.var == Var::FREE
                || other.var == Var::FREE)
    }
}

impl<R: Ring + Eq> Eq for Polynomial<R> {}

impl<R: Ring> Add for Polynomial<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let var = self.joined_var(&rhs);
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + c;
        }
        Polynomial::new(var, long)
    }
}

impl<R: Ring> Sub for Polynomial<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Neg for Polynomial<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Polynomial {
            var: self.var,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Ring> Mul for Polynomial<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let var = self.joined_var(&rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::new(var, vec![]);
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(var, out)
    }
}

impl<R: Ring> Zero for Polynomial<R> {
    fn zero() -> Self {
        Polynomial::new(Var::FREE, vec![])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Polynomial<R> {
    fn one() -> Self {
        Polynomial::new(Var::FREE, vec![R::one()])
    }
}

impl<R: Ring> Ring for Polynomial<R> {
    fn from_int(n: i64) -> Self {
        Polynomial::new(Var::FREE, vec![R::from_int(n)])
    }
}

/// Renders a coefficient so it can be juxtaposed with `*var^k`.
pub(crate) fn wrap_coeff(s: &str) -> String {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.contains(" + ") || body.contains(" - ") || body.contains('/') && body.contains('(') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

/// Joins signed term strings into `a + b - c` form.
pub(crate) fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

/// `c * m` where `m` is a monomial string (possibly empty).
pub(crate) fn term_string(c: &str, m: &str) -> String {
    if m.is_empty() {
        return c.to_string();
    }
    match c {
        "1" => m.to_string(),
        "-1" => format!("-{m}"),
        _ => {
            let w = wrap_coeff(c);
            if w.starts_with('(') {
                format!("{w}*{m}")
            } else if let Some(rest) = w.strip_prefix('-') {
                format!("-{}*{m}", wrap_coeff(rest))
            } else {
                format!("{w}*{m}")
            }
        }
    }
}

pub(crate) fn power_string(v: char, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{k}"),
    }
}

impl<R: Ring> Polynomial<R> {
    fn render(&self, coeff: impl Fn(&R) -> String) -> String {
        let v = self.var.name();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| term_string(&coeff(c), &power_string(v, k)))
            .collect();
        join_terms(terms)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(|c| c.to_string()))
    }
}

impl<R: Ring> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(|c| format!("{c:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldElement;

    const X: Var = Var::new('x');

    fn p(c: &[i64]) -> Polynomial<FieldElement> {
        Polynomial::new(X, c.iter().map(|&v| FieldElement::from_int(v)).collect())
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[4, 2]).gcd(&Polynomial::zero()).unwrap(), p(&[2, 1]));
        // (x-1)^2 (x-2) and (x-1)(x-2)
        let a = p(&[-2, 5, -4, 1]);
        let b = p(&[2, -3, 1]);
        assert_eq!(a.gcd(&b).unwrap(), p(&[2, -3, 1]));
        let t = Polynomial::<FieldElement>::var_poly(Var::new('t'));
        assert_eq!(
            p(&[0, 1, 1]).gcd(&(t.clone() * t)),
            Err(Error::VariableMismatch('x', 't'))
        );
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+2)
        let f = p(&[2, -3, 0, 1]);
        assert_eq!(
            f.squarefree_decomposition().unwrap(),
            vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]
        );
        assert_eq!(p(&[0, 0, 0, 0, 3]).squarefree_decomposition().unwrap(), vec![(p(&[0, 1]), 4)]);
        let g = p(&[1, 0, 0, 0, 1]);
        assert_eq!(g.squarefree_decomposition().unwrap(), vec![(g.clone(), 1)]);
        assert_eq!(Polynomial::<FieldElement>::zero().squarefree_decomposition(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(p(&[-1, 1]).resultant(&p(&[-2, 1])).unwrap(), FieldElement::from_int(1));
        assert_eq!(p(&[0, 0, 1]).resultant(&p(&[1, 1])).unwrap(), FieldElement::from_int(1));
        let q = p(&[1, 0, 1]);
        assert!(q.resultant(&q).unwrap().is_zero());
        assert_eq!(Polynomial::<FieldElement>::zero().resultant(&Polynomial::zero()), Err(Error::BothZero));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p(&[1, 3, 1]).discriminant().unwrap(), FieldElement::from_int(5));
        assert_eq!(p(&[0, -1, 0, 1]).discriminant().unwrap(), FieldElement::from_int(4));
        assert!(p(&[1, -2, 1]).discriminant().unwrap().is_zero());
        assert_eq!(p(&[7]).discriminant(), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn display_round() {
        assert_eq!(p(&[2, -3, 1]).to_string(), "x^2 - 3*x + 2");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        let half = Polynomial::new(X, vec![FieldElement::from_ratio(-1, 2), FieldElement::from_ratio(3, 2)]);
        assert_eq!(half.to_string(), "3/2*x - 1/2");
    }
}
