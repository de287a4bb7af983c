//! Polynomials in two variables, stored as polynomials in `x` whose
//! coefficients are polynomials in `t`.

use super::poly::{join_terms, power_string, term_string};
use super::{FieldElement, Polynomial, Var};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq)]
pub struct BivariatePolynomial {
    t: Var,
    x: Var,
    rows: Vec<Polynomial<FieldElement>>,
}

impl BivariatePolynomial {
    pub const T: Var = Var::new('t');
    pub const X: Var = Var::new('x');

    pub fn zero_in(t: Var, x: Var) -> Self {
        BivariatePolynomial { t, x, rows: vec![] }
    }

    /// `rows[j]` is the coefficient of `x^j`.
    pub fn from_rows(t: Var, x: Var, rows: Vec<Polynomial<FieldElement>>) -> Self {
        let mut rows: Vec<Polynomial<FieldElement>> = rows.into_iter().map(|r| r.with_var(t)).collect();
        while rows.last().is_some_and(Zero::is_zero) {
            rows.pop();
        }
        BivariatePolynomial { t, x, rows }
    }

    /// Coefficient grid `grid[i][j]` of `t^i x^j`.
    pub fn from_grid(t: Var, x: Var, grid: &[Vec<FieldElement>]) -> Self {
        let w = grid.iter().map(Vec::len).max().unwrap_or(0);
        let rows = (0..w)
            .map(|j| {
                Polynomial::new(
                    t,
                    grid.iter().map(|r| r.get(j).cloned().unwrap_or_else(FieldElement::zero)).collect(),
                )
            })
            .collect();
        Self::from_rows(t, x, rows)
    }

    pub fn constant(t: Var, x: Var, c: FieldElement) -> Self {
        Self::from_rows(t, x, vec![Polynomial::constant(t, c)])
    }

    pub fn t_poly(t: Var, x: Var, p: Polynomial<FieldElement>) -> Self {
        Self::from_rows(t, x, vec![p])
    }

    pub fn x_poly(t: Var, x: Var, p: &Polynomial<FieldElement>) -> Self {
        Self::from_rows(t, x, p.coeffs().iter().map(|c| Polynomial::constant(t, c.clone())).collect())
    }

    pub fn monomial(t: Var, x: Var, c: FieldElement, i: usize, j: usize) -> Self {
        let mut rows = vec![Polynomial::new(t, vec![]); j + 1];
        rows[j] = Polynomial::monomial(t, c, i);
        Self::from_rows(t, x, rows)
    }

    pub fn vars(&self) -> (Var, Var) {
        (self.t, self.x)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Polynomial<FieldElement>] {
        &self.rows
    }

    /// Coefficient of `x^j` as a polynomial in `t`.
    pub fn x_coeff(&self, j: usize) -> Polynomial<FieldElement> {
        self.rows.get(j).cloned().unwrap_or_else(|| Polynomial::new(self.t, vec![]))
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        self.rows.get(j).map_or_else(FieldElement::zero, |r| r.coeff(i))
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.rows.iter().filter_map(Polynomial::degree).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.degree().map(|d| d + j))
            .max()
    }

    /// Nonzero terms as `(i, j, c)` for `c t^i x^j`.
    pub fn terms(&self) -> Vec<(usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for (j, r) in self.rows.iter().enumerate() {
            for (i, c) in r.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn as_poly_in_x(&self) -> Polynomial<Polynomial<FieldElement>> {
        Polynomial::new(self.x, self.rows.clone())
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_rows(self.t, self.x, self.as_poly_in_x().derivative().into_coeffs())
    }

    pub fn derivative_t(&self) -> Self {
        Self::from_rows(self.t, self.x, self.rows.iter().map(Polynomial::derivative).collect())
    }

    /// Substitutes `t = c`, giving a polynomial in `x`.
    pub fn eval_t(&self, c: &FieldElement) -> Polynomial<FieldElement> {
        Polynomial::new(self.x, self.rows.iter().map(|r| r.eval(c)).collect())
    }

    /// Substitutes `x = c`, giving a polynomial in `t`.
    pub fn eval_x(&self, c: &FieldElement) -> Polynomial<FieldElement> {
        let mut acc = Polynomial::new(self.t, vec![]);
        for r in self.rows.iter().rev() {
            acc = acc.scale(c) + r.clone();
        }
        acc
    }

    pub fn eval(&self, t: &FieldElement, x: &FieldElement) -> FieldElement {
        self.eval_t(t).eval(x)
    }

    /// Exchanges the roles of the two variables.
    pub fn swap(&self) -> Self {
        let grid: Vec<Vec<FieldElement>> = (0..self.rows.len())
            .map(|j| self.rows[j].coeffs().to_vec())
            .collect();
        Self::from_grid(self.x, self.t, &grid)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.t, self.x, FieldElement::one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_rows(self.t, self.x, self.rows.iter().map(|r| r.scale(c)).collect())
    }

    /// Discriminant with respect to `x`, a polynomial in `t`:
    /// `(-1)^(n(n-1)/2) Res_x(F, F_x) / lc_x(F)`. The resultant is the
    /// Sylvester determinant over `K[t]`, computed fraction-free (Bareiss).
    pub fn discriminant_x(&self) -> Option<Polynomial<FieldElement>> {
        let n = self.degree_x().filter(|&n| n >= 1)?;
        let p = self.as_poly_in_x();
        let q = p.derivative();
        let m = n - 1;
        let size = n + m;
        let zero = Polynomial::new(self.t, vec![]);
        let mut a = vec![vec![zero.clone(); size]; size];
        for i in 0..m {
            for (j, c) in p.coeffs().iter().rev().enumerate() {
                a[i][i + j] = c.clone();
            }
        }
        for i in 0..n {
            for (j, c) in q.coeffs().iter().rev().enumerate() {
                a[m + i][i + j] = c.clone();
            }
        }
        let res = bareiss_det(a, self.t);
        let lc = self.rows.last().cloned()?;
        let d = res.exact_div(&lc).expect("leading coefficient divides the resultant");
        Some(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
    }

    fn join(&self, other: &Self) -> (Var, Var) {
        assert!(
            (self.t, self.x) == (other.t, other.x),
            "mixing bivariate polynomials in different variables"
        );
        (self.t, self.x)
    }
}

fn bareiss_det(mut a: Vec<Vec<Polynomial<FieldElement>>>, t: Var) -> Polynomial<FieldElement> {
    let n = a.len();
    let mut prev = Polynomial::constant(t, FieldElement::one());
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Polynomial::new(t, vec![]),
            }
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Polynomial::new(t, vec![]);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate { -d } else { d }
}

impl Add for BivariatePolynomial {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (t, x) = self.join(&rhs);
        Self::from_rows(t, x, (self.as_poly_in_x() + rhs.as_poly_in_x()).into_coeffs())
    }
}

impl Sub for BivariatePolynomial {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for BivariatePolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        let (t, x) = (self.t, self.x);
        Self::from_rows(t, x, self.rows.into_iter().map(|r| -r).collect())
    }
}

impl Mul for BivariatePolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (t, x) = self.join(&rhs);
        Self::from_rows(t, x, (self.as_poly_in_x() * rhs.as_poly_in_x()).into_coeffs())
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms();
        terms.sort_by(|a, b| (b.0 + b.1, b.1).cmp(&(a.0 + a.1, a.1)));
        let parts = terms
            .into_iter()
            .map(|(i, j, c)| {
                let ts = power_string(self.t.name(), i);
                let xs = power_string(self.x.name(), j);
                let m = match (ts.is_empty(), xs.is_empty()) {
                    (true, _) => xs,
                    (_, true) => ts,
                    _ => format!("{ts}*{xs}"),
                };
                term_string(&c.to_string(), &m)
            })
            .collect();
        write!(f, "{}", join_terms(parts))
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn degrees_and_display() {
        let (t, x) = (BivariatePolynomial::T, BivariatePolynomial::X);
        // x^2 - t^3 + 2 t x
        let p = BivariatePolynomial::monomial(t, x, fe(1), 0, 2)
            + BivariatePolynomial::monomial(t, x, fe(-1), 3, 0)
            + BivariatePolynomial::monomial(t, x, fe(2), 1, 1);
        assert_eq!(p.total_degree(), Some(3));
        assert_eq!(p.degree_x(), Some(2));
        assert_eq!(p.to_string(), "-t^3 + x^2 + 2*t*x");
        assert_eq!(p.derivative_t().to_string(), "-3*t^2 + 2*x");
        assert_eq!(p.eval(&fe(1), &fe(2)), fe(7));
        assert_eq!(p.swap().swap(), p);
    }
}
