//! Weierstrass models `y^2 = x^3 + a x^2 + b x + c` over `K(t)`.

mod fiber;
mod height;
mod kodaira;

pub use fiber::{DualGraph, FiberType};
pub use height::{
    component_index, gamma_vector, gamma_vector_on, height_pairing, height_pairing_on,
    intersection_with_o, GammaVector,
};
pub use kodaira::{
    all_singular_fibers, bad_place_candidates, kodaira_classify, local_model, minimalize_at,
    KodairaFiber, LocalModel,
};

use crate::algebra::{join_terms, term_string, BivariatePolynomial, FieldDescriptor, FieldElement, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::function_field::{RationalFunction, T};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct WeierstrassModel {
    pub a: RationalFunction,
    pub b: RationalFunction,
    pub c: RationalFunction,
    pub chi: u32,
    field: FieldDescriptor,
}

/// `(c4, c6, disc, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariants {
    pub c4: RationalFunction,
    pub c6: RationalFunction,
    pub disc: RationalFunction,
    pub j: RationalFunction,
}

#[derive(Clone, PartialEq, Eq)]
pub enum SectionPoint {
    /// The zero section `O`.
    Zero,
    Affine { x: RationalFunction, y: RationalFunction },
}

impl SectionPoint {
    pub fn new(x: RationalFunction, y: RationalFunction) -> Self {
        SectionPoint::Affine { x, y }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SectionPoint::Zero)
    }

    pub fn coords(&self) -> Option<(&RationalFunction, &RationalFunction)> {
        match self {
            SectionPoint::Zero => None,
            SectionPoint::Affine { x, y } => Some((x, y)),
        }
    }
}

impl fmt::Display for SectionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionPoint::Zero => write!(f, "O"),
            SectionPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Debug for SectionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn rf(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}

impl WeierstrassModel {
    /// The working field is the one generated by the coefficients.
    pub fn new(a: RationalFunction, b: RationalFunction, c: RationalFunction, chi: u32) -> Self {
        let mut field = FieldDescriptor::rationals();
        for r in [&a, &b, &c] {
            for p in [r.num(), r.den()] {
                for x in p.coeffs() {
                    field = field.union(x.descriptor());
                }
            }
        }
        WeierstrassModel { a, b, c, chi: chi.max(1), field }
    }

    /// Reads `a, b, c` off a cubic `x^3 + a x^2 + b x + c` in `(t, x)`.
    pub fn from_cubic(f: &BivariatePolynomial, chi: u32) -> Result<Self> {
        let lead = f.x_coeff(3);
        if f.degree_x() != Some(3) || !lead.is_one() {
            return Err(Error::Inconsistent(format!("not a monic cubic in x: {f}")));
        }
        let r = |j| RationalFunction::from_poly(f.x_coeff(j).with_var(T));
        Ok(Self::new(r(2), r(1), r(0), chi))
    }

    /// The cubic `x^3 + a x^2 + b x + c` as a polynomial in `(t, x)`, when
    /// the coefficients are polynomials.
    pub fn cubic(&self) -> Option<BivariatePolynomial> {
        let rows = [&self.c, &self.b, &self.a]
            .iter()
            .map(|r| r.as_polynomial())
            .chain(std::iter::once(Some(Polynomial::constant(T, FieldElement::from_int(1)))))
            .collect::<Option<Vec<_>>>()?;
        Some(BivariatePolynomial::from_rows(BivariatePolynomial::T, BivariatePolynomial::X, rows))
    }

    /// Enlarges the working field used for factoring discriminants.
    pub fn with_field(mut self, field: &FieldDescriptor) -> Self {
        self.field = self.field.union(field);
        self
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// `x^3 + a x^2 + b x + c`.
    pub fn rhs(&self, x: &RationalFunction) -> RationalFunction {
        ((x.clone() + self.a.clone()) * x.clone() + self.b.clone()) * x.clone() + self.c.clone()
    }

    pub fn contains(&self, p: &SectionPoint) -> bool {
        match p {
            SectionPoint::Zero => true,
            SectionPoint::Affine { x, y } => y.clone() * y.clone() == self.rhs(x),
        }
    }

    /// Invariants without the non-degeneracy check; `j` is zero when the
    /// discriminant vanishes.
    pub fn raw_invariants(&self) -> Invariants {
        let (a, b, c) = (self.a.clone(), self.b.clone(), self.c.clone());
        let c4 = rf(16) * a.clone() * a.clone() - rf(48) * b.clone();
        let c6 = rf(-64) * a.pow(3) + rf(288) * a * b - rf(864) * c;
        let disc = (c4.pow(3) - c6.pow(2)) / rf(1728);
        let j = if disc.is_zero() { RationalFunction::zero() } else { c4.pow(3) / disc.clone() };
        Invariants { c4, c6, disc, j }
    }

    pub fn invariants(&self) -> Result<Invariants> {
        let inv = self.raw_invariants();
        if inv.disc.is_zero() {
            return Err(Error::DegenerateModel);
        }
        Ok(inv)
    }

    pub fn discriminant(&self) -> RationalFunction {
        self.raw_invariants().disc
    }

    pub fn j_invariant(&self) -> Result<RationalFunction> {
        Ok(self.invariants()?.j)
    }

    pub fn neg(&self, p: &SectionPoint) -> SectionPoint {
        match p {
            SectionPoint::Zero => SectionPoint::Zero,
            SectionPoint::Affine { x, y } => SectionPoint::new(x.clone(), -y.clone()),
        }
    }

    /// Chord and tangent addition.
    pub fn add(&self, p: &SectionPoint, q: &SectionPoint) -> SectionPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (SectionPoint::Zero, _) => return q.clone(),
            (_, SectionPoint::Zero) => return p.clone(),
            (SectionPoint::Affine { x: x1, y: y1 }, SectionPoint::Affine { x: x2, y: y2 }) => {
                (x1.clone(), y1.clone(), x2.clone(), y2.clone())
            }
        };
        let lambda = if x1 == x2 {
            if (y1.clone() + y2.clone()).is_zero() {
                return SectionPoint::Zero;
            }
            let num = rf(3) * x1.clone() * x1.clone() + rf(2) * self.a.clone() * x1.clone() + self.b.clone();
            num / (rf(2) * y1.clone())
        } else {
            (y2 - y1.clone()) / (x2.clone() - x1.clone())
        };
        let x3 = lambda.clone() * lambda.clone() - self.a.clone() - x1.clone() - x2;
        let y3 = lambda * (x1 - x3.clone()) - y1;
        SectionPoint::new(x3, y3)
    }

    pub fn sub(&self, p: &SectionPoint, q: &SectionPoint) -> SectionPoint {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, p: &SectionPoint, n: i64) -> SectionPoint {
        let mut acc = SectionPoint::Zero;
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            m >>= 1;
        }
        acc
    }

    /// `P != O` with `y_P = 0`.
    pub fn is_two_torsion(&self, p: &SectionPoint) -> bool {
        matches!(p, SectionPoint::Affine { y, .. } if y.is_zero())
    }

    /// Change of coordinates `x = u^2 X + r`, `y = u^3 Y`.
    pub fn transform(&self, r: &RationalFunction, u: &RationalFunction) -> WeierstrassModel {
        let (a, b) = (&self.a, &self.b);
        let a1 = a.clone() + rf(3) * r.clone();
        let b1 = b.clone() + rf(2) * a.clone() * r.clone() + rf(3) * r.clone() * r.clone();
        let c1 = self.rhs(r);
        let u2 = u.clone() * u.clone();
        let u4 = u2.clone() * u2.clone();
        let u6 = u4.clone() * u2.clone();
        WeierstrassModel {
            a: a1 / u2,
            b: b1 / u4,
            c: c1 / u6,
            chi: self.chi,
            field: self.field.clone(),
        }
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = vec!["x^3".to_string()];
        for (c, m) in [(&self.a, "x^2"), (&self.b, "x"), (&self.c, "")] {
            if !c.is_zero() {
                terms.push(term_string(&c.to_string(), m));
            }
        }
        write!(f, "y^2 = {}", join_terms(terms))
    }
}

impl fmt::Debug for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
