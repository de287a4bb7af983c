//! Ramified models `y^2 = x^3 + a x^2 + b x + c` and split models
//! `y'^2 = (x'^2 + a')^2 + b' x' + c'`, and the substitutions between them.

use crate::algebra::{BivariatePolynomial, FieldDescriptor, FieldElement, Polynomial, Var};
use crate::elliptic::{SectionPoint, WeierstrassModel};
use crate::error::{Error, Result};
use crate::function_field::{RationalFunction, T};
use num_traits::{One, Zero};
use std::fmt;

const XP: Var = Var::new('u');
const YP: Var = Var::new('v');

#[derive(Clone, PartialEq)]
pub struct SplitQuarticModel {
    pub a: RationalFunction,
    pub b: RationalFunction,
    pub c: RationalFunction,
    field: FieldDescriptor,
}

fn rf(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}

fn sqrt2() -> RationalFunction {
    RationalFunction::constant(FieldElement::sqrt_of_int(2).expect("2 is a valid radicand"))
}

fn field_of(rs: &[&RationalFunction]) -> FieldDescriptor {
    let mut field = FieldDescriptor::rationals();
    for r in rs {
        for p in [r.num(), r.den()] {
            for x in p.coeffs() {
                field = field.union(x.descriptor());
            }
        }
    }
    field
}

impl SplitQuarticModel {
    pub fn new(a: RationalFunction, b: RationalFunction, c: RationalFunction) -> Self {
        let field = field_of(&[&a, &b, &c]);
        SplitQuarticModel { a, b, c, field }
    }

    pub fn with_field(mut self, field: &FieldDescriptor) -> Self {
        self.field = self.field.union(field);
        self
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Reads `a', b', c'` off `x^4 + p x^2 + q x + r`; any other shape is
    /// rejected.
    pub fn from_quartic(f: &BivariatePolynomial) -> Result<Self> {
        let r = |j| RationalFunction::from_poly(f.x_coeff(j).with_var(T));
        if f.degree_x() != Some(4) || !f.x_coeff(4).is_one() || !f.x_coeff(3).is_zero() {
            return Err(Error::InvalidQuartic(format!("not of the form x^4 + p x^2 + q x + r: {f}")));
        }
        let a = r(2) / rf(2);
        let c = r(0) - a.clone() * a.clone();
        Ok(Self::new(a, r(1), c))
    }

    /// `(x'^2 + a')^2 + b' x' + c'` evaluated at `x`.
    pub fn rhs(&self, x: &RationalFunction) -> RationalFunction {
        let s = x.clone() * x.clone() + self.a.clone();
        s.clone() * s + self.b.clone() * x.clone() + self.c.clone()
    }

    /// The right-hand side as a polynomial in `x'` over `K(t)`.
    pub fn rhs_poly(&self) -> Polynomial<RationalFunction> {
        let one = RationalFunction::one();
        let mut s = Polynomial::new(XP, vec![self.a.clone(), RationalFunction::zero(), one]);
        s = s.clone() * s;
        s + Polynomial::new(XP, vec![self.c.clone(), self.b.clone()])
    }

    /// The right-hand side as a polynomial in `(t, x)`, when the
    /// coefficients are polynomials in `t`.
    pub fn quartic(&self) -> Option<BivariatePolynomial> {
        let rows = self
            .rhs_poly()
            .coeffs()
            .iter()
            .map(RationalFunction::as_polynomial)
            .collect::<Option<Vec<_>>>()?;
        Some(BivariatePolynomial::from_rows(BivariatePolynomial::T, BivariatePolynomial::X, rows))
    }

    /// Smooth generic fiber: the quartic in `x'` is squarefree over `K(t)`.
    pub fn is_smooth(&self) -> bool {
        if let Some(f) = self.quartic() {
            return f.discriminant_x().is_some_and(|d| !d.is_zero());
        }
        self.rhs_poly().discriminant().is_ok_and(|d| !d.is_zero())
    }
}

impl fmt::Display for SplitQuarticModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut inner = vec!["x'^2".to_string()];
        if !self.a.is_zero() {
            inner.push(self.a.to_string());
        }
        let mut s = format!("y'^2 = ({})^2", inner.join(" + ").replace("+ -", "- "));
        if !self.b.is_zero() {
            s += &format!(" + ({})*x'", self.b);
        }
        if !self.c.is_zero() {
            s += &format!(" + ({})", self.c);
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for SplitQuarticModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    RamifiedToSplit,
    SplitToRamified,
}

/// The substitution `x = y' + x'^2 + shift`, `y = sqrt(2) x' (x - x_P) - y_P`
/// linking the two models, with `P` the point on the ramified side.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformationRecord {
    pub direction: Direction,
    pub point: SectionPoint,
    pub shift: RationalFunction,
}

impl TransformationRecord {
    fn coords(&self) -> (&RationalFunction, &RationalFunction) {
        self.point.coords().expect("records never carry O")
    }

    pub fn x_substitution(&self) -> String {
        if self.shift.is_zero() {
            "x = y' + x'^2".to_string()
        } else {
            format!("x = y' + x'^2 + ({})", self.shift)
        }
    }

    pub fn y_substitution(&self) -> String {
        let (x, y) = self.coords();
        let run = if x.is_zero() { "x".to_string() } else { format!("(x - ({x}))") };
        if y.is_zero() {
            format!("y = sqrt(2)*x'*{run}")
        } else {
            format!("y = sqrt(2)*x'*{run} - ({y})")
        }
    }

    /// Image of a ramified point `Q` with `x_Q != x_P` in split coordinates.
    pub fn to_split_point(&self, q: &SectionPoint) -> Result<(RationalFunction, RationalFunction)> {
        let (xp, yp) = self.coords();
        let (x, y) = q.coords().ok_or(Error::ZeroSection)?;
        let dx = x.clone() - xp.clone();
        if dx.is_zero() {
            return Err(Error::Inconsistent("x-coordinate coincides with the base point".into()));
        }
        let xs = (y.clone() + yp.clone()) / (sqrt2() * dx);
        let ys = x.clone() - xs.clone() * xs.clone() - self.shift.clone();
        Ok((xs, ys))
    }

    /// Inverse of [`to_split_point`](Self::to_split_point).
    pub fn to_ramified_point(&self, xs: &RationalFunction, ys: &RationalFunction) -> SectionPoint {
        let (xp, yp) = self.coords();
        let x = ys.clone() + xs.clone() * xs.clone() + self.shift.clone();
        let y = sqrt2() * xs.clone() * (x.clone() - xp.clone()) - yp.clone();
        SectionPoint::new(x, y)
    }
}

impl fmt::Display for TransformationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.x_substitution(), self.y_substitution())
    }
}

/// Split model attached to `(E, P)`, via `x = y' + x'^2 - (x_P + a)/2`.
pub fn to_split(e: &WeierstrassModel, p: &SectionPoint) -> Result<(SplitQuarticModel, TransformationRecord)> {
    let (x, y) = p.coords().ok_or(Error::ZeroSection)?;
    if !e.contains(p) {
        return Err(Error::NotOnCurve);
    }
    let a = e.a.clone();
    let a1 = -(rf(3) * x.clone() + a.clone()) / rf(2);
    let b1 = rf(-2) * sqrt2() * y.clone();
    let c1 = -(rf(3) * x.clone() * x.clone() + rf(2) * a.clone() * x.clone() + e.b.clone());
    let field = e.field().union(&FieldDescriptor::new(&[2])?);
    let q = SplitQuarticModel::new(a1, b1, c1).with_field(&field);
    let rec = TransformationRecord {
        direction: Direction::RamifiedToSplit,
        point: p.clone(),
        shift: -(x.clone() + a) / rf(2),
    };
    Ok((q, rec))
}

/// `y^2 = x^3 - 2a' x^2 - c' x + b'^2/8`.
pub fn to_ramified(q: &SplitQuarticModel) -> WeierstrassModel {
    let a = rf(-2) * q.a.clone();
    let b = -q.c.clone();
    let c = q.b.clone() * q.b.clone() / rf(8);
    WeierstrassModel::new(a, b, c, 1).with_field(q.field())
}

/// [`to_ramified`] together with the record whose base point is
/// `(0, -b'/(2 sqrt 2))`.
pub fn to_ramified_with_record(q: &SplitQuarticModel) -> (WeierstrassModel, TransformationRecord) {
    let e = to_ramified(q);
    let yp = -(q.b.clone() / (rf(2) * sqrt2()));
    let rec = TransformationRecord {
        direction: Direction::SplitToRamified,
        point: SectionPoint::new(RationalFunction::zero(), yp),
        shift: q.a.clone(),
    };
    (e, rec)
}

/// Substitutes the record's pair into `y^2 - (x^3 + a x^2 + b x + c)` and
/// checks divisibility by `y'^2 - ((x'^2 + a')^2 + b' x' + c')`.
pub fn verify_substitution(e: &WeierstrassModel, p: &SectionPoint, q: &SplitQuarticModel, rec: &TransformationRecord) -> bool {
    let Some((xp, yp)) = p.coords() else {
        return false;
    };
    if &rec.point != p {
        return false;
    }
    type Inner = Polynomial<RationalFunction>;
    type Outer = Polynomial<Inner>;
    let inner = |r: &RationalFunction| Inner::constant(XP, r.clone());
    let lift = |p: Inner| Outer::constant(YP, p);
    let u = Inner::var_poly(XP);
    let v = Outer::new(YP, vec![Inner::zero(), Inner::one()]);
    let x = v.clone() + lift(u.clone() * u.clone() + inner(&rec.shift));
    let y = lift(inner(&sqrt2()) * u) * (x.clone() - lift(inner(xp))) - lift(inner(yp));
    let cubic = ((x.clone() + lift(inner(&e.a))) * x.clone() + lift(inner(&e.b))) * x + lift(inner(&e.c));
    let f = y.clone() * y - cubic;
    let modulus = v.clone() * v - lift(q.rhs_poly());
    f.rem_monic(&modulus).is_zero()
}

/// `[-1]Q + P`, the involution of `E` that becomes `y' -> -y'` on the split
/// model.
pub fn involution_image(e: &WeierstrassModel, p: &SectionPoint, q: &SectionPoint) -> SectionPoint {
    e.add(&e.neg(q), p)
}

/// The same involution computed on the split side: map `Q` across, flip
/// `y'`, map back.
pub fn involution_via_split(rec: &TransformationRecord, q: &SectionPoint) -> Result<SectionPoint> {
    let (xs, ys) = rec.to_split_point(q)?;
    Ok(rec.to_ramified_point(&xs, &-ys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_bivariate, parse_rational_function};

    fn surface(f: &str) -> WeierstrassModel {
        WeierstrassModel::from_cubic(&parse_bivariate(f, "t", "x").unwrap(), 1).unwrap()
    }

    fn pt(x: &str, y: &str) -> SectionPoint {
        SectionPoint::new(parse_rational_function(x, "t").unwrap(), parse_rational_function(y, "t").unwrap())
    }

    fn quartic(s: &str) -> BivariatePolynomial {
        parse_bivariate(s, "t", "x").unwrap()
    }

    #[test]
    fn split_models() {
        let e = surface("x*(x^2 - 2*(t^2+1)*x - t^3 - 3*t^2 - 2*t)");
        let p = pt("0", "0");
        let (q, rec) = to_split(&e, &p).unwrap();
        assert_eq!(q.quartic().unwrap(), quartic("(x^2 + t^2 + 1)^2 + t*(t+1)*(t+2)"));
        assert!(verify_substitution(&e, &p, &q, &rec));
        let mut bad = q.clone();
        bad.a = bad.a + rf(1);
        assert!(!verify_substitution(&e, &p, &bad, &rec));

        let e = surface("x^3 - x");
        let (q, _) = to_split(&e, &pt("0", "0")).unwrap();
        assert_eq!(q.quartic().unwrap(), quartic("x^4 + 1"));
    }

    #[test]
    fn b_nonzero_case() {
        let e = surface("(x-t^2)*(x-3*t+2)*(x+3*t+2)");
        let p = pt("t+2", "2*sqrt(2)*(t-2)*(t+1)");
        let (q, rec) = to_split(&e, &p).unwrap();
        assert_eq!(q.quartic().unwrap(), quartic("(x^2 + 1/2*t^2 - 3/2*t - 5)^2 + 2*(t - 4*x + 8)*(t + 1)*(t - 2)"));
        assert!(verify_substitution(&e, &p, &q, &rec));
        assert!(q.is_smooth());
    }

    #[test]
    fn round_trip() {
        let q = SplitQuarticModel::from_quartic(&quartic("(x^2 + t^2 + 1)^2 + t*(t+1)*(t+2)")).unwrap();
        let e = to_ramified(&q);
        assert_eq!(e, surface("x^3 - 2*(t^2+1)*x^2 - t*(t+1)*(t+2)*x"));
        let (e2, rec) = to_ramified_with_record(&q);
        assert!(verify_substitution(&e2, &rec.point, &q, &rec));
        let zero = SplitQuarticModel::new(rf(0), rf(0), rf(0));
        assert!(to_ramified(&zero).invariants().is_err());
    }

    #[test]
    fn involution_two_routes() {
        let e = surface("(x-t^2)*(x-3*t+2)*(x+3*t+2)");
        let p0 = pt("3*t-2", "0");
        let p1 = pt("t+2", "2*sqrt(2)*(t-2)*(t+1)");
        let (_, rec) = to_split(&e, &p0).unwrap();
        let img = involution_image(&e, &p0, &p1);
        assert_eq!(involution_via_split(&rec, &p1).unwrap(), img);
        assert_eq!(involution_image(&e, &p0, &img), p1);
    }
}
