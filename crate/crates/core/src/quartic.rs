//! Plane quartics `F(t, x) = 0` seen from the pencil of lines `t = const`
//! (center at `[0:1:0]`, plus the line at infinity).

use crate::algebra::{factor_over, BivariatePolynomial, FieldDescriptor, FieldElement, Polynomial, Var};
use crate::elliptic::KodairaFiber;
use crate::error::{Error, Result};
use crate::function_field::{flip_to_infinity, places_of, Place, Residue, T};
use crate::models::SplitQuarticModel;
use crate::quotient_tables::LineClass;
use num_traits::Zero;
use std::fmt;

const X: Var = BivariatePolynomial::X;

#[derive(Clone, PartialEq)]
pub struct PlaneQuartic {
    f: BivariatePolynomial,
    field: FieldDescriptor,
    /// Numerator of `disc_x(F)`.
    disc: Polynomial<FieldElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Node,
    WorseThanNode,
}

/// Singular points on one line of the pencil.
///
/// `x_poly` is monic and squarefree; its roots over the residue field of
/// `place` are the x-coordinates. On the line at infinity the coordinate is
/// `x'' = x / t`.
#[derive(Clone, PartialEq)]
pub struct QuarticSingularPoint {
    pub place: Place,
    pub x_poly: Polynomial<Residue>,
    pub kind: PointKind,
}

impl QuarticSingularPoint {
    pub fn x_value(&self) -> Option<Residue> {
        (self.x_poly.degree() == Some(1)).then(|| -self.x_poly.coeff(0))
    }

    /// Number of points over the algebraic closure.
    pub fn count(&self) -> usize {
        self.place.degree() * self.x_poly.degree().unwrap_or(0)
    }

    pub fn is_node(&self) -> bool {
        self.kind == PointKind::Node
    }
}

impl fmt::Display for QuarticSingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            PointKind::Node => "node",
            PointKind::WorseThanNode => "non-node",
        };
        let x = match self.x_value() {
            Some(x) => x.to_string(),
            None => format!("root of {}", self.x_poly),
        };
        match &self.place {
            Place::Infinity => write!(f, "{kind} at (t=oo, x''={x})"),
            Place::Finite(p) => match p.degree() {
                Some(1) => write!(f, "{kind} at (t={}, x={x})", -p.coeff(0)),
                _ => write!(f, "{kind} at ({p} = 0, x={x})"),
            },
        }
    }
}

impl fmt::Debug for QuarticSingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BitangentProfile {
    pub alpha: usize,
    pub k: usize,
    pub l: usize,
}

impl BitangentProfile {
    pub fn m(&self) -> usize {
        self.k + self.l
    }
}

impl fmt::Display for BitangentProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={} (k,l)=({},{})", self.alpha, self.k, self.l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub reason: String,
}

struct LineChart {
    f: BivariatePolynomial,
    line: Polynomial<FieldElement>,
}

fn restrict(f: &BivariatePolynomial, line: &Polynomial<FieldElement>) -> Polynomial<Residue> {
    Polynomial::new(X, f.rows().iter().map(|r| Residue::of_poly(r, line)).collect())
}

fn field_of(f: &BivariatePolynomial) -> FieldDescriptor {
    f.terms().iter().fold(FieldDescriptor::rationals(), |d, (_, _, c)| d.union(c.descriptor()))
}

/// `F(t, a t + b)`.
fn on_line(f: &BivariatePolynomial, a: &FieldElement, b: &FieldElement) -> Polynomial<FieldElement> {
    let lin = Polynomial::new(T, vec![b.clone(), a.clone()]);
    f.rows().iter().rev().fold(Polynomial::zero(), |acc, r| acc * lin.clone() + r.clone().with_var(T))
}

/// Whether some point has multiplicity 4. The third partials are linear,
/// and `F_xxx` involves `x`, so such a point lies on the line `F_xxx = 0`
/// solved for `x`; every partial of order at most 3 must vanish there.
fn has_quadruple_point(f: &BivariatePolynomial) -> Result<bool> {
    let (dt, dx) = (|p: &BivariatePolynomial| p.derivative_t(), |p: &BivariatePolynomial| p.derivative_x());
    let (ft, fx) = (dt(f), dx(f));
    let (ftt, ftx, fxx) = (dt(&ft), dt(&fx), dx(&fx));
    let all = [dt(&ftt), dt(&ftx), dt(&fxx), dx(&fxx), ftt, ftx, fxx, ft, fx, f.clone()];
    let l = &all[3];
    let bx = l.coeff(0, 1);
    if bx.is_zero() {
        return Ok(false);
    }
    let a = -l.coeff(1, 0) / bx.clone();
    let b = -l.coeff(0, 0) / bx;
    let mut g = Polynomial::<FieldElement>::zero();
    for p in &all {
        g = if g.is_zero() { on_line(p, &a, &b) } else { g.gcd(&on_line(p, &a, &b)).unwrap_or(g) };
    }
    Ok(!g.is_constant() || g.is_zero())
}

impl PlaneQuartic {
    pub fn new(f: BivariatePolynomial) -> Result<Self> {
        let field = field_of(&f);
        Self::with_field(f, &field)
    }

    /// Lines are classified over `field` (joined with the coefficient field).
    pub fn with_field(f: BivariatePolynomial, field: &FieldDescriptor) -> Result<Self> {
        let f = BivariatePolynomial::from_rows(BivariatePolynomial::T, X, f.rows().to_vec());
        if f.total_degree() != Some(4) || f.degree_x() != Some(4) || f.coeff(0, 4).is_zero() {
            return Err(Error::InvalidQuartic(format!("need total degree 4 with an x^4 term: {f}")));
        }
        let disc = f.discriminant_x().expect("degree 4 in x");
        if disc.is_zero() {
            return Err(Error::NonReduced);
        }
        if has_quadruple_point(&f)? || has_quadruple_point(&flip_to_infinity(&f, (1, 1)))? {
            return Err(Error::InvalidQuartic("union of four concurrent lines".into()));
        }
        let field = field_of(&f).union(field);
        Ok(PlaneQuartic { f, field, disc: disc.with_var(T) })
    }

    pub fn from_split(q: &SplitQuarticModel) -> Result<Self> {
        let f = q.quartic().ok_or_else(|| Error::InvalidQuartic(format!("coefficients are not polynomials: {q}")))?;
        Self::with_field(f, q.field())
    }

    pub fn polynomial(&self) -> &BivariatePolynomial {
        &self.f
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Numerator of the discriminant in `x`, a polynomial in `t`.
    pub fn discriminant(&self) -> &Polynomial<FieldElement> {
        &self.disc
    }

    fn chart(&self, v: &Place) -> LineChart {
        match v {
            Place::Finite(p) => LineChart { f: self.f.clone(), line: p.clone() },
            Place::Infinity => {
                let g = flip_to_infinity(&self.f, (1, 1));
                let s = g.vars().0;
                LineChart { f: g, line: Polynomial::var_poly(s) }
            }
        }
    }

    /// `F` restricted to the line `v`, as a polynomial in `x` (or `x''`).
    pub fn restriction(&self, v: &Place) -> Polynomial<Residue> {
        let c = self.chart(v);
        restrict(&c.f, &c.line)
    }

    fn singular_on(&self, v: &Place) -> Result<Vec<QuarticSingularPoint>> {
        let c = self.chart(v);
        let (ft, fx) = (c.f.derivative_t(), c.f.derivative_x());
        let r = restrict(&c.f, &c.line);
        let g = r.gcd(&restrict(&ft, &c.line))?.gcd(&restrict(&fx, &c.line))?;
        if g.is_constant() {
            return Ok(vec![]);
        }
        let g = g.squarefree_part().monic();
        let hess = ft.derivative_t() * fx.derivative_x() - ft.derivative_x().pow(2);
        let bad = g.gcd(&restrict(&hess, &c.line))?;
        let good = g.exact_div(&bad).expect("gcd divides");
        let mut out = vec![];
        for (poly, kind) in [(good, PointKind::Node), (bad, PointKind::WorseThanNode)] {
            if poly.is_constant() {
                continue;
            }
            for x_poly in self.split_x(v, poly)? {
                out.push(QuarticSingularPoint { place: v.clone(), x_poly, kind });
            }
        }
        Ok(out)
    }

    /// Over a degree-one place the residue field is the working field, so
    /// the coordinate polynomial is factored there.
    fn split_x(&self, v: &Place, g: Polynomial<Residue>) -> Result<Vec<Polynomial<Residue>>> {
        if v.degree() != 1 {
            return Ok(vec![g]);
        }
        let flat = match g.coeffs().iter().map(Residue::as_constant).collect::<Option<Vec<_>>>() {
            Some(c) => Polynomial::new(T, c),
            None => return Ok(vec![g]),
        };
        let fac = factor_over(&flat, &self.field)?;
        Ok(fac
            .factors
            .into_iter()
            .filter(|(p, _)| !p.is_constant())
            .map(|(p, _)| Polynomial::new(X, p.monic().coeffs().iter().cloned().map(Residue::constant).collect()))
            .collect())
    }

    fn finite_places(&self) -> Result<Vec<(Place, usize)>> {
        places_of(&self.disc, &self.field)
    }

    /// All singular points, with the finite places in canonical order and
    /// the line at infinity last.
    pub fn singular_points(&self) -> Result<Vec<QuarticSingularPoint>> {
        let mut out = vec![];
        for (v, e) in self.finite_places()? {
            if e >= 2 {
                out.extend(self.singular_on(&v)?);
            }
        }
        out.extend(self.singular_on(&Place::Infinity)?);
        Ok(out)
    }

    /// Number of nodes on one line of the pencil, counted over the residue
    /// field of `v` (so per line, not per conjugate family).
    pub fn nodes_on_line(&self, v: &Place) -> Result<usize> {
        let pts = self.singular_on(v)?;
        if let Some(p) = pts.iter().find(|p| !p.is_node()) {
            return Err(Error::NonNodal(p.to_string()));
        }
        Ok(pts.iter().map(|p| p.x_poly.degree().unwrap_or(0)).sum())
    }

    pub fn classify_line(&self, v: &Place) -> Result<LineClass> {
        let r = self.restriction(v);
        if r.is_zero() {
            return Err(Error::InvalidQuartic(format!("line {v} is a component")));
        }
        if r.degree() != Some(4) {
            return Err(Error::Inconsistent(format!("restriction to {v} has degree {:?}", r.degree())));
        }
        let mut pattern: Vec<usize> = vec![];
        for (f, e) in r.squarefree_decomposition()? {
            for _ in 0..f.degree().unwrap_or(0) {
                pattern.push(e);
            }
        }
        pattern.sort_unstable_by(|a, b| b.cmp(a));
        let nodes = self.nodes_on_line(v)?;
        use LineClass::*;
        let class = match (pattern.as_slice(), nodes) {
            ([1, 1, 1, 1], 0) => Transversal,
            ([2, 1, 1], 0) => SimpleTangent,
            ([2, 1, 1], 1) => NodeSecant,
            ([2, 2], 0) => OrdinaryBitangent,
            ([2, 2], 1) => NodePlusTangent,
            ([2, 2], 2) => TwoNodeSecant,
            ([3, 1], 0) => InflectionalTangent,
            ([3, 1], 1) => NodeBranchTangent,
            ([4], 0) => SpecialBitangent,
            ([4], 1) => NodeBranchInflection,
            _ => {
                return Err(Error::Inconsistent(format!(
                    "line {v}: multiplicities {pattern:?} with {nodes} nodes"
                )))
            }
        };
        Ok(class)
    }

    /// Non-transversal lines of the pencil: the places of `disc_x(F)` and
    /// the line at infinity when it is special.
    pub fn special_lines(&self) -> Result<Vec<(Place, LineClass)>> {
        let mut out = vec![];
        let places = self.finite_places()?.into_iter().map(|(v, _)| v).chain([Place::Infinity]);
        for v in places {
            let c = self.classify_line(&v)?;
            if c != LineClass::Transversal {
                out.push((v, c));
            }
        }
        Ok(out)
    }

    pub fn bitangent_profile(&self) -> Result<BitangentProfile> {
        let pts = self.singular_points()?;
        if let Some(p) = pts.iter().find(|p| !p.is_node()) {
            return Err(Error::NonNodal(p.to_string()));
        }
        let alpha = pts.iter().map(QuarticSingularPoint::count).sum();
        let (mut k, mut l) = (0, 0);
        for (v, c) in self.special_lines()? {
            match c {
                LineClass::OrdinaryBitangent => k += v.degree(),
                LineClass::SpecialBitangent => l += v.degree(),
                _ => {}
            }
        }
        Ok(BitangentProfile { alpha, k, l })
    }
}

impl fmt::Display for PlaneQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

impl fmt::Debug for PlaneQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

/// Largest number of concurrent bitangents for `alpha` nodes.
pub fn bitangent_bound(alpha: usize) -> Result<usize> {
    match alpha {
        0..=2 => Ok(4),
        3 => Ok(3),
        _ => Err(Error::UnsupportedNodeCount(alpha)),
    }
}

/// `(k, l)` pairs realizing the bound.
pub fn maximal_pairs(alpha: usize) -> Result<&'static [(usize, usize)]> {
    match alpha {
        0 => Ok(&[(4, 0), (3, 1), (2, 2), (0, 4)]),
        1 => Ok(&[(4, 0), (3, 1), (2, 2)]),
        2 => Ok(&[(4, 0)]),
        3 => Ok(&[(3, 0)]),
        _ => Err(Error::UnsupportedNodeCount(alpha)),
    }
}

pub fn theorem_check(p: &BitangentProfile) -> Result<Verdict> {
    let bound = bitangent_bound(p.alpha)?;
    let allowed = maximal_pairs(p.alpha)?;
    let m = p.m();
    let verdict = if m > bound {
        Verdict { pass: false, reason: format!("m = {m} exceeds the bound {bound} for {} nodes", p.alpha) }
    } else if m == bound && !allowed.contains(&(p.k, p.l)) {
        Verdict { pass: false, reason: format!("maximal pair ({}, {}) does not occur for {} nodes", p.k, p.l, p.alpha) }
    } else if m == bound {
        Verdict { pass: true, reason: format!("maximal case ({}, {}) for {} nodes", p.k, p.l, p.alpha) }
    } else {
        Verdict { pass: true, reason: format!("m = {m} below the bound {bound}") }
    };
    Ok(verdict)
}

/// Euler numbers of the singular fibers of a rational surface sum to 12.
/// A fiber over a place of degree `d` stands for `d` fibers.
pub fn euler_budget(fibers: &[KodairaFiber]) -> Verdict {
    let total: usize = fibers.iter().map(|f| f.place.degree() * f.fiber_type.euler_number() as usize).sum();
    Verdict { pass: total == 12, reason: format!("sum of Euler numbers is {total}") }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_bivariate;
    use crate::function_field::RationalFunction;

    fn q(s: &str) -> PlaneQuartic {
        PlaneQuartic::new(parse_bivariate(s, "t", "x").unwrap()).unwrap()
    }

    fn at(n: i64) -> Place {
        Place::at(FieldElement::from_int(n))
    }

    #[test]
    fn smooth_quartic_lines() {
        let f = q("(x^2+t^2+1)^2 + t*(t+1)*(t+2)");
        assert!(f.singular_points().unwrap().is_empty());
        assert_eq!(f.classify_line(&at(-1)).unwrap(), LineClass::OrdinaryBitangent);
        let lines = f.special_lines().unwrap();
        let bit: Vec<_> = lines.iter().filter(|(_, c)| *c == LineClass::OrdinaryBitangent).map(|(v, _)| v.clone()).collect();
        assert_eq!(bit, vec![at(-2), at(-1), at(0), Place::Infinity]);
        assert!(lines.iter().all(|(_, c)| matches!(c, LineClass::OrdinaryBitangent | LineClass::SimpleTangent)));
        assert_eq!(f.bitangent_profile().unwrap(), BitangentProfile { alpha: 0, k: 4, l: 0 });
    }

    #[test]
    fn special_bitangents() {
        let f = q("x^4 + t*(t+1)*(t+2)");
        assert_eq!(f.classify_line(&at(0)).unwrap(), LineClass::SpecialBitangent);
        assert_eq!(f.bitangent_profile().unwrap(), BitangentProfile { alpha: 0, k: 0, l: 4 });
        let f = q("(x^2+t)^2 + t*(t+1)*(t+2)");
        let lines = f.special_lines().unwrap();
        assert!(lines.contains(&(at(-2), LineClass::OrdinaryBitangent)));
        assert!(lines.contains(&(at(0), LineClass::SpecialBitangent)));
        assert!(lines.contains(&(Place::Infinity, LineClass::SpecialBitangent)));
    }

    #[test]
    fn nodes() {
        let f = q("(x^2-1)^2 + (t+1)*(t^2+t-1)");
        let pts = f.singular_points().unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].place, at(0));
        assert_eq!(pts[0].x_value().unwrap(), Residue::constant(FieldElement::from_int(0)));
        assert!(pts[0].is_node());
        assert_eq!(f.bitangent_profile().unwrap(), BitangentProfile { alpha: 1, k: 3, l: 1 });
        let cusp = q("x^4 + x^3 + t^2 + t^3 + x*t^3");
        assert!(cusp.singular_points().unwrap().iter().any(|p| !p.is_node()));
        assert!(matches!(cusp.bitangent_profile(), Err(Error::NonNodal(_))));
    }

    #[test]
    fn invalid_quartics() {
        let f = parse_bivariate("(x^2+t^2+1)^2", "t", "x").unwrap();
        assert_eq!(PlaneQuartic::new(f), Err(Error::NonReduced));
        let lines = parse_bivariate("x*(x-t)*(x+t)*(x-2*t)", "t", "x").unwrap();
        assert!(matches!(PlaneQuartic::new(lines), Err(Error::InvalidQuartic(_))));
        let lines = parse_bivariate("(x-1)*(x-2)*(x-3)*(x-4)", "t", "x").unwrap();
        assert!(matches!(PlaneQuartic::new(lines), Err(Error::InvalidQuartic(_))));
        assert!(PlaneQuartic::new(parse_bivariate("x^3 + t", "t", "x").unwrap()).is_err());
        let ok = parse_bivariate("x*(x-t)*(x+t)*(x-2*t-1)", "t", "x").unwrap();
        assert!(PlaneQuartic::new(ok).is_ok());
    }

    #[test]
    fn discriminant_routes_agree() {
        for s in ["(x^2+t^2+1)^2 + t*(t+1)*(t+2)", "(x^2 - 1)^2 + (t+1)*(t^2+t-1)", "3*x^4 - t*x^3 + x + t^3 - 1", "x^3 - t^4*x"] {
            let f = parse_bivariate(s, "t", "x").unwrap();
            let px = Polynomial::new(X, f.rows().iter().map(|r| RationalFunction::from_poly(r.clone().with_var(T))).collect());
            let d = px.discriminant().unwrap();
            assert_eq!(RationalFunction::from_poly(f.discriminant_x().unwrap().with_var(T)), d, "{s}");
        }
    }

    #[test]
    fn theorem_table() {
        let p = |alpha, k, l| BitangentProfile { alpha, k, l };
        assert!(!theorem_check(&p(0, 1, 3)).unwrap().pass);
        assert!(theorem_check(&p(3, 3, 0)).unwrap().pass);
        assert!(theorem_check(&p(2, 4, 0)).unwrap().pass);
        assert!(!theorem_check(&p(2, 3, 1)).unwrap().pass);
        assert!(!theorem_check(&p(3, 4, 0)).unwrap().pass);
        assert!(theorem_check(&p(3, 1, 1)).unwrap().pass);
        assert_eq!(theorem_check(&p(4, 0, 0)), Err(Error::UnsupportedNodeCount(4)));
    }
}
