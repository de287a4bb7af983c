use super::{RationalFunction, T};
use crate::algebra::{canonical_cmp, factor_over, FieldDescriptor, FieldElement, Polynomial};
use crate::error::Result;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A closed point of the projective `t`-line over the working field.
#[derive(Clone, PartialEq, Eq)]
pub enum Place {
    /// A monic irreducible polynomial in `t`.
    Finite(Polynomial<FieldElement>),
    Infinity,
}

/// Order of vanishing; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// Finite value, panicking on `Infinite`.
    pub fn expect_finite(self) -> i64 {
        self.finite().expect("valuation of zero")
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Place {
    /// The place `t - r`.
    pub fn at(r: FieldElement) -> Place {
        Place::Finite(Polynomial::linear_root(T, r))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap(),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// `p(t)` at a finite place, `1/t` at infinity.
    pub fn uniformizer(&self) -> RationalFunction {
        match self {
            Place::Finite(p) => RationalFunction::from_poly(p.clone()),
            Place::Infinity => RationalFunction::t().inv_unchecked(),
        }
    }

    /// The root `r` of a degree-one place `t - r`.
    pub fn rational_root(&self) -> Option<FieldElement> {
        match self {
            Place::Finite(p) if p.degree() == Some(1) => Some(-p.coeff(0)),
            _ => None,
        }
    }
}

impl RationalFunction {
    fn inv_unchecked(&self) -> RationalFunction {
        crate::algebra::Field::inv(self).expect("nonzero")
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Greater,
            (_, Place::Infinity) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => canonical_cmp(a, b),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Multiplicity of the irreducible `p` in the nonzero polynomial `q`.
pub fn poly_valuation(q: &Polynomial<FieldElement>, p: &Polynomial<FieldElement>) -> usize {
    let mut q = q.clone();
    let mut k = 0;
    if q.is_zero() {
        return usize::MAX;
    }
    while let Some(r) = q.exact_div(p) {
        q = r;
        k += 1;
    }
    k
}

/// Finite places where a nonzero polynomial vanishes, over `desc`, with
/// multiplicities and in canonical order.
pub fn places_of(
    q: &Polynomial<FieldElement>,
    desc: &FieldDescriptor,
) -> Result<Vec<(Place, usize)>> {
    if q.is_constant() {
        return Ok(vec![]);
    }
    let fac = factor_over(&q.clone().with_var(T), desc)?;
    let mut out: Vec<(Place, usize)> = fac
        .factors
        .into_iter()
        .filter(|(f, _)| !f.is_constant() && f.leading().is_some_and(One::is_one))
        .map(|(f, e)| (Place::Finite(f), e))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}
