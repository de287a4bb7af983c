use crate::algebra::{Field, FieldElement, Polynomial, Ring};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

/// An element of a residue field `K[t]/(p)`.
///
/// Places of degree one reduce by evaluation, so their residues are plain
/// field elements and carry no modulus. Elements without a modulus are
/// compatible with every residue field, which is how constants from
/// [`Zero`] and [`One`] behave.
#[derive(Clone)]
pub struct Residue {
    modulus: Option<Arc<Polynomial<FieldElement>>>,
    value: Polynomial<FieldElement>,
}

impl Residue {
    pub fn constant(c: FieldElement) -> Self {
        Residue { modulus: None, value: Polynomial::constant(super::T, c) }
    }

    /// Class of `q` modulo the monic irreducible `p`.
    pub fn of_poly(q: &Polynomial<FieldElement>, p: &Polynomial<FieldElement>) -> Self {
        if p.degree() == Some(1) {
            let root = -p.coeff(0);
            return Residue::constant(q.eval(&root));
        }
        let value = q.clone().with_var(p.var()).rem(p);
        Residue { modulus: Some(Arc::new(p.clone())), value }
    }

    pub fn modulus(&self) -> Option<&Polynomial<FieldElement>> {
        self.modulus.as_deref()
    }

    /// Canonical representative of degree below the modulus degree.
    pub fn representative(&self) -> &Polynomial<FieldElement> {
        &self.value
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        self.value.is_constant().then(|| self.value.constant_term())
    }

    fn with(modulus: Option<Arc<Polynomial<FieldElement>>>, value: Polynomial<FieldElement>) -> Self {
        let value = match &modulus {
            Some(m) => value.rem(m),
            None => value,
        };
        Residue { modulus, value }
    }

    fn join(&self, other: &Self) -> Option<Arc<Polynomial<FieldElement>>> {
        match (&self.modulus, &other.modulus) {
            (Some(a), Some(b)) => {
                assert!(a == b, "residues from different places: mod {a} and mod {b}");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }
}

impl PartialEq for Residue {
    fn eq(&self, other: &Self) -> bool {
        let _ = self.join(other);
        self.value == other.value
    }
}

impl Eq for Residue {}

impl Add for Residue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let m = self.join(&rhs);
        Residue::with(m, self.value + rhs.value)
    }
}

impl Sub for Residue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let m = self.join(&rhs);
        Residue::with(m, self.value - rhs.value)
    }
}

impl Neg for Residue {
    type Output = Self;
    fn neg(self) -> Self {
        Residue { modulus: self.modulus, value: -self.value }
    }
}

impl Mul for Residue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let m = self.join(&rhs);
        Residue::with(m, self.value * rhs.value)
    }
}

impl Div for Residue {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in residue field")
    }
}

impl Zero for Residue {
    fn zero() -> Self {
        Residue::constant(FieldElement::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl One for Residue {
    fn one() -> Self {
        Residue::constant(FieldElement::one())
    }
}

impl Ring for Residue {
    fn from_int(n: i64) -> Self {
        Residue::constant(FieldElement::from_int(n))
    }
}

impl Field for Residue {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match &self.modulus {
            None => {
                let c = self.value.constant_term().inv()?;
                Some(Residue { modulus: None, value: Polynomial::constant(self.value.var(), c) })
            }
            Some(m) => {
                let (g, s, _) = self.value.ext_gcd(m);
                assert!(g.is_constant(), "modulus {m} is not irreducible");
                Some(Residue::with(Some(m.clone()), s))
            }
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            None => write!(f, "{}", self.value.constant_term()),
            Some(m) => write!(f, "{} (mod {})", self.value, m),
        }
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
