//! Multi-quadratic number fields `Q(sqrt(d1), ..., sqrt(dk))`.
//!
//! An element is stored as `2^k` rational coordinates over the basis of
//! products of adjoined square roots, indexed by bitmask: bit `i` set means
//! `sqrt(d_i)` is a factor. Square roots are taken to be positive reals, which
//! fixes a real embedding and therefore a total order.

use super::{rat, rational_sqrt, squarefree_split, Field, Ring};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

pub const MAX_RADICANDS: usize = 3;

/// Which square roots have been adjoined to `Q`.
///
/// Radicands are square-free integers `> 1`, independent modulo squares (no
/// product of a nonempty subset is a perfect square).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldDescriptor {
    radicands: Arc<Vec<i64>>,
}

/// Result of [`FieldDescriptor::adjoin_sqrt`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjoined {
    pub descriptor: FieldDescriptor,
    /// `false` when the square root already lies in the field.
    pub extended: bool,
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicands.is_empty() {
            return write!(f, "Q");
        }
        let parts: Vec<String> = self.radicands.iter().map(|r| format!("sqrt({r})")).collect();
        write!(f, "Q({})", parts.join(", "))
    }
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        Self::default()
    }

    /// Builds `Q(sqrt(d1), ...)`, adjoining the radicands in order.
    pub fn new(radicands: &[i64]) -> Result<Self> {
        let mut desc = Self::rationals();
        for &d in radicands {
            desc = desc.adjoin_sqrt(d)?.descriptor;
        }
        Ok(desc)
    }

    pub fn radicands(&self) -> &[i64] {
        &self.radicands
    }

    pub fn is_rationals(&self) -> bool {
        self.radicands.is_empty()
    }

    /// Dimension over `Q`.
    pub fn degree(&self) -> usize {
        1 << self.radicands.len()
    }

    /// Adjoins `sqrt(d)`. Non-square-free `d` is reduced to its square-free
    /// part first; if the root already lies in the field the descriptor is
    /// returned unchanged with `extended == false`.
    pub fn adjoin_sqrt(&self, d: i64) -> Result<Adjoined> {
        if d <= 0 {
            return Err(Error::InvalidRadicand(d));
        }
        let (_, m) = squarefree_split(&BigInt::from(d));
        if m.is_one() || self.express(&m).is_some() {
            return Ok(Adjoined {
                descriptor: self.clone(),
                extended: false,
            });
        }
        if self.radicands.len() >= MAX_RADICANDS {
            return Err(Error::TooManyRadicands { max: MAX_RADICANDS });
        }
        let mut r = self.radicands.as_ref().clone();
        r.push(m.to_i64().ok_or(Error::InvalidRadicand(d))?);
        Ok(Adjoined {
            descriptor: FieldDescriptor {
                radicands: Arc::new(r),
            },
            extended: true,
        })
    }

    /// Writes `sqrt(d)` as `q * basis(mask)` when it lies in the field.
    fn express(&self, d: &BigInt) -> Option<(usize, BigRational)> {
        for mask in 0..self.degree() {
            let p = self.mask_product(mask);
            let dp = d * &p;
            let s = dp.sqrt();
            if &s * &s == dp {
                // sqrt(d) = s / sqrt(p) = (s / p) * sqrt(p)
                return Some((mask, BigRational::new(s, p)));
            }
        }
        None
    }

    fn mask_product(&self, mask: usize) -> BigInt {
        let mut p = BigInt::one();
        for (i, r) in self.radicands.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p *= *r;
            }
        }
        p
    }

    fn contains(&self, other: &FieldDescriptor) -> bool {
        other
            .radicands
            .iter()
            .all(|r| self.express(&BigInt::from(*r)).is_some())
    }

    /// Smallest descriptor in this family containing both fields.
    pub fn union(&self, other: &FieldDescriptor) -> FieldDescriptor {
        if self == other || self.contains(other) {
            return self.clone();
        }
        if other.contains(self) {
            return other.clone();
        }
        let mut d = self.clone();
        for &r in other.radicands.iter() {
            d = d
                .adjoin_sqrt(r)
                .unwrap_or_else(|e| panic!("cannot form compositum {self} * {other}: {e}"))
                .descriptor;
        }
        d
    }
}

/// An element of a multi-quadratic field.
#[derive(Clone)]
pub struct FieldElement {
    desc: FieldDescriptor,
    coords: Vec<BigRational>,
}

fn mul_coords(r: &[i64], a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let mut c = ai * bj;
            let common = i & j;
            for (l, rl) in r.iter().enumerate() {
                if common >> l & 1 == 1 {
                    c *= BigRational::from_integer(BigInt::from(*rl));
                }
            }
            out[i ^ j] += c;
        }
    }
    out
}

/// Negates the coordinates involving radicand `i`.
fn conjugate_coords(i: usize, a: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .enumerate()
        .map(|(m, c)| if m >> i & 1 == 1 { -c.clone() } else { c.clone() })
        .collect()
}

fn is_zero_coords(a: &[BigRational]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn inv_coords(r: &[i64], a: &[BigRational]) -> Option<Vec<BigRational>> {
    if is_zero_coords(a) {
        return None;
    }
    let k = a.len().trailing_zeros() as usize;
    let mut num = vec![BigRational::zero(); a.len()];
    num[0] = BigRational::one();
    let mut cur = a.to_vec();
    for i in 0..k {
        let c = conjugate_coords(i, &cur);
        num = mul_coords(r, &num, &c);
        cur = mul_coords(r, &cur, &c);
    }
    let q = cur[0].clone();
    Some(num.into_iter().map(|c| c / &q).collect())
}

fn signum_coords(r: &[i64], a: &[BigRational]) -> i32 {
    if a.len() == 1 {
        return if a[0].is_positive() {
            1
        } else if a[0].is_negative() {
            -1
        } else {
            0
        };
    }
    let half = a.len() / 2;
    let sub = &r[..r.len() - 1];
    let top = r[r.len() - 1];
    let (u, v) = a.split_at(half);
    let su = signum_coords(sub, u);
    let sv = signum_coords(sub, v);
    if sv == 0 || su == sv {
        return su;
    }
    if su == 0 {
        return sv;
    }
    // opposite signs: compare u^2 with top * v^2
    let uu = mul_coords(sub, u, u);
    let vv = mul_coords(sub, v, v);
    let scale = BigRational::from_integer(BigInt::from(top));
    let d: Vec<BigRational> = uu.iter().zip(&vv).map(|(x, y)| x - y * &scale).collect();
    if signum_coords(sub, &d) > 0 {
        su
    } else {
        sv
    }
}

fn sqrt_coords(r: &[i64], a: &[BigRational]) -> Option<Vec<BigRational>> {
    if a.len() == 1 {
        return rational_sqrt(&a[0]).map(|s| vec![s]);
    }
    let half = a.len() / 2;
    let sub = &r[..r.len() - 1];
    let top = BigRational::from_integer(BigInt::from(r[r.len() - 1]));
    let (u, v) = a.split_at(half);
    let join = |x: Vec<BigRational>, y: Vec<BigRational>| {
        let mut out = x;
        out.extend(y);
        out
    };
    let zeros = || vec![BigRational::zero(); half];
    if is_zero_coords(v) {
        if let Some(s) = sqrt_coords(sub, u) {
            return Some(join(s, zeros()));
        }
        let w: Vec<BigRational> = u.iter().map(|c| c / &top).collect();
        return sqrt_coords(sub, &w).map(|s| join(zeros(), s));
    }
    // (x + y sqrt(r))^2 = u + v sqrt(r)  =>  x^2 = (u +- sqrt(u^2 - r v^2)) / 2
    let uu = mul_coords(sub, u, u);
    let vv = mul_coords(sub, v, v);
    let norm: Vec<BigRational> = uu.iter().zip(&vv).map(|(x, y)| x - y * &top).collect();
    let n = sqrt_coords(sub, &norm)?;
    let two = BigRational::from_integer(BigInt::from(2));
    for sign in [1, -1] {
        let z: Vec<BigRational> = u
            .iter()
            .zip(&n)
            .map(|(ui, ni)| if sign > 0 { (ui + ni) / &two } else { (ui - ni) / &two })
            .collect();
        if let Some(x) = sqrt_coords(sub, &z) {
            if is_zero_coords(&x) {
                continue;
            }
            let x2: Vec<BigRational> = x.iter().map(|c| c * &two).collect();
            let inv = inv_coords(sub, &x2)?;
            let y = mul_coords(sub, v, &inv);
            let cand = join(x, y);
            if mul_coords(r, &cand, &cand) == a {
                return Some(cand);
            }
        }
    }
    None
}

impl FieldElement {
    pub fn from_rational(q: BigRational) -> Self {
        FieldElement {
            desc: FieldDescriptor::rationals(),
            coords: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// `sqrt(d)` for a positive integer `d`, living in `Q(sqrt(m))` where `m`
    /// is the square-free part of `d`.
    pub fn sqrt_of_int(d: i64) -> Result<Self> {
        if d < 0 {
            return Err(Error::InvalidRadicand(d));
        }
        if d == 0 {
            return Ok(Self::zero());
        }
        let (s, m) = squarefree_split(&BigInt::from(d));
        let s = BigRational::from_integer(s);
        if m.is_one() {
            return Ok(Self::from_rational(s));
        }
        let desc = FieldDescriptor::rationals().adjoin_sqrt(d)?.descriptor;
        Ok(FieldElement {
            desc,
            coords: vec![BigRational::zero(), s],
        })
    }

    /// Builds an element from explicit coordinates over `desc`'s basis.
    pub fn from_coords(desc: FieldDescriptor, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), desc.degree(), "coordinate count mismatch");
        FieldElement { desc, coords }
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    /// Re-expresses `self` over a descriptor containing its field.
    pub fn embed(&self, target: &FieldDescriptor) -> FieldElement {
        if &self.desc == target {
            return self.clone();
        }
        let n = target.degree();
        let mut roots = Vec::with_capacity(self.desc.radicands.len());
        for r in self.desc.radicands.iter() {
            let (mask, q) = target
                .express(&BigInt::from(*r))
                .unwrap_or_else(|| panic!("sqrt({r}) does not lie in {target}"));
            let mut c = vec![BigRational::zero(); n];
            c[mask] = q;
            roots.push(c);
        }
        let mut out = vec![BigRational::zero(); n];
        for (m, coef) in self.coords.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let mut term = vec![BigRational::zero(); n];
            term[0] = coef.clone();
            for (i, root) in roots.iter().enumerate() {
                if m >> i & 1 == 1 {
                    term = mul_coords(&target.radicands, &term, root);
                }
            }
            for (o, t) in out.iter_mut().zip(term) {
                *o += t;
            }
        }
        FieldElement {
            desc: target.clone(),
            coords: out,
        }
    }

    fn unify(a: &FieldElement, b: &FieldElement) -> (FieldElement, FieldElement) {
        if a.desc == b.desc {
            return (a.clone(), b.clone());
        }
        if b.desc.is_rationals() {
            return (a.clone(), b.embed(&a.desc));
        }
        if a.desc.is_rationals() {
            return (a.embed(&b.desc), b.clone());
        }
        let d = a.desc.union(&b.desc);
        (a.embed(&d), b.embed(&d))
    }

    /// The Galois conjugate negating `sqrt(d_i)`.
    pub fn conjugate(&self, i: usize) -> FieldElement {
        FieldElement {
            desc: self.desc.clone(),
            coords: conjugate_coords(i, &self.coords),
        }
    }

    /// Sign under the positive real embedding.
    pub fn signum(&self) -> i32 {
        signum_coords(&self.desc.radicands, &self.coords)
    }

    /// Square root inside the element's own field, if one exists.
    pub fn sqrt(&self) -> Option<FieldElement> {
        sqrt_coords(&self.desc.radicands, &self.coords).map(|coords| FieldElement {
            desc: self.desc.clone(),
            coords,
        })
    }

    /// Square root inside `desc` (which must contain the element's field).
    pub fn sqrt_in(&self, desc: &FieldDescriptor) -> Option<FieldElement> {
        self.embed(&desc.union(&self.desc)).sqrt()
    }

    /// Approximate real value, for display only.
    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0;
        for (m, c) in self.coords.iter().enumerate() {
            let p = self.desc.mask_product(m).to_f64().unwrap_or(f64::NAN);
            acc += c.to_f64().unwrap_or(f64::NAN) * p.sqrt();
        }
        acc
    }

    fn binop(
        &self,
        rhs: &FieldElement,
        f: impl Fn(&FieldDescriptor, &[BigRational], &[BigRational]) -> Vec<BigRational>,
    ) -> FieldElement {
        let (a, b) = FieldElement::unify(self, rhs);
        let coords = f(&a.desc, &a.coords, &b.coords);
        FieldElement {
            desc: a.desc,
            coords,
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.desc == other.desc {
            return self.coords == other.coords;
        }
        let (a, b) = FieldElement::unify(self, other);
        a.coords == b.coords
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum().cmp(&0)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.binop(rhs, |_, a, b| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.binop(rhs, |_, a, b| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if self.desc.is_rationals() && rhs.desc.is_rationals() {
            return FieldElement::from_rational(&self.coords[0] * &rhs.coords[0]);
        }
        self.binop(rhs, |d, a, b| mul_coords(&d.radicands, a, b))
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        self * rhs.inv().expect("division by zero in number field")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            desc: self.desc,
            coords: self.coords.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        is_zero_coords(&self.coords)
    }
}

impl One for FieldElement {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Ring for FieldElement {
    fn from_int(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl Field for FieldElement {
    fn inv(&self) -> Option<Self> {
        inv_coords(&self.desc.radicands, &self.coords).map(|coords| FieldElement {
            desc: self.desc.clone(),
            coords,
        })
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::from_ratio(n, d)
    }
}

impl From<BigRational> for FieldElement {
    fn from(q: BigRational) -> Self {
        FieldElement::from_rational(q)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // terms ordered by the radicand they carry, rational part first
        let mut terms: Vec<(BigInt, BigRational)> = Vec::new();
        for (m, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (s, sq) = squarefree_split(&self.desc.mask_product(m));
            terms.push((sq, c * BigRational::from_integer(s)));
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (root, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if root.is_one() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&format!("sqrt({root})"));
            } else {
                out.push_str(&format!("{}*sqrt({root})", fmt_rational(&mag)));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: i64) -> FieldElement {
        FieldElement::sqrt_of_int(d).unwrap()
    }

    #[test]
    fn adjoin_examples() {
        let q = FieldDescriptor::rationals();
        let q2 = q.adjoin_sqrt(2).unwrap();
        assert!(q2.extended);
        assert_eq!(q2.descriptor.radicands(), &[2]);
        let q25 = q2.descriptor.adjoin_sqrt(5).unwrap();
        assert!(q25.extended);
        assert_eq!(q25.descriptor.degree(), 4);
        let q8 = q2.descriptor.adjoin_sqrt(8).unwrap();
        assert!(!q8.extended);
        assert_eq!(q8.descriptor, q2.descriptor);
        let q10 = q25.descriptor.adjoin_sqrt(10).unwrap();
        assert!(!q10.extended);
        assert!(q.adjoin_sqrt(0).is_err());
        assert!(q.adjoin_sqrt(-3).is_err());
    }

    #[test]
    fn square_roots_square() {
        assert_eq!(s(2) * s(2), FieldElement::from_int(2));
        assert_eq!(s(8), FieldElement::from_int(2) * s(2));
        assert_eq!(s(2) * s(5), s(10));
        assert_eq!(s(10) * s(10), FieldElement::from_int(10));
    }

    #[test]
    fn inverse_and_order() {
        let a = FieldElement::from_int(1) + s(2) - s(5);
        let b = a.inv().unwrap();
        assert_eq!(a * b, FieldElement::one());
        let golden = (FieldElement::from_int(-1) + s(5)) / FieldElement::from_int(2);
        assert!(golden > FieldElement::zero());
        assert!(golden < FieldElement::one());
        assert!(s(2) - FieldElement::from_ratio(141, 100) > FieldElement::zero());
        assert!(s(2) - FieldElement::from_ratio(142, 100) < FieldElement::zero());
        assert!(s(3) + s(2) - s(10) < FieldElement::zero());
    }

    #[test]
    fn square_roots_in_tower() {
        let d = FieldDescriptor::new(&[2, 5]).unwrap();
        let x = (FieldElement::from_int(3) + s(2)).embed(&d);
        let sq = x.clone() * x.clone();
        let r = sq.sqrt().unwrap();
        assert_eq!(r.clone() * r, sq);
        assert_eq!(FieldElement::from_int(10).embed(&d).sqrt().unwrap(), s(10));
        assert!(FieldElement::from_int(3).embed(&d).sqrt().is_none());
        assert!(FieldElement::from_int(-1).embed(&d).sqrt().is_none());
    }

    #[test]
    fn display() {
        let g = (FieldElement::from_int(-1) - s(5)) / FieldElement::from_int(2);
        assert_eq!(g.to_string(), "-1/2 - 1/2*sqrt(5)");
        assert_eq!((s(2) * s(3)).to_string(), "sqrt(6)");
    }
}
