//! Factorization over `Q` (Kronecker's method) and over multi-quadratic fields.

use super::{FieldDescriptor, FieldElement, Polynomial, Ring};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

pub const DEFAULT_DEGREE_GUARD: usize = 24;

/// Maximum degree accepted by [`factor`], overridable through the
/// `RAMSPLIT_DEGREE_GUARD` environment variable.
pub fn degree_guard() -> usize {
    std::env::var("RAMSPLIT_DEGREE_GUARD")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DEGREE_GUARD)
}

/// `unit * prod f^e` with monic factors sorted by degree, then by
/// coefficients (see [`canonical_cmp`]).
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<R: Ring> {
    pub unit: R,
    pub factors: Vec<(Polynomial<R>, usize)>,
}

impl<R: Ring> Factorization<R> {
    pub fn expand(&self) -> Polynomial<R> {
        let var = self.factors.first().map_or(super::Var::FREE, |(f, _)| f.var());
        let mut acc = Polynomial::constant(var, self.unit.clone());
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = acc * f.clone();
            }
        }
        acc
    }
}

/// Orders monic polynomials by degree, then by coefficients from the
/// second-highest down, larger first. Linear factors `x - r` therefore come
/// in increasing order of `r`.
pub fn canonical_cmp<R: Ring + Ord>(a: &Polynomial<R>, b: &Polynomial<R>) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let n = a.degree().unwrap_or(0);
        for i in (0..n).rev() {
            match b.coeff(i).cmp(&a.coeff(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

fn check_guard(deg: usize) -> Result<()> {
    let guard = degree_guard();
    if deg > guard {
        return Err(Error::DegreeGuard { degree: deg, guard });
    }
    Ok(())
}

/// Factors a nonzero polynomial over `Q` into monic irreducibles.
pub fn factor_rational(p: &Polynomial<BigRational>) -> Result<Factorization<BigRational>> {
    let unit = p.leading().cloned().ok_or(Error::ZeroPolynomial)?;
    let deg = p.degree().unwrap();
    check_guard(deg)?;
    let mut factors = Vec::new();
    for (f, e) in p.squarefree_decomposition()? {
        for g in split_integer(&primitive_part(&f)) {
            factors.push((to_monic_rational(&g, p.var()), e));
        }
    }
    factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    Ok(Factorization { unit, factors })
}

/// Factors over the field generated by the coefficients of `p`.
pub fn factor(p: &Polynomial<FieldElement>) -> Result<Factorization<FieldElement>> {
    let mut desc = FieldDescriptor::rationals();
    for c in p.coeffs() {
        desc = desc.union(c.descriptor());
    }
    factor_over(p, &desc)
}

/// Factors over `desc` (which is enlarged to contain the coefficients).
///
/// Rational-coefficient inputs are factored over `Q` and irreducible
/// quadratics are then split when their discriminant is a square in the
/// field. Other inputs are handled through their rational norm: each
/// rational irreducible factor of the norm contributes one gcd. Factors of
/// degree above two that only split over the extension are kept whole.
pub fn factor_over(
    p: &Polynomial<FieldElement>,
    desc: &FieldDescriptor,
) -> Result<Factorization<FieldElement>> {
    let unit = p.leading().cloned().ok_or(Error::ZeroPolynomial)?;
    check_guard(p.degree().unwrap())?;
    let mut desc = desc.clone();
    for c in p.coeffs() {
        desc = desc.union(c.descriptor());
    }
    let var = p.var();
    let mut factors = Vec::new();
    for (f, e) in p.squarefree_decomposition()? {
        let pieces: Vec<Polynomial<FieldElement>> = if let Some(fq) = to_rational_poly(&f) {
            factor_rational(&fq)?
                .factors
                .into_iter()
                .map(|(g, _)| from_rational_poly(&g))
                .collect()
        } else {
            let norm = rational_norm(&f, &desc);
            check_guard(norm.degree().unwrap())?;
            let mut out = Vec::new();
            for (h, _) in factor_rational(&norm)?.factors {
                let g = f.gcd(&from_rational_poly(&h).with_var(var))?;
                if !g.is_constant() {
                    out.push(g);
                }
            }
            out
        };
        for g in pieces {
            for h in split_quadratic(&g, &desc) {
                factors.push((h.with_var(var), e));
            }
        }
    }
    factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    Ok(Factorization { unit, factors })
}

fn split_quadratic(g: &Polynomial<FieldElement>, desc: &FieldDescriptor) -> Vec<Polynomial<FieldElement>> {
    if g.degree() != Some(2) {
        return vec![g.clone()];
    }
    let g = g.monic();
    let b = g.coeff(1);
    let c = g.coeff(0);
    let disc = b.clone() * b.clone() - FieldElement::from_int(4) * c;
    match disc.sqrt_in(desc) {
        Some(s) => {
            let half = FieldElement::from_ratio(1, 2);
            let r1 = (-b.clone() + s.clone()) * half.clone();
            let r2 = (-b - s) * half;
            vec![
                Polynomial::linear_root(g.var(), r1),
                Polynomial::linear_root(g.var(), r2),
            ]
        }
        None => vec![g],
    }
}

/// Product of all Galois conjugates of `f`, a polynomial over `Q`.
fn rational_norm(f: &Polynomial<FieldElement>, desc: &FieldDescriptor) -> Polynomial<BigRational> {
    let k = desc.radicands().len();
    let base = f.map(|c| c.embed(desc));
    let mut acc = Polynomial::constant(f.var(), FieldElement::one());
    for mask in 0..(1usize << k) {
        let conj = base.map(|c| {
            let mut c = c.clone();
            for i in 0..k {
                if mask >> i & 1 == 1 {
                    c = c.conjugate(i);
                }
            }
            c
        });
        acc = acc * conj;
    }
    to_rational_poly(&acc).expect("norm has rational coefficients")
}

pub(crate) fn to_rational_poly(p: &Polynomial<FieldElement>) -> Option<Polynomial<BigRational>> {
    let coeffs: Option<Vec<BigRational>> = p.coeffs().iter().map(FieldElement::to_rational).collect();
    coeffs.map(|c| Polynomial::new(p.var(), c))
}

pub(crate) fn from_rational_poly(p: &Polynomial<BigRational>) -> Polynomial<FieldElement> {
    p.map(|c| FieldElement::from_rational(c.clone()))
}

// Integer polynomial helpers. Coefficients lowest degree first.

type IntPoly = Vec<BigInt>;

fn primitive_part(f: &Polynomial<BigRational>) -> IntPoly {
    let mut l = BigInt::one();
    for c in f.coeffs() {
        l = l.lcm(c.denom());
    }
    let ints: IntPoly = f.coeffs().iter().map(|c| (c * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

fn to_monic_rational(g: &IntPoly, var: super::Var) -> Polynomial<BigRational> {
    let lc = g.last().unwrap().clone();
    Polynomial::new(var, g.iter().map(|c| BigRational::new(c.clone(), lc.clone())).collect())
}

fn int_eval(f: &IntPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Exact division of integer polynomials, `None` if not divisible in `Z[x]`.
fn int_div(f: &IntPoly, g: &IntPoly) -> Option<IntPoly> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let lc = g.last().unwrap();
    let mut r = f.clone();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + dg].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, gc) in g.iter().enumerate() {
            r[i + j] -= &c * gc;
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Splits a square-free primitive integer polynomial into irreducibles.
fn split_integer(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    if f[0].is_zero() {
        let rest: IntPoly = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(split_integer(&rest));
        return out;
    }
    for d in 1..=n / 2 {
        if let Some(g) = find_factor(f, d) {
            let h = int_div(f, &g).expect("factor divides");
            let mut out = split_integer(&g);
            out.extend(split_integer(&h));
            return out;
        }
    }
    vec![f.clone()]
}

/// Positive divisors of `n != 0`, or `None` if `n` is too large to factor
/// by trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs().to_u64()?;
    if m > 1u64 << 50 {
        return None;
    }
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in primes {
        let cur = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(cur.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Some(divs.into_iter().map(BigInt::from).collect())
}

/// Searches for a factor of degree exactly `d` by Kronecker interpolation.
fn find_factor(f: &IntPoly, d: usize) -> Option<IntPoly> {
    // Candidate nodes: small integers, preferring those with few divisors.
    let mut nodes: Vec<(usize, BigInt, Vec<BigInt>)> = Vec::new();
    let mut r = 0i64;
    while nodes.len() < 3 * (d + 1) && r < 64 {
        for x in [r, -r - 1] {
            let xb = BigInt::from(x);
            let v = int_eval(f, &xb);
            if v.is_zero() {
                let root = vec![-xb, BigInt::one()];
                return (d == 1).then_some(root);
            }
            if let Some(divs) = divisors(&v) {
                nodes.push((divs.len(), xb, divs));
            }
        }
        r += 1;
    }
    if nodes.len() < d + 1 {
        return None;
    }
    nodes.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.abs().cmp(&b.1.abs())));
    nodes.truncate(d + 1);
    let xs: Vec<BigInt> = nodes.iter().map(|n| n.1.clone()).collect();
    let cands: Vec<Vec<BigInt>> = nodes
        .into_iter()
        .enumerate()
        .map(|(i, (_, _, divs))| {
            if i == 0 {
                divs
            } else {
                divs.iter().flat_map(|v| [v.clone(), -v.clone()]).collect()
            }
        })
        .collect();
    let lc = f.last().unwrap().clone();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
    search(f, &lc, &xs, &cands, &mut rows, d)
}

/// Depth-first search over value tuples, keeping the last row of the
/// divided-difference table. Every divided difference of an integer
/// polynomial on integer nodes is an integer, which prunes most branches.
fn search(
    f: &IntPoly,
    lc: &BigInt,
    xs: &[BigInt],
    cands: &[Vec<BigInt>],
    rows: &mut Vec<Vec<BigInt>>,
    d: usize,
) -> Option<IntPoly> {
    let j = rows.len();
    if j == d + 1 {
        let top = &rows[d][d];
        if top.is_zero() || !(lc % top).is_zero() {
            return None;
        }
        let newton: Vec<BigInt> = (0..=d).map(|k| rows[k][k].clone()).collect();
        let g = newton_to_monomial(&newton, xs);
        return int_div(f, &g).map(|_| g);
    }
    'next: for v in &cands[j] {
        let mut row = vec![v.clone()];
        for k in 1..=j {
            let num = &row[k - 1] - &rows[j - 1][k - 1];
            let den = &xs[j] - &xs[j - k];
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                continue 'next;
            }
            row.push(q);
        }
        if j == d && row[d].is_zero() {
            continue;
        }
        rows.push(row);
        if let Some(g) = search(f, lc, xs, cands, rows, d) {
            return Some(g);
        }
        rows.pop();
    }
    None
}

fn newton_to_monomial(newton: &[BigInt], xs: &[BigInt]) -> IntPoly {
    let d = newton.len() - 1;
    let mut acc: IntPoly = vec![newton[d].clone()];
    for k in (0..d).rev() {
        // acc = acc * (x - xs[k]) + newton[k]
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &xs[k];
        }
        next[0] += &newton[k];
        acc = next;
    }
    while acc.last().is_some_and(Zero::is_zero) {
        acc.pop();
    }
    if acc.last().is_some_and(|c| c.is_negative()) {
        acc = acc.into_iter().map(|c| -c).collect();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Var};

    const T: Var = Var::new('t');

    fn q(c: &[i64]) -> Polynomial<BigRational> {
        Polynomial::new(T, c.iter().map(|&v| rat(v, 1)).collect())
    }

    fn k(c: &[i64]) -> Polynomial<FieldElement> {
        Polynomial::new(T, c.iter().map(|&v| FieldElement::from_int(v)).collect())
    }

    #[test]
    fn rational_examples() {
        let f = factor_rational(&q(&[0, 2, 3, 1])).unwrap();
        assert_eq!(f.factors, vec![(q(&[2, 1]), 1), (q(&[1, 1]), 1), (q(&[0, 1]), 1)]);
        let c = factor_rational(&q(&[7])).unwrap();
        assert_eq!(c.unit, rat(7, 1));
        assert!(c.factors.is_empty());
        let g = factor_rational(&q(&[-1, 1, 1])).unwrap();
        assert_eq!(g.factors, vec![(q(&[-1, 1, 1]), 1)]);
    }

    #[test]
    fn kronecker_finds_quadratic_pairs() {
        // (t^2 + t + 1)(t^2 - 3)(2t^2 + 5) with no rational roots
        let f = q(&[1, 1, 1]) * q(&[-3, 0, 1]) * q(&[5, 0, 2]);
        let fac = factor_rational(&f).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(), f);
        // irreducible quartic
        let g = q(&[1, 2, 5, 1, 1]);
        assert_eq!(factor_rational(&g).unwrap().factors.len(), 1);
    }

    #[test]
    fn splits_over_extension() {
        let desc = FieldDescriptor::new(&[5]).unwrap();
        let f = factor_over(&k(&[-1, 1, 1]), &desc).unwrap();
        let s5 = FieldElement::sqrt_of_int(5).unwrap();
        let half = FieldElement::from_ratio(1, 2);
        let lo = (FieldElement::from_int(-1) - s5.clone()) * half.clone();
        let hi = (FieldElement::from_int(-1) + s5) * half;
        assert_eq!(
            f.factors,
            vec![(Polynomial::linear_root(T, lo), 1), (Polynomial::linear_root(T, hi), 1)]
        );
    }

    #[test]
    fn irrational_coefficients_use_norm() {
        let s2 = FieldElement::sqrt_of_int(2).unwrap();
        // (t - sqrt2)^2 (t + 1)
        let a = Polynomial::linear_root(T, s2.clone());
        let f = a.clone() * a.clone() * k(&[1, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(a, 2), (k(&[1, 1]), 1)].into_iter().rev().collect::<Vec<_>>());
    }

    #[test]
    fn guard() {
        let mut c = vec![0i64; 26];
        c[25] = 1;
        c[0] = 1;
        assert!(matches!(factor_rational(&q(&c)), Err(Error::DegreeGuard { .. })));
    }
}
