//! Component indices, the gamma vector and the height pairing.

use super::{all_singular_fibers, bad_place_candidates, local_model, FiberType, KodairaFiber, SectionPoint, WeierstrassModel};
use crate::algebra::rat;
use crate::error::{Error, Result};
use crate::function_field::{RationalFunction, Valuation, Place};
use num_rational::BigRational;
use num_traits::Zero;

/// Component index met by a section at each reducible fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaVector {
    pub entries: Vec<(Place, FiberType, usize)>,
}

impl GammaVector {
    pub fn indices(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.2).collect()
    }

    /// Re-orders the entries to follow `order`; places missing from the
    /// vector are reported as errors.
    pub fn reordered(&self, order: &[Place]) -> Result<GammaVector> {
        let mut entries = Vec::with_capacity(order.len());
        for p in order {
            let e = self
                .entries
                .iter()
                .find(|e| &e.0 == p)
                .ok_or_else(|| Error::IrreducibleFiber(format!("no reducible fiber at {p}")))?;
            entries.push(e.clone());
        }
        Ok(GammaVector { entries })
    }
}

fn rf(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}

fn val(r: &RationalFunction, v: &Place) -> Valuation {
    r.valuation(v)
}

/// Index of the simple component of `f` met by `p`.
///
/// Multiplicative fibers use `min(v(2Y), n/2)`; additive fibers compare the
/// valuations of the division polynomials `2Y` and `psi_3(X)` on the local
/// minimal model and read the index off the resulting local contribution.
/// Components that are only distinguished by orientation are reported by
/// their smallest index.
pub fn component_index(e: &WeierstrassModel, p: &SectionPoint, f: &KodairaFiber) -> Result<usize> {
    if p.is_zero() {
        return Ok(0);
    }
    if !f.fiber_type.is_reducible() {
        return Err(Error::IrreducibleFiber(format!("{} at {}", f.fiber_type, f.place)));
    }
    if !e.contains(p) {
        return Err(Error::NotOnCurve);
    }
    let v = &f.place;
    let m = &f.local.model;
    let q = f.local.transform_point(p);
    let (x, y) = q.coords().unwrap();
    if val(x, v) < Valuation::Finite(0) {
        return Ok(0);
    }
    let two_y = rf(2) * y.clone();
    let dfx = rf(3) * x.clone() * x.clone() + rf(2) * m.a.clone() * x.clone() + m.b.clone();
    if val(&two_y, v) == Valuation::Finite(0) || val(&dfx, v) == Valuation::Finite(0) {
        return Ok(0);
    }
    let alpha = val(&two_y, v);
    if let FiberType::I(n) = f.fiber_type {
        let half = (n / 2) as i64;
        return Ok(match alpha {
            Valuation::Finite(a) => a.min(half) as usize,
            Valuation::Infinite => half as usize,
        });
    }
    let (a, b, c) = (m.a.clone(), m.b.clone(), m.c.clone());
    let x2 = x.clone() * x.clone();
    let psi3 = rf(3) * x2.clone() * x2.clone()
        + rf(4) * a.clone() * x2.clone() * x.clone()
        + rf(6) * b.clone() * x2
        + rf(12) * c.clone() * x.clone()
        + rf(4) * a * c
        - b.clone() * b;
    let beta = val(&psi3, v);
    let contr = match (alpha, beta) {
        (Valuation::Finite(al), Valuation::Infinite) => rat(2 * al, 3),
        (Valuation::Finite(al), Valuation::Finite(be)) if be >= 3 * al => rat(2 * al, 3),
        (_, Valuation::Finite(be)) => rat(be, 4),
        (Valuation::Infinite, Valuation::Infinite) => {
            return Err(Error::Inconsistent("section is both 2- and 3-division at a fiber".into()))
        }
    };
    for k in 1..f.fiber_type.simple_count() {
        if f.fiber_type.closed_form_contribution(k)? == contr {
            return Ok(k);
        }
    }
    Err(Error::Unclassifiable(format!(
        "local contribution {contr} does not occur on {} at {}",
        f.fiber_type, f.place
    )))
}

/// Gamma vector over the given fibers (only reducible ones are used).
pub fn gamma_vector_on(e: &WeierstrassModel, p: &SectionPoint, fibers: &[KodairaFiber]) -> Result<GammaVector> {
    let mut entries = Vec::new();
    for f in fibers.iter().filter(|f| f.fiber_type.is_reducible()) {
        entries.push((f.place.clone(), f.fiber_type, component_index(e, p, f)?));
    }
    Ok(GammaVector { entries })
}

pub fn gamma_vector(e: &WeierstrassModel, p: &SectionPoint) -> Result<GammaVector> {
    gamma_vector_on(e, p, &all_singular_fibers(e)?)
}

/// `(P.O)`: at each place where `X` has a pole on the local minimal model,
/// `v(X) = -2m` and `v(Y) = -3m` contribute `deg(v) * m`.
pub fn intersection_with_o(e: &WeierstrassModel, p: &SectionPoint) -> Result<u64> {
    let (x, _) = p.coords().ok_or(Error::ZeroSection)?;
    let mut total = 0u64;
    for v in bad_place_candidates(e, &[x.den()])? {
        let local = local_model(e, &v)?;
        let q = local.transform_point(p);
        let (qx, qy) = q.coords().unwrap();
        let vx = val(qx, &v);
        if vx >= Valuation::Finite(0) {
            continue;
        }
        let vx = vx.expect_finite();
        let vy = val(qy, &v);
        if vx % 2 != 0 || vy != Valuation::Finite(3 * vx / 2) {
            return Err(Error::Inconsistent(format!("v(X) = {vx}, v(Y) = {vy} at {v}")));
        }
        total += (v.degree() as u64) * (-vx / 2) as u64;
    }
    Ok(total)
}

/// `<P, P> = 2 chi + 2 (P.O) - sum of local contributions`.
pub fn height_pairing(e: &WeierstrassModel, p: &SectionPoint) -> Result<BigRational> {
    height_pairing_on(e, p, &all_singular_fibers(e)?)
}

pub fn height_pairing_on(e: &WeierstrassModel, p: &SectionPoint, fibers: &[KodairaFiber]) -> Result<BigRational> {
    if p.is_zero() {
        return Err(Error::ZeroSection);
    }
    let po = intersection_with_o(e, p)?;
    let mut h = rat(2 * e.chi as i64 + 2 * po as i64, 1);
    let mut sum = BigRational::zero();
    for (place, ft, k) in gamma_vector_on(e, p, fibers)?.entries {
        sum += ft.contribution(k)? * rat(place.degree() as i64, 1);
    }
    h -= sum;
    Ok(h)
}
