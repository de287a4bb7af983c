//! Local minimal models and Kodaira classification from valuation triples.

use super::{FiberType, Invariants, SectionPoint, WeierstrassModel};
use crate::algebra::{FieldElement, Polynomial};
use crate::error::{Error, Result};
use crate::function_field::{places_of, Place, RationalFunction, Residue, Valuation, T};
use num_traits::Zero;

/// A model minimal at `place`, obtained from the global one by
/// `x = u^2 X + r`, `y = u^3 Y` with `u = pi^scale`.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub place: Place,
    pub model: WeierstrassModel,
    pub shift: RationalFunction,
    pub scale: i64,
}

impl LocalModel {
    pub fn u(&self) -> RationalFunction {
        self.place.uniformizer().pow_i(self.scale)
    }

    pub fn transform_point(&self, p: &SectionPoint) -> SectionPoint {
        match p {
            SectionPoint::Zero => SectionPoint::Zero,
            SectionPoint::Affine { x, y } => {
                let u = self.u();
                let u2 = u.clone() * u.clone();
                let u3 = u2.clone() * u;
                SectionPoint::new((x.clone() - self.shift.clone()) / u2, y.clone() / u3)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct KodairaFiber {
    pub place: Place,
    pub fiber_type: FiberType,
    pub local: LocalModel,
    /// `(v(c4), v(c6), v(disc))` on the local minimal model.
    pub valuations: (Valuation, Valuation, Valuation),
    /// x-coordinate of the singular point of the reduced cubic.
    pub singular_x: Option<Residue>,
}

impl KodairaFiber {
    pub fn minimal_model(&self) -> &WeierstrassModel {
        &self.local.model
    }

    pub fn euler_number(&self) -> u32 {
        self.fiber_type.euler_number()
    }
}

fn floor_div(v: Valuation, d: i64) -> Option<i64> {
    v.finite().map(|v| v.div_euclid(d))
}

fn integral_at(m: &WeierstrassModel, v: &Place) -> bool {
    [&m.a, &m.b, &m.c].iter().all(|c| c.valuation(v) >= Valuation::Finite(0))
}

/// Minimal model at `v` together with the coordinate change producing it.
pub fn local_model(e: &WeierstrassModel, v: &Place) -> Result<LocalModel> {
    let inv = e.invariants()?;
    let k = [
        floor_div(inv.c4.valuation(v), 4),
        floor_div(inv.c6.valuation(v), 6),
        floor_div(inv.disc.valuation(v), 12),
    ]
    .into_iter()
    .flatten()
    .min()
    .expect("discriminant is nonzero");
    let u = v.uniformizer().pow_i(k);
    let zero = RationalFunction::zero();
    let plain = e.transform(&zero, &u);
    if integral_at(&plain, v) {
        return Ok(LocalModel { place: v.clone(), model: plain, shift: zero, scale: k });
    }
    let r = -(e.a.clone() / RationalFunction::from_int(3));
    let short = e.transform(&r, &u);
    debug_assert!(integral_at(&short, v));
    Ok(LocalModel { place: v.clone(), model: short, shift: r, scale: k })
}

pub fn minimalize_at(e: &WeierstrassModel, v: &Place) -> Result<WeierstrassModel> {
    Ok(local_model(e, v)?.model)
}

fn type_from_triple(c4: Valuation, disc: i64) -> Result<FiberType> {
    if disc == 0 {
        return Ok(FiberType::I(0));
    }
    if c4 == Valuation::Finite(0) {
        return Ok(FiberType::I(disc as u32));
    }
    if c4 == Valuation::Finite(2) && disc > 6 {
        return Ok(FiberType::IStar(disc as u32 - 6));
    }
    Ok(match disc {
        2 => FiberType::II,
        3 => FiberType::III,
        4 => FiberType::IV,
        6 => FiberType::IStar(0),
        8 => FiberType::IVStar,
        9 => FiberType::IIIStar,
        10 => FiberType::IIStar,
        _ => return Err(Error::Unclassifiable(format!("v(c4) = {c4}, v(disc) = {disc}"))),
    })
}

/// Double or triple root of the reduced cubic `x^3 + A x^2 + B x + C`.
fn singular_x(m: &WeierstrassModel, v: &Place) -> Result<Residue> {
    let a = m.a.reduce_at(v)?;
    let b = m.b.reduce_at(v)?;
    let c = m.c.reduce_at(v)?;
    let three = Residue::constant(FieldElement::from_int(3));
    let d = a.clone() * a.clone() - three.clone() * b.clone();
    Ok(if d.is_zero() {
        -(a / three)
    } else {
        let nine = Residue::constant(FieldElement::from_int(9));
        let two = Residue::constant(FieldElement::from_int(2));
        (nine * c - a * b) / (two * d)
    })
}

pub fn kodaira_classify(e: &WeierstrassModel, v: &Place) -> Result<KodairaFiber> {
    let local = local_model(e, v)?;
    let Invariants { c4, c6, disc, .. } = local.model.invariants()?;
    let vals = (c4.valuation(v), c6.valuation(v), disc.valuation(v));
    let vd = vals.2.expect_finite();
    let fiber_type = type_from_triple(vals.0, vd)?;
    let singular = if fiber_type == FiberType::I(0) { None } else { Some(singular_x(&local.model, v)?) };
    Ok(KodairaFiber { place: v.clone(), fiber_type, local, valuations: vals, singular_x: singular })
}

/// Finite places where the model can fail to be smooth or integral, plus
/// infinity, in canonical order.
pub fn bad_place_candidates(e: &WeierstrassModel, extra: &[&Polynomial<FieldElement>]) -> Result<Vec<Place>> {
    let disc = e.discriminant();
    let mut prod = disc.num().clone().with_var(T);
    for c in [&e.a, &e.b, &e.c] {
        prod = prod * c.den().clone().with_var(T);
    }
    for p in extra {
        prod = prod * (*p).clone().with_var(T);
    }
    let base = prod.squarefree_part();
    let mut places: Vec<Place> = places_of(&base, e.field())?.into_iter().map(|(p, _)| p).collect();
    places.push(Place::Infinity);
    Ok(places)
}

/// One fiber per place with positive minimal discriminant valuation.
pub fn all_singular_fibers(e: &WeierstrassModel) -> Result<Vec<KodairaFiber>> {
    e.invariants()?;
    let mut out = Vec::new();
    for v in bad_place_candidates(e, &[])? {
        let f = kodaira_classify(e, &v)?;
        if f.fiber_type != FiberType::I(0) {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn tp(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::new(T, c.iter().map(|&v| FieldElement::from_int(v)).collect()))
    }

    fn model(a: &[i64], b: &[i64], c: &[i64]) -> WeierstrassModel {
        WeierstrassModel::new(tp(a), tp(b), tp(c), 1)
    }

    #[test]
    fn invariants_examples() {
        let e = model(&[], &[], &[0, 1]);
        let inv = e.invariants().unwrap();
        assert_eq!((inv.c4.clone(), inv.c6.clone(), inv.disc.clone()), (tp(&[]), tp(&[0, -864]), tp(&[0, 0, -432])));
        assert!(inv.j.is_zero());
        let e = model(&[], &[-1], &[]);
        let inv = e.invariants().unwrap();
        assert_eq!((inv.c4, inv.c6, inv.disc, inv.j), (tp(&[48]), tp(&[]), tp(&[64]), tp(&[1728])));
        assert_eq!(model(&[], &[], &[]).invariants().unwrap_err(), Error::DegenerateModel);
    }

    #[test]
    fn minimal_models() {
        let t = Place::Finite(Polynomial::var_poly(T));
        let e = model(&[], &[], &[0, 0, 0, 0, 0, 0, 1]);
        let m = minimalize_at(&e, &t).unwrap();
        assert_eq!(m.c, tp(&[1]));
        assert_eq!(kodaira_classify(&e, &t).unwrap().fiber_type, FiberType::I(0));
        let again = minimalize_at(&m, &t).unwrap();
        assert_eq!(again, m);
        let e = model(&[], &[], &[0, 1]);
        assert_eq!(kodaira_classify(&e, &t).unwrap().fiber_type, FiberType::II);
    }

    #[test]
    fn short_form_needed() {
        // a has a pole at t = 0 that only the shift removes
        let a = RationalFunction::new(
            Polynomial::new(T, vec![FieldElement::from_int(3)]),
            Polynomial::new(T, vec![FieldElement::zero(), FieldElement::one()]),
        )
        .unwrap();
        let r = -(a.clone() / RationalFunction::from_int(3));
        let base = model(&[], &[1], &[0, 1]);
        // substitute x -> x - r into the base curve to get a non-integral model
        let e = base.transform(&(-r), &RationalFunction::one());
        assert_eq!(e.a, a);
        let t = Place::Finite(Polynomial::var_poly(T));
        let f = kodaira_classify(&e, &t).unwrap();
        assert_eq!(f.fiber_type, kodaira_classify(&base, &t).unwrap().fiber_type);
    }
}
