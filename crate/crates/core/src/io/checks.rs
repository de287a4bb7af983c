//! Runs every expectation of a surface file through the library.

use super::report::VerificationReport;
use super::surface::{NamedPoint, PointExpectations, QuarticExpectations, SurfaceFile, SurfaceModel};
use crate::algebra::FieldElement;
use crate::elliptic::{
    all_singular_fibers, gamma_vector, height_pairing, intersection_with_o, SectionPoint, WeierstrassModel,
};
use crate::error::Result;
use crate::function_field::Place;
use crate::models::{to_ramified, to_ramified_with_record, to_split, verify_substitution};
use crate::quartic::{theorem_check, PlaneQuartic};
use crate::quotient_tables::predicted_line_class;
use num_rational::BigRational;
use num_traits::Zero;

/// `t=-2`, `t=inf`, or `t^2 + t - 1=0`.
pub fn place_label(v: &Place) -> String {
    match v {
        Place::Infinity => "t=inf".to_string(),
        Place::Finite(p) if p.degree() == Some(1) => format!("t={}", -p.coeff(0)),
        Place::Finite(p) => format!("{p}=0"),
    }
}

fn node_label(v: &Place, x: &FieldElement) -> String {
    match v {
        Place::Infinity => format!("(inf, {x})"),
        Place::Finite(p) if p.degree() == Some(1) => format!("({}, {x})", -p.coeff(0)),
        Place::Finite(p) => format!("({p}=0, {x})"),
    }
}

fn shown<T: ToString>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

pub fn run_checks(sf: &SurfaceFile) -> VerificationReport {
    let mut rep = VerificationReport::new(&sf.name);
    match &sf.model {
        SurfaceModel::Ramified(e) => {
            surface_checks(&mut rep, sf, e);
            for p in &sf.points {
                point_checks(&mut rep, sf, e, p);
            }
        }
        SurfaceModel::Split(q) => {
            let (e, rec) = to_ramified_with_record(q);
            surface_checks(&mut rep, sf, &e);
            let np = NamedPoint {
                name: "P".to_string(),
                point: rec.point.clone(),
                expected: PointExpectations { split: q.quartic(), quartic: sf.quartic.clone(), ..Default::default() },
            };
            point_checks(&mut rep, sf, &e, &np);
        }
    }
    rep
}

fn surface_checks(rep: &mut VerificationReport, sf: &SurfaceFile, e: &WeierstrassModel) {
    let fibers = match all_singular_fibers(e) {
        Ok(f) => f,
        Err(err) => {
            rep.push("fibers", "all", "classification", format!("error: {err}"), false);
            return;
        }
    };
    for (v, ft) in &sf.fibers {
        let got = fibers.iter().find(|f| &f.place == v).map(|f| f.fiber_type.to_string()).unwrap_or_else(|| "smooth".into());
        rep.compare("fiber", place_label(v), ft.to_string(), got);
    }
    let total: usize = fibers.iter().map(|f| f.place.degree() * f.euler_number() as usize).sum();
    rep.compare("euler", "sum", (12 * sf.chi as usize).to_string(), total.to_string());
}

fn point_checks(rep: &mut VerificationReport, sf: &SurfaceFile, e: &WeierstrassModel, np: &NamedPoint) {
    let (name, p, x) = (&np.name, &np.point, &np.expected);
    rep.push("on-curve", name.as_str(), "true", e.contains(p).to_string(), e.contains(p));

    if let Some(expected) = &x.gamma {
        let g = gamma_vector(e, p).and_then(|g| match &sf.places {
            Some(order) => g.reordered(order),
            None => Ok(g),
        });
        match g {
            Ok(g) if g.entries.len() == expected.len() => {
                for ((v, _, idx), want) in g.entries.iter().zip(expected) {
                    rep.compare("gamma", format!("{name} {}", place_label(v)), want.to_string(), idx.to_string());
                }
            }
            Ok(g) => rep.push("gamma", name.as_str(), format!("{expected:?}"), format!("{:?}", g.indices()), false),
            Err(err) => rep.push("gamma", name.as_str(), format!("{expected:?}"), format!("error: {err}"), false),
        }
    }

    if let Some(h) = &x.height {
        rep.compare("height", name.as_str(), h.to_string(), shown(&height_pairing(e, p)));
    }
    if let Some(t) = x.torsion {
        rep.compare("torsion", name.as_str(), t.to_string(), e.is_two_torsion(p).to_string());
    }
    height_bound(rep, e, name, p);

    let (sq, rec) = match to_split(e, p) {
        Ok(v) => v,
        Err(err) => {
            rep.push("split", name.as_str(), "split model", format!("error: {err}"), false);
            return;
        }
    };
    if let Some(f) = &x.split {
        let got = sq.quartic();
        let pass = got.as_ref() == Some(f);
        let shown = got.map(|g| g.to_string()).unwrap_or_else(|| sq.to_string());
        rep.push("split", name.as_str(), f.to_string(), shown, pass);
    }
    let ok = verify_substitution(e, p, &sq, &rec);
    rep.push("substitution", name.as_str(), "divisible", if ok { "divisible" } else { "not divisible" }, ok);
    let back = to_ramified(&sq);
    rep.compare("roundtrip-j", name.as_str(), shown(&e.j_invariant()), shown(&back.j_invariant()));

    let q = match PlaneQuartic::from_split(&sq) {
        Ok(q) => q,
        Err(err) => {
            rep.push("quartic", name.as_str(), "plane quartic", format!("error: {err}"), false);
            return;
        }
    };
    quartic_checks(rep, name, &q, &x.quartic);
    cross_checks(rep, e, name, p, &q);
}

/// With `(P.O) = 0` the height is `2 chi - sum of contributions`, which
/// cannot be negative.
fn height_bound(rep: &mut VerificationReport, e: &WeierstrassModel, name: &str, p: &SectionPoint) {
    if p.is_zero() || !matches!(intersection_with_o(e, p), Ok(0)) {
        return;
    }
    let contr = gamma_vector(e, p).and_then(|g| {
        g.entries.iter().try_fold(BigRational::zero(), |acc, (v, ft, idx)| {
            Ok(acc + ft.contribution(*idx)? * BigRational::from_integer((v.degree() as i64).into()))
        })
    });
    match contr {
        Ok(c) => {
            let slack = BigRational::from_integer((2 * e.chi as i64).into()) - c;
            let pass = slack >= BigRational::zero();
            rep.push("height-bound", name, ">= 0", slack.to_string(), pass);
        }
        Err(err) => rep.push("height-bound", name, ">= 0", format!("error: {err}"), false),
    }
}

fn quartic_checks(rep: &mut VerificationReport, name: &str, q: &PlaneQuartic, x: &QuarticExpectations) {
    let pts = q.singular_points();
    if let Some(n) = x.node_count {
        let got = pts.clone().map(|p| p.iter().filter(|s| s.is_node()).map(|s| s.count()).sum::<usize>());
        rep.compare("node-count", name, n.to_string(), shown(&got));
    }
    if let Some(nodes) = &x.nodes {
        let mut want: Vec<String> = nodes.iter().map(|(v, x)| node_label(v, x)).collect();
        want.sort();
        let got = pts.clone().map(|p| {
            let mut v: Vec<String> = p
                .iter()
                .filter(|s| s.is_node())
                .map(|s| match s.x_value().and_then(|x| x.as_constant()) {
                    Some(x) if s.place.degree() == 1 => node_label(&s.place, &x),
                    _ => s.to_string(),
                })
                .collect();
            v.sort();
            v.join(", ")
        });
        rep.compare("nodes", name, want.join(", "), shown(&got));
    }
    for (v, class) in &x.lines {
        rep.compare("line", format!("{name} {}", place_label(v)), class.to_string(), shown(&q.classify_line(v)));
    }
    let prof = q.bitangent_profile();
    if let Some(want) = &x.profile {
        rep.compare("profile", name, want.to_string(), shown(&prof));
    }
    match prof.and_then(|p| theorem_check(&p).map(|v| (p, v))) {
        Ok((p, v)) => rep.push("theorem", name, "allowed", format!("{p}: {}", v.reason), v.pass),
        Err(err) => rep.push("theorem", name, "allowed", format!("error: {err}"), false),
    }
}

/// Fiber side against quartic side, one record per reducible fiber.
fn cross_checks(rep: &mut VerificationReport, e: &WeierstrassModel, name: &str, p: &SectionPoint, q: &PlaneQuartic) {
    let e = e.clone().with_field(q.field());
    let g = match gamma_vector(&e, p) {
        Ok(g) => g,
        Err(err) => {
            rep.push("cross", name, "line classes", format!("error: {err}"), false);
            return;
        }
    };
    for (v, ft, idx) in &g.entries {
        let subject = format!("{name} {} {ft}", place_label(v));
        let predicted = q.nodes_on_line(v).and_then(|n| predicted_line_class(*ft, *idx, n > 0));
        let actual = q.classify_line(v);
        let pass = matches!((&predicted, &actual), (Ok(a), Ok(b)) if a == b);
        rep.push("cross", subject, shown(&predicted), shown(&actual), pass);
    }
}
