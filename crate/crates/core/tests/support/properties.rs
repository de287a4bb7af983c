//! Randomized property suites, run by the acceptance harness.

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};
use ramsplit::algebra::{factor_over, FieldDescriptor, FieldElement, Polynomial};
use ramsplit::elliptic::{FiberType, SectionPoint, WeierstrassModel};
use ramsplit::function_field::{places_of, Place, RationalFunction, Valuation, T};
use ramsplit::io::{parse_bivariate, parse_rational_function};
use ramsplit::models::{to_ramified, to_ramified_with_record, to_split, verify_substitution, SplitQuarticModel};
use ramsplit::quotient_tables::{branch_singularity, sigma_action, sigma_rows};
use std::sync::OnceLock;

pub const CASES: u32 = 256;

pub type Suite = (&'static str, fn() -> Result<u32, String>);

pub fn suites() -> Vec<Suite> {
    vec![
        ("field_axioms", field_axioms),
        ("factor_and_squarefree_reexpand", factor_and_squarefree_reexpand),
        ("valuation_additivity_and_degree_formula", valuation_additivity_and_degree_formula),
        ("group_law_axioms", group_law_axioms),
        ("sigma_rows_are_involutive_automorphisms", sigma_rows_are_involutive_automorphisms),
        ("i_b_branch_index_sum", i_b_branch_index_sum),
        ("contribution_closed_form_matches_matrix", contribution_closed_form_matches_matrix),
        ("contribution_oracle_covers_every_simple_component", contribution_oracle_covers_every_simple_component),
        ("split_round_trip_preserves_j", split_round_trip_preserves_j),
        ("substitution_divides_on_random_two_torsion", substitution_divides_on_random_two_torsion),
        ("substitution_divides_on_corpus_pairs", substitution_divides_on_corpus_pairs),
    ]
}

fn run<S: Strategy>(s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<u32, String> {
    let config = ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() };
    let mut runner = TestRunner::new(config);
    runner.run(&s, test).map(|_| CASES).map_err(|e| e.to_string())
}

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn poly(c: &[i64]) -> Polynomial<FieldElement> {
    Polynomial::new(T, c.iter().map(|&v| fe(v)).collect())
}

fn rf_of(c: &[i64]) -> RationalFunction {
    RationalFunction::from_poly(poly(c))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..=max_deg + 1)
}

/// `a + b sqrt(2) + c sqrt(5) + d sqrt(10)` with small rational coordinates.
fn element() -> impl Strategy<Value = FieldElement> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 4).prop_map(|c| {
        let r2 = FieldElement::sqrt_of_int(2).unwrap();
        let r5 = FieldElement::sqrt_of_int(5).unwrap();
        let basis = [fe(1), r2.clone(), r5.clone(), r2 * r5];
        c.iter()
            .zip(basis)
            .fold(fe(0), |acc, (&(n, d), b)| acc + FieldElement::from_ratio(n, d) * b)
    })
}

fn field_axioms() -> Result<u32, String> {
    run((element(), element(), element()), |(a, b, c)| {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() - a.clone(), fe(0));
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * (fe(1) / a.clone()), fe(1));
        }
        Ok(())
    })
}

fn factor_and_squarefree_reexpand() -> Result<u32, String> {
    run((small_poly(3), small_poly(2), 1u32..=3), |(f, g, e)| {
        let (f, g) = (poly(&f), poly(&g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let mut p = f.clone() * g.clone();
        for _ in 1..e {
            p = p * g.clone();
        }
        let fac = factor_over(&p, &FieldDescriptor::rationals()).unwrap();
        let back = fac.factors.iter().fold(Polynomial::constant(T, fac.unit.clone()), |acc, (q, k)| {
            (0..*k).fold(acc, |a, _| a * q.clone())
        });
        prop_assert_eq!(&back, &p);
        if !p.is_constant() {
            let sq = p.squarefree_decomposition().unwrap();
            let lead = p.leading().unwrap().clone();
            let back = sq.iter().fold(Polynomial::constant(T, lead), |acc, (q, k)| (0..*k).fold(acc, |a, _| a * q.clone()));
            prop_assert_eq!(&back, &p);
            for (q, _) in &sq {
                prop_assert!(q.is_squarefree());
            }
        }
        Ok(())
    })
}

fn valuation_additivity_and_degree_formula() -> Result<u32, String> {
    run((small_poly(3), small_poly(3), small_poly(2), -3i64..=3), |(a, b, c, root)| {
        let (a, b, c) = (poly(&a), poly(&b), poly(&c));
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let f = RationalFunction::new(a.clone(), c.clone()).unwrap();
        let g = RationalFunction::from_poly(b.clone());
        for v in [Place::at(fe(root)), Place::Infinity] {
            let (vf, vg) = (f.valuation(&v).expect_finite(), g.valuation(&v).expect_finite());
            prop_assert_eq!((f.clone() * g.clone()).valuation(&v), Valuation::Finite(vf + vg));
        }
        let h = f * g;
        let desc = FieldDescriptor::rationals();
        let mut total = h.valuation(&Place::Infinity).expect_finite();
        let mut seen = vec![];
        for p in [h.num(), h.den()] {
            for (v, _) in places_of(p, &desc).unwrap() {
                if !seen.contains(&v) {
                    total += v.degree() as i64 * h.valuation(&v).expect_finite();
                    seen.push(v);
                }
            }
        }
        prop_assert_eq!(total, 0);
        Ok(())
    })
}

fn sigma_rows_are_involutive_automorphisms() -> Result<u32, String> {
    let rows = sigma_rows(16);
    run(0usize..1000, |i| {
        let (ft, met) = &rows[i % rows.len()];
        let perm = sigma_action(*ft, met).unwrap();
        prop_assert!(perm.is_bijection());
        prop_assert!(perm.is_involution());
        prop_assert!(perm.is_graph_automorphism());
        prop_assert_eq!(perm.image("0"), Some(met.as_str()));
        if let FiberType::I(b) = ft {
            let fixed = perm.fixed().len();
            let l: u32 = met.parse().unwrap();
            let want = if b % 2 == 1 { 1 } else if (b - l) % 2 == 0 { 2 } else { 0 };
            prop_assert_eq!(fixed, want);
        }
        Ok(())
    })
}

fn i_b_branch_index_sum() -> Result<u32, String> {
    run((2u32..40, 0u32..40), |(b, l)| {
        let l = l % b;
        let rec = branch_singularity(FiberType::I(b), &l.to_string()).unwrap();
        prop_assert_eq!(rec.a_index_sum(), b as i32 - 2);
        Ok(())
    })
}

fn contribution_closed_form_matches_matrix() -> Result<u32, String> {
    run((0usize..11, 0usize..9), |(t, k)| {
        let ft = match t {
            0..=8 => FiberType::I(t as u32 + 1),
            9 => FiberType::III,
            _ => FiberType::IV,
        };
        let k = k % ft.simple_count();
        prop_assert_eq!(ft.closed_form_contribution(k).unwrap(), ft.contribution(k).unwrap());
        Ok(())
    })
}

/// Exhaustive companion of the sampled contribution check.
fn contribution_oracle_covers_every_simple_component() -> Result<u32, String> {
    let mut n = 0;
    for ft in (1..=9).map(FiberType::I).chain([FiberType::III, FiberType::IV]) {
        for k in 0..ft.simple_count() {
            let (closed, matrix) = (ft.closed_form_contribution(k), ft.contribution(k));
            if closed.is_err() || closed.as_ref().ok() != matrix.as_ref().ok() {
                return Err(format!("{ft} component {k}: {closed:?} vs {matrix:?}"));
            }
            n += 1;
        }
    }
    if FiberType::I(2).contribution(1).ok() != Some(BigRational::new(1.into(), 2.into())) {
        return Err("I2 contribution at component 1 is not 1/2".into());
    }
    Ok(n)
}

fn split_round_trip_preserves_j() -> Result<u32, String> {
    run((small_poly(2), small_poly(2), small_poly(4)), |(a, b, c)| {
        let q = SplitQuarticModel::new(rf_of(&a), rf_of(&b), rf_of(&c));
        prop_assume!(q.is_smooth());
        let (e, rec) = to_ramified_with_record(&q);
        prop_assume!(e.invariants().is_ok());
        let (q2, rec2) = to_split(&e, &rec.point).unwrap();
        prop_assert_eq!(&q2.a, &q.a);
        prop_assert_eq!(&q2.b, &q.b);
        prop_assert_eq!(&q2.c, &q.c);
        prop_assert_eq!(e.j_invariant().unwrap(), to_ramified(&q2).j_invariant().unwrap());
        prop_assert!(verify_substitution(&e, &rec.point, &q2, &rec2));
        Ok(())
    })
}

fn substitution_divides_on_random_two_torsion() -> Result<u32, String> {
    run((small_poly(2), small_poly(4), small_poly(2)), |(a, b, shift)| {
        // x (x^2 + a x + b) moved by x -> x - shift, with P the image of (0, 0).
        let (a, b, s) = (rf_of(&a), rf_of(&b), rf_of(&shift));
        let e0 = WeierstrassModel::new(a, b, RationalFunction::zero(), 1);
        prop_assume!(e0.invariants().is_ok());
        let e = e0.transform(&-s.clone(), &RationalFunction::one());
        let p = SectionPoint::new(s, RationalFunction::zero());
        prop_assert!(e.contains(&p));
        let (q, rec) = to_split(&e, &p).unwrap();
        prop_assert!(verify_substitution(&e, &p, &q, &rec));
        let mut bad = q.clone();
        bad.c = bad.c + RationalFunction::one();
        prop_assert!(!verify_substitution(&e, &p, &bad, &rec));
        Ok(())
    })
}

fn surface(f: &str) -> WeierstrassModel {
    WeierstrassModel::from_cubic(&parse_bivariate(f, "t", "x").unwrap(), 1).unwrap()
}

fn pt(x: &str, y: &str) -> SectionPoint {
    SectionPoint::new(parse_rational_function(x, "t").unwrap(), parse_rational_function(y, "t").unwrap())
}

/// Points `n P1 + T` on the three-section surface, with `T` two-torsion.
fn llq_points() -> &'static (WeierstrassModel, Vec<SectionPoint>) {
    static PTS: OnceLock<(WeierstrassModel, Vec<SectionPoint>)> = OnceLock::new();
    PTS.get_or_init(|| {
        let e = surface("(x-t^2)*(x-3*t+2)*(x+3*t+2)");
        let p1 = pt("t+2", "2*sqrt(2)*(t-2)*(t+1)");
        let torsion = [SectionPoint::Zero, pt("t^2", "0"), pt("3*t-2", "0"), pt("-3*t-2", "0")];
        let mut out = vec![];
        for n in -1..=1 {
            let m = e.mul(&p1, n);
            for t in &torsion {
                out.push(e.add(&m, t));
            }
        }
        (e, out)
    })
}

fn group_law_axioms() -> Result<u32, String> {
    let (e, pts) = llq_points();
    let n = pts.len();
    run((0..n, 0..n, 0..n), |(i, j, k)| {
        let (p, q, r) = (&pts[i], &pts[j], &pts[k]);
        prop_assert!(e.contains(p));
        prop_assert_eq!(e.add(p, q), e.add(q, p));
        prop_assert_eq!(e.add(&e.add(p, q), r), e.add(p, &e.add(q, r)));
        prop_assert_eq!(e.add(p, &e.neg(p)), SectionPoint::Zero);
        prop_assert_eq!(e.add(p, &SectionPoint::Zero), p.clone());
        prop_assert!(e.contains(&e.add(p, q)));
        Ok(())
    })
}

fn substitution_divides_on_corpus_pairs() -> Result<u32, String> {
    let pairs: [(&str, (&str, &str)); 9] = [
        ("x*(x^2 - 2*(t^2+1)*x - t^3 - 3*t^2 - 2*t)", ("0", "0")),
        ("x*(x^2 - 2*x - t^3 - 3*t^2 - 2*t)", ("0", "0")),
        ("x*(x^2 - 2*t*x - t^3 - 3*t^2 - 2*t)", ("0", "0")),
        ("x*(x^2 - t^3 - 3*t^2 - 2*t)", ("0", "0")),
        ("(x-t^2)*(x^2 - 10*t*x + 25*x - 36)", ("t^2", "0")),
        ("(x^2 - t^3 - 2*t^2)*(x-1)", ("1", "0")),
        ("(x^2 - t^3 - t^2)*(x - 3/2*t - 3/2)", ("3/2*t+3/2", "0")),
        ("(x-t^2)*(x-3*t+2)*(x+3*t+2)", ("3*t-2", "0")),
        ("(x-t^2)*(x-3*t+2)*(x+3*t+2)", ("t+2", "2*sqrt(2)*(t-2)*(t+1)")),
    ];
    run((0usize..9, any::<bool>()), |(i, negate)| {
        let (f, (x, y)) = pairs[i];
        let e = surface(f);
        let mut p = pt(x, y);
        if negate {
            p = e.neg(&p);
        }
        let (q, rec) = to_split(&e, &p).unwrap();
        prop_assert!(verify_substitution(&e, &p, &q, &rec));
        Ok(())
    })
}
