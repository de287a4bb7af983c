use ramsplit::algebra::FieldDescriptor;
use ramsplit::elliptic::{all_singular_fibers, gamma_vector, SectionPoint, WeierstrassModel};
use ramsplit::io::{parse_bivariate, parse_rational_function};
use ramsplit::models::to_split;
use ramsplit::quartic::{euler_budget, theorem_check, BitangentProfile, PlaneQuartic};
use ramsplit::quotient_tables::predicted_line_class;

fn surface(f: &str, radicands: &[i64]) -> WeierstrassModel {
    let f = parse_bivariate(f, "t", "x").unwrap();
    WeierstrassModel::from_cubic(&f, 1).unwrap().with_field(&FieldDescriptor::new(radicands).unwrap())
}

fn point(x: &str, y: &str) -> SectionPoint {
    SectionPoint::new(parse_rational_function(x, "t").unwrap(), parse_rational_function(y, "t").unwrap())
}

#[test]
fn split_quartics_profiles_and_cross_validation() {
    let cases: Vec<(&str, &[i64], (&str, &str), (usize, usize, usize))> = vec![
        ("x*(x^2 - 2*(t^2+1)*x - t^3 - 3*t^2 - 2*t)", &[], ("0", "0"), (0, 4, 0)),
        ("x*(x^2 - 2*x - t^3 - 3*t^2 - 2*t)", &[], ("0", "0"), (0, 3, 1)),
        ("x*(x^2 - 2*t*x - t^3 - 3*t^2 - 2*t)", &[], ("0", "0"), (0, 2, 2)),
        ("x*(x^2 - t^3 - 3*t^2 - 2*t)", &[], ("0", "0"), (0, 0, 4)),
        ("(x-t^2)*(x^2 - 10*t*x + 25*x - 36)", &[], ("t^2", "0"), (1, 4, 0)),
        ("(x^2 - t^3 - 2*t^2)*(x-1)", &[], ("1", "0"), (1, 3, 1)),
        ("(x^2 - t^3 - t^2)*(x - 3/2*t - 3/2)", &[], ("3/2*t+3/2", "0"), (1, 2, 2)),
        ("(x-t^2)*(x-3*t+2)*(x+3*t+2)", &[2], ("3*t-2", "0"), (2, 4, 0)),
        ("(x-t^2)*(x-3*t+2)*(x+3*t+2)", &[2], ("t+2", "2*sqrt(2)*(t-2)*(t+1)"), (3, 3, 0)),
    ];
    let mut equalities = 0;
    for (f, rad, (x, y), (alpha, k, l)) in cases {
        let e = surface(f, rad);
        let p = point(x, y);
        let (sq, _) = to_split(&e, &p).unwrap();
        let q = PlaneQuartic::from_split(&sq).unwrap();
        let prof = q.bitangent_profile().unwrap();
        assert_eq!(prof, BitangentProfile { alpha, k, l }, "{f} via {p}");
        assert!(theorem_check(&prof).unwrap().pass);
        let e = e.with_field(q.field());
        let fibers = all_singular_fibers(&e).unwrap();
        assert!(euler_budget(&fibers).pass);
        let g = gamma_vector(&e, &p).unwrap();
        for (v, ft, idx) in &g.entries {
            let nodes = q.nodes_on_line(v).unwrap();
            let predicted = predicted_line_class(*ft, *idx, nodes > 0).unwrap();
            assert_eq!(predicted, q.classify_line(v).unwrap(), "{f}: {ft} at {v}");
            equalities += 1;
        }
    }
    assert!(equalities >= 30, "{equalities}");
}
