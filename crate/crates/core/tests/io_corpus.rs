use ramsplit::error::Error;
use ramsplit::io::{load_surface, parse_bivariate, parse_surface, run_checks};
use std::path::PathBuf;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(corpus().join(name)).unwrap()
}

#[test]
fn every_corpus_file_verifies() {
    let mut files: Vec<_> = std::fs::read_dir(corpus()).unwrap().map(|d| d.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 9);
    for f in files {
        let sf = load_surface(&f).unwrap();
        let rep = run_checks(&sf);
        let failures: Vec<_> = rep.failures().collect();
        assert!(failures.is_empty(), "{}: {failures:?}", f.display());
        assert!(rep.passed() >= 20, "{}: {}", f.display(), rep.passed());
    }
}

#[test]
fn seeded_gamma_error_fails_one_check_at_infinity() {
    let src = read("ex1.surface").replace("gamma = 1, 1, 1, 1", "gamma = 1, 1, 1, 0");
    let rep = run_checks(&parse_surface(&src, "ex1-seeded.surface").unwrap());
    let failures: Vec<_> = rep.failures().collect();
    assert_eq!(failures.len(), 1, "{failures:?}");
    assert_eq!(failures[0].check, "gamma");
    assert_eq!(failures[0].subject, "P t=inf");
    assert_eq!((failures[0].expected.as_str(), failures[0].computed.as_str()), ("0", "1"));
    assert!(rep.render_human().contains("FAIL ex1 gamma [P t=inf]"));
}

#[test]
fn seeded_split_error_is_reported() {
    let src = read("ex2.surface").replace("split = (x'^2 + 1)^2", "split = (x'^2 + 2)^2");
    let rep = run_checks(&parse_surface(&src, "ex2.surface").unwrap());
    let failed: Vec<_> = rep.failures().map(|r| r.check.as_str()).collect();
    assert_eq!(failed, ["split"]);
}

#[test]
fn parse_errors_carry_path_and_line() {
    let src = read("ex3.surface").replace("x = 0\n", "x = 0 +\n");
    let line = src.lines().position(|l| l == "x = 0 +").unwrap() + 1;
    match parse_surface(&src, "broken.surface") {
        Err(Error::File { path, line: got, .. }) => {
            assert_eq!(path, "broken.surface");
            assert_eq!(got, line);
        }
        other => panic!("{other:?}"),
    }
    let err = parse_surface("name = a\ncubic = x^3 - t\ncolour = red\n", "k.surface").unwrap_err();
    assert!(err.to_string().starts_with("k.surface:3:"), "{err}");
    let err = load_surface(corpus().join("missing.surface")).unwrap_err();
    assert!(err.to_string().contains("missing.surface"), "{err}");
}

#[test]
fn machine_report_is_deterministic_and_matches_human() {
    let sf = load_surface(corpus().join("llq.surface")).unwrap();
    let (a, b) = (run_checks(&sf), run_checks(&sf));
    let machine = a.render_machine();
    assert_eq!(machine, b.render_machine());
    let lines: Vec<serde_json::Value> = machine.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (records, summary) = lines.split_at(lines.len() - 1);
    assert_eq!(records.len(), a.records.len());
    assert_eq!(summary[0]["total"], a.records.len());
    assert_eq!(summary[0]["failed"], 0);
    let human = a.render_human();
    let human: Vec<&str> = human.lines().collect();
    for (rec, line) in records.iter().zip(&human) {
        let tag = if rec["pass"].as_bool().unwrap() { "PASS" } else { "FAIL" };
        let want = format!("{tag} llq {} [{}]", rec["check"].as_str().unwrap(), rec["subject"].as_str().unwrap());
        assert!(line.starts_with(&want), "{line} vs {want}");
    }
}

#[test]
fn printed_polynomials_reparse() {
    for name in ["ex1", "ex5", "ex6", "ex7", "llq"] {
        let sf = load_surface(corpus().join(format!("{name}.surface"))).unwrap();
        for p in &sf.points {
            if let Some(f) = &p.expected.split {
                assert_eq!(&parse_bivariate(&f.to_string(), "t", "x").unwrap(), f, "{name} {}", p.name);
            }
        }
    }
}
