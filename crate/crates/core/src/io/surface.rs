//! Line-oriented surface files.
//!
//! ```text
//! # comment
//! name = ex1
//! field = 2, 5
//! cubic = x*(x^2 - 2*(t^2+1)*x - t^3 - 3*t^2 - 2*t)
//! places = -2, -1, 0, inf
//!
//! [point P]
//! x = 0
//! y = 0
//!
//! [expected]
//! fibers = I2@-2, I2@-1, I2@0, I2@inf
//!
//! [expected P]
//! gamma = 1, 1, 1, 1
//! split = (x'^2 + t^2 + 1)^2 + t*(t+1)*(t+2)
//! ```
//!
//! The full key list is in `docs/surface-format.md`.

use super::parse::{parse_bivariate, parse_constant, parse_rational_function};
use crate::algebra::{BivariatePolynomial, FieldDescriptor, FieldElement};
use crate::elliptic::{FiberType, SectionPoint, WeierstrassModel};
use crate::error::{Error, Result};
use crate::function_field::{Place, RationalFunction, T};
use crate::models::SplitQuarticModel;
use crate::quartic::BitangentProfile;
use crate::quotient_tables::LineClass;
use num_rational::BigRational;
use num_traits::Zero;
use std::path::Path;

#[derive(Clone, Debug)]
pub enum SurfaceModel {
    Ramified(WeierstrassModel),
    Split(SplitQuarticModel),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct QuarticExpectations {
    pub node_count: Option<usize>,
    /// `(t, x)` with `t = oo` meaning the line at infinity, where `x` is
    /// the `x / t` coordinate.
    pub nodes: Option<Vec<(Place, FieldElement)>>,
    pub lines: Vec<(Place, LineClass)>,
    pub profile: Option<BitangentProfile>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointExpectations {
    pub gamma: Option<Vec<usize>>,
    pub split: Option<BivariatePolynomial>,
    pub height: Option<BigRational>,
    pub torsion: Option<bool>,
    pub quartic: QuarticExpectations,
}

#[derive(Clone, Debug)]
pub struct NamedPoint {
    pub name: String,
    pub point: SectionPoint,
    pub expected: PointExpectations,
}

#[derive(Clone, Debug)]
pub struct SurfaceFile {
    pub path: String,
    pub name: String,
    pub field: FieldDescriptor,
    pub chi: u32,
    pub model: SurfaceModel,
    /// Explicit fiber order for gamma vectors.
    pub places: Option<Vec<Place>>,
    pub points: Vec<NamedPoint>,
    pub fibers: Vec<(Place, FiberType)>,
    /// Quartic expectations for split files.
    pub quartic: QuarticExpectations,
}

impl SurfaceFile {
    pub fn point(&self, name: &str) -> Result<&NamedPoint> {
        self.points
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::Inconsistent(format!("{}: no point named {name}", self.path)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Section {
    Top,
    Point(String),
    Expected,
    ExpectedPoint(String),
}

struct Entry {
    section: Section,
    key: String,
    value: String,
    line: usize,
}

struct Ctx<'a> {
    path: &'a str,
}

impl Ctx<'_> {
    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::File { path: self.path.to_string(), line, message: message.into() }
    }

    fn wrap<T>(&self, line: usize, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { offset, message } => self.err(line, format!("offset {offset}: {message}")),
            other => self.err(line, other.to_string()),
        })
    }
}

fn split_top(s: &str) -> Vec<String> {
    let mut out = vec![];
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// `inf`, a constant root, or a monic irreducible polynomial in `t`.
pub fn parse_place(s: &str) -> Result<Place> {
    let s = s.trim();
    if s == "inf" || s == "oo" {
        return Ok(Place::Infinity);
    }
    if let Ok(c) = parse_constant(s) {
        return Ok(Place::at(c));
    }
    let r = parse_rational_function(s, "t")?;
    let p = r.as_polynomial().filter(|p| !p.is_constant()).ok_or_else(|| Error::Parse {
        offset: 0,
        message: format!("place polynomial expected, got {s}"),
    })?;
    Ok(Place::Finite(p.monic().with_var(T)))
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse { offset: 0, message: format!("expected a nonnegative integer, got '{}'", s.trim()) })
}

fn parse_rational(s: &str) -> Result<BigRational> {
    parse_constant(s)?
        .to_rational()
        .ok_or_else(|| Error::Parse { offset: 0, message: format!("expected a rational number, got '{s}'") })
}

fn parse_tagged<V>(s: &str, f: impl Fn(&str) -> Result<V>) -> Result<Vec<(Place, V)>> {
    split_top(s)
        .iter()
        .map(|item| {
            let (v, p) = item
                .split_once('@')
                .ok_or_else(|| Error::Parse { offset: 0, message: format!("expected value@place, got '{item}'") })?;
            Ok((parse_place(p)?, f(v.trim())?))
        })
        .collect()
}

fn parse_nodes(s: &str) -> Result<Vec<(Place, FieldElement)>> {
    split_top(s)
        .iter()
        .map(|item| {
            let inner = item
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Parse { offset: 0, message: format!("expected (t, x), got '{item}'") })?;
            let parts = split_top(inner);
            if parts.len() != 2 {
                return Err(Error::Parse { offset: 0, message: format!("expected (t, x), got '{item}'") });
            }
            Ok((parse_place(&parts[0])?, parse_constant(&parts[1])?))
        })
        .collect()
}

fn parse_profile(s: &str) -> Result<BitangentProfile> {
    let mut vals = [None; 3];
    for item in split_top(s) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse { offset: 0, message: format!("expected key=value, got '{item}'") })?;
        let slot = match k.trim() {
            "alpha" => 0,
            "k" => 1,
            "l" => 2,
            other => return Err(Error::Parse { offset: 0, message: format!("unknown profile key '{other}'") }),
        };
        vals[slot] = Some(parse_usize(v)?);
    }
    match vals {
        [Some(alpha), Some(k), Some(l)] => Ok(BitangentProfile { alpha, k, l }),
        _ => Err(Error::Parse { offset: 0, message: "profile needs alpha, k and l".into() }),
    }
}

fn parse_bool(s: &str) -> Result<bool> {
    match s.trim() {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        other => Err(Error::Parse { offset: 0, message: format!("expected true or false, got '{other}'") }),
    }
}

fn lex_entries(src: &str, cx: &Ctx) -> Result<Vec<Entry>> {
    let mut section = Section::Top;
    let mut out: Vec<Entry> = vec![];
    let mut headers: Vec<Section> = vec![];
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(h) = text.strip_prefix('[') {
            let h = h.strip_suffix(']').ok_or_else(|| cx.err(line, "unterminated section header"))?;
            let words: Vec<&str> = h.split_whitespace().collect();
            section = match words.as_slice() {
                ["expected"] => Section::Expected,
                ["expected", n] => Section::ExpectedPoint(n.to_string()),
                ["point", n] => Section::Point(n.to_string()),
                _ => return Err(cx.err(line, format!("unknown section [{h}]"))),
            };
            if headers.contains(&section) {
                return Err(cx.err(line, format!("duplicate section [{h}]")));
            }
            headers.push(section.clone());
            continue;
        }
        let (k, v) = text.split_once('=').ok_or_else(|| cx.err(line, "expected key = value"))?;
        let key = k.trim().to_string();
        if out.iter().any(|e| e.section == section && e.key == key) {
            return Err(cx.err(line, format!("duplicate key '{key}'")));
        }
        out.push(Entry { section: section.clone(), key, value: v.trim().to_string(), line });
    }
    Ok(out)
}

fn quartic_key(q: &mut QuarticExpectations, e: &Entry, cx: &Ctx) -> Result<bool> {
    match e.key.as_str() {
        "node_count" => q.node_count = Some(cx.wrap(e.line, parse_usize(&e.value))?),
        "nodes" => q.nodes = Some(cx.wrap(e.line, parse_nodes(&e.value))?),
        "lines" => q.lines = cx.wrap(e.line, parse_tagged(&e.value, |s| s.parse::<LineClass>()))?,
        "profile" => q.profile = Some(cx.wrap(e.line, parse_profile(&e.value))?),
        _ => return Ok(false),
    }
    Ok(true)
}

/// Parses the contents of a surface file; `path` is used in error messages.
pub fn parse_surface(src: &str, path: &str) -> Result<SurfaceFile> {
    let cx = Ctx { path };
    let entries = lex_entries(src, &cx)?;
    let get = |sec: &Section, key: &str| entries.iter().find(|e| &e.section == sec && e.key == key);

    let mut field = FieldDescriptor::rationals();
    if let Some(e) = get(&Section::Top, "field") {
        let mut rads = vec![];
        for r in split_top(&e.value).iter().filter(|r| !r.is_empty()) {
            rads.push(r.parse::<i64>().map_err(|_| cx.err(e.line, format!("bad radicand '{r}'")))?);
        }
        field = cx.wrap(e.line, FieldDescriptor::new(&rads))?;
    }
    let chi = match get(&Section::Top, "chi") {
        Some(e) => cx.wrap(e.line, parse_usize(&e.value))? as u32,
        None => 1,
    };
    let name = get(&Section::Top, "name")
        .map(|e| e.value.clone())
        .unwrap_or_else(|| Path::new(path).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());

    let rf = |e: &Entry| cx.wrap(e.line, parse_rational_function(&e.value, "t"));
    let model = match (get(&Section::Top, "cubic"), get(&Section::Top, "split.a")) {
        (Some(e), None) => {
            let f = cx.wrap(e.line, parse_bivariate(&e.value, "t", "x"))?;
            let m = cx.wrap(e.line, WeierstrassModel::from_cubic(&f, chi))?.with_field(&field);
            if m.discriminant().is_zero() {
                return Err(cx.err(e.line, Error::DegenerateModel.to_string()));
            }
            SurfaceModel::Ramified(m)
        }
        (None, Some(ea)) => {
            let coeff = |k: &str| -> Result<RationalFunction> {
                match get(&Section::Top, k) {
                    Some(e) => rf(e),
                    None => Err(cx.err(ea.line, format!("split model needs {k}"))),
                }
            };
            let q = SplitQuarticModel::new(coeff("split.a")?, coeff("split.b")?, coeff("split.c")?).with_field(&field);
            if !q.is_smooth() {
                return Err(cx.err(ea.line, "split quartic is not squarefree"));
            }
            SurfaceModel::Split(q)
        }
        (Some(_), Some(e)) => return Err(cx.err(e.line, "give either cubic or split.a/b/c, not both")),
        (None, None) => return Err(cx.err(1, "missing model: cubic or split.a/b/c")),
    };
    let field = match &model {
        SurfaceModel::Ramified(m) => m.field().clone(),
        SurfaceModel::Split(q) => q.field().clone(),
    };

    let places = match get(&Section::Top, "places") {
        Some(e) => Some(cx.wrap(e.line, split_top(&e.value).iter().map(|s| parse_place(s)).collect::<Result<Vec<_>>>())?),
        None => None,
    };

    let mut points: Vec<NamedPoint> = vec![];
    let mut fibers = vec![];
    let mut quartic = QuarticExpectations::default();
    for e in &entries {
        match &e.section {
            Section::Top => {
                if !["name", "field", "chi", "cubic", "split.a", "split.b", "split.c", "places"].contains(&e.key.as_str()) {
                    return Err(cx.err(e.line, format!("unknown key '{}'", e.key)));
                }
            }
            Section::Point(n) => {
                if e.key != "x" && e.key != "y" {
                    return Err(cx.err(e.line, format!("unknown point key '{}'", e.key)));
                }
                if points.iter().any(|p| &p.name == n) {
                    continue;
                }
                let (x, y) = match (get(&e.section, "x"), get(&e.section, "y")) {
                    (Some(x), Some(y)) => (rf(x)?, rf(y)?),
                    _ => return Err(cx.err(e.line, format!("point {n} needs x and y"))),
                };
                let point = SectionPoint::new(x, y);
                if let SurfaceModel::Ramified(m) = &model {
                    if !m.contains(&point) {
                        return Err(cx.err(e.line, format!("point {n} is not on the curve")));
                    }
                }
                points.push(NamedPoint { name: n.clone(), point, expected: PointExpectations::default() });
            }
            Section::Expected => {
                if e.key == "fibers" {
                    fibers = cx.wrap(e.line, parse_tagged(&e.value, |s| s.parse::<FiberType>()))?;
                } else if matches!(model, SurfaceModel::Ramified(_)) || !quartic_key(&mut quartic, e, &cx)? {
                    return Err(cx.err(e.line, format!("unknown expected key '{}'", e.key)));
                }
            }
            Section::ExpectedPoint(_) => {}
        }
    }
    for e in entries.iter().filter(|e| matches!(e.section, Section::ExpectedPoint(_))) {
        let Section::ExpectedPoint(n) = &e.section else { unreachable!() };
        let p = points
            .iter_mut()
            .find(|p| &p.name == n)
            .ok_or_else(|| cx.err(e.line, format!("expectations for unknown point {n}")))?;
        let x = &mut p.expected;
        match e.key.as_str() {
            "gamma" => {
                x.gamma = Some(cx.wrap(e.line, split_top(&e.value).iter().map(|s| parse_usize(s)).collect::<Result<Vec<_>>>())?)
            }
            "split" => x.split = Some(cx.wrap(e.line, parse_bivariate(&e.value, "t", "x'"))?),
            "height" => x.height = Some(cx.wrap(e.line, parse_rational(&e.value))?),
            "torsion" => x.torsion = Some(cx.wrap(e.line, parse_bool(&e.value))?),
            _ => {
                if !quartic_key(&mut x.quartic, e, &cx)? {
                    return Err(cx.err(e.line, format!("unknown expected key '{}'", e.key)));
                }
            }
        }
    }
    if matches!(model, SurfaceModel::Split(_)) && !points.is_empty() {
        return Err(cx.err(1, "split files take no points; the distinguished section is implied"));
    }
    Ok(SurfaceFile { path: path.to_string(), name, field, chi, model, places, points, fibers, quartic })
}

pub fn load_surface(path: impl AsRef<Path>) -> Result<SurfaceFile> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{shown}: {e}")))?;
    parse_surface(&src, &shown)
}
