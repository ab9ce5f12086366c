//! Scenario files: a line-oriented `key = value` text format naming a conic,
//! points, lines and the checks to run on them.
//!
//! ```text
//! # comments start with '#'
//! backend = gauss
//! check = damn, pascal
//! conic.form = [1, 1, -1, 0, 0, 0]
//! point.a = (-3 : 4 : 5)
//! point.s = chord(r, m)
//! point.h1 = param(a, 1/2)
//! line.k = (0 : 5 : -4)
//! ```
//!
//! The conic is given by exactly one of `conic.form` (symmetric entries
//! `[m11, m22, m33, m12, m13, m23]`), `conic.affine` (`[A, B, Q, D, E, F]`
//! for `Ax² + By² + Qxy + Dx + Ey + F = 0`) or `conic.points` (five
//! triples separated by `;`). A point is either a triple, `chord(x, y)`
//! (the second conic point on the line from conic point `x` through `y`),
//! or `param(base, t)` (the conic point with parameter `t` in the
//! parametrization based at `base`). Names referenced by `chord` and
//! `param` must be declared on earlier lines.
//!
//! Each check reads the points it needs by name:
//!
//! | check      | names                                        |
//! |------------|----------------------------------------------|
//! | `mono`     | axis, `y`, `y'`, `m`                         |
//! | `jap`      | axis, `y`, `u`, `line.l2`                    |
//! | `nut`      | axis, `y`, `z`                               |
//! | `sack`     | `u`, `v`, `m`, `r`, `s`                      |
//! | `pascal`   | `h1` … `h6`                                  |
//! | `damn`     | `a`, `b`, `m`, `r`, `s`, `f`, `g`, opt. `u`, `v` |
//! | `cutl`     | `conic.affine`, `a`, `b`, `m`, `r`, `s`, `u`, `v` |
//! | `midpoint` | as `cutl`                                    |
//!
//! The axis is `line.k` when present, otherwise the chord `uv`.
//!
//! `expect.NAME = value` pins a report witness: a point triple, a scalar,
//! or `inf` for a cross ratio. A mismatch is added to the report as a
//! failed assertion.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::conic::{AffineConicSpec, Conic, ConicParametrization};
use crate::engine::{
    coincidence_residual, ButterflyScenario, CheckReport, Claim, Instance, PlanarScenario,
    ReflectionFrame, Verdict, Witness,
};
use crate::field::{Backend, Field, GaussianRational, PrimeField};
use crate::projective::{join, Line, Point};

/// A diagnostic pointing at a 1-based line and column of the document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Clone, Debug)]
pub enum ConicDecl<F> {
    Form(Conic<F>),
    Affine(AffineConicSpec<F>),
    Points(Box<[Point<F>; 5]>),
}

impl<F: Field> ConicDecl<F> {
    pub fn conic(&self) -> crate::Result<Conic<F>> {
        match self {
            ConicDecl::Form(c) => Ok(c.clone()),
            ConicDecl::Affine(spec) => spec.homogenize(),
            ConicDecl::Points(pts) => Conic::through_five(pts),
        }
    }
}

impl<F: Field> PartialEq for ConicDecl<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ConicDecl::Form(a), ConicDecl::Form(b)) => a == b,
            (ConicDecl::Affine(a), ConicDecl::Affine(b)) => a == b,
            (ConicDecl::Points(a), ConicDecl::Points(b)) => a == b,
            _ => false,
        }
    }
}

impl<F: Field> fmt::Display for ConicDecl<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConicDecl::Form(c) => write!(f, "conic.form = {c}"),
            ConicDecl::Affine(s) => write!(f, "conic.affine = {s}"),
            ConicDecl::Points(pts) => {
                let text: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
                write!(f, "conic.points = {}", text.join("; "))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum PointDecl<F> {
    Coords(Point<F>),
    Chord(String, String),
    Param(String, F),
}

impl<F: Field> PartialEq for PointDecl<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (PointDecl::Coords(a), PointDecl::Coords(b)) => a == b,
            (PointDecl::Chord(a, b), PointDecl::Chord(c, d)) => a == c && b == d,
            (PointDecl::Param(a, s), PointDecl::Param(b, t)) => a == b && s == t,
            _ => false,
        }
    }
}

impl<F: Field> fmt::Display for PointDecl<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointDecl::Coords(p) => write!(f, "{p}"),
            PointDecl::Chord(x, y) => write!(f, "chord({x}, {y})"),
            PointDecl::Param(base, t) => write!(f, "param({base}, {t})"),
        }
    }
}

/// Expected value of a named report witness.
#[derive(Clone, Debug)]
pub enum Expectation<F> {
    Point(Point<F>),
    /// A scalar; `None` stands for ∞.
    Value(Option<F>),
}

impl<F: Field> PartialEq for Expectation<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Expectation::Point(a), Expectation::Point(b)) => a == b,
            (Expectation::Value(a), Expectation::Value(b)) => a == b,
            _ => false,
        }
    }
}

impl<F: Field> fmt::Display for Expectation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Point(p) => write!(f, "{p}"),
            Expectation::Value(Some(v)) => write!(f, "{v}"),
            Expectation::Value(None) => f.write_str("inf"),
        }
    }
}

impl<F: Field> Expectation<F> {
    fn parse(text: &str) -> Result<Self, String> {
        if text.starts_with('(') {
            Point::parse(text)
                .map(Expectation::Point)
                .map_err(|e| e.to_string())
        } else if text == "inf" {
            Ok(Expectation::Value(None))
        } else {
            F::parse(text)
                .map(|v| Expectation::Value(Some(v)))
                .map_err(|e| e.to_string())
        }
    }

    /// Zero iff `w` matches; `None` if `w` is not comparable.
    fn residual(&self, w: &Witness<F>) -> Option<F> {
        match (self, w) {
            (Expectation::Point(e), Witness::Point(p)) => Some(coincidence_residual(e, p)),
            (Expectation::Value(e), Witness::CrossRatio(c)) => Some(match (e, c.value()) {
                (Some(e), Some(v)) => v.sub(e),
                (None, None) => F::zero(),
                _ => F::one(),
            }),
            (Expectation::Value(Some(e)), Witness::Scalar(v)) => Some(v.sub(e)),
            _ => None,
        }
    }
}

/// A parsed scenario document over the backend `F`.
#[derive(Clone, Debug)]
pub struct ScenarioFile<F> {
    pub checks: Vec<Claim>,
    pub conic: ConicDecl<F>,
    pub points: Vec<(String, PointDecl<F>)>,
    pub lines: Vec<(String, Line<F>)>,
    pub expectations: Vec<(String, Expectation<F>)>,
    positions: HashMap<String, Pos>,
}

impl<F: Field> PartialEq for ScenarioFile<F> {
    fn eq(&self, other: &Self) -> bool {
        self.checks == other.checks
            && self.conic == other.conic
            && self.points == other.points
            && self.lines == other.lines
            && self.expectations == other.expectations
    }
}

/// A scenario on whichever backend the document declares.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyScenario {
    Gauss(ScenarioFile<GaussianRational>),
    Prime(ScenarioFile<PrimeField>),
}

impl AnyScenario {
    pub fn backend(&self) -> Backend {
        match self {
            AnyScenario::Gauss(_) => Backend::Gauss,
            AnyScenario::Prime(_) => Backend::Prime,
        }
    }
}

impl fmt::Display for AnyScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyScenario::Gauss(s) => s.fmt(f),
            AnyScenario::Prime(s) => s.fmt(f),
        }
    }
}

/// Parses a document, dispatching on its `backend` key (default `gauss`).
pub fn parse_scenario(text: &str) -> Result<AnyScenario, ParseError> {
    let mut backend = Backend::Gauss;
    for entry in entries(text)? {
        if entry.key == "backend" {
            backend = entry
                .value
                .parse()
                .map_err(|e: String| ParseError::at(entry.value_pos, e))?;
        }
    }
    Ok(match backend {
        Backend::Gauss => AnyScenario::Gauss(ScenarioFile::parse(text)?),
        Backend::Prime => AnyScenario::Prime(ScenarioFile::parse(text)?),
    })
}

struct Entry<'a> {
    key: &'a str,
    value: &'a str,
    key_pos: Pos,
    value_pos: Pos,
}

fn entries(text: &str) -> Result<Vec<Entry<'_>>, ParseError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        if content.trim().is_empty() {
            continue;
        }
        let key_pos = Pos {
            line,
            column: indent + 1,
        };
        let Some(eq) = content.find('=') else {
            return Err(ParseError::at(key_pos, "expected `key = value`"));
        };
        let rest = &content[eq + 1..];
        let value_pos = Pos {
            line,
            column: eq + 1 + (rest.len() - rest.trim_start().len()) + 1,
        };
        out.push(Entry {
            key: content[..eq].trim(),
            value: rest.trim(),
            key_pos,
            value_pos,
        });
    }
    Ok(out)
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_list<F: Field>(text: &str) -> Result<Vec<F>, String> {
    let inner = text
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or("expected `[c1, c2, ...]`")?;
    inner
        .split(',')
        .map(|s| F::parse(s).map_err(|e| e.to_string()))
        .collect()
}

fn six<F: Field>(text: &str) -> Result<[F; 6], String> {
    let v = parse_list::<F>(text)?;
    let n = v.len();
    v.try_into()
        .map_err(|_| format!("expected 6 coefficients, got {n}"))
}

/// `name(arg1, arg2)` → `(arg1, arg2)`.
fn call<'a>(text: &'a str, name: &str) -> Option<(&'a str, &'a str)> {
    let args = text
        .strip_prefix(name)?
        .trim_start()
        .strip_prefix('(')?
        .strip_suffix(')')?;
    let (x, y) = args.split_once(',')?;
    Some((x.trim(), y.trim()))
}

impl<F: Field> ScenarioFile<F> {
    /// Parses a document whose backend must be `F`'s.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut checks = None;
        let mut conic: Option<(ConicDecl<F>, Pos)> = None;
        let mut points: Vec<(String, PointDecl<F>)> = Vec::new();
        let mut lines = Vec::new();
        let mut expectations = Vec::new();
        let mut positions = HashMap::new();
        let mut seen = HashMap::new();

        for e in entries(text)? {
            if let Some(first) = seen.insert(e.key.to_string(), e.key_pos) {
                return Err(ParseError::at(
                    e.key_pos,
                    format!("duplicate key `{}` (first on line {})", e.key, first.line),
                ));
            }
            let bad_value = |msg: String| ParseError::at(e.value_pos, msg);
            match e.key {
                "backend" => {
                    let b: Backend = e.value.parse().map_err(bad_value)?;
                    if b != F::BACKEND {
                        return Err(bad_value(format!(
                            "backend {b} does not match {}",
                            F::BACKEND
                        )));
                    }
                }
                "check" => {
                    let list: Result<Vec<Claim>, _> = e
                        .value
                        .split(',')
                        .map(|s| s.trim().parse::<Claim>())
                        .collect();
                    let list = list.map_err(|err| bad_value(err.to_string()))?;
                    if list.is_empty() {
                        return Err(bad_value("empty check list".into()));
                    }
                    checks = Some(list);
                }
                "conic.form" | "conic.affine" | "conic.points" => {
                    if let Some((_, pos)) = &conic {
                        return Err(ParseError::at(
                            e.key_pos,
                            format!("conic already declared on line {}", pos.line),
                        ));
                    }
                    let decl = match e.key {
                        "conic.form" => {
                            let c = six::<F>(e.value).map_err(bad_value)?;
                            ConicDecl::Form(
                                Conic::from_entries(c).map_err(|err| bad_value(err.to_string()))?,
                            )
                        }
                        "conic.affine" => {
                            let c = six::<F>(e.value).map_err(bad_value)?;
                            ConicDecl::Affine(
                                AffineConicSpec::new(c)
                                    .map_err(|err| bad_value(err.to_string()))?,
                            )
                        }
                        _ => {
                            let pts: Result<Vec<Point<F>>, _> =
                                e.value.split(';').map(Point::parse).collect();
                            let pts = pts.map_err(|err| bad_value(err.to_string()))?;
                            let n = pts.len();
                            let pts: [Point<F>; 5] = pts
                                .try_into()
                                .map_err(|_| bad_value(format!("expected 5 points, got {n}")))?;
                            ConicDecl::Points(Box::new(pts))
                        }
                    };
                    decl.conic().map_err(|err| bad_value(err.to_string()))?;
                    conic = Some((decl, e.key_pos));
                }
                key if key.starts_with("expect.") => {
                    let name = &key["expect.".len()..];
                    if name.is_empty() {
                        return Err(ParseError::at(
                            e.key_pos,
                            "missing witness name after `expect.`",
                        ));
                    }
                    let value = Expectation::parse(e.value).map_err(bad_value)?;
                    expectations.push((name.to_string(), value));
                }
                key => {
                    let (kind, name) = key.split_once('.').unwrap_or((key, ""));
                    if !matches!(kind, "point" | "line") || !valid_name(name) {
                        return Err(ParseError::at(e.key_pos, format!("unknown key `{key}`")));
                    }
                    if positions.contains_key(name) {
                        return Err(ParseError::at(
                            e.key_pos,
                            format!("name `{name}` declared twice"),
                        ));
                    }
                    if kind == "line" {
                        let l = Line::parse(e.value).map_err(|err| bad_value(err.to_string()))?;
                        lines.push((name.to_string(), l));
                    } else {
                        let declared = |n: &str| points.iter().any(|(m, _)| m == n);
                        let decl = if let Some((x, y)) = call(e.value, "chord") {
                            for r in [x, y] {
                                if !declared(r) {
                                    return Err(bad_value(format!(
                                        "`{r}` is not a previously declared point"
                                    )));
                                }
                            }
                            PointDecl::Chord(x.to_string(), y.to_string())
                        } else if let Some((base, t)) = call(e.value, "param") {
                            if !declared(base) {
                                return Err(bad_value(format!(
                                    "`{base}` is not a previously declared point"
                                )));
                            }
                            let t = F::parse(t).map_err(|err| bad_value(err.to_string()))?;
                            PointDecl::Param(base.to_string(), t)
                        } else {
                            PointDecl::Coords(
                                Point::parse(e.value).map_err(|err| bad_value(err.to_string()))?,
                            )
                        };
                        points.push((name.to_string(), decl));
                    }
                    positions.insert(name.to_string(), e.value_pos);
                }
            }
        }
        let end = Pos {
            line: text.lines().count().max(1),
            column: 1,
        };
        let checks = checks.ok_or_else(|| ParseError::at(end, "missing `check`"))?;
        let (conic, _) = conic.ok_or_else(|| ParseError::at(end, "missing conic declaration"))?;
        let file = ScenarioFile {
            checks,
            conic,
            points,
            lines,
            expectations,
            positions,
        };
        file.resolve()?;
        Ok(file)
    }

    fn pos(&self, name: &str) -> Pos {
        self.positions.get(name).copied().unwrap_or_default()
    }

    /// The conic and every named point in coordinates.
    pub fn resolve(&self) -> Result<Resolved<F>, ParseError> {
        let conic = self
            .conic
            .conic()
            .map_err(|e| ParseError::at(Pos::default(), e.to_string()))?;
        let mut points: HashMap<String, Point<F>> = HashMap::new();
        for (name, decl) in &self.points {
            let err = |e: crate::GeometryError| {
                ParseError::at(self.pos(name), format!("point `{name}`: {e}"))
            };
            let p = match decl {
                PointDecl::Coords(p) => p.clone(),
                PointDecl::Chord(x, y) => {
                    conic.chord_through(&points[x], &points[y]).map_err(err)?
                }
                PointDecl::Param(base, t) => {
                    let par = ConicParametrization::new(conic.clone(), points[base].clone())
                        .map_err(err)?;
                    par.point_at(t)
                }
            };
            points.insert(name.clone(), p);
        }
        Ok(Resolved {
            conic,
            points,
            lines: self.lines.iter().cloned().collect(),
        })
    }

    /// One instance per declared check, in declaration order.
    pub fn instances(&self) -> Result<Vec<Instance<F>>, ParseError> {
        let r = self.resolve()?;
        self.checks.iter().map(|&c| self.instance(&r, c)).collect()
    }

    fn instance(&self, r: &Resolved<F>, claim: Claim) -> Result<Instance<F>, ParseError> {
        let end = Pos::default();
        let pt = |name: &str| -> Result<Point<F>, ParseError> {
            r.points
                .get(name)
                .cloned()
                .ok_or_else(|| ParseError::at(end, format!("check `{claim}` needs point `{name}`")))
        };
        let on_conic = |names: &[&str]| -> Result<(), ParseError> {
            for name in names {
                let p = pt(name)?;
                let residual = r.conic.residual(&p);
                if !residual.is_zero() {
                    return Err(ParseError::at(
                        self.pos(name),
                        format!("point `{name}` = {p} is not on the conic (residual {residual})"),
                    ));
                }
            }
            Ok(())
        };
        let geo = |e: crate::GeometryError| ParseError::at(end, format!("check `{claim}`: {e}"));
        let chord_frame = || -> Result<ReflectionFrame<F>, ParseError> {
            on_conic(&["u", "v"])?;
            ReflectionFrame::from_chord(&r.conic, pt("u")?, pt("v")?).map_err(geo)
        };
        let frame = || -> Result<ReflectionFrame<F>, ParseError> {
            match r.lines.get("k") {
                Some(k) => ReflectionFrame::new(&r.conic, k.clone()).map_err(geo),
                None => chord_frame(),
            }
        };
        Ok(match claim {
            Claim::Mono => {
                on_conic(&["y", "y'"])?;
                Instance::Mono {
                    frame: frame()?,
                    y: pt("y")?,
                    y_prime: pt("y'")?,
                    m: pt("m")?,
                }
            }
            Claim::Jap => Instance::Jap {
                frame: frame()?,
                y: pt("y")?,
                u: pt("u")?,
                l2: r
                    .lines
                    .get("l2")
                    .cloned()
                    .ok_or_else(|| ParseError::at(end, "check `jap` needs line `l2`"))?,
            },
            Claim::Nut => Instance::Nut {
                frame: frame()?,
                y: pt("y")?,
                z: pt("z")?,
            },
            Claim::Sack => {
                on_conic(&["r", "s"])?;
                let frame = chord_frame()?;
                if let Some(k) = r.lines.get("k") {
                    if k != frame.axis() {
                        return Err(ParseError::at(
                            self.pos("k"),
                            "line `k` is not the chord uv",
                        ));
                    }
                }
                Instance::Sack {
                    frame,
                    m: pt("m")?,
                    r: pt("r")?,
                    s: pt("s")?,
                }
            }
            Claim::Pascal => {
                on_conic(&["h1", "h2", "h3", "h4", "h5", "h6"])?;
                let hexagon = [
                    pt("h1")?,
                    pt("h2")?,
                    pt("h3")?,
                    pt("h4")?,
                    pt("h5")?,
                    pt("h6")?,
                ];
                Instance::Pascal {
                    conic: r.conic.clone(),
                    hexagon,
                }
            }
            Claim::Damn => {
                on_conic(&["a", "b", "r", "s", "f", "g"])?;
                let axis = match (r.points.get("u"), r.points.get("v")) {
                    (Some(u), Some(v)) => {
                        on_conic(&["u", "v"])?;
                        Some((u.clone(), v.clone()))
                    }
                    _ => None,
                };
                Instance::Damn(
                    ButterflyScenario::build(
                        r.conic.clone(),
                        pt("a")?,
                        pt("b")?,
                        pt("m")?,
                        (pt("r")?, pt("s")?),
                        (pt("f")?, pt("g")?),
                        axis,
                    )
                    .map_err(geo)?,
                )
            }
            Claim::Cutl | Claim::Midpoint => {
                let ConicDecl::Affine(spec) = &self.conic else {
                    return Err(ParseError::at(
                        end,
                        format!("check `{claim}` needs `conic.affine`"),
                    ));
                };
                on_conic(&["a", "b", "r", "s", "u", "v"])?;
                let s = PlanarScenario::build(
                    spec.clone(),
                    pt("a")?,
                    pt("b")?,
                    pt("m")?,
                    (pt("r")?, pt("s")?),
                    (pt("u")?, pt("v")?),
                )
                .map_err(geo)?;
                if claim == Claim::Cutl {
                    Instance::Cutl(s)
                } else {
                    Instance::Midpoint(s)
                }
            }
        })
    }

    /// A document that replays `instance` exactly.
    pub fn from_instance(instance: &Instance<F>) -> Self {
        let mut points = Vec::new();
        let mut lines = Vec::new();
        let mut add = |name: &str, p: &Point<F>| {
            points.push((name.to_string(), PointDecl::Coords(p.canonical())))
        };
        let conic = match instance {
            Instance::Cutl(s) | Instance::Midpoint(s) => ConicDecl::Affine(s.spec.clone()),
            other => ConicDecl::Form(other.conic().clone()),
        };
        match instance {
            Instance::Mono {
                frame,
                y,
                y_prime,
                m,
            } => {
                lines.push(("k".to_string(), frame.axis().canonical()));
                add("y", y);
                add("y'", y_prime);
                add("m", m);
            }
            Instance::Jap { frame, y, u, l2 } => {
                lines.push(("k".to_string(), frame.axis().canonical()));
                lines.push(("l2".to_string(), l2.canonical()));
                add("y", y);
                add("u", u);
            }
            Instance::Nut { frame, y, z } => {
                lines.push(("k".to_string(), frame.axis().canonical()));
                add("y", y);
                add("z", z);
            }
            Instance::Sack { frame, m, r, s } => {
                let (u, v) = frame.endpoints().expect("sack frames carry endpoints");
                add("u", u);
                add("v", v);
                add("m", m);
                add("r", r);
                add("s", s);
            }
            Instance::Pascal { hexagon, .. } => {
                for (k, p) in hexagon.iter().enumerate() {
                    add(&format!("h{}", k + 1), p);
                }
            }
            Instance::Damn(s) => {
                for (name, p) in s.named_points() {
                    add(name, p);
                }
            }
            Instance::Cutl(s) | Instance::Midpoint(s) => {
                for (name, p) in s.named_points() {
                    add(name, p);
                }
            }
        }
        let positions = points
            .iter()
            .map(|(n, _)| n.clone())
            .chain(lines.iter().map(|(n, _)| n.clone()))
            .map(|n| (n, Pos::default()))
            .collect();
        ScenarioFile {
            checks: vec![instance.claim()],
            conic,
            points,
            lines,
            expectations: Vec::new(),
            positions,
        }
    }

    /// Adds one assertion per expectation naming a witness of `report`.
    /// Returns the names that matched no witness.
    pub fn apply_expectations(&self, report: CheckReport<F>) -> (CheckReport<F>, Vec<String>) {
        let mut report = report;
        let mut unmatched = Vec::new();
        for (name, expected) in &self.expectations {
            match report.get(name).and_then(|w| expected.residual(w)) {
                Some(residual) => {
                    report.assert_zero(&format!("{name} = {expected}"), residual);
                }
                None => unmatched.push(name.clone()),
            }
        }
        if report.verdict == Verdict::Degenerate {
            (report, unmatched)
        } else {
            (report.finish(), unmatched)
        }
    }
}

impl<F: Field> fmt::Display for ScenarioFile<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "backend = {}", F::BACKEND)?;
        let checks: Vec<&str> = self.checks.iter().map(|c| c.as_str()).collect();
        writeln!(f, "check = {}", checks.join(", "))?;
        writeln!(f, "{}", self.conic)?;
        for (name, decl) in &self.points {
            writeln!(f, "point.{name} = {decl}")?;
        }
        for (name, l) in &self.lines {
            writeln!(f, "line.{name} = {l}")?;
        }
        for (name, e) in &self.expectations {
            writeln!(f, "expect.{name} = {e}")?;
        }
        Ok(())
    }
}

/// Coordinates of everything a scenario names.
#[derive(Clone, Debug)]
pub struct Resolved<F> {
    pub conic: Conic<F>,
    pub points: HashMap<String, Point<F>>,
    pub lines: HashMap<String, Line<F>>,
}

impl<F: Field> Resolved<F> {
    pub fn line_through(&self, x: &str, y: &str) -> Option<Line<F>> {
        join(self.points.get(x)?, self.points.get(y)?).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type G = GaussianRational;

    const CIRCLE: &str = "\
backend = gauss
check = damn
conic.form = [1, 1, -1, 0, 0, 0]
point.a = (-3 : 4 : 5)
point.b = (3 : 4 : 5)
point.m = (0 : 4 : 5)
point.r = (0 : 1 : 1)
point.s = chord(r, m)
point.f = (4 : 3 : 5)
point.g = chord(f, m)
";

    #[test]
    fn parses_and_resolves_chords() {
        let file = ScenarioFile::<G>::parse(CIRCLE).unwrap();
        let r = file.resolve().unwrap();
        assert_eq!(r.points["g"], Point::ints(-36, 77, 85));
        let inst = file.instances().unwrap();
        assert_eq!(inst[0].check().unwrap().verdict, Verdict::Holds);
        let text = file.to_string();
        assert!(text.contains("point.a = (1 : -4/3 : -5/3)\n"));
        assert_eq!(ScenarioFile::<G>::parse(&text).unwrap(), file);
    }

    #[test]
    fn positioned_errors() {
        let err = parse_scenario(
            "check = damn\nconic.form = [1, 1, -1, 0, 0, 0]\npoint.a = (0 : 0 : 0)\n",
        )
        .unwrap_err();
        assert_eq!((err.line, err.column), (3, 11));
        let err = parse_scenario("check = damn\n  colour = red\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.message.contains("unknown key"));
        let err = parse_scenario("check = damn\nconic.form = [1, 1, -1, 0, 0]\n").unwrap_err();
        assert!(err.message.contains("expected 6"), "{err}");
        let err = parse_scenario(
            "check = damn\nconic.form = [1, 1, -1, 0, 0, 0]\npoint.s = chord(r, m)\n",
        )
        .unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_scenario("check = flap\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 9));
    }

    #[test]
    fn point_off_conic_reports_residual() {
        let text = CIRCLE.replace("point.b = (3 : 4 : 5)", "point.b = (3 : 4 : 6)");
        let file = ScenarioFile::<G>::parse(&text).unwrap();
        let err = file.instances().unwrap_err();
        assert_eq!((err.line, err.column), (5, 11));
        assert!(err.message.contains("residual -11"), "{err}");
    }

    #[test]
    fn backend_dispatch() {
        let text = CIRCLE.replace("backend = gauss", "backend = prime");
        let AnyScenario::Prime(file) = parse_scenario(&text).unwrap() else {
            panic!("expected prime backend");
        };
        assert_eq!(
            file.instances().unwrap()[0].check().unwrap().verdict,
            Verdict::Holds
        );
        assert!(ScenarioFile::<G>::parse(&text).is_err());
    }

    #[test]
    fn random_instances_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for claim in Claim::ALL {
            let (inst, report) = Instance::<G>::random(claim, &mut rng, 10, false)
                .unwrap()
                .value;
            let file = ScenarioFile::from_instance(&inst);
            let text = file.to_string();
            let back =
                ScenarioFile::<G>::parse(&text).unwrap_or_else(|e| panic!("{claim}: {e}\n{text}"));
            assert_eq!(back, file);
            assert_eq!(back.to_string(), text);
            let replay = back.instances().unwrap()[0].check().unwrap();
            assert_eq!(replay.to_string(), report.to_string());
        }
    }
}
