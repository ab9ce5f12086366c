use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::field::Field;
use crate::projective::{cross, det3, CrossRatio, Line, Point};

/// The statements the engine knows how to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    /// The harmonic characterisation of the axis.
    Mono,
    /// Reflections are compatible with projection from a point of the axis.
    Jap,
    /// A line and its reflection meet on the axis.
    Nut,
    /// The Pascal step behind the butterfly theorem.
    Sack,
    /// Pascal's hexagon theorem.
    Pascal,
    /// Butterfly theorem in the complex projective plane.
    Damn,
    /// Real planar butterfly theorem for arbitrary conics.
    Cutl,
    /// Midpoint case: `|pm| = |qm|`.
    Midpoint,
}

impl Claim {
    pub const ALL: [Claim; 8] = [
        Claim::Mono,
        Claim::Jap,
        Claim::Nut,
        Claim::Sack,
        Claim::Pascal,
        Claim::Damn,
        Claim::Cutl,
        Claim::Midpoint,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Mono => "mono",
            Claim::Jap => "jap",
            Claim::Nut => "nut",
            Claim::Sack => "sack",
            Claim::Pascal => "pascal",
            Claim::Damn => "damn",
            Claim::Cutl => "cutl",
            Claim::Midpoint => "midpoint",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| format!("unknown check `{}`", s.trim()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Holds,
    Violated,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Violated => "VIOLATED",
            Verdict::Degenerate => "DEGENERATE",
        })
    }
}

#[derive(Debug, Clone)]
pub enum Witness<F> {
    Point(Point<F>),
    Line(Line<F>),
    CrossRatio(CrossRatio<F>),
    Scalar(F),
    Flag(bool),
    Text(String),
}

impl<F: Field> PartialEq for Witness<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Witness::Point(a), Witness::Point(b)) => a == b,
            (Witness::Line(a), Witness::Line(b)) => a == b,
            (Witness::CrossRatio(a), Witness::CrossRatio(b)) => a == b,
            (Witness::Scalar(a), Witness::Scalar(b)) => a == b,
            (Witness::Flag(a), Witness::Flag(b)) => a == b,
            (Witness::Text(a), Witness::Text(b)) => a == b,
            _ => false,
        }
    }
}

impl<F: Field> fmt::Display for Witness<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Point(p) => write!(f, "{p}"),
            Witness::Line(l) => write!(f, "{l}"),
            Witness::CrossRatio(c) => write!(f, "{c}"),
            Witness::Scalar(s) => write!(f, "{s}"),
            Witness::Flag(b) => write!(f, "{b}"),
            Witness::Text(t) => f.write_str(t),
        }
    }
}

impl<F> From<Point<F>> for Witness<F> {
    fn from(p: Point<F>) -> Self {
        Witness::Point(p)
    }
}

impl<F> From<Line<F>> for Witness<F> {
    fn from(l: Line<F>) -> Self {
        Witness::Line(l)
    }
}

impl<F> From<CrossRatio<F>> for Witness<F> {
    fn from(c: CrossRatio<F>) -> Self {
        Witness::CrossRatio(c)
    }
}

/// One intermediate claim, with the exact residual that vanishes iff it holds.
#[derive(Debug, Clone, PartialEq)]
pub struct Assertion<F> {
    pub name: String,
    pub holds: bool,
    pub residual: F,
}

/// Verdict and evidence of one check.
#[derive(Debug, Clone)]
pub struct CheckReport<F> {
    pub claim: Claim,
    pub verdict: Verdict,
    pub note: Option<String>,
    pub witnesses: Vec<(String, Witness<F>)>,
    pub assertions: Vec<Assertion<F>>,
}

impl<F: Field> CheckReport<F> {
    pub(crate) fn new(claim: Claim) -> Self {
        CheckReport {
            claim,
            verdict: Verdict::Holds,
            note: None,
            witnesses: Vec::new(),
            assertions: Vec::new(),
        }
    }

    pub(crate) fn witness(&mut self, name: &str, value: impl Into<Witness<F>>) -> &mut Self {
        self.witnesses.push((name.to_string(), value.into()));
        self
    }

    pub(crate) fn assert_zero(&mut self, name: &str, residual: F) -> bool {
        let holds = residual.is_zero();
        self.assertions.push(Assertion {
            name: name.to_string(),
            holds,
            residual,
        });
        holds
    }

    /// Closes the report: HOLDS iff every assertion vanished.
    pub(crate) fn finish(mut self) -> Self {
        self.verdict = if self.assertions.iter().all(|a| a.holds) {
            Verdict::Holds
        } else {
            Verdict::Violated
        };
        self
    }

    pub(crate) fn degenerate(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Degenerate;
        self.note = Some(reason.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn get(&self, name: &str) -> Option<&Witness<F>> {
        self.witnesses
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, w)| w)
    }

    pub fn cross_ratio(&self, name: &str) -> Option<&CrossRatio<F>> {
        match self.get(name)? {
            Witness::CrossRatio(c) => Some(c),
            _ => None,
        }
    }

    pub fn point(&self, name: &str) -> Option<&Point<F>> {
        match self.get(name)? {
            Witness::Point(p) => Some(p),
            _ => None,
        }
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion<F>> {
        self.assertions.iter().find(|a| a.name == name)
    }

    pub fn to_json(&self) -> Value {
        let witnesses: Map<String, Value> = self
            .witnesses
            .iter()
            .map(|(n, w)| (n.clone(), Value::String(w.to_string())))
            .collect();
        let assertions: Vec<Value> = self
            .assertions
            .iter()
            .map(|a| {
                json!({
                    "name": a.name,
                    "holds": a.holds,
                    "residual": a.residual.to_string(),
                })
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("claim".into(), json!(self.claim));
        obj.insert("backend".into(), json!(F::BACKEND));
        obj.insert("verdict".into(), json!(self.verdict));
        if let Some(note) = &self.note {
            obj.insert("note".into(), json!(note));
        }
        obj.insert("witnesses".into(), Value::Object(witnesses));
        obj.insert("assertions".into(), Value::Array(assertions));
        Value::Object(obj)
    }
}

/// One JSON object on a single line.
impl<F: Field> fmt::Display for CheckReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

// Residuals are reported on canonical representatives so their value does
// not depend on the scale of the homogeneous inputs. Vanishing does not
// depend on scale either, so it is tested on the stored representatives
// first, which avoids the cost of canonicalizing large coordinates.

/// First nonzero entry of `a × b`; zero iff the points coincide.
pub fn coincidence_residual<F: Field>(a: &Point<F>, b: &Point<F>) -> F {
    if a == b {
        return F::zero();
    }
    cross(a.canonical().coords(), b.canonical().coords())
        .into_iter()
        .find(|x| !x.is_zero())
        .unwrap_or_else(F::zero)
}

pub fn incidence_residual<F: Field>(l: &Line<F>, p: &Point<F>) -> F {
    if l.contains(p) {
        return F::zero();
    }
    l.canonical().eval(&p.canonical())
}

pub fn collinearity_residual<F: Field>(a: &Point<F>, b: &Point<F>, c: &Point<F>) -> F {
    if det3(a.coords(), b.coords(), c.coords()).is_zero() {
        return F::zero();
    }
    det3(
        a.canonical().coords(),
        b.canonical().coords(),
        c.canonical().coords(),
    )
}

/// `value + 1` for a finite cross ratio and `1` for ∞.
pub fn harmonic_residual<F: Field>(cr: &CrossRatio<F>) -> F {
    match cr.value() {
        Some(v) => v.add(&F::one()),
        None => F::one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational as G;

    #[test]
    fn claims_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.as_str().parse::<Claim>().unwrap(), c);
        }
        assert!("butterfly".parse::<Claim>().is_err());
    }

    #[test]
    fn finish_and_json() {
        let mut r = CheckReport::<G>::new(Claim::Nut);
        r.witness("x", Point::ints(0, 2, 2));
        r.assert_zero("x on k", G::zero());
        let r = r.finish();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(
            r.to_string(),
            r#"{"claim":"nut","backend":"gauss","verdict":"HOLDS","witnesses":{"x":"(0 : 1 : 1)"},"assertions":[{"name":"x on k","holds":true,"residual":"0"}]}"#
        );

        let mut r = CheckReport::<G>::new(Claim::Nut);
        r.assert_zero("bad", G::ratio(1, 3));
        assert_eq!(r.finish().verdict, Verdict::Violated);
    }

    #[test]
    fn residuals_are_scale_free() {
        let a = Point::<G>::ints(1, 2, 3);
        let b = Point::<G>::ints(-2, -4, -6);
        assert!(coincidence_residual(&a, &b).is_zero());
        let c = Point::<G>::ints(1, 0, 0);
        let big = Point::<G>::ints(7, 0, 0);
        assert_eq!(coincidence_residual(&a, &c), coincidence_residual(&a, &big));
        assert_eq!(harmonic_residual(&CrossRatio::<G>::infinity()), G::one());
        assert!(harmonic_residual(&CrossRatio::<G>::harmonic()).is_zero());
    }
}
