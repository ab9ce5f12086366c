//! The worked example on `xy + xz − 2yz = 0`, printed step by step.

use std::fmt::Write as _;

use crate::engine::lemma_mono_check;
use crate::engine::ReflectionFrame;
use crate::field::{Field, GaussianRational};
use crate::projective::{cross_ratio, join, Line};
use crate::run::run_scenario_text;
use crate::scenario::ScenarioFile;

type G = GaussianRational;

/// The fixture the demo walks through.
pub const WORKED_EXAMPLE_SCENARIO: &str = include_str!("../fixtures/lemma1.scn");

/// `ax + by + cz = 0` with zero terms dropped.
pub fn equation<F: Field>(l: &Line<F>) -> String {
    let mut out = String::new();
    for (c, var) in l.coords().iter().zip(["x", "y", "z"]) {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, text),
        };
        let mag = if mag == "1" {
            String::new()
        } else if mag.contains(['+', '-', '/']) {
            format!("({mag})")
        } else {
            mag
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&mag);
        out.push_str(var);
    }
    out.push_str(" = 0");
    out
}

/// Runs the worked example and returns its transcript.
pub fn worked_example() -> crate::Result<String> {
    let file = ScenarioFile::<G>::parse(WORKED_EXAMPLE_SCENARIO)
        .map_err(|e| crate::GeometryError::Precondition(e.to_string()))?;
    let r = file
        .resolve()
        .map_err(|e| crate::GeometryError::Precondition(e.to_string()))?;
    let [u, v, y, y_prime, m] = ["u", "v", "y", "y'", "m"].map(|n| r.points[n].clone());
    let conic = &r.conic;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "conic         xy + xz - 2yz = 0, primitive form entries {:?}",
        conic.entries().map(|e| e.to_string())
    );
    let _ = writeln!(out, "det           {}", conic.det());
    let _ = writeln!(
        out,
        "tangent at u = {u}   {}",
        equation(&conic.tangent_at(&u)?)
    );
    let _ = writeln!(
        out,
        "tangent at v = {v}   {}",
        equation(&conic.tangent_at(&v)?)
    );
    let frame = ReflectionFrame::from_chord(conic, u, v)?;
    let p = frame.pole().clone();
    let _ = writeln!(out, "axis k = uv   {}", equation(frame.axis()));
    let _ = writeln!(out, "pole p of k   {p}");
    let _ = writeln!(out, "y = {y}, y' = {y_prime}, m = {m}");
    let _ = writeln!(out, "l = yy'       {}", equation(&join(&y, &y_prime)?));
    let cr = cross_ratio(&p, &y, &m, &y_prime)?;
    let _ = writeln!(out, "cr(p,y,m,y')  {cr}");
    let report = lemma_mono_check(&frame, &y, &y_prime, &m)?;
    let _ = writeln!(out, "verdict       {}", report.verdict);
    let _ = writeln!(out);
    let _ = writeln!(out, "scenario file:");
    out.push_str(WORKED_EXAMPLE_SCENARIO);
    let _ = writeln!(out);
    let _ = writeln!(out, "report:");
    out.push_str(&run_scenario_text(WORKED_EXAMPLE_SCENARIO).report());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcript_reproduces_the_example() {
        let t = worked_example().unwrap();
        assert!(t.contains("x - 2z = 0"), "{t}");
        assert!(t.contains("x - 2y = 0"), "{t}");
        assert!(t.contains("pole p of k   (1 : 1/2 : 1/2)"), "{t}");
        assert!(t.contains("cr(p,y,m,y')  -1"), "{t}");
        assert!(t.contains("verdict       HOLDS"), "{t}");
    }

    #[test]
    fn equations() {
        assert_eq!(equation(&Line::<G>::ints(1, 0, -2)), "x - 2z = 0");
        assert_eq!(equation(&Line::<G>::ints(-1, 3, 0)), "-x + 3y = 0");
    }
}
