//! Checkers for the reflection lemmas and for Pascal's theorem.
//!
//! Each checker validates its hypotheses (returning an error when the input
//! is not an instance of the statement at all), classifies configurations
//! where the statement degenerates, and otherwise evaluates every claimed
//! identity exactly.

use super::frame::ReflectionFrame;
use super::report::{
    coincidence_residual, collinearity_residual, harmonic_residual, incidence_residual,
    CheckReport, Claim,
};
use crate::conic::Conic;
use crate::error::{GeometryError, Result};
use crate::field::Field;
use crate::projective::{cross_ratio, join, meet, Line, Point};

fn require_on_line<F: Field>(l: &Line<F>, p: &Point<F>, what: &str) -> Result<()> {
    if l.contains(p) {
        Ok(())
    } else {
        Err(GeometryError::Precondition(format!(
            "{what}: {p} is not on {l} (residual {})",
            l.eval(p)
        )))
    }
}

/// Among `pts`, the first coincident pair, by name.
fn first_coincidence<'a, F: Field>(pts: &[(&'a str, &Point<F>)]) -> Option<(&'a str, &'a str)> {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].1 == pts[j].1 {
                return Some((pts[i].0, pts[j].0));
            }
        }
    }
    None
}

/// On a line `l` through the pole meeting the conic in `y`, `y'`: the
/// cross ratio `(p, y; m, y')` is harmonic iff `m` is where `l` crosses the
/// axis. Both directions are evaluated for the given `m`.
pub fn lemma_mono_check<F: Field>(
    frame: &ReflectionFrame<F>,
    y: &Point<F>,
    y_prime: &Point<F>,
    m: &Point<F>,
) -> Result<CheckReport<F>> {
    let conic = frame.conic();
    conic.require_on(y)?;
    conic.require_on(y_prime)?;
    if y == y_prime {
        return Err(GeometryError::Precondition(
            "y and y' coincide: the line through the pole is tangent".into(),
        ));
    }
    let l = join(y, y_prime)?;
    let p = frame.pole();
    require_on_line(&l, p, "the line yy' must pass through the pole")?;
    require_on_line(&l, m, "m must lie on the line yy'")?;

    let mut report = CheckReport::new(Claim::Mono);
    report
        .witness("p", p.clone())
        .witness("k", frame.axis().clone())
        .witness("l", l.clone())
        .witness("y", y.clone())
        .witness("y'", y_prime.clone())
        .witness("m", m.clone());
    let n = meet(&l, frame.axis())?;
    report.witness("n", n.clone());

    if let Some((a, b)) = first_coincidence(&[("p", p), ("y", y), ("m", m), ("y'", y_prime)]) {
        return Ok(report.degenerate(format!("{a} and {b} coincide")));
    }
    let cr = cross_ratio(p, y, m, y_prime)?;
    report.witness("cr(p,y,m,y')", cr.clone());
    let harmonic = cr.is_harmonic();
    let on_axis = *m == n;
    report.witness(
        "branch",
        super::report::Witness::Text(if on_axis { "direct" } else { "converse" }.into()),
    );
    // Exactly one of the two residuals must vanish for "iff" to fail.
    let residual = if harmonic == on_axis {
        F::zero()
    } else if harmonic {
        coincidence_residual(m, &n)
    } else {
        harmonic_residual(&cr)
    };
    report.assert_zero("cr(p,y,m,y') = -1 <=> m = l.k", residual);
    Ok(report.finish())
}

/// With `y' = reflect(y)`, `u` on the axis and `l2` another line through the
/// pole: `t = l2 ∩ yu` and `t' = l2 ∩ y'u` are reflections of each other.
pub fn lemma_jap_check<F: Field>(
    frame: &ReflectionFrame<F>,
    y: &Point<F>,
    u: &Point<F>,
    l2: &Line<F>,
) -> Result<CheckReport<F>> {
    let p = frame.pole();
    require_on_line(frame.axis(), u, "u must lie on the axis")?;
    require_on_line(l2, p, "the second line must pass through the pole")?;
    let y_prime = frame.reflect_point(y)?;
    if join(p, y)? == *l2 {
        return Err(GeometryError::Precondition(
            "the second line must differ from the line py".into(),
        ));
    }

    let mut report = CheckReport::new(Claim::Jap);
    report
        .witness("p", p.clone())
        .witness("k", frame.axis().clone())
        .witness("y", y.clone())
        .witness("y'", y_prime.clone())
        .witness("u", u.clone())
        .witness("l2", l2.clone());

    let (yu, y_prime_u) = match (join(y, u), join(&y_prime, u)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(report.degenerate("u coincides with y or y'")),
    };
    let (t, t_prime) = match (meet(l2, &yu), meet(l2, &y_prime_u)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(report.degenerate("the second line coincides with yu or y'u")),
    };
    report
        .witness("t", t.clone())
        .witness("t'", t_prime.clone());
    if t == *p || t_prime == *p {
        return Ok(report.degenerate("t is the pole"));
    }
    let image = frame.reflect_point(&t)?;
    report.witness("reflect(t)", image.clone());
    report.assert_zero("reflect(t) = t'", coincidence_residual(&image, &t_prime));
    Ok(report.finish())
}

/// A line `yz` and its reflection `y'z'` meet on the axis.
pub fn lemma_nut_check<F: Field>(
    frame: &ReflectionFrame<F>,
    y: &Point<F>,
    z: &Point<F>,
) -> Result<CheckReport<F>> {
    let l = join(y, z)?;
    let y_prime = frame.reflect_point(y)?;
    let z_prime = frame.reflect_point(z)?;
    let l_prime = join(&y_prime, &z_prime)?;

    let mut report = CheckReport::new(Claim::Nut);
    report
        .witness("p", frame.pole().clone())
        .witness("k", frame.axis().clone())
        .witness("y", y.clone())
        .witness("z", z.clone())
        .witness("y'", y_prime)
        .witness("z'", z_prime)
        .witness("yz", l.clone())
        .witness("y'z'", l_prime.clone());
    if l == l_prime {
        return Ok(report.degenerate("yz is its own reflection"));
    }
    let x = meet(&l, &l_prime)?;
    report.witness("yz.y'z'", x.clone());
    report.assert_zero("yz.y'z' on k", incidence_residual(frame.axis(), &x));
    Ok(report.finish())
}

/// For a chord `rs` through a point `m` of the axis `uv`:
/// `x = r'v ∩ su` lies on `pm`. The report also carries the Pascal point
/// `z = rv ∩ s'u`, and checks `z, m, x` collinear, `z = reflect(x)`, and
/// that the reflected chord `r's'` passes through `m`.
pub fn lemma_sack_check<F: Field>(
    frame: &ReflectionFrame<F>,
    m: &Point<F>,
    r: &Point<F>,
    s: &Point<F>,
) -> Result<CheckReport<F>> {
    let (u, v) = frame.endpoints().ok_or_else(|| {
        GeometryError::Precondition("the axis chord endpoints u, v are required".into())
    })?;
    let conic = frame.conic();
    conic.require_on(r)?;
    conic.require_on(s)?;
    require_on_line(frame.axis(), m, "m must lie on the axis")?;
    if r == s {
        return Err(GeometryError::Precondition("r and s coincide".into()));
    }
    let rs = join(r, s)?;
    require_on_line(&rs, m, "m must be where the chord rs crosses the axis")?;

    let p = frame.pole();
    let r_prime = frame.reflect_point(r)?;
    let s_prime = frame.reflect_point(s)?;
    let mut report = CheckReport::new(Claim::Sack);
    report
        .witness("p", p.clone())
        .witness("k", frame.axis().clone())
        .witness("u", u.clone())
        .witness("v", v.clone())
        .witness("m", m.clone())
        .witness("r", r.clone())
        .witness("s", s.clone())
        .witness("r'", r_prime.clone())
        .witness("s'", s_prime.clone());

    let sides = (join(&r_prime, v), join(s, u), join(r, v), join(&s_prime, u));
    let (Ok(rpv), Ok(su), Ok(rv), Ok(spu)) = sides else {
        return Ok(report.degenerate("a chord endpoint coincides with u or v"));
    };
    let (Ok(x), Ok(z)) = (meet(&rpv, &su), meet(&rv, &spu)) else {
        return Ok(report.degenerate("opposite sides of the hexagon coincide"));
    };
    report.witness("x", x.clone()).witness("z", z.clone());
    if x == *p {
        return Ok(report.degenerate("x is the pole"));
    }

    report.assert_zero("x on pm", collinearity_residual(p, m, &x));
    report.assert_zero("z, m, x collinear", collinearity_residual(&z, m, &x));
    let x_image = frame.reflect_point(&x)?;
    report.assert_zero("reflect(x) = z", coincidence_residual(&x_image, &z));
    if r_prime != s_prime {
        let chord = join(&r_prime, &s_prime)?;
        report.assert_zero("r's' through m", incidence_residual(&chord, m));
    }
    Ok(report.finish())
}

/// Pascal's theorem for the hexagon `h[0] … h[5]` inscribed in `conic`: the
/// meets of opposite sides `h0h1·h3h4`, `h1h2·h4h5`, `h2h3·h5h0` are collinear.
pub fn pascal_check<F: Field>(conic: &Conic<F>, hexagon: &[Point<F>; 6]) -> Result<CheckReport<F>> {
    for h in hexagon {
        conic.require_on(h)?;
    }
    let mut report = CheckReport::new(Claim::Pascal);
    for (k, h) in hexagon.iter().enumerate() {
        report.witness(&format!("h{}", k + 1), h.clone());
    }
    let mut sides = Vec::with_capacity(6);
    for k in 0..6 {
        match join(&hexagon[k], &hexagon[(k + 1) % 6]) {
            Ok(l) => sides.push(l),
            Err(_) => {
                return Ok(report.degenerate(format!(
                    "adjacent vertices h{} and h{} coincide",
                    k + 1,
                    (k + 1) % 6 + 1
                )))
            }
        }
    }
    let mut meets = Vec::with_capacity(3);
    for k in 0..3 {
        match meet(&sides[k], &sides[k + 3]) {
            Ok(x) => meets.push(x),
            Err(_) => {
                return Ok(report.degenerate(format!(
                    "opposite sides {} and {} coincide",
                    k + 1,
                    k + 4
                )))
            }
        }
    }
    for (k, x) in meets.iter().enumerate() {
        report.witness(&format!("x{}", k + 1), x.clone());
    }
    report.assert_zero(
        "x1, x2, x3 collinear",
        collinearity_residual(&meets[0], &meets[1], &meets[2]),
    );
    Ok(report.finish())
}
