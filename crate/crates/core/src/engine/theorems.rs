//! Butterfly configurations and the two theorem checkers.

use super::frame::ReflectionFrame;
use super::lemmas::pascal_check;
use super::report::{
    coincidence_residual, collinearity_residual, harmonic_residual, incidence_residual,
    CheckReport, Claim, Verdict, Witness,
};
use crate::conic::{AffineConicSpec, Conic};
use crate::error::{GeometryError, Result};
use crate::field::Field;
use crate::projective::{cross_ratio, harmonic_conjugate, join, meet, Line, Point, Projectivity};

/// Points derived from the inputs of a butterfly configuration.
#[derive(Clone, Debug)]
pub struct Derived<F> {
    /// `rg ∩ ab` in the projective naming, `ru ∩ ab` in the planar one.
    pub first: Point<F>,
    /// `fs ∩ ab` or `sv ∩ ab`.
    pub second: Point<F>,
    /// Harmonic conjugate of `m` with respect to `a`, `b`.
    pub conjugate: Point<F>,
}

/// Chord `ab` of a conic, a point `m` on it, and two further chords `rs`,
/// `fg` through `m`. Derived: `i = rg ∩ ab`, `j = fs ∩ ab` and `p`, the
/// harmonic conjugate of `m` with respect to `a`, `b`.
///
/// When `u`, `v` (the points where the polar of `p` meets the conic) are
/// known, the checker also replays the Pascal-based argument step by step.
#[derive(Clone, Debug)]
pub struct ButterflyScenario<F> {
    pub conic: Conic<F>,
    pub a: Point<F>,
    pub b: Point<F>,
    pub m: Point<F>,
    pub r: Point<F>,
    pub s: Point<F>,
    pub f: Point<F>,
    pub g: Point<F>,
    pub axis_points: Option<(Point<F>, Point<F>)>,
    pub derived: Option<Derived<F>>,
    /// Set when the configuration degenerates; `derived` may then be absent.
    pub degeneracy: Option<String>,
}

/// Checks the shared hypotheses and computes the derived points of a
/// butterfly configuration `(a, b, m; r, s; x, y)` where the derived points
/// are `rx ∩ ab` and `ys ∩ ab`.
#[allow(clippy::too_many_arguments)]
fn derive<F: Field>(
    conic: &Conic<F>,
    a: &Point<F>,
    b: &Point<F>,
    m: &Point<F>,
    chord1: (&Point<F>, &Point<F>),
    chord2: (&Point<F>, &Point<F>),
    names: [&str; 4],
) -> Result<std::result::Result<Derived<F>, String>> {
    for q in [a, b, chord1.0, chord1.1, chord2.0, chord2.1] {
        conic.require_on(q)?;
    }
    if a == b {
        return Err(GeometryError::Precondition(
            "a and b must be distinct".into(),
        ));
    }
    let ab = join(a, b)?;
    if !ab.contains(m) {
        return Err(GeometryError::NotOnLine {
            point: m.to_string(),
            line: ab.to_string(),
            residual: ab.eval(m).to_string(),
        });
    }
    if m == a || m == b {
        return Err(GeometryError::Precondition(
            "m must differ from a and b".into(),
        ));
    }
    let (r, s) = chord1;
    let (f, g) = chord2;
    for (x, y, nx, ny) in [(r, s, names[0], names[1]), (f, g, names[2], names[3])] {
        if x == y {
            return Ok(Err(format!("tangent chord: {nx} = {ny}")));
        }
        let chord = join(x, y)?;
        if !chord.contains(m) {
            return Err(GeometryError::Precondition(format!(
                "m is not on the chord {nx}{ny} (residual {})",
                chord.eval(m)
            )));
        }
    }
    let conjugate = harmonic_conjugate(a, b, m)?;
    let (rs, fg) = (join(r, s)?, join(f, g)?);
    if rs == fg {
        return Ok(Err("the two chords coincide".into()));
    }
    if rs == ab || fg == ab {
        return Ok(Err("a chord coincides with ab".into()));
    }
    let cross_line =
        |x: &Point<F>, y: &Point<F>, what: String| -> std::result::Result<Point<F>, String> {
            let l = join(x, y).map_err(|_| format!("{what}: endpoints coincide"))?;
            meet(&l, &ab).map_err(|_| format!("{what} coincides with ab"))
        };
    let first = match cross_line(r, g, format!("{}{}", names[0], names[3])) {
        Ok(p) => p,
        Err(e) => return Ok(Err(e)),
    };
    let second = match cross_line(f, s, format!("{}{}", names[2], names[1])) {
        Ok(p) => p,
        Err(e) => return Ok(Err(e)),
    };
    if first == conjugate || second == conjugate || first == *m || second == *m || first == second {
        return Ok(Err("derived points coincide on ab".into()));
    }
    Ok(Ok(Derived {
        first,
        second,
        conjugate,
    }))
}

impl<F: Field> ButterflyScenario<F> {
    /// Validates membership and incidence, computes `i`, `j`, `p`, and
    /// classifies degenerate configurations.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        conic: Conic<F>,
        a: Point<F>,
        b: Point<F>,
        m: Point<F>,
        (r, s): (Point<F>, Point<F>),
        (f, g): (Point<F>, Point<F>),
        axis_points: Option<(Point<F>, Point<F>)>,
    ) -> Result<Self> {
        let derived = derive(&conic, &a, &b, &m, (&r, &s), (&f, &g), ["r", "s", "f", "g"])?;
        if let Some((u, v)) = &axis_points {
            let polar = conic.polar(&harmonic_conjugate(&a, &b, &m)?);
            for q in [u, v] {
                conic.require_on(q)?;
                if !polar.contains(q) {
                    return Err(GeometryError::Precondition(format!(
                        "{q} is not on the polar of p"
                    )));
                }
            }
            if u == v {
                return Err(GeometryError::Precondition(
                    "u and v must be distinct".into(),
                ));
            }
        }
        let (derived, degeneracy) = match derived {
            Ok(d) => (Some(d), None),
            Err(reason) => (None, Some(reason)),
        };
        Ok(ButterflyScenario {
            conic,
            a,
            b,
            m,
            r,
            s,
            f,
            g,
            axis_points,
            derived,
            degeneracy,
        })
    }

    /// Completes a scenario from one point of each chord: `s` and `g` are
    /// the second intersections of the chords through `m`.
    pub fn from_chord_starts(
        conic: Conic<F>,
        a: Point<F>,
        b: Point<F>,
        m: Point<F>,
        r: Point<F>,
        f: Point<F>,
        axis_points: Option<(Point<F>, Point<F>)>,
    ) -> Result<Self> {
        let s = conic.chord_through(&r, &m)?;
        let g = conic.chord_through(&f, &m)?;
        Self::build(conic, a, b, m, (r, s), (f, g), axis_points)
    }

    pub fn i(&self) -> Option<&Point<F>> {
        self.derived.as_ref().map(|d| &d.first)
    }

    pub fn j(&self) -> Option<&Point<F>> {
        self.derived.as_ref().map(|d| &d.second)
    }

    pub fn p(&self) -> Option<&Point<F>> {
        self.derived.as_ref().map(|d| &d.conjugate)
    }

    /// The whole configuration under a projectivity.
    pub fn transform(&self, t: &Projectivity<F>) -> Result<Self> {
        let map = |p: &Point<F>| t.apply_point(p);
        Self::build(
            self.conic.transform(t),
            map(&self.a),
            map(&self.b),
            map(&self.m),
            (map(&self.r), map(&self.s)),
            (map(&self.f), map(&self.g)),
            self.axis_points.as_ref().map(|(u, v)| (map(u), map(v))),
        )
    }

    pub fn named_points(&self) -> Vec<(&'static str, &Point<F>)> {
        let mut out = vec![
            ("a", &self.a),
            ("b", &self.b),
            ("m", &self.m),
            ("r", &self.r),
            ("s", &self.s),
            ("f", &self.f),
            ("g", &self.g),
        ];
        if let Some((u, v)) = &self.axis_points {
            out.push(("u", u));
            out.push(("v", v));
        }
        out
    }
}

/// `cr(p, j, m, i) = −1`, confirmed independently by `reflect(i) = j` across
/// the polar of `p`; with axis points available, also every intermediate
/// step of the Pascal argument.
pub fn theorem_damn_check<F: Field>(s: &ButterflyScenario<F>) -> Result<CheckReport<F>> {
    let mut report = CheckReport::new(Claim::Damn);
    for (name, p) in s.named_points() {
        report.witness(name, p.clone());
    }
    let Some(d) = &s.derived else {
        let reason = s
            .degeneracy
            .clone()
            .unwrap_or_else(|| "degenerate scenario".into());
        return Ok(report.degenerate(reason));
    };
    let (i, j, p) = (&d.first, &d.second, &d.conjugate);
    report
        .witness("i", i.clone())
        .witness("j", j.clone())
        .witness("p", p.clone());

    let cr = cross_ratio(p, j, &s.m, i)?;
    report.witness("cr(p,j,m,i)", cr.clone());
    report.assert_zero("cr(p,j,m,i) = -1", harmonic_residual(&cr));

    let frame = ReflectionFrame::new(&s.conic, s.conic.polar(p))?;
    report.witness("k", frame.axis().clone());
    report.assert_zero("m on polar(p)", incidence_residual(frame.axis(), &s.m));
    let i_image = frame.reflect_point(i)?;
    report.witness("reflect(i)", i_image.clone());
    report.assert_zero("reflect(i) = j", coincidence_residual(&i_image, j));

    if let Some((u, v)) = &s.axis_points {
        if let Err(reason) = pascal_chain(s, &frame, (u, v), &mut report) {
            return Ok(report.degenerate(format!("proof chain: {reason}")));
        }
    }
    Ok(report.finish())
}

/// The two instances of the quadrilateral check, the Pascal hexagon `r'vfsug'`, and
/// `j ∈ r'g'`.
fn pascal_chain<F: Field>(
    s: &ButterflyScenario<F>,
    frame: &ReflectionFrame<F>,
    (u, v): (&Point<F>, &Point<F>),
    report: &mut CheckReport<F>,
) -> std::result::Result<(), String> {
    let d = s.derived.as_ref().expect("checked by caller");
    let (j, p) = (&d.second, &d.conjugate);
    let reflect = |q: &Point<F>| frame.reflect_point(q).map_err(|e| e.to_string());
    let r_prime = reflect(&s.r)?;
    let g_prime = reflect(&s.g)?;
    let line = |x: &Point<F>, y: &Point<F>| join(x, y).map_err(|e| e.to_string());
    let cross = |k: &Line<F>, l: &Line<F>| meet(k, l).map_err(|e| e.to_string());

    let x1 = cross(&line(&r_prime, v)?, &line(&s.s, u)?)?;
    let x2 = cross(&line(&s.f, v)?, &line(&g_prime, u)?)?;
    report
        .witness("r'", r_prime.clone())
        .witness("g'", g_prime.clone())
        .witness("x1", x1.clone())
        .witness("x2", x2.clone());
    report.assert_zero("r'v.su on pm", collinearity_residual(p, &s.m, &x1));
    report.assert_zero("fv.g'u on pm", collinearity_residual(p, &s.m, &x2));

    let hexagon = [
        r_prime.clone(),
        v.clone(),
        s.f.clone(),
        s.s.clone(),
        u.clone(),
        g_prime.clone(),
    ];
    let pascal = pascal_check(&s.conic, &hexagon).map_err(|e| e.to_string())?;
    match pascal.verdict {
        Verdict::Degenerate => return Err(pascal.note.unwrap_or_default()),
        _ => {
            let residual = pascal.assertions[0].residual.clone();
            report.assert_zero("pascal r'vfsug'", residual);
        }
    }
    let rg_prime = line(&r_prime, &g_prime)?;
    report.assert_zero("j on r'g'", incidence_residual(&rg_prime, j));
    Ok(())
}

/// Real planar butterfly configuration: chord `ab` of a real conic, `m` on
/// it, chords `rs`, `uv` through `m`; `p = ru ∩ ab`, `q = sv ∩ ab`, and `m'`
/// the harmonic conjugate of `m` with respect to `a`, `b` (possibly ideal).
#[derive(Clone, Debug)]
pub struct PlanarScenario<F> {
    pub spec: AffineConicSpec<F>,
    pub conic: Conic<F>,
    pub a: Point<F>,
    pub b: Point<F>,
    pub m: Point<F>,
    pub r: Point<F>,
    pub s: Point<F>,
    pub u: Point<F>,
    pub v: Point<F>,
    pub derived: Option<Derived<F>>,
    pub degeneracy: Option<String>,
}

impl<F: Field> PlanarScenario<F> {
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        spec: AffineConicSpec<F>,
        a: Point<F>,
        b: Point<F>,
        m: Point<F>,
        (r, s): (Point<F>, Point<F>),
        (u, v): (Point<F>, Point<F>),
    ) -> Result<Self> {
        for (name, q) in [
            ("a", &a),
            ("b", &b),
            ("m", &m),
            ("r", &r),
            ("s", &s),
            ("u", &u),
            ("v", &v),
        ] {
            if !q.is_real() {
                return Err(GeometryError::Precondition(format!(
                    "planar scenarios need real points; {name} = {q} is not"
                )));
            }
        }
        let conic = spec.homogenize()?;
        // Planar naming: p = ru ∩ ab, q = sv ∩ ab; in derive's terms the
        // second chord is (v, u) so that first = r·u and second = v·s.
        let derived = derive(&conic, &a, &b, &m, (&r, &s), (&v, &u), ["r", "s", "v", "u"])?;
        let (derived, degeneracy) = match derived {
            Ok(d) => (Some(d), None),
            Err(reason) => (None, Some(reason)),
        };
        Ok(PlanarScenario {
            spec,
            conic,
            a,
            b,
            m,
            r,
            s,
            u,
            v,
            derived,
            degeneracy,
        })
    }

    pub fn p(&self) -> Option<&Point<F>> {
        self.derived.as_ref().map(|d| &d.first)
    }

    pub fn q(&self) -> Option<&Point<F>> {
        self.derived.as_ref().map(|d| &d.second)
    }

    pub fn m_prime(&self) -> Option<&Point<F>> {
        self.derived.as_ref().map(|d| &d.conjugate)
    }

    pub fn named_points(&self) -> Vec<(&'static str, &Point<F>)> {
        vec![
            ("a", &self.a),
            ("b", &self.b),
            ("m", &self.m),
            ("r", &self.r),
            ("s", &self.s),
            ("u", &self.u),
            ("v", &self.v),
        ]
    }

    fn report_header(&self, claim: Claim) -> CheckReport<F> {
        let mut report = CheckReport::new(claim);
        report.witness("conic", Witness::Text(self.spec.to_string()));
        for (name, p) in self.named_points() {
            report.witness(name, p.clone());
        }
        if let Some(d) = &self.derived {
            report
                .witness("p", d.first.clone())
                .witness("q", d.second.clone())
                .witness("m'", d.conjugate.clone());
        }
        report
    }
}

/// `cr(m', p, m, q) = −1` for a real conic, plus the mechanism behind it:
/// `p` and `q` are reflections across the polar of `m'`. Only the pole and
/// axis are used, so this works whether or not the polar meets the real
/// conic.
pub fn theorem_cutl_check<F: Field>(s: &PlanarScenario<F>) -> Result<CheckReport<F>> {
    let mut report = s.report_header(Claim::Cutl);
    let Some(d) = &s.derived else {
        let reason = s
            .degeneracy
            .clone()
            .unwrap_or_else(|| "degenerate scenario".into());
        return Ok(report.degenerate(reason));
    };
    let (p, q, m_prime) = (&d.first, &d.second, &d.conjugate);
    let cr = cross_ratio(m_prime, p, &s.m, q)?;
    report.witness("cr(m',p,m,q)", cr.clone());
    report.witness("m' ideal", Witness::Flag(m_prime.is_ideal()));
    report.assert_zero("cr(m',p,m,q) = -1", harmonic_residual(&cr));

    let frame = ReflectionFrame::new(&s.conic, s.conic.polar(m_prime))?;
    report.witness("k", frame.axis().clone());
    if let Some(meets) = axis_meets_real_conic(&s.conic, frame.axis()) {
        report.witness("k meets conic in the real plane", Witness::Flag(meets));
    }
    report.assert_zero("m on polar(m')", incidence_residual(frame.axis(), &s.m));
    let image = frame.reflect_point(p)?;
    report.witness("reflect(p)", image.clone());
    report.assert_zero("reflect(p) = q", coincidence_residual(&image, q));
    Ok(report.finish())
}

/// Midpoint case: when `m` bisects `ab` (so `m'` is ideal), `|pm|² = |qm|²`.
pub fn midpoint_check<F: Field>(s: &PlanarScenario<F>) -> Result<CheckReport<F>> {
    let mut report = s.report_header(Claim::Midpoint);
    let Some(d) = &s.derived else {
        let reason = s
            .degeneracy
            .clone()
            .unwrap_or_else(|| "degenerate scenario".into());
        return Ok(report.degenerate(reason));
    };
    if !d.conjugate.is_ideal() {
        return Ok(report.degenerate("m is not the midpoint of ab (m' is finite)"));
    }
    let (Some(p), Some(q), Some(m)) = (d.first.to_affine(), d.second.to_affine(), s.m.to_affine())
    else {
        return Ok(report.degenerate("p, q or m is an ideal point"));
    };
    let dist2 = |(x, y): &(F, F)| x.sub(&m.0).square().add(&y.sub(&m.1).square());
    let (pm, qm) = (dist2(&p), dist2(&q));
    report
        .witness("|pm|^2", Witness::Scalar(pm.clone()))
        .witness("|qm|^2", Witness::Scalar(qm.clone()));
    report.assert_zero("|pm|^2 = |qm|^2", pm.sub(&qm));
    Ok(report.finish())
}

/// Whether `axis` meets the conic in real points, when the field can tell
/// (real Gaussian rationals). Uses the discriminant of the form restricted
/// to the line.
fn axis_meets_real_conic<F: Field>(conic: &Conic<F>, axis: &Line<F>) -> Option<bool> {
    let e1 = axis.point_other_than(None);
    let e2 = axis.point_other_than(Some(&e1));
    let b = conic.bilinear(&e1, &e2);
    let disc = b
        .square()
        .sub(&conic.residual(&e1).mul(&conic.residual(&e2)));
    F::real_sign(&disc).map(|sign| sign >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational as G;

    type P = Point<G>;

    fn circle() -> Conic<G> {
        Conic::from_monomials([1, 1, -1, 0, 0, 0].map(G::from_i64)).unwrap()
    }

    fn circle_fixture() -> ButterflyScenario<G> {
        ButterflyScenario::from_chord_starts(
            circle(),
            P::ints(-3, 4, 5),
            P::ints(3, 4, 5),
            P::ints(0, 4, 5),
            P::ints(0, 1, 1),
            P::ints(4, 3, 5),
            None,
        )
        .unwrap()
    }

    #[test]
    fn circle_fixture_derived_points() {
        let s = circle_fixture();
        assert_eq!(s.s, P::ints(0, -1, 1));
        assert_eq!(s.g, P::ints(-36, 77, 85));
        assert_eq!(s.i().unwrap(), &P::ints(-9, 8, 10));
        assert_eq!(s.j().unwrap(), &P::ints(9, 8, 10));
        assert_eq!(s.p().unwrap(), &P::ints(1, 0, 0));
        let r = theorem_damn_check(&s).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{r}");
    }

    #[test]
    fn scenario_errors_and_degeneracy() {
        let c = circle();
        let (a, b) = (P::ints(-3, 4, 5), P::ints(3, 4, 5));
        let (r, s) = (P::ints(0, 1, 1), P::ints(0, -1, 1));
        let err = ButterflyScenario::build(
            c.clone(),
            a.clone(),
            b.clone(),
            a.clone(),
            (r.clone(), s.clone()),
            (r.clone(), s.clone()),
            None,
        );
        assert!(err.is_err());
        let err = ButterflyScenario::build(
            c.clone(),
            a.clone(),
            b.clone(),
            P::ints(0, 1, 5),
            (r.clone(), s.clone()),
            (r.clone(), s.clone()),
            None,
        );
        assert!(err.is_err());
        let same = ButterflyScenario::build(
            c,
            a,
            b,
            P::ints(0, 4, 5),
            (r.clone(), s.clone()),
            (r, s),
            None,
        )
        .unwrap();
        assert!(same.degeneracy.is_some());
        assert_eq!(
            theorem_damn_check(&same).unwrap().verdict,
            Verdict::Degenerate
        );
    }
}
