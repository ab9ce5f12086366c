//! Seeded generation of random, non-degenerate instances.
//!
//! Everything is rational: conics are images of the reference conic under a
//! random projectivity, conic points come from the rational
//! parametrization, and chords are completed with second intersections.
//! Draws that land on a degenerate configuration are rejected and redrawn,
//! up to [`RETRY_CAP`] times.

use rand::Rng;
use thiserror::Error;

use super::frame::ReflectionFrame;
use super::theorems::{ButterflyScenario, PlanarScenario};
use crate::conic::{AffineConicSpec, Conic, ConicParametrization};
use crate::field::Field;
use crate::projective::{join, meet, Line, Mat3, Point, Projectivity};

pub const RETRY_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no non-degenerate draw after {attempts} attempts")]
pub struct RetryCapExhausted {
    pub attempts: usize,
}

/// A generated value with the number of rejected draws that preceded it.
#[derive(Debug, Clone)]
pub struct Generated<T> {
    pub value: T,
    pub retries: usize,
}

pub(crate) fn retry<T>(
    mut draw: impl FnMut() -> Option<T>,
) -> Result<Generated<T>, RetryCapExhausted> {
    for retries in 0..RETRY_CAP {
        if let Some(value) = draw() {
            return Ok(Generated { value, retries });
        }
    }
    Err(RetryCapExhausted {
        attempts: RETRY_CAP,
    })
}

/// Scalar draw, real-only when `real` is set.
pub fn scalar<F: Field, R: Rng + ?Sized>(rng: &mut R, height: u64, real: bool) -> F {
    if real {
        F::random_real(rng, height)
    } else {
        F::random(rng, height)
    }
}

pub fn random_point<F: Field, R: Rng + ?Sized>(rng: &mut R, height: u64, real: bool) -> Point<F> {
    loop {
        let c = [
            scalar(rng, height, real),
            scalar(rng, height, real),
            scalar(rng, height, real),
        ];
        if let Ok(p) = Point::new(c) {
            return p;
        }
    }
}

/// A random conic as the image of the reference conic `2xz − 2y² = 0`
/// under a projectivity, parametrized by `t ↦ T·(1 : t : t²)`.
///
/// Working through the parameter keeps generated coordinates small: a
/// point costs one matrix-vector product on a vector of height `h²`.
#[derive(Clone, Debug)]
pub struct RandomConic<F> {
    conic: Conic<F>,
    map: Projectivity<F>,
}

impl<F: Field> RandomConic<F> {
    pub fn new(map: Projectivity<F>) -> Self {
        RandomConic {
            conic: Conic::reference().transform(&map),
            map,
        }
    }

    pub fn conic(&self) -> &Conic<F> {
        &self.conic
    }

    /// The point with parameter `t`; `None` is the parameter ∞.
    pub fn point_at(&self, t: Option<&F>) -> Point<F> {
        let v = match t {
            Some(t) => Point::new([F::one(), t.clone(), t.square()]),
            None => Point::new([F::zero(), F::zero(), F::one()]),
        };
        self.map.apply_point(&v.expect("nonzero"))
    }
}

/// An involution of the parameter line, `A·t·t' + B·(t + t') + C = 0`.
#[derive(Clone, Debug)]
pub struct ParamInvolution<F> {
    a: F,
    b: F,
    c: F,
}

impl<F: Field> ParamInvolution<F> {
    /// The involution swapping `t1 ↔ t1'` and `t2 ↔ t2'` (equal entries
    /// make a fixed point). `None` if the pairs do not determine one.
    pub fn through(p: (&F, &F), q: (&F, &F)) -> Option<Self> {
        let row = |(x, y): (&F, &F)| [x.mul(y), x.add(y), F::one()];
        let [a, b, c] = crate::projective::cross(&row(p), &row(q));
        // A·C = B² makes the form degenerate (a single repeated point).
        if a.mul(&c) == b.square() {
            return None;
        }
        Some(ParamInvolution { a, b, c })
    }

    /// Image of `t` (`None` is ∞).
    pub fn apply(&self, t: Option<&F>) -> Option<F> {
        match t {
            Some(t) => {
                let den = self.a.mul(t).add(&self.b);
                let num = self.b.mul(t).add(&self.c).neg();
                num.div(&den).ok()
            }
            None => self.b.neg().div(&self.a).ok(),
        }
    }
}

/// A random point of the conic.
pub fn conic_point<F: Field, R: Rng + ?Sized>(
    conic: &RandomConic<F>,
    rng: &mut R,
    height: u64,
    real: bool,
) -> Point<F> {
    conic.point_at(Some(&scalar(rng, height, real)))
}

/// A random point of the line through `a` and `b`, other than both.
pub fn point_between<F: Field, R: Rng + ?Sized>(
    a: &Point<F>,
    b: &Point<F>,
    rng: &mut R,
    height: u64,
    real: bool,
) -> Option<Point<F>> {
    let s: F = scalar(rng, height, real);
    let t: F = scalar(rng, height, real);
    let p = a.combine(&s, b, &t).ok()?;
    (p != *a && p != *b).then_some(p)
}

pub fn random_conic<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    height: u64,
    real: bool,
) -> RandomConic<F> {
    RandomConic::new(Projectivity::random(rng, height, real))
}

/// A random conic with a reflection frame whose axis is a chord `uv`.
pub fn random_frame<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    height: u64,
    real: bool,
) -> Option<(RandomConic<F>, ReflectionFrame<F>)> {
    let conic = random_conic(rng, height, real);
    let u = conic_point(&conic, rng, height, real);
    let v = conic_point(&conic, rng, height, real);
    let frame = ReflectionFrame::from_chord(conic.conic(), u, v).ok()?;
    Some((conic, frame))
}

/// Random configuration for the complex butterfly theorem.
///
/// The axis chord `uv` is drawn first and `b` is the reflection of a random
/// conic point `a`, so `ab` passes through the pole `p` of `uv`; then
/// `m = ab ∩ uv`. All conic points are produced through the parameter: the
/// reflection acts on it as the involution fixing `u`, `v`, and the chords
/// through `m` as the involution swapping `a ↔ b` and `u ↔ v`. The kernel
/// recomputes and validates every incidence when the scenario is built.
pub fn butterfly_scenario<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    height: u64,
    real: bool,
) -> Result<Generated<ButterflyScenario<F>>, RetryCapExhausted> {
    retry(|| {
        let conic = random_conic::<F, R>(rng, height, real);
        let mut param = || scalar::<F, R>(rng, height, real);
        let (tu, tv, ta, tr, tf) = (param(), param(), param(), param(), param());
        if [&tr, &tf].iter().any(|t| **t == tu || **t == tv) {
            return None;
        }
        let reflection = ParamInvolution::through((&tu, &tu), (&tv, &tv))?;
        let tb = reflection.apply(Some(&ta));
        let through_m = ParamInvolution::through((&ta, tb.as_ref()?), (&tu, &tv))?;
        let ts = through_m.apply(Some(&tr));
        let tg = through_m.apply(Some(&tf));
        let pt = |t: Option<&F>| conic.point_at(t);
        let (u, v, a, b) = (pt(Some(&tu)), pt(Some(&tv)), pt(Some(&ta)), pt(tb.as_ref()));
        let m = meet(&join(&a, &b).ok()?, &join(&u, &v).ok()?).ok()?;
        let s = ButterflyScenario::build(
            conic.conic().clone(),
            a,
            b,
            m,
            (pt(Some(&tr)), pt(ts.as_ref())),
            (pt(Some(&tf)), pt(tg.as_ref())),
            Some((u, v)),
        )
        .ok()?;
        s.degeneracy.is_none().then_some(s)
    })
}

/// Affine conic families for the planar theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
    Parabola,
}

impl ConicKind {
    pub const ALL: [ConicKind; 3] = [
        ConicKind::Ellipse,
        ConicKind::Hyperbola,
        ConicKind::Parabola,
    ];

    /// Normal form and a rational point on it.
    fn normal_form<F: Field>(self) -> (AffineConicSpec<F>, Point<F>) {
        let (coeffs, base) = match self {
            ConicKind::Ellipse => ([1, 1, 0, 0, 0, -1], Point::ints(1, 0, 1)),
            ConicKind::Hyperbola => ([1, -1, 0, 0, 0, -1], Point::ints(1, 0, 1)),
            ConicKind::Parabola => ([1, 0, 0, 0, -1, 0], Point::ints(0, 0, 1)),
        };
        (
            AffineConicSpec::from_i64(coeffs).expect("normal forms are valid"),
            base,
        )
    }
}

fn random_affine_map<F: Field, R: Rng + ?Sized>(rng: &mut R, height: u64) -> Projectivity<F> {
    loop {
        let mut e = || F::random_real(rng, height);
        let m = Mat3::new([
            [e(), e(), e()],
            [e(), e(), e()],
            [F::zero(), F::zero(), F::one()],
        ]);
        if let Ok(t) = Projectivity::new(m) {
            return t;
        }
    }
}

fn affine_point<F: Field, R: Rng + ?Sized>(
    par: &ConicParametrization<F>,
    rng: &mut R,
    height: u64,
) -> Option<Point<F>> {
    let (x, y) = par.point_at(&F::random_real(rng, height)).to_affine()?;
    Some(Point::affine(x, y))
}

/// Random real planar configuration on an affine image of `kind`'s normal
/// form. All named points are finite. With `midpoint` set, `m` is the
/// midpoint of `ab`.
pub fn planar_scenario<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    height: u64,
    kind: ConicKind,
    midpoint: bool,
) -> Result<Generated<PlanarScenario<F>>, RetryCapExhausted> {
    retry(|| {
        let (normal, base) = kind.normal_form::<F>();
        let t = random_affine_map::<F, R>(rng, height);
        let conic = normal.homogenize().ok()?.transform(&t);
        let spec = AffineConicSpec::from_conic(&conic).ok()?;
        let par = ConicParametrization::new(conic.clone(), t.apply_point(&base)).ok()?;
        let a = affine_point(&par, rng, height)?;
        let b = affine_point(&par, rng, height)?;
        let (lambda, mu): (F, F) = if midpoint {
            (F::one(), F::one())
        } else {
            (F::random_real(rng, height), F::random_real(rng, height))
        };
        // (λa + μb) / (λ + μ) in the affine chart.
        let w = lambda.add(&mu).inv().ok()?;
        let ((xa, ya), (xb, yb)) = (a.to_affine()?, b.to_affine()?);
        let mix = |p: &F, q: &F| lambda.mul(p).add(&mu.mul(q)).mul(&w);
        let m = Point::affine(mix(&xa, &xb), mix(&ya, &yb));
        if m == a || m == b {
            return None;
        }
        let r = affine_point(&par, rng, height)?;
        let u = affine_point(&par, rng, height)?;
        let s = conic.chord_through(&r, &m).ok()?;
        let v = conic.chord_through(&u, &m).ok()?;
        if s.is_ideal() || v.is_ideal() {
            return None;
        }
        let sc = PlanarScenario::build(spec, a, b, m, (r, s), (u, v)).ok()?;
        sc.degeneracy.is_none().then_some(sc)
    })
}

/// A random line through `p`.
pub fn line_through<F: Field, R: Rng + ?Sized>(
    p: &Point<F>,
    rng: &mut R,
    height: u64,
    real: bool,
) -> Option<Line<F>> {
    join(p, &random_point(rng, height, real)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaussianRational as G, PrimeField};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn butterfly_generation_is_deterministic() {
        let draw = || {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            butterfly_scenario::<G, _>(&mut rng, 20, false)
                .unwrap()
                .value
        };
        let (x, y) = (draw(), draw());
        assert_eq!(x.named_points(), y.named_points());
        assert_eq!(x.conic, y.conic);
    }

    #[test]
    fn generated_scenarios_satisfy_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let s = butterfly_scenario::<G, _>(&mut rng, 20, false)
                .unwrap()
                .value;
            for (_, p) in s.named_points() {
                assert!(s.conic.contains(p) || *p == s.m);
            }
            assert!(s.derived.is_some());
        }
        for kind in ConicKind::ALL {
            let s = planar_scenario::<G, _>(&mut rng, 20, kind, false)
                .unwrap()
                .value;
            for (_, p) in s.named_points() {
                assert!(p.is_real() && !p.is_ideal());
            }
        }
    }

    #[test]
    fn prime_backend_generates() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = butterfly_scenario::<PrimeField, _>(&mut rng, 0, false)
            .unwrap()
            .value;
        assert!(s.derived.is_some());
    }

    #[test]
    fn retry_cap_reported() {
        let r: Result<Generated<()>, _> = retry(|| None);
        assert_eq!(
            r.unwrap_err(),
            RetryCapExhausted {
                attempts: RETRY_CAP
            }
        );
    }
}
