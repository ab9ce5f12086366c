//! One type for "a checkable instance of some claim".

use rand::Rng;

use super::frame::ReflectionFrame;
use super::lemmas::{
    lemma_jap_check, lemma_mono_check, lemma_nut_check, lemma_sack_check, pascal_check,
};
use super::random::{
    butterfly_scenario, conic_point, line_through, planar_scenario, point_between, random_conic,
    random_frame, random_point, retry, ConicKind, Generated, RetryCapExhausted,
};
use super::report::{CheckReport, Claim, Verdict};
use super::theorems::{
    midpoint_check, theorem_cutl_check, theorem_damn_check, ButterflyScenario, PlanarScenario,
};
use crate::conic::Conic;
use crate::error::{GeometryError, Result};
use crate::field::Field;
use crate::projective::{join, meet, Line, Point, Projectivity};

#[derive(Clone, Debug)]
pub enum Instance<F> {
    Mono {
        frame: ReflectionFrame<F>,
        y: Point<F>,
        y_prime: Point<F>,
        m: Point<F>,
    },
    Jap {
        frame: ReflectionFrame<F>,
        y: Point<F>,
        u: Point<F>,
        l2: Line<F>,
    },
    Nut {
        frame: ReflectionFrame<F>,
        y: Point<F>,
        z: Point<F>,
    },
    Sack {
        frame: ReflectionFrame<F>,
        m: Point<F>,
        r: Point<F>,
        s: Point<F>,
    },
    Pascal {
        conic: Conic<F>,
        hexagon: [Point<F>; 6],
    },
    Damn(ButterflyScenario<F>),
    Cutl(PlanarScenario<F>),
    Midpoint(PlanarScenario<F>),
}

impl<F: Field> Instance<F> {
    pub fn claim(&self) -> Claim {
        match self {
            Instance::Mono { .. } => Claim::Mono,
            Instance::Jap { .. } => Claim::Jap,
            Instance::Nut { .. } => Claim::Nut,
            Instance::Sack { .. } => Claim::Sack,
            Instance::Pascal { .. } => Claim::Pascal,
            Instance::Damn(_) => Claim::Damn,
            Instance::Cutl(_) => Claim::Cutl,
            Instance::Midpoint(_) => Claim::Midpoint,
        }
    }

    pub fn check(&self) -> Result<CheckReport<F>> {
        match self {
            Instance::Mono {
                frame,
                y,
                y_prime,
                m,
            } => lemma_mono_check(frame, y, y_prime, m),
            Instance::Jap { frame, y, u, l2 } => lemma_jap_check(frame, y, u, l2),
            Instance::Nut { frame, y, z } => lemma_nut_check(frame, y, z),
            Instance::Sack { frame, m, r, s } => lemma_sack_check(frame, m, r, s),
            Instance::Pascal { conic, hexagon } => pascal_check(conic, hexagon),
            Instance::Damn(s) => theorem_damn_check(s),
            Instance::Cutl(s) => theorem_cutl_check(s),
            Instance::Midpoint(s) => midpoint_check(s),
        }
    }

    /// The conic the instance lives on.
    pub fn conic(&self) -> &Conic<F> {
        match self {
            Instance::Mono { frame, .. }
            | Instance::Jap { frame, .. }
            | Instance::Nut { frame, .. }
            | Instance::Sack { frame, .. } => frame.conic(),
            Instance::Pascal { conic, .. } => conic,
            Instance::Damn(s) => &s.conic,
            Instance::Cutl(s) | Instance::Midpoint(s) => &s.conic,
        }
    }

    /// Image of the whole instance under `t`. Planar instances are tied to
    /// the real affine plane and are not transformed.
    pub fn transform(&self, t: &Projectivity<F>) -> Result<Self> {
        let pt = |p: &Point<F>| t.apply_point(p);
        Ok(match self {
            Instance::Mono {
                frame,
                y,
                y_prime,
                m,
            } => Instance::Mono {
                frame: frame.transform(t)?,
                y: pt(y),
                y_prime: pt(y_prime),
                m: pt(m),
            },
            Instance::Jap { frame, y, u, l2 } => Instance::Jap {
                frame: frame.transform(t)?,
                y: pt(y),
                u: pt(u),
                l2: t.apply_line(l2),
            },
            Instance::Nut { frame, y, z } => Instance::Nut {
                frame: frame.transform(t)?,
                y: pt(y),
                z: pt(z),
            },
            Instance::Sack { frame, m, r, s } => Instance::Sack {
                frame: frame.transform(t)?,
                m: pt(m),
                r: pt(r),
                s: pt(s),
            },
            Instance::Pascal { conic, hexagon } => Instance::Pascal {
                conic: conic.transform(t),
                hexagon: hexagon.clone().map(|p| pt(&p)),
            },
            Instance::Damn(s) => Instance::Damn(s.transform(t)?),
            Instance::Cutl(_) | Instance::Midpoint(_) => {
                return Err(GeometryError::Precondition(
                    "planar instances are not transformed".into(),
                ))
            }
        })
    }

    /// A random instance of `claim` whose check is not degenerate. Real
    /// coordinates are used for the planar claims and whenever `real` is set.
    pub fn random<R: Rng + ?Sized>(
        claim: Claim,
        rng: &mut R,
        height: u64,
        real: bool,
    ) -> std::result::Result<Generated<(Self, CheckReport<F>)>, RetryCapExhausted> {
        let mut inner_retries = 0;
        let mut out = retry(|| {
            let inst = match draw(claim, rng, height, real) {
                Ok(g) => {
                    inner_retries += g.retries;
                    g.value
                }
                Err(_) => return None,
            };
            let inst = inst?;
            let report = inst.check().ok()?;
            (report.verdict != Verdict::Degenerate).then_some((inst, report))
        })?;
        out.retries += inner_retries;
        Ok(out)
    }
}

/// One draw, `None` when it hit a degenerate or invalid configuration.
fn draw<F: Field, R: Rng + ?Sized>(
    claim: Claim,
    rng: &mut R,
    height: u64,
    real: bool,
) -> std::result::Result<Generated<Option<Instance<F>>>, RetryCapExhausted> {
    let plain = |v| {
        Ok(Generated {
            value: v,
            retries: 0,
        })
    };
    match claim {
        Claim::Damn => {
            let g = butterfly_scenario(rng, height, real)?;
            Ok(Generated {
                value: Some(Instance::Damn(g.value)),
                retries: g.retries,
            })
        }
        Claim::Cutl | Claim::Midpoint => {
            let midpoint = claim == Claim::Midpoint;
            let kind = ConicKind::ALL[rng.gen_range(0..ConicKind::ALL.len())];
            let g = planar_scenario(rng, height, kind, midpoint)?;
            let value = if midpoint {
                Instance::Midpoint(g.value)
            } else {
                Instance::Cutl(g.value)
            };
            Ok(Generated {
                value: Some(value),
                retries: g.retries,
            })
        }
        Claim::Pascal => {
            let par = random_conic(rng, height, real);
            let hexagon = std::array::from_fn(|_| conic_point(&par, rng, height, real));
            plain(Some(Instance::Pascal {
                conic: par.conic().clone(),
                hexagon,
            }))
        }
        Claim::Mono => plain(draw_mono(rng, height, real)),
        Claim::Jap => plain(draw_jap(rng, height, real)),
        Claim::Nut => plain(draw_nut(rng, height, real)),
        Claim::Sack => plain(draw_sack(rng, height, real)),
    }
}

/// Half of the draws put `m` on the axis, half elsewhere on the line, so
/// both directions of the equivalence are exercised.
fn draw_mono<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    height: u64,
    real: bool,
) -> Option<Instance<F>> {
    let (par, frame) = random_frame(rng, height, real)?;
    let y = conic_point(&par, rng, height, real);
    let l = join(frame.pole(), &y).ok()?;
    let y_prime = frame.conic().second_intersection(&l, &y).ok()?;
    let m = if rng.gen_bool(0.5) {
        meet(&l, frame.axis()).ok()?
    } else {
        point_between(&y, &y_prime, rng, height, real)?
    };
    Some(Instance::Mono {
        frame,
        y,
        y_prime,
        m,
    })
}

fn draw_jap<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    height: u64,
    real: bool,
) -> Option<Instance<F>> {
    let (_, frame) = random_frame(rng, height, real)?;
    let y = random_point(rng, height, real);
    let (e1, e2) = frame.endpoints()?;
    let u = point_between(e1, e2, rng, height, real)?;
    let l2 = line_through(frame.pole(), rng, height, real)?;
    Some(Instance::Jap { frame, y, u, l2 })
}

fn draw_nut<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    height: u64,
    real: bool,
) -> Option<Instance<F>> {
    let (_, frame) = random_frame(rng, height, real)?;
    let y = random_point(rng, height, real);
    let z = random_point(rng, height, real);
    Some(Instance::Nut { frame, y, z })
}

fn draw_sack<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    height: u64,
    real: bool,
) -> Option<Instance<F>> {
    let (par, frame) = random_frame(rng, height, real)?;
    let (u, v) = frame.endpoints()?;
    let m = point_between(u, v, rng, height, real)?;
    let r = conic_point(&par, rng, height, real);
    let s = frame.conic().chord_through(&r, &m).ok()?;
    Some(Instance::Sack { frame, m, r, s })
}
