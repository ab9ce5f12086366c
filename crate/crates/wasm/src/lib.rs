//! Browser entry points. Every export takes and returns plain strings; the
//! structured results are JSON.

use butterfly_core::conic::{AffineConicSpec, ConicParametrization};
use butterfly_core::demo::worked_example;
use butterfly_core::engine::{
    ButterflyScenario, Instance, PlanarScenario, ReflectionFrame, Verdict,
};
use butterfly_core::field::{Field, GaussianRational};
use butterfly_core::projective::{join, meet, Point};
use butterfly_core::render::{render_instance, spread};
use butterfly_core::run::run_scenario_text;
use butterfly_core::scenario::{parse_scenario, AnyScenario, ScenarioFile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wasm_bindgen::prelude::*;

type G = GaussianRational;

/// Random draws per figure; the one with the most evenly spread points wins.
const CANDIDATES: usize = 24;

/// Readable members of each family, with a rational base point.
fn family(kind: &str) -> Result<(AffineConicSpec<G>, Point<G>), String> {
    let (coeffs, base) = match kind {
        "ellipse" | "projective" => ([4, 9, 0, 0, 0, -36], Point::ints(3, 0, 1)),
        "hyperbola" => ([1, -4, 0, 0, 0, -4], Point::ints(2, 0, 1)),
        "parabola" => ([1, 0, 0, 0, -4, 0], Point::ints(0, 0, 1)),
        other => return Err(format!("unknown figure kind `{other}`")),
    };
    Ok((
        AffineConicSpec::from_i64(coeffs).map_err(|e| e.to_string())?,
        base,
    ))
}

/// One attempt at a figure; `None` when the draw is unusable.
fn draw(kind: &str, rng: &mut ChaCha8Rng) -> Result<Option<Instance<G>>, String> {
    let (spec, base) = family(kind)?;
    let conic = spec.homogenize().map_err(|e| e.to_string())?;
    let par = ConicParametrization::new(conic.clone(), base).map_err(|e| e.to_string())?;
    let (l, k) = (
        G::from_i64(rng.gen_range(1..=3)),
        G::from_i64(rng.gen_range(1..=3)),
    );
    let mut point = || {
        let t = G::ratio(rng.gen_range(-12..=12), 4);
        let p = par.point_at(&t);
        p.to_affine().map(|(x, y)| Point::affine(x, y))
    };
    let mut attempt = || -> Option<Instance<G>> {
        let (a, b, r, u) = (point()?, point()?, point()?, point()?);
        if kind == "projective" {
            let f = point()?;
            let frame = ReflectionFrame::from_chord(&conic, a.clone(), b.clone()).ok()?;
            let (a, b) = (r.clone(), frame.reflect_point(&r).ok()?);
            let m = meet(&join(&a, &b).ok()?, frame.axis()).ok()?;
            let (axis_u, axis_v) = frame.endpoints().map(|(x, y)| (x.clone(), y.clone()))?;
            let sc = ButterflyScenario::from_chord_starts(
                conic.clone(),
                a,
                b,
                m,
                u,
                f,
                Some((axis_u, axis_v)),
            )
            .ok()?;
            return sc.degeneracy.is_none().then_some(Instance::Damn(sc));
        }
        let ((xa, ya), (xb, yb)) = (a.to_affine()?, b.to_affine()?);
        let w = l.add(&k).inv().ok()?;
        let mix = |p: &G, q: &G| l.mul(p).add(&k.mul(q)).mul(&w);
        let m = Point::affine(mix(&xa, &xb), mix(&ya, &yb));
        let s = conic.chord_through(&r, &m).ok()?;
        let v = conic.chord_through(&u, &m).ok()?;
        let sc = PlanarScenario::build(spec.clone(), a, b, m, (r, s), (u, v)).ok()?;
        sc.degeneracy.is_none().then_some(Instance::Cutl(sc))
    };
    Ok(attempt())
}

fn figure_of(instance: &Instance<G>) -> Result<String, String> {
    let svg = render_instance(instance).map_err(|e| e.to_string())?;
    let scenario = ScenarioFile::from_instance(instance).to_string();
    let outcome = run_scenario_text(&scenario);
    Ok(json!({
        "svg": svg,
        "scenario": scenario,
        "status": format!("{:?}", outcome.status),
        "report": outcome.lines,
    })
    .to_string())
}

/// A random real configuration as `{svg, scenario, status, report}`.
///
/// `kind` is `ellipse`, `hyperbola` or `parabola` for the planar theorem,
/// or `projective` for the projective one drawn on an ellipse.
#[wasm_bindgen]
pub fn random_figure(kind: &str, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Instance<G>)> = None;
    let mut tries = 0;
    while tries < 64 * CANDIDATES && (best.is_none() || tries < CANDIDATES) {
        tries += 1;
        let Some(instance) = draw(kind, &mut rng)? else {
            continue;
        };
        let Ok(report) = instance.check() else {
            continue;
        };
        if report.verdict != Verdict::Holds || render_instance(&instance).is_err() {
            continue;
        }
        let score = spread(&report);
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, instance));
        }
    }
    let (_, instance) = best.ok_or("no usable configuration found")?;
    figure_of(&instance)
}

/// Runs a scenario document: `{status, exit_code, report, svg?}`. The
/// figure is drawn for the first check when the scenario is real.
#[wasm_bindgen]
pub fn verify_scenario(text: &str) -> String {
    let outcome = run_scenario_text(text);
    let svg = match parse_scenario(text) {
        Ok(AnyScenario::Gauss(file)) => file
            .instances()
            .ok()
            .and_then(|v| v.into_iter().next())
            .map(|i| render_instance(&i).map_err(|e| e.to_string())),
        _ => None,
    };
    json!({
        "status": format!("{:?}", outcome.status),
        "exit_code": outcome.status.exit_code(),
        "report": outcome.lines,
        "svg": svg.as_ref().and_then(|s| s.as_ref().ok()),
        "figure_error": svg.and_then(Result::err),
    })
    .to_string()
}

/// Transcript of the worked example on `xy + xz − 2yz = 0`.
#[wasm_bindgen]
pub fn worked_example_transcript() -> Result<String, String> {
    worked_example().map_err(|e| e.to_string())
}
