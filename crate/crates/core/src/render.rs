//! SVG figures of checked instances in the affine chart `z = 1`.
//!
//! Everything is computed exactly first; floats only enter when the
//! coordinates are placed on the canvas. Before a figure is written, every
//! incidence it draws is re-checked on the exact points and on the drawn
//! coordinates.

use std::f64::consts::PI;
use std::fmt::Write as _;

use thiserror::Error;

use crate::conic::Conic;
use crate::engine::{collinearity_residual, CheckReport, Claim, Instance, Witness};
use crate::field::{Field, GaussianRational};
use crate::projective::{Line, Point};

type G = GaussianRational;

/// Samples per branch of the conic.
pub const SAMPLES: usize = 256;

const WIDTH: f64 = 640.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("{what} is not real; figures are drawn in the real affine plane, so use real coordinates (for random scenarios, real scalars)")]
    NotReal { what: String },
    #[error("nothing to draw: every named point is at infinity")]
    Empty,
    #[error("drawn figure contradicts the kernel: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Check(String),
}

/// Names that must lie on the conic, and groups of collinear names, for
/// each claim.
fn layout(claim: Claim) -> (&'static [&'static str], &'static [&'static [&'static str]]) {
    match claim {
        Claim::Mono => (&["y", "y'"], &[&["p", "y", "m", "y'", "n"]]),
        Claim::Jap => (
            &[],
            &[
                &["p", "y", "y'"],
                &["u", "y", "t"],
                &["u", "y'", "t'"],
                &["p", "t", "t'"],
            ],
        ),
        Claim::Nut => (
            &[],
            &[
                &["y", "z", "yz.y'z'"],
                &["y'", "z'", "yz.y'z'"],
                &["p", "y", "y'"],
                &["p", "z", "z'"],
            ],
        ),
        Claim::Sack => (
            &["u", "v", "r", "s", "r'", "s'"],
            &[
                &["r", "s", "m"],
                &["r'", "s'", "m"],
                &["r'", "v", "x"],
                &["s", "u", "x"],
                &["r", "v", "z"],
                &["s'", "u", "z"],
                &["p", "m", "x", "z"],
            ],
        ),
        Claim::Pascal => (
            &["h1", "h2", "h3", "h4", "h5", "h6"],
            &[
                &["h1", "h2", "x1"],
                &["h4", "h5", "x1"],
                &["h2", "h3", "x2"],
                &["h5", "h6", "x2"],
                &["h3", "h4", "x3"],
                &["h6", "h1", "x3"],
                &["x1", "x2", "x3"],
            ],
        ),
        Claim::Damn => (
            &["a", "b", "r", "s", "f", "g", "u", "v"],
            &[
                &["a", "b", "m", "i", "j", "p"],
                &["r", "s", "m"],
                &["f", "g", "m"],
                &["r", "g", "i"],
                &["f", "s", "j"],
            ],
        ),
        Claim::Cutl | Claim::Midpoint => (
            &["a", "b", "r", "s", "u", "v"],
            &[
                &["a", "b", "m", "p", "q", "m'"],
                &["r", "s", "m"],
                &["u", "v", "m"],
                &["r", "u", "p"],
                &["s", "v", "q"],
            ],
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct V2 {
    x: f64,
    y: f64,
}

fn f64_of(x: &G) -> f64 {
    x.re_f64()
}

fn chart(p: &Point<G>) -> Option<V2> {
    let (x, y) = p.to_affine()?;
    Some(V2 {
        x: f64_of(&x),
        y: f64_of(&y),
    })
}

/// Direction of an ideal point.
fn direction(p: &Point<G>) -> V2 {
    let c = p.coords();
    let (x, y) = (f64_of(&c[0]), f64_of(&c[1]));
    let n = x.hypot(y);
    V2 { x: x / n, y: y / n }
}

struct Canvas {
    min: V2,
    max: V2,
}

impl Canvas {
    fn fit(points: &[V2]) -> Canvas {
        let mut min = V2 {
            x: f64::INFINITY,
            y: f64::INFINITY,
        };
        let mut max = V2 {
            x: f64::NEG_INFINITY,
            y: f64::NEG_INFINITY,
        };
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        let span = (max.x - min.x).max(max.y - min.y).max(1e-9);
        let pad = 0.15 * span;
        Canvas {
            min: V2 {
                x: min.x - pad,
                y: min.y - pad,
            },
            max: V2 {
                x: max.x + pad,
                y: max.y + pad,
            },
        }
    }

    fn span(&self) -> f64 {
        (self.max.x - self.min.x).max(self.max.y - self.min.y)
    }

    fn center(&self) -> V2 {
        V2 {
            x: (self.min.x + self.max.x) / 2.0,
            y: (self.min.y + self.max.y) / 2.0,
        }
    }

    /// Chart to screen, y pointing down.
    fn screen(&self, p: V2) -> V2 {
        let s = WIDTH / self.span();
        V2 {
            x: (p.x - self.min.x) * s,
            y: (self.max.y - p.y) * s,
        }
    }

    fn height(&self) -> f64 {
        (self.max.y - self.min.y) * WIDTH / self.span()
    }

    fn width(&self) -> f64 {
        (self.max.x - self.min.x) * WIDTH / self.span()
    }

    /// Where the ray from `from` along `dir` leaves the canvas.
    fn exit(&self, from: V2, dir: V2) -> V2 {
        let mut t = f64::INFINITY;
        for (o, d, lo, hi) in [
            (from.x, dir.x, self.min.x, self.max.x),
            (from.y, dir.y, self.min.y, self.max.y),
        ] {
            if d > 1e-12 {
                t = t.min((hi - o) / d);
            } else if d < -1e-12 {
                t = t.min((lo - o) / d);
            }
        }
        V2 {
            x: from.x + t * dir.x,
            y: from.y + t * dir.y,
        }
    }
}

/// Conic branches sampled through the pencil of lines at a conic point
/// `base`: the direction `d(θ)` gives the second intersection
/// `Q(d)·base − 2B(base, d)·d`, which is at infinity exactly when `Q(d) = 0`.
/// The parameter range is split at those asymptotic directions, one branch
/// per interval, [`SAMPLES`] samples each.
fn conic_branches(conic: &Conic<G>, base: V2) -> Vec<(Vec<V2>, bool)> {
    let m = conic.form();
    let e = |i, j| f64_of(m.get(i, j));
    let b = [base.x, base.y, 1.0];
    let (a, h, c) = (e(0, 0), e(0, 1), e(1, 1));
    let sample = |theta: f64| -> Option<V2> {
        let d = [theta.cos(), theta.sin(), 0.0];
        let q = a * d[0] * d[0] + 2.0 * h * d[0] * d[1] + c * d[1] * d[1];
        let bd: f64 = (0..3)
            .map(|i| (0..3).map(|j| b[i] * e(i, j) * d[j]).sum::<f64>())
            .sum();
        let w = q * b[2];
        if w.abs() < 1e-300 {
            return None;
        }
        Some(V2 {
            x: (q * b[0] - 2.0 * bd * d[0]) / w,
            y: (q * b[1] - 2.0 * bd * d[1]) / w,
        })
    };
    // Q(d(θ)) = ((a + c) + r·cos(2θ − φ)) / 2.
    let r = (a - c).hypot(2.0 * h);
    let phi = (2.0 * h).atan2(a - c);
    let ratio = if r > 0.0 { -(a + c) / r } else { f64::INFINITY };
    let intervals: Vec<(f64, f64, bool)> = if ratio.abs() > 1.0 {
        vec![(0.0, PI, true)]
    } else {
        let alpha = ratio.clamp(-1.0, 1.0).acos();
        let norm = |t: f64| t.rem_euclid(PI);
        let mut roots = vec![norm((phi + alpha) / 2.0), norm((phi - alpha) / 2.0)];
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
        if roots.len() == 1 {
            vec![(roots[0], roots[0] + PI, false)]
        } else {
            vec![
                (roots[0], roots[1], false),
                (roots[1], roots[0] + PI, false),
            ]
        }
    };
    intervals
        .into_iter()
        .map(|(lo, hi, closed)| {
            let pts = (0..SAMPLES)
                .filter_map(|k| sample(lo + (hi - lo) * (k as f64 + 0.5) / SAMPLES as f64))
                .collect();
            (pts, closed)
        })
        .collect()
}

/// Polyline pieces inside a generous neighbourhood of the canvas.
fn clip_pieces(points: &[V2], canvas: &Canvas) -> Vec<Vec<V2>> {
    let c = canvas.center();
    let limit = 4.0 * canvas.span();
    let mut pieces = vec![Vec::new()];
    for p in points {
        if (p.x - c.x).abs() > limit || (p.y - c.y).abs() > limit {
            if !pieces.last().is_some_and(Vec::is_empty) {
                pieces.push(Vec::new());
            }
        } else {
            pieces.last_mut().expect("nonempty").push(*p);
        }
    }
    pieces.retain(|p| p.len() > 1);
    pieces
}

fn distance_to_line(p: V2, a: V2, b: V2) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    ((p.x - a.x) * dy - (p.y - a.y) * dx).abs() / dx.hypot(dy)
}

/// Spread of the drawn points: the smallest distance between two distinct
/// finite points over the diameter of all of them. Zero when fewer than two.
pub fn spread(report: &CheckReport<G>) -> f64 {
    let (on_conic, groups) = layout(report.claim);
    let pts: Vec<V2> = report
        .witnesses
        .iter()
        .filter(|(n, _)| {
            on_conic.contains(&n.as_str()) || groups.iter().any(|g| g.contains(&n.as_str()))
        })
        .filter_map(|(_, w)| match w {
            Witness::Point(p) => chart(p),
            _ => None,
        })
        .collect();
    let (mut near, mut far) = (f64::INFINITY, 0.0f64);
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let d = (a.x - b.x).hypot(a.y - b.y);
            far = far.max(d);
            if d > 0.0 {
                near = near.min(d);
            }
        }
    }
    if far > 0.0 && near.is_finite() {
        near / far
    } else {
        0.0
    }
}

/// Renders the report of a checked instance.
pub fn render_instance(instance: &Instance<G>) -> Result<String, RenderError> {
    let report = instance
        .check()
        .map_err(|e| RenderError::Check(e.to_string()))?;
    render_report(instance.conic(), &report)
}

pub fn render_report(conic: &Conic<G>, report: &CheckReport<G>) -> Result<String, RenderError> {
    if !conic.entries().iter().all(G::is_real) {
        return Err(RenderError::NotReal {
            what: "the conic".into(),
        });
    }
    let (on_conic, groups) = layout(report.claim);
    let drawn = |n: &str| on_conic.contains(&n) || groups.iter().any(|g| g.contains(&n));
    let points: Vec<(&str, &Point<G>)> = report
        .witnesses
        .iter()
        .filter_map(|(n, w)| match w {
            Witness::Point(p) if drawn(n) => Some((n.as_str(), p)),
            _ => None,
        })
        .collect();
    for (name, p) in &points {
        if !p.is_real() {
            return Err(RenderError::NotReal {
                what: format!("point {name} = {p}"),
            });
        }
    }
    let axis: Option<&Line<G>> = match report.get("k") {
        Some(Witness::Line(k)) if k.is_real() => Some(k),
        _ => None,
    };
    let lookup = |n: &str| points.iter().find(|(m, _)| *m == n).map(|(_, p)| *p);

    // Exact re-assertion of everything that will be drawn.
    for name in on_conic {
        if let Some(p) = lookup(name) {
            if !conic.contains(p) {
                return Err(RenderError::Inconsistent(format!(
                    "{name} is not on the conic"
                )));
            }
        }
    }
    let groups: Vec<Vec<(&str, &Point<G>)>> = groups
        .iter()
        .map(|g| {
            g.iter()
                .filter_map(|n| lookup(n).map(|p| (*n, p)))
                .collect::<Vec<_>>()
        })
        .filter(|g| g.len() >= 2)
        .collect();
    for g in &groups {
        let Some(second) = g.iter().find(|(_, p)| *p != g[0].1) else {
            continue;
        };
        for (name, p) in g {
            if !collinearity_residual(g[0].1, second.1, p).is_zero() {
                return Err(RenderError::Inconsistent(format!(
                    "{name} is not on the line {}{}",
                    g[0].0, second.0
                )));
            }
        }
    }

    let finite: Vec<(&str, V2)> = points
        .iter()
        .filter_map(|(n, p)| chart(p).map(|v| (*n, v)))
        .collect();
    if finite.is_empty() {
        return Err(RenderError::Empty);
    }
    let base = on_conic
        .iter()
        .filter_map(|n| lookup(n).and_then(chart))
        .next()
        .or_else(|| {
            points
                .iter()
                .filter(|(_, p)| conic.contains(p))
                .find_map(|(_, p)| chart(p))
        });
    let branches = base.map(|b| conic_branches(conic, b)).unwrap_or_default();
    let mut extent: Vec<V2> = finite.iter().map(|(_, v)| *v).collect();
    for (pts, closed) in &branches {
        if *closed {
            extent.extend(pts.iter().copied());
        }
    }
    let canvas = Canvas::fit(&extent);

    // Drawn-coordinate re-assertion.
    let tol = 1e-6 * canvas.span();
    for g in &groups {
        let drawn: Vec<(&str, V2)> = g
            .iter()
            .filter_map(|(n, p)| chart(p).map(|v| (*n, v)))
            .collect();
        let Some(far) = drawn.iter().skip(1).max_by(|a, b| {
            let da = (a.1.x - drawn[0].1.x).hypot(a.1.y - drawn[0].1.y);
            let db = (b.1.x - drawn[0].1.x).hypot(b.1.y - drawn[0].1.y);
            da.total_cmp(&db)
        }) else {
            continue;
        };
        if (far.1.x - drawn[0].1.x).hypot(far.1.y - drawn[0].1.y) < tol {
            continue;
        }
        for (name, v) in &drawn {
            if distance_to_line(*v, drawn[0].1, far.1) > tol {
                return Err(RenderError::Inconsistent(format!(
                    "drawn {name} is off its line"
                )));
            }
        }
    }

    let mut svg = String::new();
    let (w, h) = (canvas.width(), canvas.height());
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.2} {h:.2}" width="{w:.0}" height="{h:.0}" font-family="serif" font-size="14">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect width="100%" height="100%" fill="#fffdf8"/>"##
    );
    let _ = writeln!(svg, "<title>{} ({})</title>", report.claim, report.verdict);

    for (pts, closed) in &branches {
        for piece in clip_pieces(pts, &canvas) {
            let path: Vec<String> = piece
                .iter()
                .map(|p| canvas.screen(*p))
                .map(|s| format!("{:.2},{:.2}", s.x, s.y))
                .collect();
            let tag = if *closed && piece.len() == pts.len() {
                "polygon"
            } else {
                "polyline"
            };
            let _ = writeln!(
                svg,
                r##"<{tag} class="conic" points="{}" fill="none" stroke="#1f4e8c" stroke-width="2"/>"##,
                path.join(" ")
            );
        }
    }

    if let Some(k) = axis {
        let c = k.coords();
        let (a, b, d) = (f64_of(&c[0]), f64_of(&c[1]), f64_of(&c[2]));
        let n = a.hypot(b);
        if n > 0.0 {
            let foot = V2 {
                x: -a * d / (n * n),
                y: -b * d / (n * n),
            };
            let dir = V2 {
                x: -b / n,
                y: a / n,
            };
            let ends = [
                canvas.exit(foot, dir),
                canvas.exit(
                    foot,
                    V2 {
                        x: -dir.x,
                        y: -dir.y,
                    },
                ),
            ];
            let (s, t) = (canvas.screen(ends[0]), canvas.screen(ends[1]));
            let _ = writeln!(
                svg,
                r##"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#8c1f1f" stroke-dasharray="6 4"/>"##,
                s.x, s.y, t.x, t.y
            );
        }
    }

    for g in &groups {
        let drawn: Vec<V2> = g.iter().filter_map(|(_, p)| chart(p)).collect();
        let ideal: Vec<V2> = g
            .iter()
            .filter(|(_, p)| p.is_ideal())
            .map(|(_, p)| direction(p))
            .collect();
        let (start, end) = match (drawn.as_slice(), ideal.first()) {
            ([], _) => continue,
            ([only], Some(dir)) => (*only, canvas.exit(*only, *dir)),
            (pts, _) => {
                let o = pts[0];
                let far = pts
                    .iter()
                    .max_by(|a, b| {
                        (a.x - o.x)
                            .hypot(a.y - o.y)
                            .total_cmp(&(b.x - o.x).hypot(b.y - o.y))
                    })
                    .copied()
                    .expect("nonempty");
                let len = (far.x - o.x).hypot(far.y - o.y);
                if len < tol {
                    continue;
                }
                let dir = V2 {
                    x: (far.x - o.x) / len,
                    y: (far.y - o.y) / len,
                };
                let proj = |p: &V2| (p.x - o.x) * dir.x + (p.y - o.y) * dir.y;
                if ideal.is_empty() {
                    let lo = pts.iter().map(proj).fold(f64::INFINITY, f64::min);
                    let hi = pts.iter().map(proj).fold(f64::NEG_INFINITY, f64::max);
                    let at = |t: f64| V2 {
                        x: o.x + t * dir.x,
                        y: o.y + t * dir.y,
                    };
                    (at(lo), at(hi))
                } else {
                    (
                        canvas.exit(
                            o,
                            V2 {
                                x: -dir.x,
                                y: -dir.y,
                            },
                        ),
                        canvas.exit(o, dir),
                    )
                }
            }
        };
        let (s, t) = (canvas.screen(start), canvas.screen(end));
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#444" stroke-width="1"/>"##,
            s.x, s.y, t.x, t.y
        );
    }

    let mut placed: Vec<V2> = Vec::new();
    for (name, p) in &points {
        let (spot, label) = match chart(p) {
            Some(v) => (canvas.screen(v), name.to_string()),
            None => {
                let edge = canvas.exit(canvas.center(), direction(p));
                (canvas.screen(edge), format!("{name} (at infinity)"))
            }
        };
        // Coincident labels are stacked.
        let stack = placed
            .iter()
            .filter(|q| (q.x - spot.x).hypot(q.y - spot.y) < 1.0)
            .count();
        placed.push(spot);
        let _ = writeln!(
            svg,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#111"/>"##,
            spot.x, spot.y
        );
        let (lx, ly) = (
            (spot.x + 5.0).min(w - 8.0 * label.len() as f64).max(2.0),
            (spot.y - 5.0 - 15.0 * stack as f64).max(14.0),
        );
        let _ = writeln!(
            svg,
            r#"<text x="{lx:.2}" y="{ly:.2}">{}</text>"#,
            escape(&label)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ButterflyScenario;
    use crate::projective::Point;

    fn circle_damn() -> Instance<G> {
        let circle = Conic::from_monomials([1, 1, -1, 0, 0, 0].map(G::from_i64)).unwrap();
        Instance::Damn(
            ButterflyScenario::from_chord_starts(
                circle,
                Point::ints(-3, 4, 5),
                Point::ints(3, 4, 5),
                Point::ints(0, 4, 5),
                Point::ints(0, 1, 1),
                Point::ints(4, 3, 5),
                None,
            )
            .unwrap(),
        )
    }

    #[test]
    fn circle_figure_has_all_labels() {
        let svg = render_instance(&circle_damn()).unwrap();
        for label in ["a", "b", "m", "r", "s", "f", "g", "i", "j"] {
            assert!(svg.contains(&format!(">{label}</text>")), "missing {label}");
        }
        assert!(svg.contains("p (at infinity)"));
        assert_eq!(svg.matches("class=\"conic\"").count(), 1);
    }

    #[test]
    fn hyperbola_has_two_branches() {
        let circle = Conic::from_monomials([1, -1, -1, 0, 0, 0].map(G::from_i64)).unwrap();
        let (c, base) = (circle, Point::ints(1, 0, 1));
        let par = crate::conic::ConicParametrization::new(c.clone(), base).unwrap();
        let hexagon = [1, 2, 3, -1, -2, -3].map(|t| par.point_at(&G::from_i64(t)));
        let svg = render_instance(&Instance::Pascal { conic: c, hexagon }).unwrap();
        assert!(svg.matches("class=\"conic\"").count() >= 2);
    }

    #[test]
    fn complex_points_are_rejected() {
        let circle = Conic::from_monomials([1, 1, -1, 0, 0, 0].map(G::from_i64)).unwrap();
        let i = G::i();
        let par =
            crate::conic::ConicParametrization::new(circle.clone(), Point::ints(1, 0, 1)).unwrap();
        let hexagon = [1, 2, 3, -1, -2, -3].map(|t| par.point_at(&G::from_i64(t).add(&i)));
        let err = render_instance(&Instance::Pascal {
            conic: circle,
            hexagon,
        })
        .unwrap_err();
        assert!(matches!(err, RenderError::NotReal { .. }));
    }

    #[test]
    fn branches_are_sampled_on_the_conic() {
        let hyperbola = Conic::from_monomials([1, -1, -1, 0, 0, 0].map(G::from_i64)).unwrap();
        let branches = conic_branches(&hyperbola, V2 { x: 1.0, y: 0.0 });
        assert_eq!(branches.len(), 2);
        for (pts, _) in &branches {
            assert_eq!(pts.len(), SAMPLES);
            for p in pts {
                let r = p.x * p.x - p.y * p.y - 1.0;
                assert!(r.abs() < 1e-6 * (1.0 + p.x * p.x), "{p:?}");
            }
        }
        let circle = Conic::from_monomials([1, 1, -1, 0, 0, 0].map(G::from_i64)).unwrap();
        assert_eq!(conic_branches(&circle, V2 { x: 1.0, y: 0.0 }).len(), 1);
    }
}
