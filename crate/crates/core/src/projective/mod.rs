//! Incidence geometry of the projective plane over a [`Field`].
//!
//! Points and lines are homogeneous triples compared up to scale. Join and
//! meet are both the coordinate cross product.

mod cross_ratio;
mod mat3;
mod point;
mod projectivity;

pub use cross_ratio::CrossRatio;
pub use mat3::{cross, det3, Mat3};
pub use point::{Line, Point};
pub use projectivity::{projectivity_from_points, Projectivity};

use crate::error::{GeometryError, Result};
use crate::field::Field;

/// The line through two distinct points.
pub fn join<F: Field>(p: &Point<F>, q: &Point<F>) -> Result<Line<F>> {
    Line::new(cross(p.coords(), q.coords()))
        .map_err(|_| GeometryError::Degenerate(format!("join of coincident points {p}")))
}

/// The common point of two distinct lines.
pub fn meet<F: Field>(k: &Line<F>, l: &Line<F>) -> Result<Point<F>> {
    Point::new(cross(k.coords(), l.coords()))
        .map_err(|_| GeometryError::Degenerate(format!("meet of coincident lines {k}")))
}

/// Exact determinant test.
pub fn collinear<F: Field>(p: &Point<F>, q: &Point<F>, r: &Point<F>) -> bool {
    collinearity_det(p, q, r).is_zero()
}

pub fn collinearity_det<F: Field>(p: &Point<F>, q: &Point<F>, r: &Point<F>) -> F {
    det3(p.coords(), q.coords(), r.coords())
}

/// Dual of [`collinear`]: three lines through one point.
pub fn concurrent<F: Field>(k: &Line<F>, l: &Line<F>, m: &Line<F>) -> bool {
    det3(k.coords(), l.coords(), m.coords()).is_zero()
}

/// Homogeneous coordinates `(α : β)` of `p` on `line` with respect to the
/// basis `(b1, b2)`, so that `p ≡ α·b1 + β·b2`.
pub fn line_chart<F: Field>(
    line: &Line<F>,
    basis: (&Point<F>, &Point<F>),
    p: &Point<F>,
) -> Result<(F, F)> {
    let (b1, b2) = basis;
    if b1 == b2 {
        return Err(GeometryError::Degenerate(format!(
            "chart basis points coincide at {b1}"
        )));
    }
    for q in [b1, b2, p] {
        let residual = line.eval(q);
        if !residual.is_zero() {
            return Err(GeometryError::NotOnLine {
                point: q.to_string(),
                line: line.to_string(),
                residual: residual.to_string(),
            });
        }
    }
    let (u, v, w) = (b1.coords(), b2.coords(), p.coords());
    // Cramer's rule on a coordinate pair where the basis is independent.
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = u[i].mul(&v[j]).sub(&u[j].mul(&v[i]));
        if d.is_zero() {
            continue;
        }
        let alpha = w[i].mul(&v[j]).sub(&w[j].mul(&v[i]));
        let beta = u[i].mul(&w[j]).sub(&u[j].mul(&w[i]));
        return Ok((alpha, beta));
    }
    unreachable!("distinct points have an independent coordinate pair")
}

fn bracket<F: Field>(a: &(F, F), b: &(F, F)) -> F {
    a.0.mul(&b.1).sub(&b.0.mul(&a.1))
}

/// Cross ratio `([p1p2]·[p3p4] : [p1p4]·[p3p2])` of four collinear points.
///
/// With this ordering the value is −1 exactly when `{p1, p3}` and
/// `{p2, p4}` separate each other harmonically. Two coincident points are
/// allowed and give 0, 1 or ∞; three are an error.
pub fn cross_ratio<F: Field>(
    p1: &Point<F>,
    p2: &Point<F>,
    p3: &Point<F>,
    p4: &Point<F>,
) -> Result<CrossRatio<F>> {
    let pts = [p1, p2, p3, p4];
    let other = pts[1..]
        .iter()
        .find(|q| **q != p1)
        .ok_or_else(|| GeometryError::Degenerate("all four points coincide".into()))?;
    let line = join(p1, other)?;
    for q in pts {
        if !line.contains(q) {
            return Err(GeometryError::NotCollinear {
                det: collinearity_det(p1, other, q).to_string(),
            });
        }
    }
    let c: Vec<(F, F)> = pts
        .iter()
        .map(|q| line_chart(&line, (p1, other), q))
        .collect::<Result<_>>()?;
    let num = bracket(&c[0], &c[1]).mul(&bracket(&c[2], &c[3]));
    let den = bracket(&c[0], &c[3]).mul(&bracket(&c[2], &c[1]));
    if num.is_zero() && den.is_zero() {
        return Err(GeometryError::Degenerate(
            "three of the four points coincide".into(),
        ));
    }
    Ok(CrossRatio::new(num, den))
}

/// The point `w'` with `cross_ratio(w', u, w, v) = −1`.
///
/// In the chart `w = α·u + β·v` this is `α·u − β·v`.
pub fn harmonic_conjugate<F: Field>(u: &Point<F>, v: &Point<F>, w: &Point<F>) -> Result<Point<F>> {
    let line = join(u, v)?;
    if w == u || w == v {
        return Err(GeometryError::Degenerate(format!(
            "harmonic conjugate of {w} with respect to a pair containing it"
        )));
    }
    let (alpha, beta) = line_chart(&line, (u, v), w)?;
    u.combine(&alpha, v, &beta.neg())
}

/// Central projection of `p` on `from` to the line `to`, through `center`.
pub fn perspectivity<F: Field>(
    center: &Point<F>,
    from: &Line<F>,
    to: &Line<F>,
    p: &Point<F>,
) -> Result<Point<F>> {
    if from.contains(center) || to.contains(center) {
        return Err(GeometryError::Precondition(format!(
            "perspectivity center {center} lies on one of the lines"
        )));
    }
    let residual = from.eval(p);
    if !residual.is_zero() {
        return Err(GeometryError::NotOnLine {
            point: p.to_string(),
            line: from.to_string(),
            residual: residual.to_string(),
        });
    }
    meet(&join(center, p)?, to)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational as G;

    type P = Point<G>;
    type L = Line<G>;

    #[test]
    fn join_examples() {
        assert_eq!(
            join(&P::ints(0, 1, 0), &P::ints(0, 0, 1)).unwrap(),
            L::ints(1, 0, 0)
        );
        assert_eq!(
            join(&P::ints(1, 0, 0), &P::ints(0, 1, 0)).unwrap(),
            L::ints(0, 0, 1)
        );
        assert!(matches!(
            join(&P::ints(1, 2, 3), &P::ints(2, 4, 6)),
            Err(GeometryError::Degenerate(_))
        ));
    }

    #[test]
    fn meet_examples() {
        assert_eq!(
            meet(&L::ints(1, 0, 0), &L::ints(0, 1, -1)).unwrap(),
            P::ints(0, 1, 1)
        );
        assert_eq!(
            meet(&L::ints(1, 0, 0), &L::ints(0, 1, 0)).unwrap(),
            P::ints(0, 0, 1)
        );
        assert!(meet(&L::ints(1, 1, 0), &L::ints(-2, -2, 0)).is_err());
    }

    #[test]
    fn collinear_examples() {
        assert!(collinear(
            &P::ints(0, 1, 0),
            &P::ints(0, 0, 1),
            &P::ints(0, 1, 1)
        ));
        assert!(!collinear(
            &P::ints(1, 0, 0),
            &P::ints(0, 1, 0),
            &P::ints(0, 0, 1)
        ));
        assert!(collinear(
            &P::ints(2, 1, 1),
            &P::ints(1, 1, 1),
            &P::ints(0, 1, 1)
        ));
    }

    #[test]
    fn line_chart_examples() {
        let l = L::ints(0, 1, -1);
        let (b1, b2) = (P::ints(1, 0, 0), P::ints(0, 1, 1));
        let chart = |p: &P| {
            let (a, b) = line_chart(&l, (&b1, &b2), p).unwrap();
            CrossRatio::new(a, b)
        };
        assert_eq!(chart(&P::ints(1, 1, 1)), CrossRatio::finite(G::one()));
        assert_eq!(chart(&P::ints(2, 1, 1)), CrossRatio::finite(G::from_i64(2)));
        assert_eq!(chart(&b1), CrossRatio::infinity());
        assert!(matches!(
            line_chart(&l, (&b1, &b2), &P::ints(1, 2, 3)),
            Err(GeometryError::NotOnLine { .. })
        ));
        assert!(line_chart(&l, (&b1, &b1), &b2).is_err());
    }

    #[test]
    fn lemma_one_cross_ratio() {
        // p, y, m, y' on y = z; affine images 1/2, 1, ∞, 0.
        let cr = cross_ratio(
            &P::ints(2, 1, 1),
            &P::ints(1, 1, 1),
            &P::ints(0, 1, 1),
            &P::ints(1, 0, 0),
        )
        .unwrap();
        assert_eq!(cr, CrossRatio::harmonic());
    }

    #[test]
    fn coincident_entries() {
        let (a, b, m) = (P::ints(1, 0, 1), P::ints(3, 0, 1), P::ints(7, 0, 1));
        assert_eq!(
            cross_ratio(&a, &b, &m, &b).unwrap(),
            CrossRatio::finite(G::one())
        );
        assert_eq!(
            cross_ratio(&a, &a, &m, &b).unwrap(),
            CrossRatio::finite(G::zero())
        );
        assert_eq!(cross_ratio(&a, &b, &m, &a).unwrap(), CrossRatio::infinity());
        assert!(cross_ratio(&a, &a, &a, &b).is_err());
        assert!(matches!(
            cross_ratio(&a, &b, &m, &P::ints(0, 1, 0)),
            Err(GeometryError::NotCollinear { .. })
        ));
    }

    #[test]
    fn harmonic_conjugate_examples() {
        let w =
            harmonic_conjugate(&P::ints(1, 1, 1), &P::ints(1, 0, 0), &P::ints(0, 1, 1)).unwrap();
        assert_eq!(w, P::ints(2, 1, 1));
        // Midpoint of -1 and 1 on the x-axis goes to the ideal point.
        let w =
            harmonic_conjugate(&P::ints(-1, 0, 1), &P::ints(1, 0, 1), &P::ints(0, 0, 1)).unwrap();
        assert_eq!(w, P::ints(1, 0, 0));
        assert!(
            harmonic_conjugate(&P::ints(-1, 0, 1), &P::ints(1, 0, 1), &P::ints(1, 0, 1)).is_err()
        );
    }

    #[test]
    fn perspectivity_examples() {
        let (center, from, to) = (P::ints(1, 1, 1), L::ints(1, 0, 0), L::ints(0, 1, 0));
        // (0:0:1) is the meet of the two lines, hence fixed.
        assert_eq!(
            perspectivity(&center, &from, &to, &P::ints(0, 0, 1)).unwrap(),
            P::ints(0, 0, 1)
        );
        assert_eq!(
            perspectivity(&center, &from, &to, &P::ints(0, 1, 1)).unwrap(),
            P::ints(1, 0, 0)
        );
        let fixed = meet(&from, &to).unwrap();
        assert_eq!(perspectivity(&center, &from, &to, &fixed).unwrap(), fixed);
        assert!(perspectivity(&P::ints(0, 1, 1), &from, &to, &P::ints(0, 0, 1)).is_err());
    }
}
