use crate::conic::Conic;
use crate::error::{GeometryError, Result};
use crate::field::Field;
use crate::projective::{harmonic_conjugate, join, meet, Line, Point};

/// An axis line together with its pole relative to a conic.
///
/// The frame defines the reflection across the axis: a point `y` goes to
/// the harmonic conjugate of `y` with respect to the pole `p` and the point
/// `n` where the line `py` crosses the axis. Points of the axis are fixed,
/// every line through the pole is mapped to itself, and the map is
/// undefined only at the pole.
///
/// The chord endpoints `u`, `v` (axis ∩ conic) are optional: over a field
/// without square roots they are only available when supplied. The
/// reflection itself never needs them.
#[derive(Clone, Debug)]
pub struct ReflectionFrame<F> {
    conic: Conic<F>,
    axis: Line<F>,
    pole: Point<F>,
    endpoints: Option<(Point<F>, Point<F>)>,
}

impl<F: Field> ReflectionFrame<F> {
    /// Fails if the axis is tangent to the conic (its pole would lie on it).
    pub fn new(conic: &Conic<F>, axis: Line<F>) -> Result<Self> {
        let pole = conic.pole(&axis);
        if axis.contains(&pole) {
            return Err(GeometryError::Precondition(format!(
                "axis {axis} is tangent to the conic at {pole}"
            )));
        }
        Ok(ReflectionFrame {
            conic: conic.clone(),
            axis,
            pole,
            endpoints: None,
        })
    }

    /// Frame on the chord through two distinct conic points.
    pub fn from_chord(conic: &Conic<F>, u: Point<F>, v: Point<F>) -> Result<Self> {
        let axis = join(&u, &v)?;
        Self::new(conic, axis)?.with_endpoints(u, v)
    }

    pub fn with_endpoints(mut self, u: Point<F>, v: Point<F>) -> Result<Self> {
        if u == v {
            return Err(GeometryError::Degenerate(format!(
                "chord endpoints coincide at {u}"
            )));
        }
        for q in [&u, &v] {
            self.conic.require_on(q)?;
            let residual = self.axis.eval(q);
            if !residual.is_zero() {
                return Err(GeometryError::NotOnLine {
                    point: q.to_string(),
                    line: self.axis.to_string(),
                    residual: residual.to_string(),
                });
            }
        }
        self.endpoints = Some((u, v));
        Ok(self)
    }

    pub fn conic(&self) -> &Conic<F> {
        &self.conic
    }

    pub fn axis(&self) -> &Line<F> {
        &self.axis
    }

    pub fn pole(&self) -> &Point<F> {
        &self.pole
    }

    pub fn endpoints(&self) -> Option<(&Point<F>, &Point<F>)> {
        self.endpoints.as_ref().map(|(u, v)| (u, v))
    }

    pub fn reflect_point(&self, y: &Point<F>) -> Result<Point<F>> {
        if *y == self.pole {
            return Err(GeometryError::Precondition(format!(
                "reflection is undefined at the pole {y}"
            )));
        }
        if self.axis.contains(y) {
            return Ok(y.clone());
        }
        let ray = join(&self.pole, y)?;
        let n = meet(&self.axis, &ray)?;
        harmonic_conjugate(&self.pole, &n, y)
    }

    /// Lines through the pole are returned unchanged; any other line maps
    /// to the join of the images of two of its points.
    pub fn reflect_line(&self, l: &Line<F>) -> Result<Line<F>> {
        if l.contains(&self.pole) {
            return Ok(l.clone());
        }
        let a = l.point_other_than(None);
        let b = l.point_other_than(Some(&a));
        let image = join(&self.reflect_point(&a)?, &self.reflect_point(&b)?)?;
        debug_assert!({
            let c = a.combine(&F::one(), &b, &F::one())?;
            image.contains(&self.reflect_point(&c)?)
        });
        Ok(image)
    }

    /// The same frame seen through a projectivity.
    pub fn transform(&self, t: &crate::projective::Projectivity<F>) -> Result<Self> {
        let frame = Self::new(&self.conic.transform(t), t.apply_line(&self.axis))?;
        match &self.endpoints {
            Some((u, v)) => frame.with_endpoints(t.apply_point(u), t.apply_point(v)),
            None => Ok(frame),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::ConicParametrization;
    use crate::field::GaussianRational as G;
    use crate::projective::Mat3;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type P = Point<G>;
    type L = Line<G>;

    fn example_conic() -> Conic<G> {
        Conic::from_monomials([0, 0, 0, 1, 1, -2].map(G::from_i64)).unwrap()
    }

    fn circle() -> Conic<G> {
        Conic::from_monomials([1, 1, -1, 0, 0, 0].map(G::from_i64)).unwrap()
    }

    /// Closed form of the same involution: `y ↦ (k·p)·y − 2(k·y)·p`, the
    /// harmonic homology with center `p` and axis `k`.
    fn homology(frame: &ReflectionFrame<G>) -> Mat3<G> {
        let k = frame.axis().coords();
        let p = frame.pole().coords();
        let kp = frame.axis().eval(frame.pole());
        Mat3::from_fn(|i, j| {
            let id = if i == j { kp.clone() } else { G::zero() };
            id.sub(&G::from_i64(2).mul(&p[i]).mul(&k[j]))
        })
    }

    #[test]
    fn example_frame() {
        let f = ReflectionFrame::new(&example_conic(), L::ints(1, 0, 0))
            .unwrap()
            .with_endpoints(P::ints(0, 1, 0), P::ints(0, 0, 1))
            .unwrap();
        assert_eq!(*f.pole(), P::ints(2, 1, 1));
        assert_eq!(
            f.reflect_point(&P::ints(1, 1, 1)).unwrap(),
            P::ints(1, 0, 0)
        );
        assert_eq!(
            f.reflect_point(&P::ints(0, 3, 7)).unwrap(),
            P::ints(0, 3, 7)
        );
        assert!(f.reflect_point(&P::ints(2, 1, 1)).is_err());
    }

    #[test]
    fn circle_frames() {
        let f = ReflectionFrame::new(&circle(), L::ints(0, 1, 0)).unwrap();
        assert_eq!(*f.pole(), P::ints(0, 1, 0));
        assert!(ReflectionFrame::new(&circle(), L::ints(1, 0, -1)).is_err());
        // Endpoints must lie on both the conic and the axis.
        let f = ReflectionFrame::new(&circle(), L::ints(0, 1, 0)).unwrap();
        assert!(f
            .clone()
            .with_endpoints(P::ints(1, 0, 1), P::ints(-1, 0, 1))
            .is_ok());
        assert!(f
            .clone()
            .with_endpoints(P::ints(0, 1, 1), P::ints(-1, 0, 1))
            .is_err());
        assert!(f
            .with_endpoints(P::ints(1, 0, 1), P::ints(1, 0, 1))
            .is_err());
    }

    #[test]
    fn reflection_matches_homology_and_is_involutive() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let (c, base) = Conic::<G>::random(&mut rng, 8, false);
            let par = ConicParametrization::new(c.clone(), base).unwrap();
            let u = par.point_at(&G::random(&mut rng, 8));
            let v = par.point_at(&G::random(&mut rng, 8));
            let Ok(frame) = ReflectionFrame::from_chord(&c, u, v) else {
                continue;
            };
            let h = homology(&frame);
            let y = par.point_at(&G::random(&mut rng, 8));
            let y2 = frame.reflect_point(&y).unwrap();
            assert_eq!(P::new(h.mul_vec(y.coords())).unwrap(), y2);
            assert!(c.contains(&y2));
            assert_eq!(frame.reflect_point(&y2).unwrap(), y);
        }
    }

    #[test]
    fn reflect_line_cases() {
        let f = ReflectionFrame::new(&example_conic(), L::ints(1, 0, 0)).unwrap();
        assert_eq!(f.reflect_line(f.axis()).unwrap(), *f.axis());
        let through_pole = join(f.pole(), &P::ints(3, 1, 7)).unwrap();
        assert_eq!(f.reflect_line(&through_pole).unwrap(), through_pole);
        let (y, z) = (P::ints(1, 1, 1), P::ints(1, 2, 3));
        let l = join(&y, &z).unwrap();
        let image = join(&f.reflect_point(&y).unwrap(), &f.reflect_point(&z).unwrap()).unwrap();
        assert_eq!(f.reflect_line(&l).unwrap(), image);
    }
}
