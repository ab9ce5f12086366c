//! Nondegenerate conics as symmetric forms.
//!
//! No routine here ever solves a quadratic: new conic points always come
//! from a chord through a point already known to lie on the conic, so every
//! coordinate stays in the base field.

use std::fmt;

use rand::Rng;

use crate::error::{GeometryError, Result};
use crate::field::{dot3, Field};
use crate::projective::{collinear, join, Line, Mat3, Point, Projectivity};

/// The zero set of `xᵀ·M·x` for a symmetric, invertible `M`, up to scale.
#[derive(Clone, Debug)]
pub struct Conic<F> {
    form: Mat3<F>,
    adjugate: Mat3<F>,
}

impl<F: Field> Conic<F> {
    /// Rejects asymmetric or singular forms; a singular form reports its
    /// determinant as witness.
    pub fn from_symmetric(form: Mat3<F>) -> Result<Self> {
        if form.is_zero() {
            return Err(GeometryError::Degenerate("zero quadratic form".into()));
        }
        if !form.is_symmetric() {
            return Err(GeometryError::Precondition(
                "conic matrix is not symmetric".into(),
            ));
        }
        let det = form.det();
        if det.is_zero() {
            return Err(GeometryError::DegenerateConic {
                det: det.to_string(),
            });
        }
        let form = form.primitive();
        let adjugate = form.adjugate();
        Ok(Conic { form, adjugate })
    }

    /// From the six distinct entries `[m11, m22, m33, m12, m13, m23]`.
    pub fn from_entries(e: [F; 6]) -> Result<Self> {
        let [a, b, c, d, f, g] = e;
        Self::from_symmetric(Mat3::new([
            [a, d.clone(), f.clone()],
            [d, b, g.clone()],
            [f, g, c],
        ]))
    }

    /// From monomial coefficients of `x², y², z², xy, xz, yz`.
    pub fn from_monomials(c: [F; 6]) -> Result<Self> {
        let half = F::from_i64(2).inv()?;
        let [xx, yy, zz, xy, xz, yz] = c;
        Self::from_entries([xx, yy, zz, xy.mul(&half), xz.mul(&half), yz.mul(&half)])
    }

    pub fn form(&self) -> &Mat3<F> {
        &self.form
    }

    /// `[m11, m22, m33, m12, m13, m23]`.
    pub fn entries(&self) -> [F; 6] {
        let m = &self.form;
        [
            m.get(0, 0).clone(),
            m.get(1, 1).clone(),
            m.get(2, 2).clone(),
            m.get(0, 1).clone(),
            m.get(0, 2).clone(),
            m.get(1, 2).clone(),
        ]
    }

    pub fn det(&self) -> F {
        self.form.det()
    }

    /// Symmetric bilinear form `pᵀ·M·q`.
    pub fn bilinear(&self, p: &Point<F>, q: &Point<F>) -> F {
        dot3(p.coords(), &self.form.mul_vec(q.coords()))
    }

    /// `pᵀ·M·p`, zero exactly on the conic.
    pub fn residual(&self, p: &Point<F>) -> F {
        self.bilinear(p, p)
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        self.residual(p).is_zero()
    }

    pub(crate) fn require_on(&self, p: &Point<F>) -> Result<()> {
        let residual = self.residual(p);
        if residual.is_zero() {
            Ok(())
        } else {
            Err(GeometryError::NotOnConic {
                point: p.to_string(),
                residual: residual.to_string(),
            })
        }
    }

    /// The line `M·p`. For `p` on the conic this is the tangent there.
    pub fn polar(&self, p: &Point<F>) -> Line<F> {
        Line::new(self.form.mul_vec(p.coords())).expect("nondegenerate form")
    }

    /// The point `adj(M)·l`, inverse to [`Conic::polar`] up to scale.
    pub fn pole(&self, l: &Line<F>) -> Point<F> {
        Point::new(self.adjugate.mul_vec(l.coords())).expect("nondegenerate form")
    }

    pub fn tangent_at(&self, p: &Point<F>) -> Result<Line<F>> {
        self.require_on(p)?;
        Ok(self.polar(p))
    }

    /// A line through `p` that is tangent to the conic there.
    pub fn is_tangent(&self, l: &Line<F>) -> bool {
        // l is tangent iff lᵀ·adj(M)·l = 0, i.e. l contains its own pole.
        l.contains(&self.pole(l))
    }

    /// The other point where `line` meets the conic, given one point
    /// `known` of the intersection. Returns `known` itself exactly when
    /// `line` is tangent there.
    pub fn second_intersection(&self, line: &Line<F>, known: &Point<F>) -> Result<Point<F>> {
        self.require_on(known)?;
        let on_line = line.eval(known);
        if !on_line.is_zero() {
            return Err(GeometryError::NotOnLine {
                point: known.to_string(),
                line: line.to_string(),
                residual: on_line.to_string(),
            });
        }
        let q = line.point_other_than(Some(known));
        // On s·known + t·q the form is t·(2s·B(known, q) + t·Q(q)).
        let b = self.bilinear(known, &q);
        if b.is_zero() {
            return Ok(known.clone());
        }
        let qq = self.residual(&q);
        known.combine(&qq, &q, &b.add(&b).neg())
    }

    /// The second point of the chord from `known` through `through`.
    pub fn chord_through(&self, known: &Point<F>, through: &Point<F>) -> Result<Point<F>> {
        self.second_intersection(&join(known, through)?, known)
    }

    /// Image under `t`: the form `adj(T)ᵀ·M·adj(T)`, so that `p ∈ C`
    /// exactly when `T·p ∈ T(C)`.
    pub fn transform(&self, t: &Projectivity<F>) -> Self {
        let inv = t.inverse_matrix();
        let form = inv.transpose().mul(&self.form).mul(inv);
        Self::from_symmetric(form).expect("projectivities preserve nondegeneracy")
    }

    /// The unique conic through five points, no four of them collinear.
    pub fn through_five(points: &[Point<F>; 5]) -> Result<Self> {
        for i in 0..5 {
            for j in i + 1..5 {
                if points[i] == points[j] {
                    return Err(GeometryError::Degenerate(format!(
                        "repeated point {}",
                        points[i]
                    )));
                }
            }
        }
        for skip in 0..5 {
            let four: Vec<&Point<F>> = (0..5).filter(|&k| k != skip).map(|k| &points[k]).collect();
            if collinear(four[0], four[1], four[2]) && collinear(four[0], four[1], four[3]) {
                return Err(GeometryError::Degenerate(
                    "four of the five points are collinear".into(),
                ));
            }
        }
        let rows: Vec<Vec<F>> = points
            .iter()
            .map(|p| {
                let [x, y, z] = p.coords();
                vec![
                    x.square(),
                    y.square(),
                    z.square(),
                    x.mul(y),
                    x.mul(z),
                    y.mul(z),
                ]
            })
            .collect();
        let kernel = nullspace_vector(rows, 6).ok_or_else(|| {
            GeometryError::Degenerate("incidence system does not determine a unique conic".into())
        })?;
        let c: [F; 6] = kernel.try_into().expect("six unknowns");
        Self::from_monomials(c)
    }

    /// `2xz − 2y²`, with the rational parametrization `(1 : t : t²)`.
    pub fn reference() -> Self {
        Self::from_symmetric(Mat3::from_i64([[0, 0, 1], [0, -2, 0], [1, 0, 0]]))
            .expect("reference conic is nondegenerate")
    }

    /// A random nondegenerate conic, the image of [`Conic::reference`] under
    /// a random projectivity, together with a point known to lie on it.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, height: u64, real: bool) -> (Self, Point<F>) {
        let t = Projectivity::random(rng, height, real);
        let conic = Self::reference().transform(&t);
        let base = t.apply_point(&Point::ints(1, 0, 0));
        (conic, base)
    }
}

impl<F: Field> PartialEq for Conic<F> {
    fn eq(&self, other: &Self) -> bool {
        self.form.proportional(&other.form)
    }
}

impl<F: Field> Eq for Conic<F> {}

/// `[m11, m22, m33, m12, m13, m23]` in scalar text format.
impl<F: Field> fmt::Display for Conic<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.entries();
        write!(
            f,
            "[{}, {}, {}, {}, {}, {}]",
            e[0], e[1], e[2], e[3], e[4], e[5]
        )
    }
}

/// Basis vector of a one-dimensional kernel, or `None` if the kernel has
/// any other dimension.
fn nullspace_vector<F: Field>(mut rows: Vec<Vec<F>>, cols: usize) -> Option<Vec<F>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].inv().ok()?;
        for v in rows[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let factor = rows[k][c].clone();
                for j in 0..cols {
                    let delta = factor.mul(&rows[r][j]);
                    rows[k][j] = rows[k][j].sub(&delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![F::zero(); cols];
    v[free] = F::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = rows[row][free].neg();
    }
    Some(v)
}

/// Coefficients of `A·x² + B·y² + Q·xy + D·x + E·y + F = 0` in the affine
/// plane, all real.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineConicSpec<F> {
    pub a: F,
    pub b: F,
    pub q: F,
    pub d: F,
    pub e: F,
    pub f: F,
}

impl<F: Field> AffineConicSpec<F> {
    pub fn new(c: [F; 6]) -> Result<Self> {
        let [a, b, q, d, e, f] = c;
        let spec = AffineConicSpec { a, b, q, d, e, f };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_i64(c: [i64; 6]) -> Result<Self> {
        Self::new(c.map(F::from_i64))
    }

    fn validate(&self) -> Result<()> {
        if self.a.is_zero() && self.b.is_zero() && self.q.is_zero() {
            return Err(GeometryError::Precondition(
                "affine conic has no quadratic terms".into(),
            ));
        }
        if !self.coefficients().iter().all(F::is_real) {
            return Err(GeometryError::Precondition(
                "affine conic coefficients must be real".into(),
            ));
        }
        Ok(())
    }

    pub fn coefficients(&self) -> [F; 6] {
        [
            self.a.clone(),
            self.b.clone(),
            self.q.clone(),
            self.d.clone(),
            self.e.clone(),
            self.f.clone(),
        ]
    }

    pub fn eval(&self, x: &F, y: &F) -> F {
        self.a
            .mul(&x.square())
            .add(&self.b.mul(&y.square()))
            .add(&self.q.mul(&x.mul(y)))
            .add(&self.d.mul(x))
            .add(&self.e.mul(y))
            .add(&self.f)
    }

    /// `A·x² + B·y² + Q·xy + D·xz + E·yz + F·z²`.
    pub fn homogenize(&self) -> Result<Conic<F>> {
        Conic::from_monomials([
            self.a.clone(),
            self.b.clone(),
            self.f.clone(),
            self.q.clone(),
            self.d.clone(),
            self.e.clone(),
        ])
    }

    /// Reads the affine coefficients back from a conic whose form is real,
    /// scaled to the primitive representative.
    pub fn from_conic(conic: &Conic<F>) -> Result<Self> {
        let [m11, m22, m33, m12, m13, m23] = conic.entries();
        let two = F::from_i64(2);
        let mut c = [m11, m22, two.mul(&m12), two.mul(&m13), two.mul(&m23), m33];
        F::make_primitive(&mut c);
        Self::new(c)
    }
}

impl<F: Field> fmt::Display for AffineConicSpec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}, {}, {}]",
            self.a, self.b, self.q, self.d, self.e, self.f
        )
    }
}

/// Square-root-free parametrization of a conic by the pencil of lines
/// through a base point.
///
/// Parameter `(t0 : t1)` selects the line `t0·T − t1·L` where `T` is the
/// tangent at the base and `L` a fixed chord through it (both scaled to
/// canonical form); the image is that line's second conic point. `t = ∞`
/// picks the tangent and so returns the base.
#[derive(Clone, Debug)]
pub struct ConicParametrization<F> {
    conic: Conic<F>,
    base: Point<F>,
    tangent: Line<F>,
    chord: Line<F>,
}

impl<F: Field> ConicParametrization<F> {
    pub fn new(conic: Conic<F>, base: Point<F>) -> Result<Self> {
        let tangent = conic.tangent_at(&base)?.canonical();
        let chord = [
            Point::ints(1, 0, 0),
            Point::ints(0, 1, 0),
            Point::ints(0, 0, 1),
        ]
        .iter()
        .filter(|e| **e != base)
        .map(|e| join(&base, e).expect("distinct points"))
        .find(|l| *l != tangent)
        .expect("at most one coordinate line direction is tangent")
        .canonical();
        Ok(ConicParametrization {
            conic,
            base,
            tangent,
            chord,
        })
    }

    pub fn conic(&self) -> &Conic<F> {
        &self.conic
    }

    pub fn base(&self) -> &Point<F> {
        &self.base
    }

    /// Line of the pencil for parameter `(t0 : t1)`.
    pub fn pencil_line(&self, t0: &F, t1: &F) -> Result<Line<F>> {
        self.tangent.combine(t0, &self.chord, &t1.neg())
    }

    pub fn point(&self, t0: &F, t1: &F) -> Result<Point<F>> {
        let line = self.pencil_line(t0, t1)?;
        self.conic.second_intersection(&line, &self.base)
    }

    /// Affine parameter `t`, i.e. `(t : 1)`.
    pub fn point_at(&self, t: &F) -> Point<F> {
        self.point(t, &F::one())
            .expect("(t : 1) is a valid parameter")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational as G;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type P = Point<G>;
    type L = Line<G>;

    fn example_conic() -> Conic<G> {
        // A·xy + B·xz + C·yz with A = B = 1, C = -2.
        Conic::from_monomials([0, 0, 0, 1, 1, -2].map(G::from_i64)).unwrap()
    }

    fn circle() -> Conic<G> {
        Conic::from_monomials([1, 1, -1, 0, 0, 0].map(G::from_i64)).unwrap()
    }

    #[test]
    fn construction_and_degeneracy() {
        let c = example_conic();
        assert!(!c.det().is_zero());
        assert!(!circle().det().is_zero());
        // xy - xz = x(y - z)
        let bad = Conic::<G>::from_monomials([0, 0, 0, 1, -1, 0].map(G::from_i64));
        assert!(matches!(bad, Err(GeometryError::DegenerateConic { ref det }) if det == "0"));
        assert!(Conic::<G>::from_entries([0, 0, 0, 0, 0, 0].map(G::from_i64)).is_err());
        let asym = Mat3::<G>::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(matches!(
            Conic::from_symmetric(asym),
            Err(GeometryError::Precondition(_))
        ));
    }

    #[test]
    fn membership() {
        assert!(example_conic().contains(&P::ints(1, 1, 1)));
        assert!(circle().contains(&P::ints(-3, 4, 5)));
        assert!(!circle().contains(&P::ints(1, 1, 1)));
    }

    #[test]
    fn tangents() {
        let c = example_conic();
        assert_eq!(c.tangent_at(&P::ints(0, 1, 0)).unwrap(), L::ints(1, 0, -2));
        assert_eq!(c.tangent_at(&P::ints(0, 0, 1)).unwrap(), L::ints(1, -2, 0));
        assert_eq!(
            circle().tangent_at(&P::ints(1, 0, 1)).unwrap(),
            L::ints(1, 0, -1)
        );
        assert!(matches!(
            circle().tangent_at(&P::ints(1, 1, 1)),
            Err(GeometryError::NotOnConic { .. })
        ));
        assert!(circle().is_tangent(&L::ints(1, 0, -1)));
        assert!(!circle().is_tangent(&L::ints(1, 0, 0)));
    }

    #[test]
    fn pole_of_worked_example_axis() {
        assert_eq!(example_conic().pole(&L::ints(1, 0, 0)), P::ints(2, 1, 1));
        assert_eq!(
            example_conic().pole(&L::ints(1, 0, 0)),
            P::parse("(1 : 1/2 : 1/2)").unwrap()
        );
    }

    #[test]
    fn five_point_conic() {
        let pts = [
            P::ints(1, 0, 0),
            P::ints(0, 1, 0),
            P::ints(0, 0, 1),
            P::ints(1, 1, 1),
            P::ints(1, 2, 3),
        ];
        let c = Conic::through_five(&pts).unwrap();
        let expect = Conic::from_monomials([0, 0, 0, 3, -4, 1].map(G::from_i64)).unwrap();
        assert_eq!(c, expect);

        let mut bad = pts.clone();
        bad[4] = P::ints(2, 1, 1);
        assert!(matches!(
            Conic::through_five(&bad),
            Err(GeometryError::DegenerateConic { .. })
        ));

        let circle_pts = [
            P::ints(1, 0, 1),
            P::ints(0, 1, 1),
            P::ints(-3, 4, 5),
            P::ints(4, -3, 5),
            P::ints(-5, -12, 13),
        ];
        assert_eq!(Conic::through_five(&circle_pts).unwrap(), circle());

        let mut repeated = circle_pts.clone();
        repeated[4] = P::ints(2, 0, 2);
        assert!(Conic::through_five(&repeated).is_err());
        let collinear4 = [
            P::ints(0, 0, 1),
            P::ints(1, 0, 1),
            P::ints(2, 0, 1),
            P::ints(3, 0, 1),
            P::ints(0, 1, 1),
        ];
        assert!(Conic::through_five(&collinear4).is_err());
    }

    #[test]
    fn second_intersection_examples() {
        let c = circle();
        let known = P::ints(4, 3, 5);
        let l = join(&known, &P::ints(0, 4, 5)).unwrap();
        assert_eq!(
            c.second_intersection(&l, &known).unwrap(),
            P::ints(-36, 77, 85)
        );
        let t = c.tangent_at(&known).unwrap();
        assert_eq!(c.second_intersection(&t, &known).unwrap(), known);
        assert_eq!(
            c.second_intersection(&L::ints(1, 0, 0), &P::ints(0, 1, 1))
                .unwrap(),
            P::ints(0, -1, 1)
        );
        assert!(c
            .second_intersection(&L::ints(0, 1, 0), &P::ints(0, 1, 1))
            .is_err());
    }

    #[test]
    fn circle_parametrization() {
        let par = ConicParametrization::new(circle(), P::ints(-1, 0, 1)).unwrap();
        assert_eq!(par.point_at(&G::zero()), P::ints(1, 0, 1));
        assert_eq!(par.point_at(&G::from_i64(2)), P::ints(-3, 4, 5));
        assert_eq!(par.point(&G::one(), &G::zero()).unwrap(), P::ints(-1, 0, 1));
        for t in -5..=5 {
            // Standard form ((1 - t²) : 2t : (1 + t²)).
            let expect = P::ints(1 - t * t, 2 * t, 1 + t * t);
            assert_eq!(par.point_at(&G::from_i64(t)), expect);
        }
    }

    #[test]
    fn homogenization() {
        let circle_spec = AffineConicSpec::<G>::from_i64([1, 1, 0, 0, 0, -1]).unwrap();
        assert_eq!(circle_spec.homogenize().unwrap(), circle());
        let hyperbola = AffineConicSpec::<G>::from_i64([1, -1, 0, 0, 0, -1]).unwrap();
        assert!(hyperbola.homogenize().unwrap().contains(&P::ints(-5, 3, 4)));
        let parabola = AffineConicSpec::<G>::from_i64([1, 0, 0, 0, -1, 0]).unwrap();
        assert!(parabola.homogenize().unwrap().contains(&P::ints(2, 4, 1)));
        assert!(AffineConicSpec::<G>::from_i64([0, 0, 0, 1, 1, 1]).is_err());
        let spec = AffineConicSpec::<G>::from_i64([3, -2, 5, 7, -1, 4]).unwrap();
        assert_eq!(
            AffineConicSpec::from_conic(&spec.homogenize().unwrap()).unwrap(),
            spec
        );
    }

    #[test]
    fn random_conics_contain_their_base() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let (c, base) = Conic::<G>::random(&mut rng, 10, false);
            assert!(c.contains(&base));
            let par = ConicParametrization::new(c.clone(), base).unwrap();
            for _ in 0..5 {
                assert!(c.contains(&par.point_at(&G::random(&mut rng, 10))));
            }
        }
    }
}
