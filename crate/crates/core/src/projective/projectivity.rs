use rand::Rng;

use super::mat3::Mat3;
use super::{collinear, Line, Point};
use crate::error::{GeometryError, Result};
use crate::field::Field;

/// An invertible linear map of the plane, up to scale.
///
/// Points transform by `x ↦ M·x`, lines by `l ↦ adj(M)ᵀ·l`, which is the
/// contragredient `(M⁻¹)ᵀ` up to the factor `det M`.
#[derive(Clone, Debug)]
pub struct Projectivity<F> {
    matrix: Mat3<F>,
    adjugate: Mat3<F>,
}

impl<F: Field> Projectivity<F> {
    pub fn new(matrix: Mat3<F>) -> Result<Self> {
        let det = matrix.det();
        if det.is_zero() {
            return Err(GeometryError::Degenerate(
                "singular projectivity matrix".into(),
            ));
        }
        let matrix = matrix.primitive();
        let adjugate = matrix.adjugate();
        Ok(Projectivity { matrix, adjugate })
    }

    pub fn identity() -> Self {
        Self::new(Mat3::identity()).expect("identity is invertible")
    }

    /// Rejection-samples an invertible matrix with entries from [`Field::random`]
    /// (or [`Field::random_real`] when `real` is set).
    pub fn random<R: Rng + ?Sized>(rng: &mut R, height: u64, real: bool) -> Self {
        loop {
            let m = Mat3::from_fn(|_, _| {
                if real {
                    F::random_real(rng, height)
                } else {
                    F::random(rng, height)
                }
            });
            if let Ok(t) = Self::new(m) {
                return t;
            }
        }
    }

    pub fn matrix(&self) -> &Mat3<F> {
        &self.matrix
    }

    pub fn apply_point(&self, p: &Point<F>) -> Point<F> {
        Point::new(self.matrix.mul_vec(p.coords())).expect("invertible map")
    }

    pub fn apply_line(&self, l: &Line<F>) -> Line<F> {
        Line::new(self.adjugate.transpose().mul_vec(l.coords())).expect("invertible map")
    }

    /// Matrix proportional to the inverse.
    pub fn inverse(&self) -> Self {
        Projectivity {
            matrix: self.adjugate.clone(),
            adjugate: self.matrix.clone(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(self.matrix.mul(&other.matrix)).expect("product of invertible maps")
    }

    /// Adjugate of the matrix, proportional to its inverse.
    pub fn inverse_matrix(&self) -> &Mat3<F> {
        &self.adjugate
    }
}

impl<F: Field> PartialEq for Projectivity<F> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix.proportional(&other.matrix)
    }
}

/// Matrix whose columns are `pts[0..3]` scaled so that their sum is `pts[3]`.
fn frame_matrix<F: Field>(pts: &[Point<F>; 4]) -> Result<Mat3<F>> {
    for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        if collinear(&pts[a], &pts[b], &pts[c]) {
            return Err(GeometryError::Degenerate(format!(
                "points {}, {}, {} are collinear",
                pts[a], pts[b], pts[c]
            )));
        }
    }
    let basis = Mat3::from_columns([pts[0].coords(), pts[1].coords(), pts[2].coords()]);
    // basis · λ = pts[3] up to scale; the adjugate stands in for the inverse.
    let lambda = basis.adjugate().mul_vec(pts[3].coords());
    Ok(Mat3::from_fn(|i, j| basis.get(i, j).mul(&lambda[j])))
}

/// The unique projectivity sending `src[i]` to `dst[i]` for each `i`.
pub fn projectivity_from_points<F: Field>(
    src: &[Point<F>; 4],
    dst: &[Point<F>; 4],
) -> Result<Projectivity<F>> {
    let a = frame_matrix(src)?;
    let b = frame_matrix(dst)?;
    Projectivity::new(b.mul(&a.adjugate()))
}
