use crate::field::{dot3, Field};

/// Row-major 3×3 matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3<F> {
    pub rows: [[F; 3]; 3],
}

impl<F: Field> Mat3<F> {
    pub fn new(rows: [[F; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    /// The same matrix up to scale, rescaled by [`Field::make_primitive`].
    pub fn primitive(self) -> Self {
        let mut flat: Vec<F> = self.rows.into_iter().flatten().collect();
        F::make_primitive(&mut flat);
        let mut it = flat.into_iter();
        Mat3::from_fn(|_, _| it.next().expect("nine entries"))
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> F) -> Self {
        Mat3 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn from_columns(cols: [&[F; 3]; 3]) -> Self {
        Self::from_fn(|i, j| cols[j][i].clone())
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Self::from_fn(|i, j| F::from_i64(rows[i][j]))
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows[0][1] == self.rows[1][0]
            && self.rows[0][2] == self.rows[2][0]
            && self.rows[1][2] == self.rows[2][1]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(F::is_zero)
    }

    pub fn mul_vec(&self, v: &[F; 3]) -> [F; 3] {
        std::array::from_fn(|i| dot3(&self.rows[i], v))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| {
            let col = [
                rhs.rows[0][j].clone(),
                rhs.rows[1][j].clone(),
                rhs.rows[2][j].clone(),
            ];
            dot3(&self.rows[i], &col)
        })
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].mul(s))
    }

    fn cofactor(&self, i: usize, j: usize) -> F {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        // Cyclic index order makes the sign come out right without (-1)^(i+j).
        self.rows[r0][c0]
            .mul(&self.rows[r1][c1])
            .sub(&self.rows[r0][c1].mul(&self.rows[r1][c0]))
    }

    pub fn det(&self) -> F {
        (0..3).fold(F::zero(), |acc, j| {
            acc.add(&self.rows[0][j].mul(&self.cofactor(0, j)))
        })
    }

    /// Classical adjoint: `self · adj = det · I`.
    pub fn adjugate(&self) -> Self {
        Self::from_fn(|i, j| self.cofactor(j, i))
    }

    /// `self` and `other` agree up to a nonzero scalar factor.
    pub fn proportional(&self, other: &Self) -> bool {
        let a: Vec<&F> = self.rows.iter().flatten().collect();
        let b: Vec<&F> = other.rows.iter().flatten().collect();
        let Some(k) = a.iter().position(|x| !x.is_zero()) else {
            return other.is_zero();
        };
        if b[k].is_zero() {
            return false;
        }
        (0..9).all(|n| a[n].mul(b[k]) == b[n].mul(a[k]))
    }
}

/// Determinant of the matrix with rows `a`, `b`, `c`.
pub fn det3<F: Field>(a: &[F; 3], b: &[F; 3], c: &[F; 3]) -> F {
    dot3(a, &cross(b, c))
}

pub fn cross<F: Field>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaussianRational, PrimeField};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type G = GaussianRational;

    #[test]
    fn det_by_hand() {
        let m = Mat3::<G>::from_i64([[2, 0, 1], [1, 3, 2], [1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert!(m.det().is_zero());
        let m = Mat3::<G>::from_i64([[1, 2, 3], [0, 1, 4], [5, 6, 0]]);
        assert_eq!(m.det(), G::from_i64(1));
    }

    #[test]
    fn adjugate_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = Mat3::<G>::from_fn(|_, _| G::random(&mut rng, 20));
            let prod = m.mul(&m.adjugate());
            assert_eq!(prod, Mat3::identity().scale(&m.det()));
            let m = Mat3::<PrimeField>::from_fn(|_, _| PrimeField::random(&mut rng, 0));
            assert_eq!(m.adjugate().mul(&m), Mat3::identity().scale(&m.det()));
        }
    }

    #[test]
    fn proportionality() {
        let m = Mat3::<G>::from_i64([[1, 2, 3], [0, 1, 4], [5, 6, 0]]);
        assert!(m.proportional(&m.scale(&G::ratio(-3, 7))));
        assert!(!m.proportional(&Mat3::identity()));
    }
}
