use std::fmt;
use std::hash::{Hash, Hasher};

use super::mat3::cross;
use crate::error::{GeometryError, Result};
use crate::field::{dot3, Field};

fn all_zero<F: Field>(c: &[F; 3]) -> bool {
    c.iter().all(F::is_zero)
}

fn proportional<F: Field>(a: &[F; 3], b: &[F; 3]) -> bool {
    all_zero(&cross(a, b))
}

/// Scales so the first nonzero coordinate is one.
fn canonical<F: Field>(c: &[F; 3]) -> [F; 3] {
    let lead = c.iter().find(|x| !x.is_zero()).expect("nonzero triple");
    std::array::from_fn(|i| c[i].div_nonzero(lead))
}

fn write_triple<F: Field>(f: &mut fmt::Formatter<'_>, c: &[F; 3]) -> fmt::Result {
    let c = canonical(c);
    write!(f, "({} : {} : {})", c[0], c[1], c[2])
}

/// Parses `(x : y : z)` with each coordinate in the scalar text format.
fn parse_triple<F: Field>(text: &str) -> Result<[F; 3]> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| GeometryError::Precondition(format!("expected `(x : y : z)`, got `{t}`")))?;
    let parts: Vec<&str> = inner.split(':').collect();
    if parts.len() != 3 {
        return Err(GeometryError::Precondition(format!(
            "expected three coordinates separated by `:`, got {}",
            parts.len()
        )));
    }
    let c = [
        F::parse(parts[0].trim())?,
        F::parse(parts[1].trim())?,
        F::parse(parts[2].trim())?,
    ];
    if all_zero(&c) {
        return Err(GeometryError::ZeroTriple);
    }
    Ok(c)
}

macro_rules! homogeneous_triple {
    ($name:ident, $what:literal) => {
        #[doc = concat!("A ", $what, " of the projective plane, as a homogeneous triple up to scale.")]
        #[derive(Clone, Debug)]
        pub struct $name<F> {
            coords: [F; 3],
        }

        impl<F: Field> $name<F> {
            /// Stores a primitive representative (see [`Field::make_primitive`]).
            pub fn new(mut coords: [F; 3]) -> Result<Self> {
                if all_zero(&coords) {
                    return Err(GeometryError::ZeroTriple);
                }
                F::make_primitive(&mut coords);
                Ok($name { coords })
            }

            /// Integer triple; panics on `(0, 0, 0)`.
            pub fn ints(x: i64, y: i64, z: i64) -> Self {
                Self::new([F::from_i64(x), F::from_i64(y), F::from_i64(z)])
                    .expect("nonzero integer triple")
            }

            pub fn coords(&self) -> &[F; 3] {
                &self.coords
            }

            pub fn into_coords(self) -> [F; 3] {
                self.coords
            }

            /// Representative with first nonzero coordinate equal to one.
            pub fn canonical(&self) -> Self {
                $name {
                    coords: canonical(&self.coords),
                }
            }

            pub fn parse(text: &str) -> Result<Self> {
                Self::new(parse_triple(text)?)
            }

            /// Coordinate-wise conjugate.
            pub fn conj(&self) -> Self {
                $name {
                    coords: std::array::from_fn(|i| self.coords[i].conj()),
                }
            }

            /// Fixed by conjugation, i.e. a real point of the plane.
            pub fn is_real(&self) -> bool {
                *self == self.conj()
            }

            pub fn bit_size(&self) -> u64 {
                self.coords.iter().map(F::bit_size).sum()
            }
        }

        impl<F: Field> PartialEq for $name<F> {
            fn eq(&self, other: &Self) -> bool {
                proportional(&self.coords, &other.coords)
            }
        }

        impl<F: Field> Eq for $name<F> {}

        impl<F: Field> Hash for $name<F> {
            fn hash<H: Hasher>(&self, state: &mut H) {
                canonical(&self.coords).hash(state)
            }
        }

        impl<F: Field> fmt::Display for $name<F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_triple(f, &self.coords)
            }
        }

        impl<F: Field> std::str::FromStr for $name<F> {
            type Err = GeometryError;

            fn from_str(s: &str) -> Result<Self> {
                Self::parse(s)
            }
        }
    };
}

homogeneous_triple!(Point, "point");
homogeneous_triple!(Line, "line");

impl<F: Field> Point<F> {
    /// The affine point `(x, y)` in the chart `z = 1`.
    pub fn affine(x: F, y: F) -> Self {
        Point::new([x, y, F::one()]).expect("z = 1")
    }

    /// On the line at infinity `z = 0`.
    pub fn is_ideal(&self) -> bool {
        self.coords[2].is_zero()
    }

    /// `(x/z, y/z)`, or `None` for ideal points.
    pub fn to_affine(&self) -> Option<(F, F)> {
        let w = self.coords[2].inv().ok()?;
        Some((self.coords[0].mul(&w), self.coords[1].mul(&w)))
    }

    /// `a·self + b·other`, as a point (fails only if the combination vanishes).
    pub fn combine(&self, a: &F, other: &Self, b: &F) -> Result<Self> {
        Self::new(std::array::from_fn(|i| {
            self.coords[i].mul(a).add(&other.coords[i].mul(b))
        }))
    }
}

impl<F: Field> Line<F> {
    /// `l·x + m·y + n·z` at `p`; zero exactly when `p` is on the line.
    pub fn eval(&self, p: &Point<F>) -> F {
        dot3(&self.coords, &p.coords)
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        self.eval(p).is_zero()
    }

    pub fn line_at_infinity() -> Self {
        Self::ints(0, 0, 1)
    }

    /// A point of the line distinct from `avoid` (if given), taken from
    /// the meets with the coordinate lines.
    pub fn point_other_than(&self, avoid: Option<&Point<F>>) -> Point<F> {
        let [l, m, n] = &self.coords;
        let candidates = [
            [F::zero(), n.clone(), m.neg()],
            [n.neg(), F::zero(), l.clone()],
            [m.clone(), l.neg(), F::zero()],
        ];
        candidates
            .into_iter()
            .filter(|c| !all_zero(c))
            .map(|coords| Point::new(coords).expect("nonzero triple"))
            .find(|p| avoid.is_none_or(|a| a != p))
            .expect("a line carries at least two coordinate-line meets")
    }

    pub fn combine(&self, a: &F, other: &Self, b: &F) -> Result<Self> {
        Self::new(std::array::from_fn(|i| {
            self.coords[i].mul(a).add(&other.coords[i].mul(b))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational;

    type P = Point<GaussianRational>;
    type L = Line<GaussianRational>;

    #[test]
    fn equality_is_up_to_scale() {
        assert_eq!(P::ints(2, 1, 1), P::parse("(1 : 1/2 : 1/2)").unwrap());
        assert_ne!(P::ints(2, 1, 1), P::ints(1, 1, 1));
        assert_eq!(L::ints(0, 5, -4), L::ints(0, -10, 8));
    }

    #[test]
    fn zero_triple_rejected() {
        assert_eq!(P::parse("(0 : 0 : 0)"), Err(GeometryError::ZeroTriple));
        assert!(P::parse("(1 : 2)").is_err());
        assert!(P::parse("1 : 2 : 3").is_err());
    }

    #[test]
    fn canonical_text() {
        let p = P::parse("(4 : -2+2i : 8)").unwrap();
        assert_eq!(p.to_string(), "(1 : -1/2+1/2i : 2)");
        assert_eq!(P::parse(&p.to_string()).unwrap(), p);
        assert_eq!(P::ints(0, 0, 7).to_string(), "(0 : 0 : 1)");
    }

    #[test]
    fn hash_agrees_with_eq() {
        use std::collections::HashSet;
        let set: HashSet<P> = [P::ints(2, 1, 1), P::ints(4, 2, 2), P::ints(-2, -1, -1)]
            .into_iter()
            .collect();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn realness() {
        assert!(P::parse("(1+i : 2+2i : 3+3i)").unwrap().is_real());
        assert!(!P::parse("(1 : i : 1)").unwrap().is_real());
    }

    #[test]
    fn other_point_on_line() {
        let l = L::ints(0, 1, -1);
        let a = l.point_other_than(None);
        assert!(l.contains(&a));
        let b = l.point_other_than(Some(&a));
        assert!(l.contains(&b));
        assert_ne!(a, b);
    }
}
