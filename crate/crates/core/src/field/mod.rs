//! Exact scalar fields.
//!
//! Every geometric routine in this crate is generic over [`Field`]. Two
//! backends are provided:
//!
//! * [`GaussianRational`]: `a + bi` with `a, b` arbitrary-precision
//!   rationals. This is the ground truth; equality is literal.
//! * [`PrimeField`]: residues modulo the Mersenne prime `2^61 - 1`. Fast and
//!   bounded in size, but an identity observed here only holds with
//!   Schwartz–Zippel confidence over the rationals.

mod gauss;
mod prime;
mod rational;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use rand::Rng;
use thiserror::Error;

pub use gauss::GaussianRational;
pub use prime::{PrimeField, MODULUS};
pub use rational::{format_rational, parse_rational, random_rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

impl FieldError {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        FieldError::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

/// Capability set shared by all scalar backends.
///
/// Values are immutable; every method is pure. Implementations keep values
/// in a canonical form so that `==` coincides with field equality.
pub trait Field: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static {
    /// Short backend tag used in scenario files and reports.
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Embeds the rational `num/den`.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Result<Self, FieldError>;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;
    fn is_zero(&self) -> bool;

    /// Complex conjugation; the identity on backends without an imaginary unit.
    fn conj(&self) -> Self;
    /// Fixed by [`Field::conj`].
    fn is_real(&self) -> bool;

    /// A random scalar whose rational parts have numerators and
    /// denominators bounded by `height` (uniform residue on the prime field).
    fn random<R: Rng + ?Sized>(rng: &mut R, height: u64) -> Self;
    /// Like [`Field::random`], restricted to real values.
    fn random_real<R: Rng + ?Sized>(rng: &mut R, height: u64) -> Self;

    fn parse(text: &str) -> Result<Self, FieldError>;

    /// Rough storage size in bits, used to report coefficient growth.
    fn bit_size(&self) -> u64;

    /// Sign of a real value where the backend has an ordering.
    fn real_sign(&self) -> Option<i8> {
        None
    }

    /// Rescales a homogeneous vector to a small representative of its
    /// class. The default leaves it unchanged.
    fn make_primitive(_v: &mut [Self]) {}

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// `self / rhs` where `rhs` is known to be nonzero.
    fn div_nonzero(&self, rhs: &Self) -> Self {
        self.div(rhs).expect("nonzero divisor")
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn square(&self) -> Self {
        self.mul(self)
    }
}

/// Which scalar backend a scenario or campaign runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Gauss,
    Prime,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Gauss => "gauss",
            Backend::Prime => "prime",
        }
    }
}

impl Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "gauss" => Ok(Backend::Gauss),
            "prime" => Ok(Backend::Prime),
            other => Err(format!(
                "unknown backend `{other}` (expected gauss or prime)"
            )),
        }
    }
}

/// Sum of products, a small convenience used all over the geometry code.
pub(crate) fn dot3<F: Field>(a: &[F; 3], b: &[F; 3]) -> F {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn axiom_suite<F: Field>(seed: u64, rounds: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..rounds {
            let a = F::random(&mut rng, 100);
            let b = F::random(&mut rng, 100);
            let c = F::random(&mut rng, 100);
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.add(&a.neg()), F::zero());
            assert_eq!(a.sub(&b), a.add(&b.neg()));
            assert_eq!(a.mul(&F::one()), a);
            if !a.is_zero() {
                assert_eq!(a.mul(&a.inv().unwrap()), F::one());
            } else {
                assert_eq!(a.inv(), Err(FieldError::DivisionByZero));
            }
        }
    }

    #[test]
    fn gauss_field_axioms() {
        axiom_suite::<GaussianRational>(11, 10_000);
    }

    #[test]
    fn prime_field_axioms() {
        axiom_suite::<PrimeField>(12, 10_000);
    }

    #[test]
    fn conjugation_is_an_automorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1_000 {
            let a = GaussianRational::random(&mut rng, 100);
            let b = GaussianRational::random(&mut rng, 100);
            assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
            assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
            assert_eq!(a.conj().conj(), a);
        }
    }

    #[test]
    fn backend_tags() {
        assert_eq!("gauss".parse::<Backend>().unwrap(), Backend::Gauss);
        assert_eq!("prime".parse::<Backend>().unwrap(), Backend::Prime);
        assert!("float".parse::<Backend>().is_err());
        assert_eq!(GaussianRational::BACKEND, Backend::Gauss);
    }
}
