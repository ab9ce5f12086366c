use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::rational::parse_rational;
use super::{Backend, Field, FieldError};

/// The Mersenne prime `2^61 - 1`.
pub const MODULUS: u64 = (1 << 61) - 1;

/// Residue modulo [`MODULUS`], always stored in `[0, MODULUS)`.
///
/// A zero obtained on this backend is probabilistic evidence only: a
/// nonzero rational expression of degree `d` in the random inputs vanishes
/// here with probability at most `d / MODULUS`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PrimeField(u64);

impl PrimeField {
    pub fn new(value: u64) -> Self {
        PrimeField(value % MODULUS)
    }

    pub fn residue(self) -> u64 {
        self.0
    }

    fn reduce_wide(x: u128) -> u64 {
        // x mod 2^61-1 via folding.
        let lo = (x as u64) & MODULUS;
        let hi = (x >> 61) as u64;
        let mut s = lo + (hi & MODULUS) + (hi >> 61);
        while s >= MODULUS {
            s -= MODULUS;
        }
        s
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = PrimeField(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(MODULUS));
        PrimeField(r.to_u64().expect("reduced residue fits in u64"))
    }
}

impl Field for PrimeField {
    const BACKEND: Backend = Backend::Prime;

    fn zero() -> Self {
        PrimeField(0)
    }

    fn one() -> Self {
        PrimeField(1)
    }

    fn from_i64(n: i64) -> Self {
        let r = (n as i128).rem_euclid(MODULUS as i128);
        PrimeField(r as u64)
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Result<Self, FieldError> {
        let d = Self::from_bigint(den);
        Ok(Self::from_bigint(num).mul(&d.inv()?))
    }

    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        PrimeField(if s >= MODULUS { s - MODULUS } else { s })
    }

    fn sub(&self, rhs: &Self) -> Self {
        PrimeField(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            MODULUS - (rhs.0 - self.0)
        })
    }

    fn mul(&self, rhs: &Self) -> Self {
        PrimeField(Self::reduce_wide(self.0 as u128 * rhs.0 as u128))
    }

    fn neg(&self) -> Self {
        PrimeField(if self.0 == 0 { 0 } else { MODULUS - self.0 })
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(MODULUS - 2))
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn conj(&self) -> Self {
        *self
    }

    fn is_real(&self) -> bool {
        true
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, _height: u64) -> Self {
        PrimeField(rng.gen_range(0..MODULUS))
    }

    fn random_real<R: Rng + ?Sized>(rng: &mut R, height: u64) -> Self {
        Self::random(rng, height)
    }

    fn parse(text: &str) -> Result<Self, FieldError> {
        let q = parse_rational(text.trim())?;
        Self::from_ratio(q.numer(), q.denom())
            .map_err(|_| FieldError::parse(text, "denominator vanishes modulo the prime"))
    }

    fn bit_size(&self) -> u64 {
        61
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn modulus_is_mersenne_61() {
        assert_eq!(MODULUS, 2_305_843_009_213_693_951);
        // Fermat check for a few bases.
        for a in [2u64, 3, 5, 7, 11] {
            assert_eq!(PrimeField::new(a).pow(MODULUS - 1), PrimeField::one());
        }
    }

    #[test]
    fn negatives_and_fractions() {
        assert_eq!(PrimeField::from_i64(-1), PrimeField::new(MODULUS - 1));
        let half = PrimeField::parse("1/2").unwrap();
        assert_eq!(half.add(&half), PrimeField::one());
        assert_eq!(PrimeField::parse("-3").unwrap(), PrimeField::from_i64(-3));
        assert_eq!(PrimeField::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn wide_reduction_at_extremes() {
        let top = PrimeField::new(MODULUS - 1);
        assert_eq!(top.mul(&top), PrimeField::one());
    }

    proptest! {
        #[test]
        fn mul_matches_bigint(a in 0..MODULUS, b in 0..MODULUS) {
            let expect = (a as u128 * b as u128 % MODULUS as u128) as u64;
            prop_assert_eq!(PrimeField::new(a).mul(&PrimeField::new(b)).residue(), expect);
        }

        #[test]
        fn text_round_trip(a in 0..MODULUS) {
            let x = PrimeField::new(a);
            prop_assert_eq!(PrimeField::parse(&x.to_string()).unwrap(), x);
        }
    }
}
