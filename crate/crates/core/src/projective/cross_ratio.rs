use std::fmt;

use crate::field::Field;

/// An element `(num : den)` of the projective line over the scalar field.
///
/// `(1 : 0)` is ∞. Equality is up to scale.
#[derive(Clone, Debug)]
pub struct CrossRatio<F> {
    num: F,
    den: F,
}

impl<F: Field> CrossRatio<F> {
    /// Panics if both entries vanish.
    pub fn new(num: F, den: F) -> Self {
        assert!(
            !(num.is_zero() && den.is_zero()),
            "(0 : 0) is not a point of the projective line"
        );
        CrossRatio { num, den }
    }

    pub fn finite(value: F) -> Self {
        CrossRatio {
            num: value,
            den: F::one(),
        }
    }

    pub fn infinity() -> Self {
        CrossRatio {
            num: F::one(),
            den: F::zero(),
        }
    }

    /// `(-1 : 1)`.
    pub fn harmonic() -> Self {
        Self::finite(F::one().neg())
    }

    pub fn num(&self) -> &F {
        &self.num
    }

    pub fn den(&self) -> &F {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn value(&self) -> Option<F> {
        self.num.div(&self.den).ok()
    }

    pub fn is_harmonic(&self) -> bool {
        *self == Self::harmonic()
    }

    /// `num + den`, which vanishes exactly for the harmonic value. Used as
    /// the residual in violation reports.
    pub fn harmonic_residual(&self) -> F {
        self.num.add(&self.den)
    }
}

impl<F: Field> PartialEq for CrossRatio<F> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<F: Field> Eq for CrossRatio<F> {}

/// The finite value in scalar text format, or `inf`.
impl<F: Field> fmt::Display for CrossRatio<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}
