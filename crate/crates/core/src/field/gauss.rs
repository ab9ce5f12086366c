use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::rational::{format_rational, parse_rational, random_rational, rational_bits};
use super::{Backend, Field, FieldError};

/// `re + im·i` with exact rational parts.
///
/// Both parts are `BigRational`s, which are always kept reduced with a
/// positive denominator, so derived equality and hashing are canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    /// `num/den` as a real scalar. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    /// `re·re + im·im`, the field norm down to the rationals.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Both parts are integers.
    pub fn is_integral(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// Lossy conversion of the real part, for drawing only.
    pub fn re_f64(&self) -> f64 {
        ratio_to_f64(&self.re)
    }
}

pub(crate) fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Quotients outside f64 range; clamp through the sign.
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

impl Field for GaussianRational {
    const BACKEND: Backend = Backend::Gauss;

    fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    fn one() -> Self {
        Self::real(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::real(BigRational::new(num.clone(), den.clone())))
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_integral() && rhs.is_integral() {
            return GaussianRational {
                re: BigRational::from_integer(self.re.numer() + rhs.re.numer()),
                im: BigRational::from_integer(self.im.numer() + rhs.im.numer()),
            };
        }
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        if self.is_integral() && rhs.is_integral() {
            return GaussianRational {
                re: BigRational::from_integer(self.re.numer() - rhs.re.numer()),
                im: BigRational::from_integer(self.im.numer() - rhs.im.numer()),
            };
        }
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_integral() && rhs.is_integral() {
            let (a, b, c, d) = (
                self.re.numer(),
                self.im.numer(),
                rhs.re.numer(),
                rhs.im.numer(),
            );
            if b.is_zero() && d.is_zero() {
                return Self::real(BigRational::from_integer(a * c));
            }
            return GaussianRational {
                re: BigRational::from_integer(a * c - b * d),
                im: BigRational::from_integer(a * d + b * c),
            };
        }
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn neg(&self) -> Self {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(Self::real(self.re.recip()));
        }
        let n = self.norm();
        Ok(GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, height: u64) -> Self {
        let re = random_rational(rng, height);
        let im = random_rational(rng, height);
        GaussianRational { re, im }
    }

    fn random_real<R: Rng + ?Sized>(rng: &mut R, height: u64) -> Self {
        Self::real(random_rational(rng, height))
    }

    fn parse(text: &str) -> Result<Self, FieldError> {
        let t = text.trim();
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(t)?));
        };
        // Split at the last sign that is not leading: `re±im`.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k])?, &body[k..]),
            None => (BigRational::zero(), body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            s => parse_rational(s).map_err(|_| FieldError::parse(text, "bad imaginary part"))?,
        };
        Ok(GaussianRational { re, im })
    }

    fn real_sign(&self) -> Option<i8> {
        if !self.im.is_zero() {
            return None;
        }
        Some(if self.re.is_negative() {
            -1
        } else if self.re.is_zero() {
            0
        } else {
            1
        })
    }

    fn div_nonzero(&self, rhs: &Self) -> Self {
        if !(self.is_integral() && rhs.is_integral()) {
            return self.div(rhs).expect("nonzero divisor");
        }
        let (a, b, c, d) = (
            self.re.numer(),
            self.im.numer(),
            rhs.re.numer(),
            rhs.im.numer(),
        );
        let norm = c * c + d * d;
        GaussianRational {
            re: BigRational::new(a * c + b * d, norm.clone()),
            im: BigRational::new(b * c - a * d, norm),
        }
    }

    /// Clears denominators and divides out the integer content, giving a
    /// Gaussian-integer vector with coprime parts.
    fn make_primitive(v: &mut [Self]) {
        let mut lcm = BigInt::one();
        for x in v.iter() {
            lcm = lcm.lcm(x.re.denom()).lcm(x.im.denom());
        }
        let scaled: Vec<(BigInt, BigInt)> = v
            .iter()
            .map(|x| {
                (
                    x.re.numer() * (&lcm / x.re.denom()),
                    x.im.numer() * (&lcm / x.im.denom()),
                )
            })
            .collect();
        let mut content = BigInt::zero();
        for (re, im) in &scaled {
            content = content.gcd(re).gcd(im);
        }
        if content.is_zero() {
            return;
        }
        for (x, (re, im)) in v.iter_mut().zip(scaled) {
            *x = GaussianRational {
                re: BigRational::from_integer(re / &content),
                im: BigRational::from_integer(im / &content),
            };
        }
    }

    fn bit_size(&self) -> u64 {
        rational_bits(&self.re) + rational_bits(&self.im)
    }
}

/// `a/b` for reals, `a/b+c/di` otherwise; the real part is always written.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.re))?;
        if !self.im.is_zero() {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}i", format_rational(&self.im.abs()))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GaussianRational {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Self as Field>::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(text: &str) -> GaussianRational {
        text.parse().unwrap()
    }

    #[test]
    fn product_with_conjugate() {
        let a = g("1/2+1/3i");
        let b = g("1/2-1/3i");
        assert_eq!(a.mul(&b), g("13/36"));
        assert_eq!(b, a.conj());
    }

    #[test]
    fn inverse_of_i() {
        assert_eq!(GaussianRational::i().inv().unwrap(), g("0-1i"));
        assert_eq!(
            GaussianRational::zero().inv(),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(g("1/2+2/3i").conj(), g("1/2-2/3i"));
        assert_eq!(g("5/7").conj(), g("5/7"));
        assert!(g("5/7").is_real());
        assert!(!g("5/7+1i").is_real());
    }

    #[test]
    fn text_format() {
        assert_eq!(g("-3/5+1/2i").to_string(), "-3/5+1/2i");
        assert_eq!(g("6/10-4/2i").to_string(), "3/5-2i");
        assert_eq!(g("7").to_string(), "7");
        assert_eq!(g("-i").to_string(), "0-1i");
        assert_eq!(g("2/3i").to_string(), "0+2/3i");
        assert_eq!(g("0").to_string(), "0");
        assert!("1/2+".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("1/2+1/0i".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn canonical_equality() {
        assert_eq!(g("2/4+3/9i"), g("1/2+1/3i"));
        assert_eq!(g("-0/5"), GaussianRational::zero());
    }

    proptest! {
        #[test]
        fn serialization_round_trips(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = GaussianRational::new(
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
            );
            let text = x.to_string();
            let back: GaussianRational = text.parse().unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
