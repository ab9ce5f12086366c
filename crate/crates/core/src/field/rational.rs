use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::FieldError;

/// `n` or `n/d`, sign carried by the numerator.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `[+-]digits[/digits]`. Whitespace is not accepted inside.
pub fn parse_rational(text: &str) -> Result<BigRational, FieldError> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = parse_int(text, num, true)?;
    let den = match den {
        Some(d) => parse_int(text, d, false)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(FieldError::parse(text, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn parse_int(whole: &str, digits: &str, signed: bool) -> Result<BigInt, FieldError> {
    let body = if signed {
        digits.strip_prefix(['+', '-']).unwrap_or(digits)
    } else {
        digits
    };
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(FieldError::parse(
            whole,
            "expected an integer or a fraction a/b",
        ));
    }
    let value: BigInt = body.parse().expect("validated decimal digits");
    Ok(if digits.starts_with('-') {
        -value
    } else {
        value
    })
}

/// Numerator in `[-height, height]`, denominator in `[1, height]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, height: u64) -> BigRational {
    let h = height.max(1) as i64;
    let num = rng.gen_range(-h..=h);
    let den = rng.gen_range(1..=h);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn rational_bits(q: &BigRational) -> u64 {
    q.numer().abs().bits() + q.denom().bits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_and_format() {
        let q = parse_rational("-6/8").unwrap();
        assert_eq!(format_rational(&q), "-3/4");
        assert_eq!(format_rational(&parse_rational("+5").unwrap()), "5");
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn random_draws_are_reduced_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let q = random_rational(&mut rng, 100);
            assert!(q.denom().is_positive());
            assert!(num_integer::Integer::gcd(q.numer(), q.denom()).is_one());
            assert!(q.numer().abs() <= BigInt::from(100));
            assert!(*q.denom() <= BigInt::from(100));
            if q.is_zero() {
                assert!(q.denom().is_one());
            }
        }
    }

    #[test]
    fn height_one_is_integral() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let q = random_rational(&mut rng, 1);
            assert!(q.denom().is_one());
            assert!(q.numer().abs() <= BigInt::one());
        }
    }
}
