//! Exact integer and rational primitives.
//!
//! `BigRational` is `num_rational::BigRational`, which reduces to lowest terms
//! with a positive denominator after every arithmetic operation, so structural
//! equality is value equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// C(n, k); zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1)
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `<p, q>`: C(p, q) when `p >= q`, otherwise
/// `(-1)^(p-q) / (p-q) / C(q, p)`.
pub fn gen_binom(p: i64, q: i64) -> Result<BigRational> {
    if p < 0 || q < 0 {
        return Err(Error::Domain(format!(
            "generalized binomial needs p, q >= 0, got <{p}, {q}>"
        )));
    }
    if p >= q {
        return Ok(BigRational::from_integer(binomial(p, q)));
    }
    let d = p - q;
    let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(BigRational::new(
        BigInt::from(sign),
        BigInt::from(d) * binomial(q, p),
    ))
}

/// x (x-1) ... (x-m+1); 1 for `m == 0`.
pub fn falling_factorial(x: i64, m: u64) -> BigInt {
    (0..m as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(x - i))
}

pub fn harmonic(n: i64) -> Result<BigRational> {
    if n < 1 {
        return Err(Error::Domain(format!("harmonic number H_{n} needs n >= 1")));
    }
    Ok((1..=n).fold(BigRational::zero(), |acc, j| acc + ratio(1, j)))
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: i64) -> BigRational {
    if k.is_even() {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Canonical text form: `"num/den"`, or `"n"` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"num/den"` or `"n"`; the result is canonicalized.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Nearest `f64` to an exact rational, without overflowing on huge parts.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // scale both parts down to the top 64 bits
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (q.numer().abs() >> shift_n as usize).to_f64().unwrap_or(f64::INFINITY);
    let d = (q.denom() >> shift_d as usize).to_f64().unwrap_or(f64::INFINITY);
    let v = n / d * 2f64.powi((shift_n - shift_d) as i32);
    if q.is_negative() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(7, 9), BigInt::zero());
        assert_eq!(binomial(7, -1), BigInt::zero());
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=60 {
            for k in 0..=n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn gen_binom_branches() {
        assert_eq!(gen_binom(3, 2).unwrap(), rat(3));
        assert_eq!(gen_binom(0, 1).unwrap(), rat(1));
        assert_eq!(gen_binom(1, 3).unwrap(), ratio(-1, 6));
        assert_eq!(gen_binom(4, 4).unwrap(), rat(1));
        assert!(gen_binom(-1, 2).is_err());
        for p in 0..20 {
            for q in 0..=p {
                assert_eq!(
                    gen_binom(p, q).unwrap(),
                    BigRational::from_integer(binomial(p, q))
                );
            }
        }
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(2, 2), BigInt::from(2));
        assert_eq!(falling_factorial(3, 2), BigInt::from(6));
        assert_eq!(falling_factorial(5, 0), BigInt::from(1));
        for x in 0..=40 {
            for m in 0..=x {
                assert_eq!(
                    falling_factorial(x, m as u64),
                    binomial(x, m) * factorial(m as u64)
                );
            }
        }
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1).unwrap(), rat(1));
        assert_eq!(harmonic(2).unwrap(), ratio(3, 2));
        assert_eq!(harmonic(4).unwrap(), ratio(25, 12));
        assert!(harmonic(0).is_err());
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&ratio(691, -2730)), "-691/2730");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(parse_rational("7/1").unwrap(), rat(7));
        assert_eq!(parse_rational(" -2/4 ").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = BigRational::new(factorial(200), factorial(199));
        assert!((rational_to_f64(&big) - 200.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn reciprocal_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
            prop_assume!(n != 0);
            let q = ratio(n, d);
            let inv = ratio(d, n);
            prop_assert_eq!(q.clone() * inv, rat(1));
            prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }
}
