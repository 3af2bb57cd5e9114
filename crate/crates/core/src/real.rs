//! Floating-point scalars used by the numeric side: hardware `f64` and a
//! software big-float for high-precision runs.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;

use crate::exact::{rational_to_f64, BigRational};

pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_f64(x: f64) -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn to_f64(&self) -> f64;

    fn exp(&self) -> Self;
    fn expm1(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn powi(&self, n: i32) -> Self;
    fn pi() -> Self;

    /// Unit roundoff of the working precision.
    fn epsilon() -> Self;
    /// Decimal digits carried by the working precision.
    fn digits() -> usize;
    fn is_finite(&self) -> bool;
    /// Full-precision scientific notation.
    fn to_sci(&self) -> String;

    fn zero() -> Self {
        Self::from_i64(0)
    }
    fn one() -> Self {
        Self::from_i64(1)
    }
    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_bigint(n: &BigInt) -> Self {
        rational_to_f64(&BigRational::from_integer(n.clone()))
    }
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn expm1(&self) -> Self {
        f64::exp_m1(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn digits() -> usize {
        15
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn to_sci(&self) -> String {
        format!("{self:e}")
    }
}

const RM: RoundingMode = RoundingMode::ToEven;
/// Default working precision of `BigReal`, in bits (about 57 decimal digits).
pub const DEFAULT_BIG_BITS: usize = 192;

thread_local! {
    static BITS: Cell<usize> = const { Cell::new(DEFAULT_BIG_BITS) };
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn bits() -> usize {
    BITS.with(|b| b.get())
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Bits needed for `digits` significant decimal digits plus guard bits.
pub fn bits_for_digits(digits: usize) -> usize {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 32
}

/// Big-float scalar whose working precision is set per thread with
/// [`BigReal::with_digits`].
#[derive(Clone)]
pub struct BigReal(BigFloat);

impl BigReal {
    /// Runs `f` with the calling thread's working precision set to at least
    /// `digits` decimal digits, restoring the previous precision afterwards.
    pub fn with_digits<T>(digits: usize, f: impl FnOnce() -> T) -> T {
        let prev = bits();
        BITS.with(|b| b.set(bits_for_digits(digits)));
        struct Restore(usize);
        impl Drop for Restore {
            fn drop(&mut self) {
                BITS.with(|b| b.set(self.0));
            }
        }
        let _guard = Restore(prev);
        f()
    }

    pub fn parse(s: &str) -> Option<Self> {
        let v = with_cc(|cc| BigFloat::parse(s, Radix::Dec, bits(), RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(BigReal(v))
        }
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Add for BigReal {
    type Output = BigReal;
    fn add(self, rhs: Self) -> Self {
        BigReal(self.0.add(&rhs.0, bits(), RM))
    }
}

impl Sub for BigReal {
    type Output = BigReal;
    fn sub(self, rhs: Self) -> Self {
        BigReal(self.0.sub(&rhs.0, bits(), RM))
    }
}

impl Mul for BigReal {
    type Output = BigReal;
    fn mul(self, rhs: Self) -> Self {
        BigReal(self.0.mul(&rhs.0, bits(), RM))
    }
}

impl Div for BigReal {
    type Output = BigReal;
    fn div(self, rhs: Self) -> Self {
        BigReal(self.0.div(&rhs.0, bits(), RM))
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> Self {
        BigReal(self.0.neg())
    }
}

impl Real for BigReal {
    fn from_f64(x: f64) -> Self {
        BigReal(BigFloat::from_f64(x, bits()))
    }
    fn from_i64(n: i64) -> Self {
        BigReal(BigFloat::from_i64(n, bits()))
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigReal::parse(&n.to_string()).expect("integer literal parses")
    }
    fn from_rational(q: &BigRational) -> Self {
        Self::from_bigint(q.numer()) / Self::from_bigint(q.denom())
    }
    fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        self.0.to_string().parse().unwrap_or(f64::NAN)
    }
    fn exp(&self) -> Self {
        BigReal(with_cc(|cc| self.0.exp(bits(), RM, cc)))
    }
    fn expm1(&self) -> Self {
        // guard bits cover the cancellation for |x| down to about 2^-32
        let p = bits() + 64;
        let e = with_cc(|cc| self.0.exp(p, RM, cc));
        BigReal(e.sub(&BigFloat::from_i64(1, p), bits(), RM))
    }
    fn ln(&self) -> Self {
        BigReal(with_cc(|cc| self.0.ln(bits(), RM, cc)))
    }
    fn sqrt(&self) -> Self {
        BigReal(self.0.sqrt(bits(), RM))
    }
    fn abs(&self) -> Self {
        BigReal(self.0.abs())
    }
    fn powi(&self, n: i32) -> Self {
        let p = self.0.powi(n.unsigned_abs() as usize, bits(), RM);
        if n < 0 {
            BigReal(p.reciprocal(bits(), RM))
        } else {
            BigReal(p)
        }
    }
    fn pi() -> Self {
        BigReal(with_cc(|cc| cc.pi(bits(), RM)))
    }
    fn epsilon() -> Self {
        BigReal::from_i64(2).powi(-((bits() - 32) as i32))
    }
    fn digits() -> usize {
        ((bits() - 32) as f64 / std::f64::consts::LOG2_10).floor() as usize
    }
    fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }
    fn to_sci(&self) -> String {
        self.0.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn big_real_basic_ops() {
        BigReal::with_digits(50, || {
            let third = BigReal::from_rational(&ratio(1, 3));
            let back = third.clone() * BigReal::from_i64(3);
            let err = (back - BigReal::one()).abs();
            assert!(err < BigReal::epsilon() * BigReal::from_i64(4));
            assert!((third.to_f64() - 1.0 / 3.0).abs() < 1e-16);
            let pi = BigReal::pi();
            let text = pi.to_sci();
            assert!(text.contains("3.14159265358979323846264338327950288419716939937510")
                || text.starts_with("3.1415926535897932384626433832795028841971693993751"), "{text}");
        });
    }

    #[test]
    fn big_real_expm1_small_argument() {
        BigReal::with_digits(50, || {
            let x = BigReal::parse("1e-10").unwrap();
            let v = x.expm1();
            // 1e-10 + 5e-21 + 1.666e-31
            let expected = BigReal::parse("1.00000000005000000000166666666670833333333e-10").unwrap();
            let rel = ((v - expected.clone()) / expected).abs();
            assert!(rel.to_f64() < 1e-40, "{rel:?}");
        });
    }

    #[test]
    fn precision_scope_restores() {
        let before = BigReal::digits();
        BigReal::with_digits(80, || assert!(BigReal::digits() >= 80));
        assert_eq!(BigReal::digits(), before);
    }

    #[test]
    fn f64_conversion_of_rationals() {
        assert_eq!(<f64 as Real>::from_rational(&ratio(-1, 4)), -0.25);
    }
}
