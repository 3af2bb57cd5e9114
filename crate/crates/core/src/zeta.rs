//! Reference values: Γ at positive integers, ζ at integers, and the
//! Euler–Mascheroni constant, computed independently of the Borel engine.

use std::collections::BTreeMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, sign_pow, BigRational};
use crate::quadrature::{adaptive, GaussLegendre};
use crate::real::{BigReal, Real};

/// `Γ(n) = (n-1)!`.
pub fn gamma_int(n: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::Domain(format!("gamma_int needs n >= 1, got {n}")));
    }
    Ok(factorial((n - 1) as u64))
}

/// True when `R` is the hardware float; selects the fixed f64 parameters.
fn is_hardware<R: Real>() -> bool {
    R::digits() <= 15
}

/// `ζ(n) - 1` for n >= 2 by Euler–Maclaurin from the partial sum over `2..M`.
pub fn zeta_minus_one<R: Real>(n: u32) -> Result<R> {
    if n < 2 {
        return Err(Error::Domain(format!("zeta reference needs n >= 2, got {n}")));
    }
    let s = n as i64;
    let (m, max_k) = if is_hardware::<R>() {
        (20i64, 4usize)
    } else {
        ((R::digits() as i64).max(20), 400usize)
    };
    let mut sum = R::zero();
    for j in (2..m).rev() {
        sum = sum + R::from_i64(j).powi(-(s as i32));
    }
    let mf = R::from_i64(m);
    let m_pow = mf.powi(-(s as i32));
    let mut tail = mf.clone() * m_pow.clone() / R::from_i64(s - 1) + m_pow.clone() / R::from_i64(2);
    // k-th correction: B_2k / (2k)! * s (s+1) ... (s+2k-2) * M^(-s-2k+1)
    let mut rising = R::from_i64(s);
    let mut m_power = m_pow * mf.clone();
    let m2 = mf.clone() * mf;
    let mut prev = None::<R>;
    for k in 1..=max_k {
        m_power = m_power / m2.clone();
        let b = R::from_rational(&(bernoulli(2 * k) / BigRational::from_integer(factorial(2 * k as u64))));
        let term = b * rising.clone() * m_power.clone();
        let size = term.abs();
        if !is_hardware::<R>() {
            if size <= R::epsilon() * (sum.clone() + tail.clone()).abs() * R::from_f64(1e-3) {
                break;
            }
            if let Some(p) = &prev {
                if size > *p {
                    // asymptotic series turned around; M is too small for this precision
                    return Err(Error::Domain(format!("Euler-Maclaurin tail for zeta({n}) does not reach working precision")));
                }
            }
            prev = Some(size);
        }
        tail = tail + term;
        let r = 2 * k as i64;
        rising = rising * R::from_i64(s + r - 1) * R::from_i64(s + r);
    }
    Ok(sum + tail)
}

/// `ζ(n)` for n >= 2 at the working precision of `R`.
pub fn zeta_pos<R: Real>(n: u32) -> Result<R> {
    Ok(R::one() + zeta_minus_one::<R>(n)?)
}

/// `ζ(n)` accurate to `digits` significant digits, rounded to f64.
pub fn zeta_pos_ref(n: u32, digits: usize) -> Result<f64> {
    if digits <= 15 {
        zeta_pos::<f64>(n)
    } else {
        BigReal::with_digits(digits + 5, || zeta_pos::<BigReal>(n).map(|v| v.to_f64()))
    }
}

/// `ζ(n) = q π^n` for even n >= 2, from
/// `ζ(2m) = (-1)^(m-1) 2^(2m-1) B_2m π^(2m) / (2m)!`.
pub fn zeta_even_exact(n: u32) -> Result<(BigRational, u32)> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Domain(format!("zeta_even_exact needs an even n >= 2, got {n}")));
    }
    let m = (n / 2) as i64;
    let pow2 = BigRational::from_integer(BigInt::one() << (n - 1));
    let q = sign_pow(m - 1) * pow2 * bernoulli(n as usize) / BigRational::from_integer(factorial(n as u64));
    Ok((q, n))
}

/// `ζ(-n)`: `-B_(n+1)/(n+1)` for n >= 1. ζ(0) is fixed at -1/2; the same formula
/// with `B_1 = -1/2` would give +1/2.
pub fn zeta_nonpos_exact(n: u32) -> BigRational {
    if n == 0 {
        return BigRational::new(BigInt::from(-1), BigInt::from(2));
    }
    -bernoulli(n as usize + 1) / BigRational::from_integer(BigInt::from(n + 1))
}

/// Integrand `1/(e^t - 1) - e^(-t)/t`; below 1/4 the expansion
/// `sum_(k>=1) (B_k - (-1)^k)/k! t^(k-1)` replaces the cancelling pair.
fn gamma_integrand<R: Real>(series: &[R], t: &R) -> R {
    if *t <= R::from_f64(0.25) {
        let mut acc = R::zero();
        for c in series.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    } else {
        R::one() / t.expm1() - (-t.clone()).exp() / t.clone()
    }
}

/// γ from the integral `∫_0^∞ (1/(e^t - 1) - e^(-t)/t) dt` at the precision of `R`.
pub fn euler_mascheroni_with<R: Real>() -> Result<R> {
    let series: Vec<R> = (1..=60usize)
        .map(|k| {
            let c = (bernoulli(k) - sign_pow(k as i64)) / BigRational::from_integer(factorial(k as u64));
            R::from_rational(&c)
        })
        .collect();
    let tol = R::epsilon() * R::from_i64(64);
    // integrand ~ e^-t: stop where the tail e^-T is below tol/4
    let mut cutoff = R::from_i64(8);
    while (-cutoff.clone()).exp() * R::from_i64(8) > tol {
        cutoff = cutoff + R::from_i64(4);
    }
    let rule = GaussLegendre::<R>::new(rule_size::<R>());
    let mut f = |t: &R| Ok::<R, Error>(gamma_integrand(&series, t));
    let quarter = R::from_f64(0.25);
    let head = adaptive(&rule, &mut f, R::zero(), quarter.clone(), tol.clone(), 5_000)?;
    let body = adaptive(&rule, &mut f, quarter, cutoff, tol, 5_000)?;
    Ok(head.value + body.value)
}

/// γ to `digits` significant digits (rounded to f64).
pub fn euler_mascheroni(digits: usize) -> Result<f64> {
    if digits <= 15 {
        euler_mascheroni_with::<f64>()
    } else {
        BigReal::with_digits(digits + 5, || euler_mascheroni_with::<BigReal>().map(|v| v.to_f64()))
    }
}

/// γ as `H_M - ln M - 1/(2M) + sum_k B_2k / (2k M^2k)`, independent of the integral.
pub fn euler_mascheroni_harmonic<R: Real>() -> R {
    let m = (R::digits() as i64).max(20);
    let mf = R::from_i64(m);
    let mut h = R::zero();
    for j in (1..=m).rev() {
        h = h + R::one() / R::from_i64(j);
    }
    let mut acc = h - mf.ln() - R::one() / (R::from_i64(2) * mf.clone());
    let m2 = mf.clone() * mf;
    let mut m_power = R::one();
    for k in 1..=(2 * m as usize) {
        m_power = m_power * m2.clone();
        let term = R::from_rational(&bernoulli(2 * k)) / (R::from_i64(2 * k as i64) * m_power.clone());
        if term.abs() <= R::epsilon() * R::from_f64(1e-3) {
            break;
        }
        acc = acc + term;
    }
    acc
}

pub(crate) fn rule_size<R: Real>() -> usize {
    if is_hardware::<R>() {
        20
    } else {
        (R::digits() * 4 / 5).clamp(24, 64)
    }
}

/// `|LHS - RHS|` of `(s-1)(ζ(s)-1) - 1 = -sum_(r=1..R) (s-1)s...(s+r-1)/(r+1)! (ζ(s+r)-1)`.
pub fn check_eq_2_5(s: u32, r_max: u32) -> Result<f64> {
    check_eq_2_5_with::<f64>(s, r_max).map(|v| v.to_f64())
}

pub fn check_eq_2_5_with<R: Real>(s: u32, r_max: u32) -> Result<R> {
    if s < 2 {
        return Err(Error::Domain(format!("check_eq_2_5 needs s >= 2, got {s}")));
    }
    let lhs = R::from_i64(s as i64 - 1) * zeta_minus_one::<R>(s)? - R::one();
    let mut rhs = R::zero();
    for r in (1..=r_max).rev() {
        // (s-1)s...(s+r-1)/(r+1)! = C(s+r-1, r+1)
        let w = R::from_bigint(&binomial(s as i64 + r as i64 - 1, r as i64 + 1));
        rhs = rhs - w * zeta_minus_one::<R>(s + r)?;
    }
    Ok((lhs - rhs).abs())
}

/// Both sides of `δ_(m,0) - (-1)^m/(m+1) = sum_(i=0..m) (1-δ_(m,0)) (-1)^i C(m,i) ζ(i-m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaBinomialSides {
    pub m: u32,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub equal: bool,
}

pub fn check_eq_2_2(m: u32) -> ZetaBinomialSides {
    let delta = if m == 0 { BigRational::one() } else { BigRational::zero() };
    let lhs = delta - sign_pow(m as i64) / BigRational::from_integer(BigInt::from(m + 1));
    let mut rhs = BigRational::zero();
    if m > 0 {
        for i in 0..=m {
            let w = sign_pow(i as i64) * BigRational::from_integer(binomial(m as i64, i as i64));
            rhs += w * zeta_nonpos_exact(m - i);
        }
    }
    let equal = lhs == rhs;
    ZetaBinomialSides { m, lhs, rhs, equal }
}

/// Grow-only cache of reference ζ values.
#[derive(Debug)]
pub struct ZetaRef {
    digits: usize,
    positive: RwLock<BTreeMap<u32, f64>>,
    nonpositive: RwLock<BTreeMap<u32, BigRational>>,
}

impl ZetaRef {
    pub fn new(digits: usize) -> Self {
        ZetaRef {
            digits,
            positive: RwLock::new(BTreeMap::new()),
            nonpositive: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    /// `ζ(n)` for n >= 2.
    pub fn positive(&self, n: u32) -> Result<f64> {
        if let Some(v) = self.positive.read().expect("zeta cache poisoned").get(&n) {
            return Ok(*v);
        }
        let v = zeta_pos_ref(n, self.digits)?;
        self.positive.write().expect("zeta cache poisoned").entry(n).or_insert(v);
        Ok(v)
    }

    /// `ζ(-n)` for n >= 0.
    pub fn nonpositive(&self, n: u32) -> BigRational {
        if let Some(v) = self.nonpositive.read().expect("zeta cache poisoned").get(&n) {
            return v.clone();
        }
        let v = zeta_nonpos_exact(n);
        self.nonpositive
            .write()
            .expect("zeta cache poisoned")
            .entry(n)
            .or_insert(v)
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    /// ζ(n) from the alternating η series with Cohen–Rodriguez Villegas–Zagier acceleration.
    fn zeta_via_eta(n: u32) -> f64 {
        let terms = 40usize;
        let d = (3.0 + 8f64.sqrt()).powi(terms as i32);
        let d = (d + 1.0 / d) / 2.0;
        let (mut b, mut c, mut s) = (-1.0f64, -d, 0.0f64);
        for k in 0..terms {
            c = b - c;
            s += c / ((k + 1) as f64).powi(n as i32);
            b *= (k as f64 + terms as f64) * (k as f64 - terms as f64) / ((k as f64 + 0.5) * (k as f64 + 1.0));
        }
        let eta = s / d;
        eta / (1.0 - 2f64.powi(1 - n as i32))
    }

    fn even_value(n: u32) -> f64 {
        let (q, p) = zeta_even_exact(n).unwrap();
        crate::exact::rational_to_f64(&q) * std::f64::consts::PI.powi(p as i32)
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_int(1).unwrap(), BigInt::from(1));
        assert_eq!(gamma_int(3).unwrap(), BigInt::from(2));
        assert_eq!(gamma_int(6).unwrap(), BigInt::from(120));
        assert!(gamma_int(0).is_err());
    }

    #[test]
    fn euler_formula_coefficients() {
        assert_eq!(zeta_even_exact(2).unwrap(), (ratio(1, 6), 2));
        assert_eq!(zeta_even_exact(4).unwrap(), (ratio(1, 90), 4));
        assert_eq!(zeta_even_exact(6).unwrap(), (ratio(1, 945), 6));
        assert!(zeta_even_exact(3).is_err());
        assert!(zeta_even_exact(0).is_err());
    }

    #[test]
    fn reference_matches_euler_and_eta() {
        assert!((zeta_pos_ref(2, 15).unwrap() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
        for k in 1..=6 {
            let n = 2 * k;
            assert!((zeta_pos_ref(n, 15).unwrap() - even_value(n)).abs() < 1e-13, "n={n}");
        }
        for n in [3u32, 5, 7, 9] {
            assert!((zeta_pos_ref(n, 15).unwrap() - zeta_via_eta(n)).abs() < 1e-13, "n={n}");
        }
        assert!((zeta_pos_ref(3, 15).unwrap() - 1.2020569031595942).abs() < 1e-15);
    }

    #[test]
    fn reference_is_decreasing() {
        let vals: Vec<f64> = (2..=20).map(|n| zeta_pos_ref(n, 15).unwrap()).collect();
        for w in vals.windows(2) {
            assert!(w[0] > w[1]);
        }
        assert!(vals.iter().all(|v| *v > 1.0));
    }

    #[test]
    fn high_precision_reference() {
        BigReal::with_digits(50, || {
            let z2 = zeta_pos::<BigReal>(2).unwrap();
            let pi = BigReal::pi();
            let err = (z2 - pi.clone() * pi / BigReal::from_i64(6)).abs();
            assert!(err < BigReal::parse("1e-50").unwrap(), "{err:?}");
            let z3 = zeta_pos::<BigReal>(3).unwrap();
            let apery = BigReal::parse("1.2020569031595942853997381615114499907649862923405").unwrap();
            assert!((z3 - apery).abs() < BigReal::parse("1e-48").unwrap());
        });
    }

    #[test]
    fn small_tails_keep_relative_accuracy() {
        // ζ(60) - 1 = 2^-60 + 3^-60 + ...
        let v = zeta_minus_one::<f64>(60).unwrap();
        let direct = 2f64.powi(-60) + 3f64.powi(-60);
        assert!(((v - direct) / direct).abs() < 1e-14);
    }

    #[test]
    fn nonpositive_values() {
        assert_eq!(zeta_nonpos_exact(0), ratio(-1, 2));
        assert_eq!(zeta_nonpos_exact(1), ratio(-1, 12));
        assert_eq!(zeta_nonpos_exact(3), ratio(1, 120));
        for k in 1..=10 {
            assert_eq!(zeta_nonpos_exact(2 * k), rat(0));
        }
    }

    #[test]
    fn euler_mascheroni_agrees_with_harmonic_oracle() {
        let g = euler_mascheroni(12).unwrap();
        assert!(g > 0.577215664 && g < 0.577215666);
        let oracle = euler_mascheroni_harmonic::<f64>();
        assert!((g - oracle).abs() < 1e-14, "{g} vs {oracle}");
        assert!((oracle - 0.5772156649015329).abs() < 1e-15);
        // the integrand is finite at 0+
        let series: Vec<f64> = (1..=60usize)
            .map(|k| crate::exact::rational_to_f64(&((bernoulli(k) - sign_pow(k as i64)) / BigRational::from_integer(factorial(k as u64)))))
            .collect();
        assert!((gamma_integrand(&series, &1e-9) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn euler_mascheroni_high_precision() {
        BigReal::with_digits(50, || {
            let g = euler_mascheroni_with::<BigReal>().unwrap();
            let h = euler_mascheroni_harmonic::<BigReal>();
            let known = BigReal::parse("0.57721566490153286060651209008240243104215933593992").unwrap();
            assert!((g - known.clone()).abs() < BigReal::parse("1e-48").unwrap());
            assert!((h - known).abs() < BigReal::parse("1e-48").unwrap());
        });
    }

    #[test]
    fn recursion_residuals_vanish() {
        assert!(check_eq_2_5(2, 60).unwrap() < 1e-12);
        assert!(check_eq_2_5(5, 60).unwrap() < 1e-12);
        let unconverged = check_eq_2_5(2, 0).unwrap();
        assert!((unconverged - (2.0 - std::f64::consts::PI.powi(2) / 6.0)).abs() < 1e-12);
    }

    #[test]
    fn binomial_zeta_sides() {
        let e0 = check_eq_2_2(0);
        assert_eq!((e0.lhs.clone(), e0.rhs.clone(), e0.equal), (rat(0), rat(0), true));
        let e1 = check_eq_2_2(1);
        assert_eq!((e1.lhs.clone(), e1.rhs.clone(), e1.equal), (ratio(1, 2), ratio(5, 12), false));
        let e2 = check_eq_2_2(2);
        assert_eq!((e2.lhs, e2.rhs), (ratio(-1, 3), ratio(-1, 3)));
    }

    #[test]
    fn cache_is_stable() {
        let z = ZetaRef::new(15);
        let a = z.positive(5).unwrap();
        assert_eq!(a, z.positive(5).unwrap());
        assert_eq!(z.nonpositive(1), ratio(-1, 12));
        assert_eq!(BigRational::zero(), z.nonpositive(4));
    }
}
