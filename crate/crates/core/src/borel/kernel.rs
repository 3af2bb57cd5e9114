//! Closed-form Borel transforms.
//!
//! Every registry transform is a finite sum of terms
//! `c t^p e^(a t) / (e^t - 1)^q`, kept in a canonical form where `q >= 1`
//! forces `a = 0`. Sums of such terms are closed under products, derivatives
//! and multiplication by powers of `t`, and have exact Taylor expansions.
//! Cauchy products without a closed form become Borel convolutions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, format_rational, BigRational};
use crate::quadrature::{adaptive, GaussLegendre};
use crate::real::Real;

/// Taylor terms used below the series switch point.
pub const SERIES_TERMS: usize = 60;
/// `|u|` at or below which transforms are evaluated from their Taylor series.
pub const SERIES_SWITCH: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Shape {
    q: u32,
    p: i64,
    a: i64,
}

/// `coef * t^p * e^(a t) / (e^t - 1)^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coef: BigRational,
    pub p: i64,
    pub a: i64,
    pub q: u32,
}

impl Term {
    pub fn new(coef: BigRational, p: i64, a: i64, q: u32) -> Self {
        Term { coef, p, a, q }
    }

    fn shape(&self) -> Shape {
        Shape { q: self.q, p: self.p, a: self.a }
    }
}

/// Canonical sum of terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TermSum {
    terms: Vec<Term>,
}

impl TermSum {
    pub fn zero() -> Self {
        TermSum { terms: Vec::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut acc: BTreeMap<Shape, BigRational> = BTreeMap::new();
        for t in terms {
            for c in canonical(t) {
                *acc.entry(c.shape()).or_insert_with(BigRational::zero) += c.coef;
            }
        }
        TermSum {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(s, c)| Term::new(c, s.p, s.a, s.q))
                .collect(),
        }
    }

    pub fn term(coef: BigRational, p: i64, a: i64, q: u32) -> Self {
        Self::from_terms([Term::new(coef, p, a, q)])
    }

    /// The constant `c`.
    pub fn constant(c: BigRational) -> Self {
        Self::term(c, 0, 0, 0)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TermSum) -> TermSum {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &BigRational) -> TermSum {
        Self::from_terms(self.terms.iter().map(|t| Term::new(&t.coef * c, t.p, t.a, t.q)))
    }

    pub fn mul(&self, other: &TermSum) -> TermSum {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for x in &self.terms {
            for y in &other.terms {
                out.push(Term::new(&x.coef * &y.coef, x.p + y.p, x.a + y.a, x.q + y.q));
            }
        }
        Self::from_terms(out)
    }

    /// Multiplies by `t^m`.
    pub fn shift_power(&self, m: i64) -> TermSum {
        Self::from_terms(self.terms.iter().map(|t| Term::new(t.coef.clone(), t.p + m, t.a, t.q)))
    }

    pub fn derivative(&self) -> TermSum {
        let mut out = Vec::new();
        for t in &self.terms {
            if t.p != 0 {
                out.push(Term::new(&t.coef * BigRational::from_integer(t.p.into()), t.p - 1, t.a, t.q));
            }
            if t.a != 0 {
                out.push(Term::new(&t.coef * BigRational::from_integer(t.a.into()), t.p, t.a, t.q));
            }
            if t.q != 0 {
                out.push(Term::new(-&t.coef * BigRational::from_integer(t.q.into()), t.p, t.a + 1, t.q + 1));
            }
        }
        Self::from_terms(out)
    }

    /// Exact Taylor coefficients of `t^0 .. t^j_max`. Negative powers from
    /// individual terms must cancel across the sum.
    pub fn taylor(&self, j_max: usize) -> Result<Vec<BigRational>> {
        let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
        for t in &self.terms {
            let start = t.p - t.q as i64;
            if start > j_max as i64 {
                continue;
            }
            let len = (j_max as i64 - start + 1) as usize;
            let exp = exp_series(t.a, len);
            let mut s = mul_series(&exp, &power_series(&inverse_bernoulli_gf(len), t.q, len), len);
            for c in s.iter_mut() {
                *c *= &t.coef;
            }
            for (i, c) in s.into_iter().enumerate() {
                *acc.entry(start + i as i64).or_insert_with(BigRational::zero) += c;
            }
        }
        if let Some((j, _)) = acc.iter().find(|(j, c)| **j < 0 && !c.is_zero()) {
            return Err(Error::Kernel(format!("transform has a pole of order {} at 0", -j)));
        }
        Ok((0..=j_max as i64)
            .map(|j| acc.get(&j).cloned().unwrap_or_else(BigRational::zero))
            .collect())
    }

    /// Exponential rate and leading power of `e^(-t) BA(z t)` as t grows.
    pub fn decay(&self, z: f64) -> Decay {
        let mut rate = f64::NEG_INFINITY;
        let mut power = i64::MIN;
        for t in &self.terms {
            let r = if t.q == 0 {
                -1.0 + t.a as f64 * z
            } else if z > 0.0 {
                -1.0 - t.q as f64 * z
            } else {
                -1.0
            };
            if r > rate {
                rate = r;
                power = t.p;
            } else if r == rate {
                power = power.max(t.p);
            }
        }
        if self.terms.is_empty() {
            return Decay { rate: -1.0, power: 0 };
        }
        Decay { rate, power }
    }
}

impl fmt::Display for TermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = format!("({})", format_rational(&t.coef));
                if t.p != 0 {
                    s += &format!("*t^{}", t.p);
                }
                if t.a != 0 {
                    s += &format!("*e^({}t)", t.a);
                }
                if t.q != 0 {
                    s += &format!("/(e^t-1)^{}", t.q);
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Rewrites a term until `q >= 1` implies `a = 0`, using `e^t = (e^t - 1) + 1`.
fn canonical(t: Term) -> Vec<Term> {
    if t.coef.is_zero() {
        return Vec::new();
    }
    if t.q == 0 || t.a == 0 {
        return vec![t];
    }
    let (first, second) = if t.a > 0 {
        // e^(at)/E^q = e^((a-1)t)/E^(q-1) + e^((a-1)t)/E^q
        (
            Term::new(t.coef.clone(), t.p, t.a - 1, t.q - 1),
            Term::new(t.coef, t.p, t.a - 1, t.q),
        )
    } else {
        // e^(-t) = 1 - (e^t - 1) e^(-t), so e^(at)/E^q = e^((a+1)t)/E^q - e^(at)/E^(q-1)
        (
            Term::new(t.coef.clone(), t.p, t.a + 1, t.q),
            Term::new(-t.coef, t.p, t.a, t.q - 1),
        )
    };
    let mut out = canonical(first);
    out.extend(canonical(second));
    out
}

/// Growth of the weighted integrand: roughly `t^power e^(rate t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decay {
    pub rate: f64,
    pub power: i64,
}

fn mul_series(x: &[BigRational], y: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, a) in x.iter().enumerate().take(len) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(len - i) {
            out[i + j] += a * b;
        }
    }
    out
}

fn power_series(x: &[BigRational], n: u32, len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    out[0] = BigRational::one();
    for _ in 0..n {
        out = mul_series(&out, x, len);
    }
    out
}

fn exp_series(a: i64, len: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(len);
    let mut c = BigRational::one();
    for k in 0..len {
        out.push(c.clone());
        c *= BigRational::new(BigInt::from(a), BigInt::from(k as u64 + 1));
    }
    out
}

/// `t / (e^t - 1)` as the reciprocal of `(e^t - 1)/t = sum t^k/(k+1)!`.
fn inverse_bernoulli_gf(len: usize) -> Vec<BigRational> {
    let h: Vec<BigRational> = (0..len)
        .map(|k| BigRational::new(BigInt::one(), factorial(k as u64 + 1)))
        .collect();
    let mut inv: Vec<BigRational> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            inv.push(BigRational::one());
            continue;
        }
        let mut acc = BigRational::zero();
        for k in 1..=n {
            acc += &h[k] * &inv[n - k];
        }
        inv.push(-acc);
    }
    inv
}

/// Borel transform expression.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelExpr {
    Terms(TermSum),
    /// Transform of a Cauchy product `w * v`:
    /// `w_0 BV(u) + ∫_0^u BW'(u - s) BV(s) ds`.
    Conv {
        w0: BigRational,
        dw: Box<KernelExpr>,
        v: Box<KernelExpr>,
    },
    Sum(Vec<(BigRational, KernelExpr)>),
}

impl KernelExpr {
    pub fn as_terms(&self) -> Option<&TermSum> {
        match self {
            KernelExpr::Terms(t) => Some(t),
            _ => None,
        }
    }

    pub fn linear(alpha: &BigRational, x: &KernelExpr, beta: &BigRational, y: &KernelExpr) -> KernelExpr {
        match (x, y) {
            (KernelExpr::Terms(a), KernelExpr::Terms(b)) => KernelExpr::Terms(a.scale(alpha).add(&b.scale(beta))),
            _ => {
                let parts = [(alpha.clone(), x.clone()), (beta.clone(), y.clone())]
                    .into_iter()
                    .filter(|(c, _)| !c.is_zero())
                    .collect();
                KernelExpr::Sum(parts)
            }
        }
    }

    /// Derivative; only closed-form transforms have one here.
    pub fn derivative(&self) -> Option<KernelExpr> {
        match self {
            KernelExpr::Terms(t) => Some(KernelExpr::Terms(t.derivative())),
            KernelExpr::Sum(parts) => parts
                .iter()
                .map(|(c, e)| e.derivative().map(|d| (c.clone(), d)))
                .collect::<Option<Vec<_>>>()
                .map(KernelExpr::Sum),
            KernelExpr::Conv { .. } => None,
        }
    }

    pub fn taylor(&self, j_max: usize) -> Result<Vec<BigRational>> {
        match self {
            KernelExpr::Terms(t) => t.taylor(j_max),
            KernelExpr::Sum(parts) => {
                let mut acc = vec![BigRational::zero(); j_max + 1];
                for (c, e) in parts {
                    for (a, b) in acc.iter_mut().zip(e.taylor(j_max)?) {
                        *a += c * b;
                    }
                }
                Ok(acc)
            }
            KernelExpr::Conv { w0, dw, v } => {
                // back to plain coefficients, Cauchy product, forward again;
                // w_k = k! [BW]_k = (k-1)! [BW']_(k-1)
                let dws = dw.taylor(j_max)?;
                let vs = v.taylor(j_max)?;
                let fact: Vec<BigRational> = (0..=j_max as u64).map(|k| BigRational::from_integer(factorial(k))).collect();
                let wk: Vec<BigRational> = (0..=j_max)
                    .map(|k| if k == 0 { w0.clone() } else { &dws[k - 1] * &fact[k - 1] })
                    .collect();
                let vk: Vec<BigRational> = vs.iter().zip(&fact).map(|(c, f)| c * f).collect();
                Ok((0..=j_max)
                    .map(|n| {
                        let c = (0..=n).fold(BigRational::zero(), |acc, k| acc + &wk[k] * &vk[n - k]);
                        c / &fact[n]
                    })
                    .collect())
            }
        }
    }

    pub fn decay(&self, z: f64) -> Decay {
        match self {
            KernelExpr::Terms(t) => t.decay(z),
            KernelExpr::Sum(parts) => parts
                .iter()
                .map(|(_, e)| e.decay(z))
                .fold(Decay { rate: f64::NEG_INFINITY, power: 0 }, max_decay),
            KernelExpr::Conv { dw, v, .. } => {
                let (a, b) = (dw.decay(z), v.decay(z));
                // convolving adds the polynomial orders plus one
                let d = max_decay(a, b);
                Decay { rate: d.rate, power: a.power.max(0) + b.power.max(0) + 1 }
            }
        }
    }
}

fn max_decay(x: Decay, y: Decay) -> Decay {
    if x.rate > y.rate {
        x
    } else if y.rate > x.rate {
        y
    } else {
        Decay { rate: x.rate, power: x.power.max(y.power) }
    }
}

impl fmt::Display for KernelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelExpr::Terms(t) => write!(f, "{t}"),
            KernelExpr::Conv { w0, dw, v } => write!(f, "conv[w0={}; dW={dw}; V={v}]", format_rational(w0)),
            KernelExpr::Sum(parts) => {
                let s: Vec<String> = parts.iter().map(|(c, e)| format!("{} * [{e}]", format_rational(c))).collect();
                write!(f, "{}", s.join(" + "))
            }
        }
    }
}

/// A Borel transform with a stable id.
#[derive(Debug, Clone, PartialEq)]
pub struct BorelKernel {
    pub id: String,
    pub expr: KernelExpr,
    /// When false, summability is decided by the numeric probe instead of
    /// the analytic decay rate.
    pub analytic: bool,
}

impl BorelKernel {
    pub fn new(id: impl Into<String>, expr: KernelExpr) -> Self {
        BorelKernel {
            id: id.into(),
            expr,
            analytic: true,
        }
    }

    pub fn terms(id: impl Into<String>, t: TermSum) -> Self {
        Self::new(id, KernelExpr::Terms(t))
    }

    pub fn without_hint(mut self) -> Self {
        self.analytic = false;
        self
    }

    /// Exact Taylor coefficients `[BA]_0 .. [BA]_k_max`.
    pub fn series_at_zero(&self, k_max: usize) -> Result<Vec<BigRational>> {
        self.expr.taylor(k_max)
    }

    /// Analytic decay of `e^(-t) BA(z t)`, when known.
    pub fn summable_at(&self, z: f64) -> Option<Decay> {
        self.analytic.then(|| self.expr.decay(z))
    }
}

/// Kernel converted to the working scalar type.
#[derive(Debug)]
pub(crate) enum Prepared<R> {
    Terms {
        taylor: Vec<R>,
        terms: Vec<(R, i64, i64, u32)>,
    },
    Conv {
        w0: R,
        dw: Box<Prepared<R>>,
        v: Box<Prepared<R>>,
        rule: Arc<GaussLegendre<R>>,
    },
    Sum(Vec<(R, Prepared<R>)>),
}

impl<R: Real> Prepared<R> {
    pub(crate) fn new(expr: &KernelExpr, rule: &Arc<GaussLegendre<R>>) -> Result<Self> {
        Ok(match expr {
            KernelExpr::Terms(t) => Prepared::Terms {
                taylor: t.taylor(SERIES_TERMS)?.iter().map(R::from_rational).collect(),
                terms: t
                    .terms()
                    .iter()
                    .map(|x| (R::from_rational(&x.coef), x.p, x.a, x.q))
                    .collect(),
            },
            KernelExpr::Conv { w0, dw, v } => Prepared::Conv {
                w0: R::from_rational(w0),
                dw: Box::new(Prepared::new(dw, rule)?),
                v: Box::new(Prepared::new(v, rule)?),
                rule: rule.clone(),
            },
            KernelExpr::Sum(parts) => Prepared::Sum(
                parts
                    .iter()
                    .map(|(c, e)| Ok((R::from_rational(c), Prepared::new(e, rule)?)))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    /// `e^(-t) BA(u)`. `tol` bounds the absolute error of numerically
    /// evaluated parts of the result.
    pub(crate) fn weighted(&self, t: &R, u: &R, tol: &R) -> Result<R> {
        match self {
            Prepared::Terms { taylor, terms } => {
                if u.abs() <= R::from_f64(SERIES_SWITCH) {
                    Ok((-t.clone()).exp() * horner(taylor, u))
                } else {
                    Ok(closed_form(terms, t, u))
                }
            }
            Prepared::Conv { .. } => {
                let scale = t.exp();
                Ok(self.value(u, &(tol.clone() * scale.clone()))? / scale)
            }
            Prepared::Sum(parts) => {
                let mut acc = R::zero();
                for (c, p) in parts {
                    let share = tol.clone() / (c.abs() * R::from_i64(parts.len() as i64) + R::epsilon());
                    acc = acc + c.clone() * p.weighted(t, u, &share)?;
                }
                Ok(acc)
            }
        }
    }

    /// `BA(u)`.
    pub(crate) fn value(&self, u: &R, tol: &R) -> Result<R> {
        match self {
            Prepared::Conv { w0, dw, v, rule } => {
                let mut inner = |s: &R| -> Result<R> {
                    let d = dw.value(&(u.clone() - s.clone()), tol)?;
                    Ok(d * v.value(s, tol)?)
                };
                let out = adaptive(rule, &mut inner, R::zero(), u.clone(), tol.clone() / R::from_i64(2), 4_000)?;
                if !out.converged {
                    return Err(Error::Kernel(format!("convolution integral at u={} did not converge", u.to_sci())));
                }
                Ok(w0.clone() * v.value(u, tol)? + out.value)
            }
            _ => self.weighted(&R::zero(), u, tol),
        }
    }

    /// Closed form regardless of `|u|`; for self-tests of the series branch.
    #[cfg(test)]
    pub(crate) fn closed_value(&self, u: &R) -> Option<R> {
        match self {
            Prepared::Terms { terms, .. } => Some(closed_form(terms, &R::zero(), u)),
            _ => None,
        }
    }
}

fn horner<R: Real>(coeffs: &[R], u: &R) -> R {
    let mut acc = R::zero();
    for c in coeffs.iter().rev() {
        acc = acc * u.clone() + c.clone();
    }
    acc
}

/// `e^(-t) sum c u^p e^(a u) / (e^u - 1)^q`, folding every exponential into
/// one exponent so nothing overflows.
fn closed_form<R: Real>(terms: &[(R, i64, i64, u32)], t: &R, u: &R) -> R {
    let mut acc = R::zero();
    let positive = *u > R::zero();
    for (c, p, a, q) in terms {
        let up = u.powi(*p as i32);
        let v = if *q == 0 {
            up * (R::from_i64(*a) * u.clone() - t.clone()).exp()
        } else if positive {
            // 1/(e^u - 1)^q = e^(-q u) / (1 - e^(-u))^q
            let den = (-(-u.clone()).expm1()).powi(*q as i32);
            up * (-(R::from_i64(*q as i64) * u.clone()) - t.clone()).exp() / den
        } else {
            up * (-t.clone()).exp() / u.expm1().powi(*q as i32)
        };
        acc = acc + c.clone() * v;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::bernoulli;
    use crate::exact::{rat, ratio};

    fn bern_kernel() -> TermSum {
        TermSum::term(rat(1), 1, 0, 1)
    }

    #[test]
    fn canonical_form_reduces_exponentials() {
        // t e^t/(e^t-1) = t + t/(e^t-1)
        let k = TermSum::term(rat(1), 1, 1, 1);
        assert_eq!(k, TermSum::from_terms([Term::new(rat(1), 1, 0, 0), Term::new(rat(1), 1, 0, 1)]));
        // e^(-t)/(e^t-1) = 1/(e^t-1) - e^(-t)
        let m = TermSum::term(rat(1), 0, -1, 1);
        assert_eq!(m, TermSum::from_terms([Term::new(rat(1), 0, 0, 1), Term::new(rat(-1), 0, -1, 0)]));
        assert!(m.terms().iter().all(|t| t.q == 0 || t.a == 0));
    }

    #[test]
    fn bernoulli_generating_function() {
        let s = bern_kernel().taylor(30).unwrap();
        for (k, c) in s.iter().enumerate() {
            assert_eq!(*c, bernoulli(k) / BigRational::from_integer(factorial(k as u64)));
        }
    }

    #[test]
    fn poles_must_cancel() {
        assert!(TermSum::term(rat(1), 0, 0, 1).taylor(5).is_err());
        let beta = TermSum::from_terms([Term::new(rat(1), 0, 1, 1), Term::new(rat(-1), -1, 0, 0)]);
        let s = beta.taylor(4).unwrap();
        // beta+_(k+1)/k!: 1/2, 1/12, 0, -1/720
        assert_eq!(s[0], ratio(1, 2));
        assert_eq!(s[1], ratio(1, 12));
        assert_eq!(s[2], rat(0));
        assert_eq!(s[3], ratio(-1, 720));
    }

    #[test]
    fn derivative_matches_series() {
        let k = bern_kernel();
        let d = k.derivative().taylor(20).unwrap();
        let s = k.taylor(21).unwrap();
        for j in 0..=20 {
            assert_eq!(d[j], &s[j + 1] * rat(j as i64 + 1));
        }
        // products and powers of t
        let sq = k.mul(&k).taylor(10).unwrap();
        for n in 0..=10 {
            let c = (0..=n).fold(rat(0), |acc, i| acc + &s[i] * &s[n - i]);
            assert_eq!(sq[n], c);
        }
        assert_eq!(k.shift_power(2).taylor(3).unwrap(), vec![rat(0), rat(0), rat(1), ratio(-1, 2)]);
    }

    #[test]
    fn series_branch_agrees_with_closed_form() {
        let rule = Arc::new(GaussLegendre::<f64>::new(20));
        let exprs = [
            bern_kernel(),
            TermSum::term(rat(1), 3, 0, 1),
            TermSum::term(rat(1), 2, 2, 2),
            TermSum::from_terms([Term::new(rat(1), 0, 1, 1), Term::new(rat(-1), -1, 0, 0)]),
        ];
        for e in exprs {
            let p = Prepared::<f64>::new(&KernelExpr::Terms(e.clone()), &rule).unwrap();
            for u in [0.05, 0.1, 0.2, 0.25, -0.25, -0.1] {
                let series = p.value(&u, &1e-15).unwrap();
                let closed = p.closed_value(&u).unwrap();
                assert!((series - closed).abs() < 1e-13, "{e}: u={u}: {series} vs {closed}");
            }
        }
    }

    #[test]
    fn decay_rates() {
        let geo = TermSum::term(rat(1), 0, 1, 0);
        assert_eq!(geo.decay(-1.0), Decay { rate: -2.0, power: 0 });
        assert_eq!(geo.decay(1.0).rate, 0.0);
        let b = bern_kernel();
        assert_eq!(b.decay(1.0).rate, -2.0);
        assert_eq!(b.decay(-1.0).rate, -1.0);
    }

    #[test]
    fn convolution_series() {
        // e^t (x) e^t as a convolution must match (1 + t) e^t
        let e = KernelExpr::Terms(TermSum::term(rat(1), 0, 1, 0));
        let conv = KernelExpr::Conv {
            w0: rat(1),
            dw: Box::new(e.derivative().unwrap()),
            v: Box::new(e.clone()),
        };
        let closed = TermSum::from_terms([Term::new(rat(1), 0, 1, 0), Term::new(rat(1), 1, 1, 0)]);
        assert_eq!(conv.taylor(15).unwrap(), closed.taylor(15).unwrap());
        let rule = Arc::new(GaussLegendre::<f64>::new(20));
        let p = Prepared::<f64>::new(&conv, &rule).unwrap();
        for u in [0.1f64, 1.0, 3.0] {
            let v = p.value(&u, &1e-12).unwrap();
            assert!((v - (1.0 + u) * u.exp()).abs() < 1e-10, "{u}: {v}");
        }
    }
}
