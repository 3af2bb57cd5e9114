//! Laurent coefficient vectors in the basis
//! `{ (-1)^(n-1) (n-1)! / z^n,  1,  z^n / n! }` and their products.
//!
//! A vector `(..., a_-2, a_-1 | a_0, a_1, ...)` stores `a_n` against the basis
//! element of index `n`. Only finite windows are materialized; the `tail`
//! records whether components outside the window are known to vanish.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, format_rational, gen_binom, parse_rational, sign_pow, BigRational};

/// Scalar type a vector's components live in.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
{
    fn from_rational(q: &BigRational) -> Self;
    fn render(&self) -> String;
}

impl Coeff for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn render(&self) -> String {
        format_rational(self)
    }
}

impl Coeff for f64 {
    fn from_rational(q: &BigRational) -> Self {
        crate::exact::rational_to_f64(q)
    }
    fn render(&self) -> String {
        format!("{:.16e}", self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// Every component outside the window is zero.
    ZeroBeyondWindow,
    /// The window is a truncation of an infinite vector.
    TruncatedUnknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentVec<T = BigRational> {
    lo: i64,
    coeffs: Vec<T>,
    tail: Tail,
}

/// Vector with floating components, e.g. built from ζ values.
pub type NumericLaurentVec = LaurentVec<f64>;

impl<T: Coeff> LaurentVec<T> {
    /// `coeffs[i]` is component `lo + i`; the window must straddle index 0.
    pub fn new(lo: i64, coeffs: Vec<T>, tail: Tail) -> Result<Self> {
        let hi = lo + coeffs.len() as i64 - 1;
        if lo > 0 || hi < 0 {
            return Err(Error::Domain(format!(
                "window [{lo}, {hi}] must contain index 0"
            )));
        }
        Ok(LaurentVec { lo, coeffs, tail })
    }

    /// Vector with no negative part: `(... 0 | c_0, c_1, ...)`.
    pub fn taylor(coeffs: Vec<T>, tail: Tail) -> Self {
        let coeffs = if coeffs.is_empty() { vec![T::zero()] } else { coeffs };
        LaurentVec { lo: 0, coeffs, tail }
    }

    /// Builds a vector from a function over an index window.
    pub fn from_fn(lo: i64, hi: i64, tail: Tail, f: impl Fn(i64) -> T) -> Result<Self> {
        Self::new(lo, (lo..=hi).map(f).collect(), tail)
    }

    pub fn id() -> Self {
        Self::taylor(vec![T::from_rational(&BigRational::one())], Tail::ZeroBeyondWindow)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Component `n`; `None` when it lies outside the window of a truncated vector.
    pub fn get(&self, n: i64) -> Option<T> {
        if n < self.lo || n > self.hi() {
            return match self.tail {
                Tail::ZeroBeyondWindow => Some(T::zero()),
                Tail::TruncatedUnknown => None,
            };
        }
        Some(self.coeffs[(n - self.lo) as usize].clone())
    }

    /// Component `n` inside the window, zero outside.
    fn at(&self, n: i64) -> T {
        if n < self.lo || n > self.hi() {
            T::zero()
        } else {
            self.coeffs[(n - self.lo) as usize].clone()
        }
    }

    /// Components `from..=to`, each of which must be known.
    pub fn components(&self, from: i64, to: i64) -> Result<Vec<T>> {
        (from..=to)
            .map(|n| self.get(n).ok_or(Error::TruncatedOperand))
            .collect()
    }

    /// Declares the components outside the window to be zero, i.e. treats a
    /// truncation as an exact finite vector.
    pub fn assume_zero_tail(mut self) -> Self {
        self.tail = Tail::ZeroBeyondWindow;
        self
    }

    /// Restricts the window to `[lo, hi]` (clamped to the current one) and marks
    /// the result truncated when anything nonzero was cut off.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let lo = lo.clamp(self.lo, 0);
        let hi = hi.clamp(0, self.hi());
        let dropped = (self.lo..lo)
            .chain(hi + 1..=self.hi())
            .any(|n| !self.at(n).is_zero());
        let tail = if dropped { Tail::TruncatedUnknown } else { self.tail };
        LaurentVec {
            lo,
            coeffs: (lo..=hi).map(|n| self.at(n)).collect(),
            tail,
        }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> LaurentVec<U> {
        LaurentVec {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(f).collect(),
            tail: self.tail,
        }
    }
}

impl LaurentVec<BigRational> {
    /// Converts to plain Laurent coefficients `c_n` of `z^n`:
    /// `c_n = a_n / n!` and `c_-n = a_-n (-1)^(n-1) (n-1)!`.
    pub fn to_raw(&self) -> Vec<(i64, BigRational)> {
        (self.lo..=self.hi())
            .map(|n| (n, self.at(n) * basis_scale(n)))
            .collect()
    }

    /// Inverse of [`LaurentVec::to_raw`].
    pub fn from_raw(lo: i64, raw: &[BigRational], tail: Tail) -> Result<Self> {
        let coeffs = raw
            .iter()
            .enumerate()
            .map(|(i, c)| c / basis_scale(lo + i as i64))
            .collect();
        Self::new(lo, coeffs, tail)
    }
}

/// Value of the basis element of index `n` as a multiple of `z^n`.
fn basis_scale(n: i64) -> BigRational {
    if n >= 0 {
        BigRational::new(BigInt::one(), factorial(n as u64))
    } else {
        let m = -n;
        sign_pow(m - 1) * BigRational::from_integer(factorial((m - 1) as u64))
    }
}

impl<T: Coeff> fmt::Display for LaurentVec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = self.tail == Tail::TruncatedUnknown;
        let neg: Vec<String> = (self.lo..0).map(|n| self.at(n).render()).collect();
        let pos: Vec<String> = (0..=self.hi()).map(|n| self.at(n).render()).collect();
        write!(f, "(")?;
        if open {
            write!(f, "..., ")?;
        }
        write!(f, "{}", neg.join(", "))?;
        if neg.is_empty() {
            write!(f, "| ")?;
        } else {
            write!(f, " | ")?;
        }
        write!(f, "{}", pos.join(", "))?;
        if open {
            write!(f, ", ...")?;
        }
        write!(f, ")")
    }
}

/// Parses `"(a_lo, ..., a_-1 | a_0, ..., a_hi)"`. A `...` entry on either side
/// marks the vector as truncated.
pub fn parse_vector(s: &str) -> Result<LaurentVec<BigRational>> {
    let body = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("vector must be parenthesized: {s:?}")))?;
    let (neg, pos) = body
        .split_once('|')
        .ok_or_else(|| Error::Parse(format!("vector needs a '|' separator: {s:?}")))?;
    let mut truncated = false;
    let mut side = |text: &str| -> Result<Vec<BigRational>> {
        let mut out = Vec::new();
        for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if item == "..." || item == "…" {
                truncated = true;
            } else {
                out.push(parse_rational(item)?);
            }
        }
        Ok(out)
    };
    let neg = side(neg)?;
    let mut pos = side(pos)?;
    if pos.is_empty() {
        pos.push(BigRational::zero());
    }
    let lo = -(neg.len() as i64);
    let tail = if truncated { Tail::TruncatedUnknown } else { Tail::ZeroBeyondWindow };
    LaurentVec::new(lo, neg.into_iter().chain(pos).collect(), tail)
}

/// `alpha f + beta g` on the union of the windows.
pub fn linear_combine<T: Coeff>(alpha: &T, f: &LaurentVec<T>, beta: &T, g: &LaurentVec<T>) -> LaurentVec<T> {
    let lo = f.lo.min(g.lo);
    let hi = f.hi().max(g.hi());
    let coeffs = (lo..=hi)
        .map(|n| alpha.clone() * f.at(n) + beta.clone() * g.at(n))
        .collect();
    let tail = if f.tail == Tail::ZeroBeyondWindow && g.tail == Tail::ZeroBeyondWindow {
        Tail::ZeroBeyondWindow
    } else {
        Tail::TruncatedUnknown
    };
    LaurentVec { lo, coeffs, tail }
}

/// Product of functions, componentwise in the vector basis.
///
/// Both operands must have finite support. The product of supports
/// `[lo_f, hi_f]` and `[lo_g, hi_g]` is supported in `[lo_f + lo_g, hi_f + hi_g]`,
/// so the result window holds every nonzero component.
pub fn laurent_mul<T: Coeff>(f: &LaurentVec<T>, g: &LaurentVec<T>) -> Result<LaurentVec<T>> {
    if f.tail != Tail::ZeroBeyondWindow || g.tail != Tail::ZeroBeyondWindow {
        return Err(Error::TruncatedOperand);
    }
    let lo = f.lo + g.lo;
    let hi = f.hi() + g.hi();
    let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..0 {
        coeffs.push(negative_component(f, g, -n)?);
    }
    for n in 0..=hi {
        coeffs.push(nonnegative_component(f, g, n)?);
    }
    Ok(LaurentVec {
        lo,
        coeffs,
        tail: Tail::ZeroBeyondWindow,
    })
}

fn weight<T: Coeff>(w: &BigRational) -> T {
    T::from_rational(w)
}

/// Component `n >= 0`: `sum_k <n, n-k> a_k b_(n-k)` over k < 0, then
/// `C(n,k) a_k b_(n-k)` for `0 <= k <= n`, then `<n, k> a_k b_(n-k)` for k > n.
fn nonnegative_component<T: Coeff>(f: &LaurentVec<T>, g: &LaurentVec<T>, n: i64) -> Result<T> {
    let mut acc = T::zero();
    // k < 0 needs b at n - k in [lo_g, hi_g]
    for k in f.lo.max(n - g.hi())..0 {
        let (a, b) = (f.at(k), g.at(n - k));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = acc + weight::<T>(&gen_binom(n, n - k)?) * a * b;
    }
    for k in 0.max(n - g.hi())..=n.min(f.hi()) {
        let (a, b) = (f.at(k), g.at(n - k));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = acc + weight::<T>(&BigRational::from_integer(binomial(n, k))) * a * b;
    }
    for k in (n + 1).max(n - g.hi())..=f.hi().min(n - g.lo) {
        let (a, b) = (f.at(k), g.at(n - k));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = acc + weight::<T>(&gen_binom(n, k)?) * a * b;
    }
    Ok(acc)
}

/// Component `-n` (n > 0) as the three sums over `k <= -n`, `-n < k < 0`, `k >= 0`.
fn negative_component<T: Coeff>(f: &LaurentVec<T>, g: &LaurentVec<T>, n: i64) -> Result<T> {
    let mut acc = T::zero();
    for k in f.lo..=-n {
        let (a, b) = (f.at(k), g.at(-n - k));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let w = sign_pow(n + k) * BigRational::from_integer(binomial(-k - 1, n - 1));
        acc = acc + weight::<T>(&w) * a * b;
    }
    for k in (-n + 1)..0 {
        let (a, b) = (f.at(k), g.at(-n - k));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(k) * binomial(n - 1, -k));
        acc = acc + weight::<T>(&w) * a * b;
    }
    for k in 0..=f.hi() {
        let (a, b) = (f.at(k), g.at(-n - k));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = acc + weight::<T>(&stream_weight(n, k)) * a * b;
    }
    Ok(acc)
}

/// `(-1)^k C(n+k-1, n-1)`.
fn stream_weight(n: i64, k: i64) -> BigRational {
    sign_pow(k) * BigRational::from_integer(binomial(n + k - 1, n - 1))
}

/// Componentwise product on the intersection of the windows.
pub fn pointwise_mul<T: Coeff>(f: &LaurentVec<T>, g: &LaurentVec<T>) -> LaurentVec<T> {
    let lo = f.lo.max(g.lo);
    let hi = f.hi().min(g.hi());
    let coeffs = (lo..=hi).map(|n| f.at(n) * g.at(n)).collect();
    let covers = |a: &LaurentVec<T>, b: &LaurentVec<T>| {
        a.tail == Tail::ZeroBeyondWindow && b.lo <= a.lo && a.hi() <= b.hi()
    };
    let exact = (f.tail == Tail::ZeroBeyondWindow && g.tail == Tail::ZeroBeyondWindow)
        || covers(f, g)
        || covers(g, f);
    LaurentVec {
        lo,
        coeffs,
        tail: if exact { Tail::ZeroBeyondWindow } else { Tail::TruncatedUnknown },
    }
}

/// The named Taylor-only vectors.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedElement {
    /// `(... 0 | 1, 0, 0, ...)`
    Id,
    /// `e^(cz)`: components `c^k`.
    J(BigRational),
    /// `z / (e^z - 1)`: components `B_k`.
    B,
    /// `(e^z - 1) / z`: components `1 / (k+1)`.
    H,
    /// `(-1)^k / (k+1)`
    Minus1H,
    /// `(-1)^k B_k`
    Minus1B,
}

impl NamedElement {
    fn component(&self, k: u64) -> BigRational {
        match self {
            NamedElement::Id => {
                if k == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
            NamedElement::J(c) => num_traits::pow(c.clone(), k as usize),
            NamedElement::B => crate::bernoulli::bernoulli(k as usize),
            NamedElement::H => BigRational::new(BigInt::one(), BigInt::from(k + 1)),
            NamedElement::Minus1H => sign_pow(k as i64) * BigRational::new(BigInt::one(), BigInt::from(k + 1)),
            NamedElement::Minus1B => sign_pow(k as i64) * crate::bernoulli::bernoulli(k as usize),
        }
    }

    /// Components `0..=k_max`. `Id` is exact; everything else is a truncation.
    pub fn materialize(&self, k_max: u64) -> Result<LaurentVec<BigRational>> {
        if let NamedElement::J(c) = self {
            if c.is_zero() {
                return Err(Error::Domain("j-element needs j != 0".into()));
            }
        }
        let coeffs = (0..=k_max).map(|k| self.component(k)).collect();
        let tail = if *self == NamedElement::Id {
            Tail::ZeroBeyondWindow
        } else {
            Tail::TruncatedUnknown
        };
        Ok(LaurentVec::taylor(coeffs, tail))
    }
}

pub fn named_element(name: &NamedElement, k_max: u64) -> Result<LaurentVec<BigRational>> {
    name.materialize(k_max)
}

/// Pure coefficient generator `k -> value`.
#[derive(Clone)]
pub struct CoeffStream<T = BigRational> {
    generator: Arc<dyn Fn(usize) -> T + Send + Sync>,
    pub description: String,
}

impl<T> fmt::Debug for CoeffStream<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoeffStream").field("description", &self.description).finish()
    }
}

impl<T: Coeff> CoeffStream<T> {
    pub fn new(description: impl Into<String>, generator: impl Fn(usize) -> T + Send + Sync + 'static) -> Self {
        CoeffStream {
            generator: Arc::new(generator),
            description: description.into(),
        }
    }

    pub fn at(&self, k: usize) -> T {
        (self.generator)(k)
    }

    pub fn take(&self, n: usize) -> Vec<T> {
        (0..n).map(|k| self.at(k)).collect()
    }

    /// Taylor side of a vector as a stream; zero beyond the window, and
    /// indices past a truncated window are a caller error.
    pub fn taylor_of(v: &LaurentVec<T>) -> Self {
        let v = v.clone();
        CoeffStream::new(format!("taylor side of {v}"), move |k| {
            v.get(k as i64).expect("stream index past truncated window")
        })
    }

    /// Negative side as a stream indexed by `m`: value `a_-m` (index 0 unused).
    pub fn negative_tail_of(v: &LaurentVec<T>) -> Self {
        let v = v.clone();
        CoeffStream::new(format!("negative side of {v}"), move |m| {
            if m == 0 {
                T::zero()
            } else {
                v.get(-(m as i64)).expect("stream index past truncated window")
            }
        })
    }
}

/// Terms of the `k >= 0` sum for component `-n` of `f . g` where `f` is
/// Taylor-only: `c_k = (-1)^k C(n+k-1, n-1) a_k b_(-n-k)`. The terms are
/// returned unsummed; their sum may diverge.
///
/// `g_negtail.at(m)` must be `b_-m`.
pub fn neg_component_stream<T: Coeff>(f: &CoeffStream<T>, g_negtail: &CoeffStream<T>, n: u64) -> Result<CoeffStream<T>> {
    if n < 1 {
        return Err(Error::Domain("negative component index must be >= 1".into()));
    }
    let (f, g) = (f.clone(), g_negtail.clone());
    let description = format!("component -{n} terms of ({}) . ({})", f.description, g.description);
    Ok(CoeffStream::new(description, move |k| {
        let w = T::from_rational(&stream_weight(n as i64, k as i64));
        w * f.at(k) * g.at(n as usize + k)
    }))
}

/// `(..., 3(ζ(4)-1), 2(ζ(3)-1), ζ(2)-1 | 0, 0, ...)` truncated to `depth` negative
/// components, from an oracle for ζ(n).
pub fn zeta_prime_vec(depth: u32, zeta: impl Fn(u32) -> Result<f64>) -> Result<NumericLaurentVec> {
    zeta_prime_vec_from_tail(depth, |n| Ok(zeta(n)? - 1.0))
}

/// Same vector from an oracle for ζ(n) - 1, which keeps full relative accuracy
/// once ζ(n) rounds to 1.
pub fn zeta_prime_vec_from_tail(depth: u32, zeta_minus_one: impl Fn(u32) -> Result<f64>) -> Result<NumericLaurentVec> {
    if depth < 1 {
        return Err(Error::Domain("zeta' vector needs depth >= 1".into()));
    }
    let mut neg = Vec::with_capacity(depth as usize + 1);
    for m in (1..=depth).rev() {
        neg.push(m as f64 * zeta_minus_one(m + 1)?);
    }
    neg.push(0.0);
    LaurentVec::new(-(depth as i64), neg, Tail::TruncatedUnknown)
}

/// Residual `|sum_(r < terms) c_r - 1|` where `c_r` are the terms of component
/// `-n` of `(-1 H) . zeta'`, i.e. the series in ζ(n+1+r) - 1 that sums to 1.
/// The oracle supplies ζ(k) - 1.
pub fn check_eq_2_9(n: u32, terms: usize, zeta_minus_one: impl Fn(u32) -> Result<f64>) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("component index must be >= 1".into()));
    }
    let zp = zeta_prime_vec_from_tail(n + terms as u32, zeta_minus_one)?;
    let minus1h = CoeffStream::new("-1 H", |k| {
        if k % 2 == 0 {
            1.0 / (k as f64 + 1.0)
        } else {
            -1.0 / (k as f64 + 1.0)
        }
    });
    let tail = CoeffStream::negative_tail_of(&zp);
    let stream = neg_component_stream(&minus1h, &tail, n as u64)?;
    let sum: f64 = stream.take(terms).iter().sum();
    Ok((sum - 1.0).abs())
}
