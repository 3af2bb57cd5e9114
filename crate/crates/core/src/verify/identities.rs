//! Convolution identities among Bernoulli numbers. Each function returns
//! `(lhs, rhs)` for one index.

use num_traits::Zero;

use crate::bernoulli::{bernoulli, bernoulli_second};
use crate::exact::{binomial, harmonic, BigRational};

fn c(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(n as i64, k as i64))
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sum(range: std::ops::RangeInclusive<usize>, f: impl Fn(usize) -> BigRational) -> BigRational {
    range.fold(BigRational::zero(), |acc, k| acc + f(k))
}

/// `sum_(k=2..n-2) C(n,k) B_k B_(n-k) = -(n+1) B_n`, n >= 4.
pub fn gessel(n: usize) -> (BigRational, BigRational) {
    let lhs = sum(2..=n - 2, |k| c(n, k) * bernoulli(k) * bernoulli(n - k));
    (lhs, -int(n + 1) * bernoulli(n))
}

/// Full-range form: `sum_(k=0..n) C(n,k) B_k B_(n-k) = -(n-1) B_n - n B_(n-1)`, n >= 1.
pub fn gessel_full(n: usize) -> (BigRational, BigRational) {
    let lhs = sum(0..=n, |k| c(n, k) * bernoulli(k) * bernoulli(n - k));
    (lhs, -int(n - 1) * bernoulli(n) - int(n) * bernoulli(n - 1))
}

/// `(n+2) sum B_k B_(n-k) - 2 sum C(n+2,k) B_k B_(n-k) = n(n+1) B_n`, both sums over
/// k = 2..n-2, n >= 4.
pub fn matiyasevich(n: usize) -> (BigRational, BigRational) {
    let plain = sum(2..=n - 2, |k| bernoulli(k) * bernoulli(n - k));
    let weighted = sum(2..=n - 2, |k| c(n + 2, k) * bernoulli(k) * bernoulli(n - k));
    (int(n + 2) * plain - int(2) * weighted, int(n * (n + 1)) * bernoulli(n))
}

/// `(n+2) sum B+_k B+_(n-k) + C(n+2,3) B+_(n-1) = 2 sum C(n+2,k) B+_k B+_(n-k)`,
/// sums over k = 0..n, n >= 1.
pub fn matiyasevich_full(n: usize) -> (BigRational, BigRational) {
    let plain = sum(0..=n, |k| bernoulli_second(k) * bernoulli_second(n - k));
    let weighted = sum(0..=n, |k| c(n + 2, k) * bernoulli_second(k) * bernoulli_second(n - k));
    let lhs = int(n + 2) * plain + c(n + 2, 3) * bernoulli_second(n - 1);
    (lhs, int(2) * weighted)
}

/// With `β_k = B_k / k`:
/// `sum β_k β_(n-k) - sum C(n,k) β_k β_(n-k) = 2 H_n β_n`, sums over k = 2..n-2, n >= 4.
pub fn miki(n: usize) -> (BigRational, BigRational) {
    let beta = |k: usize| bernoulli(k) / int(k);
    let plain = sum(2..=n - 2, |k| beta(k) * beta(n - k));
    let weighted = sum(2..=n - 2, |k| c(n, k) * beta(k) * beta(n - k));
    let h = harmonic(n as i64).expect("n >= 1");
    (plain - weighted, int(2) * h * beta(n))
}

/// `sum_(k=0..n) C(n,k) B+_k B+_(n-k) = -(n-1) B+_n + n B+_(n-1)`, n >= 1.
pub fn second_kind_full(n: usize) -> (BigRational, BigRational) {
    let lhs = sum(0..=n, |k| c(n, k) * bernoulli_second(k) * bernoulli_second(n - k));
    (lhs, -int(n - 1) * bernoulli_second(n) + int(n) * bernoulli_second(n - 1))
}
