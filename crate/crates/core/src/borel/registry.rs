//! Named series with their closed-form Borel transforms.
//!
//! Ids: `geometric`, `grandi`, `bernoulli`, `bernoulli-second`, `a3`, `a4`,
//! `dn:first:N`, `dn:second:N`, `rising:N`, `n-zn`, `conv-square`,
//! `conv-square-second`, `beta-plus`, `bplus-linear`, `bplus-quadratic`,
//! `bplus-cubic`.

use num_traits::Zero;

use super::kernel::{BorelKernel, Term, TermSum};
use super::series::{int, FormalSeries};
use crate::bernoulli::{bernoulli, bernoulli_second, beta_plus};
use crate::error::{Error, Result};
use crate::exact::{binomial, falling_factorial, rat, ratio, BigRational};

/// `t/(e^t - 1)`
fn k_first() -> TermSum {
    TermSum::term(rat(1), 1, 0, 1)
}

/// `t e^t/(e^t - 1)`
fn k_second() -> TermSum {
    TermSum::term(rat(1), 1, 1, 1)
}

fn parse_order(id: &str, prefix: &str) -> Result<Option<u32>> {
    let Some(rest) = id.strip_prefix(prefix) else {
        return Ok(None);
    };
    let n: u32 = rest
        .parse()
        .map_err(|_| Error::UnknownKernel(id.to_string()))?;
    if n < 2 {
        return Err(Error::Domain(format!("{id}: order must be >= 2")));
    }
    Ok(Some(n))
}

fn zero_padded(n: u32, weight: fn(usize) -> BigRational, j: usize) -> BigRational {
    let shift = n as usize - 2;
    if j < shift {
        BigRational::zero()
    } else {
        int(falling_factorial(j as i64, shift as u64)) * weight(j - shift)
    }
}

fn binomial_square(weight: fn(usize) -> BigRational, n: usize) -> BigRational {
    (0..=n).fold(BigRational::zero(), |acc, k| {
        acc + int(binomial(n as i64, k as i64)) * weight(k) * weight(n - k)
    })
}

/// Series paired with its closed-form transform.
pub fn registry_series(id: &str) -> Result<FormalSeries> {
    if let Some(n) = parse_order(id, "dn:first:")? {
        let t = TermSum::term(rat(1), n as i64 - 1, 0, 1);
        return Ok(FormalSeries::exact(id, move |j| zero_padded(n, bernoulli, j)).with_kernel(BorelKernel::terms(id, t)));
    }
    if let Some(n) = parse_order(id, "dn:second:")? {
        let t = TermSum::term(rat(1), n as i64 - 1, 1, 1);
        return Ok(FormalSeries::exact(id, move |j| zero_padded(n, bernoulli_second, j)).with_kernel(BorelKernel::terms(id, t)));
    }
    if let Some(n) = parse_order(id, "rising:")? {
        let t = TermSum::term(rat(1), n as i64 - 2, 1, 0);
        return Ok(FormalSeries::exact(id, move |j| zero_padded(n, |_| rat(1), j)).with_kernel(BorelKernel::terms(id, t)));
    }
    let (series, kernel) = match id {
        "geometric" => (FormalSeries::exact(id, |_| rat(1)), TermSum::term(rat(1), 0, 1, 0)),
        "grandi" => (
            FormalSeries::exact(id, |k| if k % 2 == 0 { rat(1) } else { rat(-1) }),
            TermSum::term(rat(1), 0, -1, 0),
        ),
        "bernoulli" => (FormalSeries::exact(id, bernoulli), k_first()),
        "bernoulli-second" => (FormalSeries::exact(id, bernoulli_second), k_second()),
        "a3" => (
            FormalSeries::exact(id, |k| if k == 0 { rat(0) } else { int(k as u64) * bernoulli(k - 1) }),
            TermSum::term(rat(1), 2, 0, 1),
        ),
        "a4" => (
            FormalSeries::exact(id, |k| int(k as u64 + 1) * bernoulli(k)),
            k_first().add(&k_first().derivative().shift_power(1)),
        ),
        "n-zn" => (FormalSeries::exact(id, |k| int(k as u64)), TermSum::term(rat(1), 1, 1, 0)),
        "conv-square" => (
            FormalSeries::exact(id, |n| if n == 0 { rat(0) } else { binomial_square(bernoulli, n) }),
            k_first().mul(&k_first()).add(&TermSum::constant(rat(-1))),
        ),
        "conv-square-second" => (
            FormalSeries::exact(id, |n| binomial_square(bernoulli_second, n)),
            k_second().mul(&k_second()),
        ),
        "beta-plus" => (
            FormalSeries::exact(id, |k| beta_plus(k + 1).expect("index k+1 >= 1")),
            TermSum::from_terms([Term::new(rat(1), 0, 1, 1), Term::new(rat(-1), -1, 0, 0)]),
        ),
        "bplus-linear" => (
            FormalSeries::exact(id, |k| int(k as u64 + 1) * bernoulli_second(k)),
            k_second().shift_power(1).derivative(),
        ),
        "bplus-quadratic" => (
            FormalSeries::exact(id, |k| int((k as u64 + 2) * (k as u64 + 1)) * bernoulli_second(k)),
            k_second().shift_power(2).derivative().derivative(),
        ),
        "bplus-cubic" => (
            FormalSeries::exact(id, |k| {
                if k == 0 {
                    rat(0)
                } else {
                    int(binomial(k as i64 + 2, 3)) * bernoulli_second(k - 1)
                }
            }),
            k_second().shift_power(3).derivative().derivative().scale(&ratio(1, 6)),
        ),
        _ => return Err(Error::UnknownKernel(id.to_string())),
    };
    Ok(series.with_kernel(BorelKernel::terms(id, kernel)))
}

/// Transform registered under `id`.
pub fn registry_kernel(id: &str) -> Result<BorelKernel> {
    registry_series(id)?
        .kernel
        .ok_or_else(|| Error::UnknownKernel(id.to_string()))
}

/// Every fixed id plus the parametrized families at the orders the
/// verification catalogue uses.
pub fn registry_ids() -> Vec<String> {
    let mut ids: Vec<String> = [
        "geometric",
        "grandi",
        "bernoulli",
        "bernoulli-second",
        "a3",
        "a4",
        "n-zn",
        "conv-square",
        "conv-square-second",
        "beta-plus",
        "bplus-linear",
        "bplus-quadratic",
        "bplus-cubic",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for n in 2..=12 {
        ids.push(format!("dn:first:{n}"));
        ids.push(format!("dn:second:{n}"));
    }
    for n in 2..=6 {
        ids.push(format!("rising:{n}"));
    }
    ids
}
