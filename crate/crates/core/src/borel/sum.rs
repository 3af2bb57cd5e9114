//! Borel sums `∫_0^∞ e^(-t) BA(z t) dt`.
//!
//! The integral is split at `t_s = 1/(4|z|)`, below which the transform is
//! evaluated from its Taylor series, and cut off at a `T` where the tail
//! bound `2 |g(T)| / δ` is under a quarter of the tolerance (`δ` is the
//! analytic exponential decay rate). Both pieces use adaptive
//! Gauss–Legendre to a quarter of the tolerance each.

use std::sync::Arc;

use serde::Serialize;

use super::kernel::{BorelKernel, Prepared, SERIES_SWITCH, SERIES_TERMS};
use super::registry::registry_kernel;
use crate::bernoulli::bernoulli_second;
use crate::error::{Error, Result};
use crate::exact::{factorial, BigRational};
use crate::quadrature::{adaptive, GaussLegendre};
use crate::real::Real;
use crate::zeta::{rule_size, zeta_pos};

/// Upper end of the window probed when no analytic decay rate is known.
pub const PROBE_T_MAX: f64 = 200.0;
const MAX_PANELS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SumStatus<R> {
    Summable { value: R, err: R },
    NotSummable,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BorelSumResult<R = f64> {
    pub status: SumStatus<R>,
    /// Integrand evaluations.
    pub nodes_used: usize,
    pub cutoff_t: f64,
}

impl<R: Real> BorelSumResult<R> {
    pub fn value(&self) -> Option<&R> {
        match &self.status {
            SumStatus::Summable { value, .. } => Some(value),
            _ => None,
        }
    }

    fn verdict(status: SumStatus<R>) -> Self {
        BorelSumResult {
            status,
            nodes_used: 0,
            cutoff_t: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    First,
    Second,
}

/// Borel sum in hardware floating point.
pub fn borel_sum(kernel: &BorelKernel, z: f64, tol: f64) -> Result<BorelSumResult<f64>> {
    borel_sum_with::<f64>(kernel, &z, &tol)
}

/// Borel sum at the working precision of `R`.
pub fn borel_sum_with<R: Real>(kernel: &BorelKernel, z: &R, tol: &R) -> Result<BorelSumResult<R>> {
    if *tol <= R::zero() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let rule = Arc::new(GaussLegendre::<R>::new(rule_size::<R>()));
    let prepared = Prepared::new(&kernel.expr, &rule)?;
    let zf = z.to_f64();
    let mut evals = 0usize;
    let mut g = |t: &R| -> Result<R> {
        evals += 1;
        let inner_tol = tol.clone() / R::from_i64(64);
        let v = prepared.weighted(t, &(z.clone() * t.clone()), &inner_tol)?;
        if !v.is_finite() {
            return Err(Error::Kernel(format!("{} is not finite at t={}", kernel.id, t.to_sci())));
        }
        Ok(v)
    };

    let (rate, power) = match kernel.summable_at(zf) {
        Some(d) => {
            if d.rate > 0.0 || (d.rate == 0.0 && d.power >= -1) {
                return Ok(BorelSumResult::verdict(SumStatus::NotSummable));
            }
            if d.rate == 0.0 {
                // polynomial decay only; the exponential tail bound does not apply
                return Ok(BorelSumResult::verdict(SumStatus::Inconclusive));
            }
            (-d.rate, d.power)
        }
        None => match probe(&mut g, tol)? {
            Probe::Grows => return Ok(BorelSumResult::verdict(SumStatus::NotSummable)),
            Probe::Ambiguous => return Ok(BorelSumResult::verdict(SumStatus::Inconclusive)),
            Probe::Decays(rate) => (rate, 0),
        },
    };

    let quarter = tol.clone() / R::from_i64(4);
    let delta = R::from_f64(rate);
    let split = if zf == 0.0 { 1.0 } else { SERIES_SWITCH / zf.abs() };
    // the tail bound needs T >= 2p/δ; step T until the bound holds
    let mut cutoff = (2.0 * power.max(0) as f64 / rate).max(split).max(1.0);
    let tail = loop {
        let t = R::from_f64(cutoff);
        let here = g(&t)?.abs().max_of(g(&R::from_f64(cutoff * 1.1))?.abs());
        let bound = R::from_i64(2) * here / delta.clone();
        if bound < quarter {
            break bound;
        }
        cutoff *= 1.25;
        if cutoff * rate > 1e5 {
            return Ok(BorelSumResult::verdict(SumStatus::Inconclusive));
        }
    };

    let split_r = R::from_f64(split.min(cutoff));
    let head = adaptive(&rule, &mut g, R::zero(), split_r.clone(), quarter.clone(), MAX_PANELS)?;
    let body = if split < cutoff {
        Some(adaptive(&rule, &mut g, split_r, R::from_f64(cutoff), quarter, MAX_PANELS)?)
    } else {
        None
    };
    let mut value = head.value;
    let mut err = head.err + tail;
    let mut converged = head.converged;
    if let Some(b) = body {
        value = value + b.value;
        err = err + b.err;
        converged &= b.converged;
    }
    let status = if converged && err <= *tol {
        SumStatus::Summable { value, err }
    } else {
        SumStatus::Inconclusive
    };
    Ok(BorelSumResult {
        status,
        nodes_used: evals,
        cutoff_t: cutoff,
    })
}

enum Probe {
    Decays(f64),
    Grows,
    Ambiguous,
}

/// Samples the weighted integrand on `[T_max/2, T_max]`.
fn probe<R: Real>(g: &mut impl FnMut(&R) -> Result<R>, tol: &R) -> Result<Probe> {
    let samples = 41;
    let lo = PROBE_T_MAX / 2.0;
    let step = (PROBE_T_MAX - lo) / (samples - 1) as f64;
    let mut vals = Vec::with_capacity(samples);
    for i in 0..samples {
        vals.push(g(&R::from_f64(lo + step * i as f64))?.abs());
    }
    if vals.iter().all(|v| *v >= *tol) {
        return Ok(Probe::Grows);
    }
    let decreasing = vals.windows(2).all(|w| w[1] <= w[0]);
    let last = vals[samples - 1].to_f64();
    let first = vals[0].to_f64();
    if !decreasing || last >= tol.to_f64() {
        return Ok(Probe::Ambiguous);
    }
    if last == 0.0 || first == 0.0 {
        // underflowed: decays faster than the window can resolve; take unit rate
        return Ok(Probe::Decays(1.0));
    }
    let rate = (first.ln() - last.ln()) / (PROBE_T_MAX - lo);
    if rate <= 0.0 {
        return Ok(Probe::Ambiguous);
    }
    Ok(Probe::Decays(rate))
}

/// Borel sum of `D_n` (first kind: `t^(n-1)/(e^t - 1)`; second kind:
/// `t^(n-1) e^t/(e^t - 1)`) at `z = ±1`.
pub fn borel_sum_dn(n: u32, z: f64, tol: f64, kind: Kind) -> Result<f64> {
    borel_sum_dn_with::<f64>(n, &z, &tol, kind)
}

pub fn borel_sum_dn_with<R: Real>(n: u32, z: &R, tol: &R, kind: Kind) -> Result<R> {
    if n < 2 {
        return Err(Error::Domain(format!("D_n needs n >= 2, got {n}")));
    }
    let zf = z.to_f64();
    if zf != 1.0 && zf != -1.0 {
        return Err(Error::Domain(format!("D_n sums are taken at z = 1 or z = -1, got {zf}")));
    }
    let id = match kind {
        Kind::First => format!("dn:first:{n}"),
        Kind::Second => format!("dn:second:{n}"),
    };
    let kernel = registry_kernel(&id)?;
    match borel_sum_with(&kernel, z, tol)?.status {
        SumStatus::Summable { value, .. } => Ok(value),
        SumStatus::NotSummable => Err(Error::Kernel(format!("{id} is not summable at z={zf}"))),
        SumStatus::Inconclusive => Err(Error::Kernel(format!("{id} at z={zf} did not reach tolerance"))),
    }
}

/// Inner double integral `∫_0^t ∫_0^x m e^m/(e^m - 1) dm dx`.
struct DoubleIntegral<R> {
    series: Vec<R>,
    zeta2: R,
    zeta3: R,
    k_terms: usize,
}

impl<R: Real> DoubleIntegral<R> {
    fn new(k_terms: usize) -> Result<Self> {
        // Taylor form sum B+_k t^(k+2)/(k+2)!, stored from t^0
        let mut series = vec![R::zero(), R::zero()];
        for k in 0..SERIES_TERMS {
            let c = bernoulli_second(k) / BigRational::from_integer(factorial(k as u64 + 2));
            series.push(R::from_rational(&c));
        }
        Ok(DoubleIntegral {
            series,
            zeta2: zeta_pos::<R>(2)?,
            zeta3: zeta_pos::<R>(3)?,
            k_terms,
        })
    }

    /// `t^3/6 + ζ(2) t + sum_k (t e^(-kt)/k^2 + 2 e^(-kt)/k^3) - 2ζ(3)`.
    fn eval(&self, t: &R) -> R {
        if *t <= R::from_f64(SERIES_SWITCH) {
            let mut acc = R::zero();
            for c in self.series.iter().rev() {
                acc = acc * t.clone() + c.clone();
            }
            return acc;
        }
        let x = (-t.clone()).exp();
        let mut xk = R::one();
        let mut sum = R::zero();
        for k in 1..=self.k_terms {
            xk = xk * x.clone();
            let kf = R::from_i64(k as i64);
            let k2 = kf.clone() * kf.clone();
            let term = xk.clone() * (t.clone() / k2.clone() + R::from_i64(2) / (k2 * kf));
            sum = sum + term.clone();
            if term.abs() <= R::epsilon() * R::from_f64(1e-3) {
                break;
            }
        }
        t.clone() * t.clone() * t.clone() / R::from_i64(6) + self.zeta2.clone() * t.clone() + sum
            - R::from_i64(2) * self.zeta3.clone()
    }
}

/// `∫_0^∞ e^(-t) (t e^t/(e^t - 1)) F(t) dt` with `F` the double integral above,
/// which equals `2ζ(5) + 2ζ(2)ζ(3)`.
pub fn nested_integral_3_53(tol: f64, k_terms: usize) -> Result<f64> {
    nested_integral_with::<f64>(&tol, k_terms)
}

pub fn nested_integral_with<R: Real>(tol: &R, k_terms: usize) -> Result<R> {
    // the dropped k-tail at t = 1/4 is below e^(-k_terms/4)
    let tail = (-(k_terms as f64) * SERIES_SWITCH).exp() * 4.0;
    if tail > tol.to_f64() {
        return Err(Error::Domain(format!("k_terms = {k_terms} leaves a geometric tail of {tail:e}")));
    }
    let inner = DoubleIntegral::<R>::new(k_terms)?;
    // e^(-t) t e^t/(e^t - 1) = t/(e^t - 1)
    let weight = |t: &R| -> R {
        if *t == R::zero() {
            R::one()
        } else {
            t.clone() / t.expm1()
        }
    };
    let mut g = |t: &R| -> Result<R> { Ok(weight(t) * inner.eval(t)) };
    let quarter = tol.clone() / R::from_i64(4);
    // integrand ~ t^4 e^-t / 6
    let mut cutoff = 8.0f64;
    let tail_bound = loop {
        let here = g(&R::from_f64(cutoff))?.abs();
        let b = R::from_i64(2) * here;
        if b < quarter {
            break b;
        }
        cutoff *= 1.25;
    };
    let rule = GaussLegendre::<R>::new(rule_size::<R>());
    let split = R::from_f64(SERIES_SWITCH);
    let head = adaptive(&rule, &mut g, R::zero(), split.clone(), quarter.clone(), MAX_PANELS)?;
    let body = adaptive(&rule, &mut g, split, R::from_f64(cutoff), quarter, MAX_PANELS)?;
    let err = head.err + body.err + tail_bound;
    if !(head.converged && body.converged) || err > *tol {
        return Err(Error::Kernel(format!("nested integral error {} exceeds tolerance", err.to_sci())));
    }
    Ok(head.value + body.value)
}
