//! Composite Gauss–Legendre quadrature with interval bisection.

use crate::real::Real;

/// Nodes and weights of the n-point rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre<R> {
    nodes: Vec<R>,
    weights: Vec<R>,
}

impl<R: Real> GaussLegendre<R> {
    /// Newton iteration on P_n from the usual cosine guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "Gauss-Legendre needs at least two nodes");
        let tol = R::epsilon() * R::from_i64(8);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 1..=n {
            let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut x = R::from_f64(guess);
            let mut deriv = R::one();
            for _ in 0..100 {
                let (p, dp) = legendre(n, &x);
                let dx = p / dp.clone();
                x = x - dx.clone();
                deriv = dp;
                if dx.abs() <= tol {
                    let (_, dp) = legendre(n, &x);
                    deriv = dp;
                    break;
                }
            }
            let w = R::from_i64(2) / ((R::one() - x.clone() * x.clone()) * deriv.clone() * deriv);
            nodes.push(x);
            weights.push(w);
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<E>(
        &self,
        f: &mut impl FnMut(&R) -> Result<R, E>,
        a: &R,
        b: &R,
    ) -> Result<R, E> {
        let half = (b.clone() - a.clone()) / R::from_i64(2);
        let mid = (b.clone() + a.clone()) / R::from_i64(2);
        let mut acc = R::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = mid.clone() + half.clone() * x.clone();
            acc = acc + w.clone() * f(&t)?;
        }
        Ok(acc * half)
    }
}

/// (P_n(x), P_n'(x)) via the three-term recurrence.
fn legendre<R: Real>(n: usize, x: &R) -> (R, R) {
    let mut p0 = R::one();
    let mut p1 = x.clone();
    for k in 2..=n {
        let kf = R::from_i64(k as i64);
        let p2 = (R::from_i64(2 * k as i64 - 1) * x.clone() * p1.clone()
            - R::from_i64(k as i64 - 1) * p0.clone())
            / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = R::from_i64(n as i64);
    let dp = nf * (x.clone() * p1.clone() - p0) / (x.clone() * x.clone() - R::one());
    (p1, dp)
}

#[derive(Debug, Clone)]
pub struct QuadOutcome<R> {
    pub value: R,
    /// Sum of the accepted panels' bisection error estimates.
    pub err: R,
    /// Integrand evaluations.
    pub evals: usize,
    /// False when the panel budget ran out before every panel converged.
    pub converged: bool,
}

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Each panel compares the rule on the whole panel with the sum over its two
/// halves; a panel is accepted when that difference is within its
/// length-proportional share of `tol`.
pub fn adaptive<R: Real, E>(
    rule: &GaussLegendre<R>,
    f: &mut impl FnMut(&R) -> Result<R, E>,
    a: R,
    b: R,
    tol: R,
    max_panels: usize,
) -> Result<QuadOutcome<R>, E> {
    let total = (b.clone() - a.clone()).abs();
    let two = R::from_i64(2);
    let mut value = R::zero();
    let mut err = R::zero();
    let mut evals = 0usize;
    let mut converged = true;
    let whole = rule.integrate(f, &a, &b)?;
    evals += rule.len();
    let mut stack = vec![(a, b, whole, 0u32)];
    let mut panels = 0usize;
    while let Some((lo, hi, coarse, depth)) = stack.pop() {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        let left = rule.integrate(f, &lo, &mid)?;
        let right = rule.integrate(f, &mid, &hi)?;
        evals += 2 * rule.len();
        panels += 1;
        let fine = left.clone() + right.clone();
        let diff = (fine.clone() - coarse).abs();
        let share = tol.clone() * (hi.clone() - lo.clone()).abs() / total.clone();
        // roundoff floor: differences below a few ulps of the panel cannot shrink further
        let floor = R::epsilon() * R::from_i64(16) * (left.abs() + right.abs());
        if diff <= share || diff <= floor || depth >= 60 || panels >= max_panels {
            if diff > share && diff > floor {
                converged = false;
            }
            value = value + fine;
            err = err + diff;
        } else {
            stack.push((mid.clone(), hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    Ok(QuadOutcome {
        value,
        err,
        evals,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::BigReal;
    use std::convert::Infallible;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let rule = GaussLegendre::<f64>::new(10);
        // exact up to degree 19
        let v = rule
            .integrate(&mut |x: &f64| Ok::<_, Infallible>(x.powi(18) + 3.0 * x.powi(5)), &-1.0, &1.0)
            .unwrap();
        assert!((v - 2.0 / 19.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_exponential() {
        let rule = GaussLegendre::<f64>::new(20);
        let out = adaptive(&rule, &mut |t: &f64| Ok::<_, Infallible>((-t).exp()), 0.0, 40.0, 1e-14, 10_000).unwrap();
        assert!((out.value - (1.0 - (-40f64).exp())).abs() < 1e-14);
        assert!(out.converged);
    }

    #[test]
    fn adaptive_needs_bisection_for_peaks() {
        let rule = GaussLegendre::<f64>::new(8);
        let f = |t: &f64| Ok::<_, Infallible>(1.0 / (1e-4 + (t - 0.3) * (t - 0.3)));
        let out = adaptive(&rule, &mut { f }, 0.0, 1.0, 1e-10, 10_000).unwrap();
        let exact = (0.7f64 / 0.01).atan() / 0.01 + (0.3f64 / 0.01).atan() / 0.01;
        assert!((out.value - exact).abs() < 1e-8, "{} vs {}", out.value, exact);
    }

    #[test]
    fn high_precision_rule() {
        BigReal::with_digits(50, || {
            let rule = GaussLegendre::<BigReal>::new(30);
            let out = adaptive(
                &rule,
                &mut |t: &BigReal| Ok::<_, Infallible>(BigReal::one() / (BigReal::one() + t.clone() * t.clone())),
                BigReal::zero(),
                BigReal::one(),
                BigReal::parse("1e-45").unwrap(),
                10_000,
            )
            .unwrap();
            let quarter_pi = BigReal::pi() / BigReal::from_i64(4);
            let err = (out.value - quarter_pi).abs();
            assert!(err < BigReal::parse("1e-44").unwrap(), "{err:?}");
        });
    }
}
