//! Formal power series `sum a_k z^k` as coefficient streams, optionally paired
//! with a closed-form Borel transform, and the operations of the series algebra.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::kernel::{BorelKernel, KernelExpr, Term, TermSum};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, format_rational, rational_to_f64, BigRational};

type ExactFn = Arc<dyn Fn(usize) -> BigRational + Send + Sync>;
type FloatFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum Coeffs {
    Exact(ExactFn),
    /// For streams built from floating values such as ζ(n).
    Float(FloatFn),
}

#[derive(Clone)]
pub struct FormalSeries {
    pub name: String,
    coeffs: Coeffs,
    pub kernel: Option<BorelKernel>,
}

impl fmt::Debug for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormalSeries")
            .field("name", &self.name)
            .field("exact", &self.is_exact())
            .field("kernel", &self.kernel.as_ref().map(|k| k.id.as_str()))
            .finish()
    }
}

impl FormalSeries {
    pub fn exact(name: impl Into<String>, coeff: impl Fn(usize) -> BigRational + Send + Sync + 'static) -> Self {
        FormalSeries {
            name: name.into(),
            coeffs: Coeffs::Exact(Arc::new(coeff)),
            kernel: None,
        }
    }

    pub fn float(name: impl Into<String>, coeff: impl Fn(usize) -> f64 + Send + Sync + 'static) -> Self {
        FormalSeries {
            name: name.into(),
            coeffs: Coeffs::Float(Arc::new(coeff)),
            kernel: None,
        }
    }

    pub fn with_kernel(mut self, kernel: BorelKernel) -> Self {
        self.kernel = Some(kernel);
        self
    }

    /// `(1, 0, 0, ...)`.
    pub fn identity() -> Self {
        FormalSeries::exact("id", |k| if k == 0 { BigRational::one() } else { BigRational::zero() })
            .with_kernel(BorelKernel::terms("id", TermSum::constant(BigRational::one())))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coeffs, Coeffs::Exact(_))
    }

    /// Exact coefficient; `None` for float streams.
    pub fn coeff(&self, k: usize) -> Option<BigRational> {
        match &self.coeffs {
            Coeffs::Exact(f) => Some(f(k)),
            Coeffs::Float(_) => None,
        }
    }

    pub fn coeff_f64(&self, k: usize) -> f64 {
        match &self.coeffs {
            Coeffs::Exact(f) => rational_to_f64(&f(k)),
            Coeffs::Float(f) => f(k),
        }
    }

    pub fn take(&self, n: usize) -> Option<Vec<BigRational>> {
        (0..n).map(|k| self.coeff(k)).collect()
    }
}

/// `[a_0/0!, ..., a_K/K!]`; exact streams only.
pub fn borel_transform_coeffs(s: &FormalSeries, k_max: usize) -> Result<Vec<BigRational>> {
    (0..=k_max)
        .map(|k| {
            s.coeff(k)
                .map(|a| a / BigRational::from_integer(factorial(k as u64)))
                .ok_or_else(|| Error::Domain(format!("{} has floating coefficients", s.name)))
        })
        .collect()
}

/// `[a_0/0!, ..., a_K/K!]` in floating point, for any stream.
pub fn borel_transform_coeffs_f64(s: &FormalSeries, k_max: usize) -> Vec<f64> {
    let mut fact = 1.0f64;
    (0..=k_max)
        .map(|k| {
            if k > 0 {
                fact *= k as f64;
            }
            s.coeff_f64(k) / fact
        })
        .collect()
}

/// Whether the kernel's Taylor series reproduces the series' Borel transform
/// through `t^K`: exactly for rational streams, within `tol` otherwise.
pub fn check_transform_consistency(kernel: &BorelKernel, s: &FormalSeries, k_max: usize, tol: f64) -> Result<bool> {
    let series = kernel.series_at_zero(k_max)?;
    if s.is_exact() {
        Ok(series == borel_transform_coeffs(s, k_max)?)
    } else {
        let got = borel_transform_coeffs_f64(s, k_max);
        Ok(series
            .iter()
            .zip(got)
            .all(|(c, g)| (rational_to_f64(c) - g).abs() <= tol))
    }
}

/// `(c, a)` when the kernel is exactly `c e^(a t)`.
fn as_exponential(k: &BorelKernel) -> Option<(BigRational, i64)> {
    match k.expr.as_terms()?.terms() {
        [t] if t.p == 0 && t.q == 0 => Some((t.coef.clone(), t.a)),
        _ => None,
    }
}

fn is_identity(k: &BorelKernel) -> bool {
    as_exponential(k) == Some((BigRational::one(), 0))
}

fn combine_coeffs(
    w: &FormalSeries,
    v: &FormalSeries,
    exact: impl Fn(&ExactFn, &ExactFn, usize) -> BigRational + Send + Sync + 'static,
    float: impl Fn(&dyn Fn(usize) -> f64, &dyn Fn(usize) -> f64, usize) -> f64 + Send + Sync + 'static,
) -> Coeffs {
    match (&w.coeffs, &v.coeffs) {
        (Coeffs::Exact(a), Coeffs::Exact(b)) => {
            let (a, b) = (a.clone(), b.clone());
            Coeffs::Exact(Arc::new(move |n| exact(&a, &b, n)))
        }
        _ => {
            let (w, v) = (w.clone(), v.clone());
            Coeffs::Float(Arc::new(move |n| float(&|k| w.coeff_f64(k), &|k| v.coeff_f64(k), n)))
        }
    }
}

/// Cauchy product `c_n = sum_(k<=n) w_k v_(n-k)`.
///
/// The transform is known in closed form for exponential pairs and the
/// identity; otherwise it is the Borel convolution of the two transforms.
pub fn cauchy_product(w: &FormalSeries, v: &FormalSeries) -> FormalSeries {
    let coeffs = combine_coeffs(
        w,
        v,
        |a, b, n| (0..=n).fold(BigRational::zero(), |acc, k| acc + a(k) * b(n - k)),
        |a, b, n| (0..=n).map(|k| a(k) * b(n - k)).sum(),
    );
    let kernel = match (&w.kernel, &v.kernel) {
        (Some(kw), Some(kv)) => product_kernel(w, kw, kv),
        _ => None,
    };
    FormalSeries {
        name: format!("({}) * ({})", w.name, v.name),
        coeffs,
        kernel,
    }
}

fn product_kernel(w: &FormalSeries, kw: &BorelKernel, kv: &BorelKernel) -> Option<BorelKernel> {
    let id = format!("cauchy({}, {})", kw.id, kv.id);
    if is_identity(kw) {
        return Some(BorelKernel { id, ..kv.clone() });
    }
    if is_identity(kv) {
        return Some(BorelKernel { id, ..kw.clone() });
    }
    if let (Some((c1, a)), Some((c2, b))) = (as_exponential(kw), as_exponential(kv)) {
        let c = c1 * c2;
        let t = if a == b {
            // sum (n+1) a^n t^n/n! = (1 + a t) e^(a t)
            TermSum::from_terms([
                Term::new(c.clone(), 0, a, 0),
                Term::new(c * BigRational::from_integer(a.into()), 1, a, 0),
            ])
        } else {
            // (a e^(a t) - b e^(b t)) / (a - b)
            let d = BigRational::from_integer((a - b).into());
            TermSum::from_terms([
                Term::new(&c * BigRational::from_integer(a.into()) / &d, 0, a, 0),
                Term::new(-&c * BigRational::from_integer(b.into()) / &d, 0, b, 0),
            ])
        };
        return Some(BorelKernel::terms(id, t));
    }
    let w0 = w.coeff(0)?;
    let dw = kw.expr.derivative()?;
    Some(BorelKernel {
        id,
        expr: KernelExpr::Conv {
            w0,
            dw: Box::new(dw),
            v: Box::new(kv.expr.clone()),
        },
        analytic: kw.analytic && kv.analytic,
    })
}

/// Binomial product `c_n = sum_k C(n,k) w_k v_(n-k)`, whose transform is the
/// product of the two transforms.
pub fn binomial_product(w: &FormalSeries, v: &FormalSeries) -> FormalSeries {
    let coeffs = combine_coeffs(
        w,
        v,
        |a, b, n| {
            (0..=n).fold(BigRational::zero(), |acc, k| {
                acc + BigRational::from_integer(binomial(n as i64, k as i64)) * a(k) * b(n - k)
            })
        },
        |a, b, n| {
            (0..=n)
                .map(|k| rational_to_f64(&BigRational::from_integer(binomial(n as i64, k as i64))) * a(k) * b(n - k))
                .sum()
        },
    );
    let kernel = match (&w.kernel, &v.kernel) {
        (Some(kw), Some(kv)) => match (kw.expr.as_terms(), kv.expr.as_terms()) {
            (Some(x), Some(y)) => Some(BorelKernel::terms(format!("binomial({}, {})", kw.id, kv.id), x.mul(y))),
            _ => None,
        },
        _ => None,
    };
    FormalSeries {
        name: format!("({}) . ({})", w.name, v.name),
        coeffs,
        kernel,
    }
}

/// `alpha w_k + beta v_k`; transforms combine the same way.
pub fn linear_combine_series(alpha: &BigRational, w: &FormalSeries, beta: &BigRational, v: &FormalSeries) -> FormalSeries {
    let (a1, b1) = (alpha.clone(), beta.clone());
    let (a2, b2) = (rational_to_f64(alpha), rational_to_f64(beta));
    let coeffs = combine_coeffs(
        w,
        v,
        move |x, y, n| &a1 * x(n) + &b1 * y(n),
        move |x, y, n| a2 * x(n) + b2 * y(n),
    );
    let kernel = match (&w.kernel, &v.kernel) {
        (Some(kw), Some(kv)) => Some(BorelKernel {
            id: format!("{}*{} + {}*{}", format_rational(alpha), kw.id, format_rational(beta), kv.id),
            expr: KernelExpr::linear(alpha, &kw.expr, beta, &kv.expr),
            analytic: kw.analytic && kv.analytic,
        }),
        _ => None,
    };
    FormalSeries {
        name: format!("{}*({}) + {}*({})", format_rational(alpha), w.name, format_rational(beta), v.name),
        coeffs,
        kernel,
    }
}

/// Adds `c` to coefficient `m`, and `c t^m / m!` to the transform, so a
/// Borel sum moves by exactly `c`.
pub fn borel_shift(s: &FormalSeries, m: usize, c: &BigRational) -> FormalSeries {
    let coeffs = match &s.coeffs {
        Coeffs::Exact(f) => {
            let (f, c) = (f.clone(), c.clone());
            Coeffs::Exact(Arc::new(move |k| if k == m { f(k) + &c } else { f(k) }))
        }
        Coeffs::Float(f) => {
            let (f, c) = (f.clone(), rational_to_f64(c));
            Coeffs::Float(Arc::new(move |k| if k == m { f(k) + c } else { f(k) }))
        }
    };
    let bump = TermSum::term(c / BigRational::from_integer(factorial(m as u64)), m as i64, 0, 0);
    let kernel = s.kernel.as_ref().map(|k| BorelKernel {
        id: format!("{} + ({})t^{m}/{m}!", k.id, format_rational(c)),
        expr: match &k.expr {
            KernelExpr::Terms(t) => KernelExpr::Terms(t.add(&bump)),
            other => KernelExpr::Sum(vec![
                (BigRational::one(), other.clone()),
                (BigRational::one(), KernelExpr::Terms(bump.clone())),
            ]),
        },
        analytic: k.analytic,
    });
    FormalSeries {
        name: format!("{} shifted by {} at {m}", s.name, format_rational(c)),
        coeffs,
        kernel,
    }
}

/// `g_0..g_N` with `sum_(k<=n) f_k g_(n-k) = h_n` for every `n <= N`.
pub fn solve_convolution(f: &FormalSeries, h: &FormalSeries, n_max: usize) -> Result<Vec<BigRational>> {
    let fs = f
        .take(n_max + 1)
        .ok_or_else(|| Error::Domain(format!("{} has floating coefficients", f.name)))?;
    let hs = h
        .take(n_max + 1)
        .ok_or_else(|| Error::Domain(format!("{} has floating coefficients", h.name)))?;
    if fs[0].is_zero() {
        return Err(Error::Domain("leading coefficient f_0 is zero".into()));
    }
    let mut g: Vec<BigRational> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let known = (1..=n).fold(BigRational::zero(), |acc, k| acc + &fs[k] * &g[n - k]);
        g.push((&hs[n] - known) / &fs[0]);
    }
    Ok(g)
}

/// Integer-valued helper used by registry streams.
pub(crate) fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::{bernoulli, bernoulli_second};
    use crate::borel::registry::registry_series;
    use crate::exact::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn transform_coefficients() {
        let geo = registry_series("geometric").unwrap();
        assert_eq!(borel_transform_coeffs(&geo, 3).unwrap(), vec![rat(1), rat(1), ratio(1, 2), ratio(1, 6)]);
        let b = registry_series("bernoulli").unwrap();
        assert_eq!(borel_transform_coeffs(&b, 2).unwrap(), vec![rat(1), ratio(-1, 2), ratio(1, 12)]);
        let a3 = registry_series("a3").unwrap();
        assert_eq!(borel_transform_coeffs(&a3, 2).unwrap(), vec![rat(0), rat(1), ratio(-1, 2)]);
    }

    #[test]
    fn consistency_detects_mismatch() {
        let b = registry_series("bernoulli").unwrap();
        let geo = registry_series("geometric").unwrap();
        assert!(check_transform_consistency(b.kernel.as_ref().unwrap(), &b, 30, 0.0).unwrap());
        assert!(!check_transform_consistency(b.kernel.as_ref().unwrap(), &geo, 30, 0.0).unwrap());
        let d4 = registry_series("dn:first:4").unwrap();
        assert!(check_transform_consistency(d4.kernel.as_ref().unwrap(), &d4, 30, 0.0).unwrap());
    }

    #[test]
    fn float_streams_compare_within_tolerance() {
        let geo = registry_series("geometric").unwrap();
        let noisy = FormalSeries::float("geometric+noise", |_| 1.0 + 1e-14);
        assert!(check_transform_consistency(geo.kernel.as_ref().unwrap(), &noisy, 20, 1e-12).unwrap());
        assert!(!check_transform_consistency(geo.kernel.as_ref().unwrap(), &noisy, 20, 1e-16).unwrap());
        assert!(borel_transform_coeffs(&noisy, 3).is_err());
    }

    #[test]
    fn grandi_square() {
        let g = registry_series("grandi").unwrap();
        let sq = cauchy_product(&g, &g);
        for k in 0..20 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(sq.coeff(k).unwrap(), rat(sign * (k as i64 + 1)));
        }
        let kernel = sq.kernel.unwrap();
        assert!(check_transform_consistency(&kernel, &cauchy_product(&g, &g), 30, 0.0).unwrap());
    }

    #[test]
    fn identity_is_neutral() {
        let b = registry_series("bernoulli").unwrap();
        let p = cauchy_product(&FormalSeries::identity(), &b);
        assert_eq!(p.take(30), b.take(30));
        assert_eq!(p.kernel.unwrap().expr, b.kernel.unwrap().expr);
    }

    #[test]
    fn convolution_kernel_matches_coefficients() {
        let w = registry_series("bernoulli-second").unwrap();
        let v = registry_series("bplus-linear").unwrap();
        let p = cauchy_product(&w, &v);
        let k = p.kernel.clone().unwrap();
        assert!(matches!(k.expr, KernelExpr::Conv { .. }));
        assert!(check_transform_consistency(&k, &p, 25, 0.0).unwrap());
    }

    #[test]
    fn binomial_product_of_bernoulli() {
        let b = registry_series("bernoulli").unwrap();
        let p = binomial_product(&b, &b);
        let sq = borel_shift(&p, 0, &rat(-1));
        let reg = registry_series("conv-square").unwrap();
        assert_eq!(sq.take(30), reg.take(30));
        assert_eq!(sq.kernel.unwrap().expr, reg.kernel.unwrap().expr);
        // the plain Cauchy square is a different series
        assert_ne!(cauchy_product(&b, &b).take(4), p.take(4));
    }

    #[test]
    fn shift_rules() {
        let b = registry_series("bernoulli").unwrap();
        let s0 = borel_shift(&b, 0, &rat(1));
        assert_eq!(s0.coeff(0).unwrap(), rat(2));
        let s1 = borel_shift(&b, 1, &rat(1));
        assert_eq!(s1.coeff(1).unwrap(), -bernoulli(1));
        let same = borel_shift(&b, 3, &rat(0));
        assert_eq!(same.take(10), b.take(10));
        assert_eq!(same.kernel.unwrap().expr, b.kernel.unwrap().expr);
        assert!(check_transform_consistency(s1.kernel.as_ref().unwrap(), &s1, 30, 0.0).unwrap());
    }

    #[test]
    fn linear_combination() {
        let b = registry_series("bernoulli").unwrap();
        let kb = FormalSeries::exact("k B_k", |k| int(k as u64) * bernoulli(k));
        let kb = kb.with_kernel(BorelKernel::terms(
            "t K'",
            TermSum::term(rat(1), 1, 0, 1).derivative().shift_power(1),
        ));
        let a4 = linear_combine_series(&rat(1), &b, &rat(1), &kb);
        let reg = registry_series("a4").unwrap();
        assert_eq!(a4.take(30), reg.take(30));
        assert_eq!(a4.kernel.unwrap().expr, reg.kernel.unwrap().expr);
        let same = linear_combine_series(&rat(1), &b, &rat(0), &kb);
        assert_eq!(same.take(20), b.take(20));
    }

    #[test]
    fn deconvolution_systems() {
        let f = registry_series("bernoulli-second").unwrap();
        let h = FormalSeries::exact("(n+1)B+_n", |n| int(n as u64 + 1) * bernoulli_second(n));
        let g = solve_convolution(&f, &h, 30).unwrap();
        assert_eq!(g[0], rat(1));
        assert_eq!(g[1], ratio(1, 2));
        let back = cauchy_product(&f, &FormalSeries::exact("g", move |k| g.get(k).cloned().unwrap_or_default()));
        assert_eq!(back.take(31), h.take(31));

        let six = FormalSeries::exact("6B+", |k| rat(6) * bernoulli_second(k));
        let h = FormalSeries::exact("15(n+2)(n+1)B+_n", |n| int(15 * (n as u64 + 2) * (n as u64 + 1)) * bernoulli_second(n));
        let a = solve_convolution(&six, &h, 30).unwrap();
        assert_eq!(a[0], rat(5));
        assert_eq!(a[1], rat(10) * bernoulli_second(1));

        let id = solve_convolution(&FormalSeries::identity(), &h, 10).unwrap();
        assert_eq!(Some(id), h.take(11));
        let zero_lead = FormalSeries::exact("z", |k| int(k as u64));
        assert!(solve_convolution(&zero_lead, &h, 3).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn deconvolution_roundtrip(coeffs in proptest::collection::vec(-9i64..9, 12), lead in 1i64..5) {
            let f_vals: Vec<BigRational> = std::iter::once(rat(lead)).chain(coeffs.iter().map(|&c| ratio(c, 3))).collect();
            let fv = f_vals.clone();
            let f = FormalSeries::exact("f", move |k| fv.get(k).cloned().unwrap_or_default());
            let h = FormalSeries::exact("h", |k| ratio(k as i64 * k as i64 - 3, 2));
            let g = solve_convolution(&f, &h, 12).unwrap();
            let back = cauchy_product(&f, &FormalSeries::exact("g", move |k| g.get(k).cloned().unwrap_or_default()));
            prop_assert_eq!(back.take(13), h.take(13));
        }
    }
}
