//! Every checked identity, one case per id.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::identities;
use super::{CaseKind, Config, Outcome, VerificationCase};
use crate::borel::sum::{borel_sum_dn_with, nested_integral_with, Kind};
use crate::borel::{
    binomial_product, borel_shift, borel_sum_with, cauchy_product, linear_combine_series, registry_kernel,
    registry_series, solve_convolution, BorelKernel, FormalSeries, SumStatus,
};
use crate::bernoulli::bernoulli_second;
use crate::error::{Error, Result};
use crate::exact::{factorial, format_rational, rat, ratio, BigRational};
use crate::laurent::{laurent_mul, linear_combine, named_element, pointwise_mul, LaurentVec, NamedElement, Tail};
use crate::real::{BigReal, Real};
use crate::zeta::{check_eq_2_2, check_eq_2_5_with, euler_mascheroni_harmonic, gamma_int, zeta_minus_one, zeta_pos};

/// Runs `$f::<R>(cfg, ...)` with `R = f64` at 15 digits or fewer, else at the
/// configured big-float precision.
macro_rules! at_precision {
    ($cfg:expr, $f:ident $(, $arg:expr)*) => {{
        let cfg: &Config = $cfg;
        if cfg.precision_digits <= 15 {
            $f::<f64>(cfg $(, $arg)*)
        } else {
            BigReal::with_digits(cfg.precision_digits, || $f::<BigReal>(cfg $(, $arg)*))
        }
    }};
}

const LAURENT_DEPTH: u64 = 50;

pub fn catalogue() -> Vec<VerificationCase> {
    let mut cases = exact_cases();
    cases.extend(borel_cases());
    cases.push(quad("convergent/eq2.5", "(s-1)(ζ(s)-1) - 1 as a series in ζ(s+r) - 1", 1e-12, |c| {
        at_precision!(c, recursion_residuals)
    }));
    cases.push(quad("convergent/eq2.7", "component -n of (-1 H)·ζ' sums to 1", 1e-10, component_sums));
    for m in 0..=10u32 {
        cases.push(
            VerificationCase::new(
                format!("diag/eq2.2/m={m}"),
                CaseKind::Diagnostic,
                "δ_(m,0) - (-1)^m/(m+1) against the binomial sum of ζ at nonpositive integers",
                None,
                move |_| {
                    let r = check_eq_2_2(m);
                    Ok(Outcome {
                        pass: r.equal,
                        lhs: format_rational(&r.lhs),
                        rhs: format_rational(&r.rhs),
                        abs_error: None,
                        detail: Some(if r.equal { "sides agree" } else { "sides differ" }.into()),
                    })
                },
            )
            .with_param("m", m),
        );
    }
    cases
}

fn exact(
    id: &str,
    anchor: &str,
    run: impl Fn(&Config) -> Result<Outcome> + Send + Sync + 'static,
) -> VerificationCase {
    VerificationCase::new(id, CaseKind::Exact, anchor, None, run)
}

fn quad(
    id: &str,
    anchor: &str,
    tol: f64,
    run: impl Fn(&Config) -> Result<Outcome> + Send + Sync + 'static,
) -> VerificationCase {
    VerificationCase::new(id, CaseKind::Quadrature, anchor, Some(tol), run)
}

/// Checks `f(n)` for every `n`, stopping at the first mismatch.
fn exact_range(
    label: &str,
    ns: impl IntoIterator<Item = usize>,
    f: impl Fn(usize) -> Result<(BigRational, BigRational)>,
) -> Result<Outcome> {
    let mut last = None;
    for n in ns {
        let (l, r) = f(n)?;
        if l != r {
            return Ok(Outcome {
                pass: false,
                lhs: format_rational(&l),
                rhs: format_rational(&r),
                abs_error: None,
                detail: Some(format!("first mismatch at {label}={n}")),
            });
        }
        last = Some((n, l, r));
    }
    let (n, l, r) = last.ok_or_else(|| Error::Domain("empty range".into()))?;
    Ok(Outcome {
        pass: true,
        lhs: format_rational(&l),
        rhs: format_rational(&r),
        abs_error: None,
        detail: Some(format!("checked through {label}={n}")),
    })
}

/// Conjunction of several checks; the reported sides are joined and the
/// error is the worst one.
fn all(parts: Vec<(String, Outcome)>) -> Outcome {
    let pass = parts.iter().all(|(_, o)| o.pass);
    let join = |f: fn(&Outcome) -> &str| parts.iter().map(|(_, o)| f(o)).collect::<Vec<_>>().join("; ");
    let abs_error = parts.iter().filter_map(|(_, o)| o.abs_error).fold(None, |acc: Option<f64>, e| {
        Some(acc.map_or(e, |a| a.max(e)))
    });
    let failed: Vec<&str> = parts.iter().filter(|(_, o)| !o.pass).map(|(l, _)| l.as_str()).collect();
    let labels = parts.iter().map(|(l, _)| l.as_str()).collect::<Vec<_>>().join("; ");
    Outcome {
        pass,
        lhs: join(|o| &o.lhs),
        rhs: join(|o| &o.rhs),
        abs_error,
        detail: Some(if failed.is_empty() {
            labels
        } else {
            format!("failed: {}", failed.join(", "))
        }),
    }
}

fn flag(pass: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        lhs: lhs.into(),
        rhs: rhs.into(),
        abs_error: None,
        detail: None,
    }
}

fn compare<R: Real>(value: &R, expect: &R, tol: f64, relative: bool) -> Outcome {
    let err = (value.clone() - expect.clone()).abs().to_f64();
    let scale = if relative { expect.abs().to_f64() } else { 1.0 };
    Outcome {
        pass: err <= tol * scale,
        lhs: value.to_sci(),
        rhs: expect.to_sci(),
        abs_error: Some(err),
        detail: None,
    }
}

/// Quadrature tolerance for a check at `case_tol`, scaled by the size of the
/// expected value for relative checks.
fn qtol<R: Real>(cfg: &Config, case_tol: f64, scale: f64) -> R {
    R::from_f64(cfg.quad_tol.min(case_tol * 0.1) * scale)
}

fn bsum<R: Real>(k: &BorelKernel, z: &R, tol: &R) -> Result<R> {
    match borel_sum_with(k, z, tol)?.status {
        SumStatus::Summable { value, .. } => Ok(value),
        SumStatus::NotSummable => Err(Error::Kernel(format!("{} is not summable at z={}", k.id, z.to_sci()))),
        SumStatus::Inconclusive => Err(Error::Kernel(format!("{} at z={} did not reach tolerance", k.id, z.to_sci()))),
    }
}

fn bsum_id<R: Real>(id: &str, z: &R, tol: &R) -> Result<R> {
    bsum(&registry_kernel(id)?, z, tol)
}

fn kernel_of(s: &FormalSeries) -> Result<&BorelKernel> {
    s.kernel
        .as_ref()
        .ok_or_else(|| Error::Kernel(format!("{} has no closed-form transform", s.name)))
}

fn gamma<R: Real>(n: i64) -> Result<R> {
    Ok(R::from_bigint(&gamma_int(n)?))
}

fn q<R: Real>(num: i64, den: i64) -> R {
    R::from_rational(&ratio(num, den))
}

// ---- exact cases ----

fn materialized(e: NamedElement) -> Result<LaurentVec> {
    named_element(&e, LAURENT_DEPTH)
}

fn componentwise(f: &LaurentVec, g: &LaurentVec) -> Result<Outcome> {
    let a = f.components(0, LAURENT_DEPTH as i64)?;
    let b = g.components(0, LAURENT_DEPTH as i64)?;
    exact_range("n", 0..=LAURENT_DEPTH as usize, |n| Ok((a[n].clone(), b[n].clone())))
}

/// Equality of finite vectors regardless of explicit zero padding.
fn same(f: &LaurentVec, g: &LaurentVec) -> bool {
    let lo = f.lo().min(g.lo());
    let hi = f.hi().max(g.hi());
    (lo..=hi).all(|n| f.get(n).unwrap_or_default() == g.get(n).unwrap_or_default())
}

fn random_vec(rng: &mut ChaCha8Rng) -> Result<LaurentVec> {
    let lo = rng.gen_range(-4i64..=0);
    let hi = rng.gen_range(0i64..=6);
    let coeffs = (lo..=hi)
        .map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
        .collect();
    LaurentVec::new(lo, coeffs, Tail::ZeroBeyondWindow)
}

fn product_rules(_: &Config) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a7e);
    let trials = 100;
    let one = rat(1);
    let zero = rat(0);
    for i in 0..trials {
        let (f, g, h) = (random_vec(&mut rng)?, random_vec(&mut rng)?, random_vec(&mut rng)?);
        let lambda = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=5));
        let fg = laurent_mul(&f, &g)?;
        let checks = [
            ("commutativity", fg.clone(), laurent_mul(&g, &f)?),
            ("associativity", laurent_mul(&fg, &h)?, laurent_mul(&f, &laurent_mul(&g, &h)?)?),
            (
                "distributivity",
                laurent_mul(&f, &linear_combine(&one, &g, &one, &h))?,
                linear_combine(&one, &fg, &one, &laurent_mul(&f, &h)?),
            ),
            (
                "scalars",
                laurent_mul(&f, &linear_combine(&lambda, &g, &zero, &g))?,
                linear_combine(&lambda, &fg, &zero, &fg),
            ),
            ("identity", laurent_mul(&f, &LaurentVec::id())?, f.clone()),
        ];
        for (rule, l, r) in checks {
            if !same(&l, &r) {
                let mut o = flag(false, l.to_string(), r.to_string());
                o.detail = Some(format!("{rule} fails on trial {i}"));
                return Ok(o);
            }
        }
    }
    let mut o = flag(true, format!("{trials} triples"), "all rules hold");
    o.detail = Some("commutativity, associativity, distributivity, scalars, identity".into());
    Ok(o)
}

/// ζ(-n), n = 1..20, written out.
fn zeta_nonpos_table(n: usize) -> BigRational {
    const ODD: [(i64, i64); 10] = [
        (-1, 12),
        (1, 120),
        (-1, 252),
        (1, 240),
        (-1, 132),
        (691, 32760),
        (-1, 12),
        (3617, 8160),
        (-43867, 14364),
        (174611, 6600),
    ];
    if n.is_multiple_of(2) {
        BigRational::zero()
    } else {
        let (a, b) = ODD[n / 2];
        ratio(a, b)
    }
}

fn deconvolution(_: &Config) -> Result<Outcome> {
    let n_max = 30;
    let f = registry_series("bernoulli-second")?;
    let h = FormalSeries::exact("(n+1)B+_n", |n| rat(n as i64 + 1) * bernoulli_second(n));
    let b = solve_convolution(&f, &h, n_max)?;
    let six = FormalSeries::exact("6B+", |k| rat(6) * bernoulli_second(k));
    let h2 = FormalSeries::exact("15(n+2)(n+1)B+_n", |n| {
        BigRational::from_integer((15 * (n as u64 + 2) * (n as u64 + 1)).into()) * bernoulli_second(n)
    });
    let a = solve_convolution(&six, &h2, n_max)?;
    let starts = [
        ("b_0", b[0].clone(), bernoulli_second(0)),
        ("b_1", b[1].clone(), bernoulli_second(1)),
        ("a_0", a[0].clone(), rat(5) * bernoulli_second(0)),
        ("a_1", a[1].clone(), rat(10) * bernoulli_second(1)),
    ];
    for (name, got, want) in starts {
        if got != want {
            let mut o = flag(false, format_rational(&got), format_rational(&want));
            o.detail = Some(format!("{name} differs"));
            return Ok(o);
        }
    }
    let back_b = cauchy_product(&f, &FormalSeries::exact("b", move |k| b[k].clone()));
    let back_a = cauchy_product(&six, &FormalSeries::exact("a", move |k| a[k].clone()));
    let first = exact_range("n", 0..=n_max, |n| Ok((back_b.coeff(n).unwrap_or_default(), h.coeff(n).unwrap_or_default())))?;
    if !first.pass {
        return Ok(first);
    }
    exact_range("n", 0..=n_max, |n| Ok((back_a.coeff(n).unwrap_or_default(), h2.coeff(n).unwrap_or_default())))
}

fn exact_cases() -> Vec<VerificationCase> {
    let even = || (4..=40).step_by(2);
    vec![
        exact("exact/bh-identity", "B·H = id", |_| {
            let b = materialized(NamedElement::B)?.assume_zero_tail();
            let h = materialized(NamedElement::H)?.assume_zero_tail();
            componentwise(&laurent_mul(&b, &h)?, &materialized(NamedElement::Id)?)
        }),
        exact("exact/minus1B", "-1 ⊙ B = B·1", |_| {
            let b = materialized(NamedElement::B)?;
            let one = materialized(NamedElement::J(rat(1)))?;
            let minus1 = materialized(NamedElement::J(rat(-1)))?;
            let rhs = laurent_mul(&b.clone().assume_zero_tail(), &one.assume_zero_tail())?;
            let o = componentwise(&pointwise_mul(&minus1, &b), &rhs)?;
            if !o.pass {
                return Ok(o);
            }
            componentwise(&rhs, &materialized(NamedElement::Minus1B)?)
        }),
        exact("exact/minus1H", "-1 ⊙ H = H·(-1)", |_| {
            let h = materialized(NamedElement::H)?;
            let minus1 = materialized(NamedElement::J(rat(-1)))?;
            let rhs = laurent_mul(&h.clone().assume_zero_tail(), &minus1.clone().assume_zero_tail())?;
            componentwise(&pointwise_mul(&minus1, &h), &rhs)
        }),
        exact("exact/eq1.10", "(-1 ⊙ B)·(-1 ⊙ H) = id", |_| {
            let minus1 = materialized(NamedElement::J(rat(-1)))?;
            let mb = pointwise_mul(&minus1, &materialized(NamedElement::B)?).assume_zero_tail();
            let mh = pointwise_mul(&minus1, &materialized(NamedElement::H)?).assume_zero_tail();
            componentwise(&laurent_mul(&mb, &mh)?, &materialized(NamedElement::Id)?)
        }),
        exact("exact/lemma1.3", "product rules on random finite vectors", product_rules),
        exact("exact/zeta-nonpos", "ζ(-n) = -B_(n+1)/(n+1)", |_| {
            exact_range("n", 1..=20, |n| Ok((crate::zeta::zeta_nonpos_exact(n as u32), zeta_nonpos_table(n))))
        }),
        exact("exact/gessel", "sum C(n,k) B_k B_(n-k) = -(n+1) B_n", move |_| {
            exact_range("n", even(), |n| Ok(identities::gessel(n)))
        }),
        exact("exact/gessel-restated", "full-range binomial convolution of B", |_| {
            exact_range("n", 1..=40, |n| Ok(identities::gessel_full(n)))
        }),
        exact("exact/matiyasevich", "(n+2) sum B_k B_(n-k) - 2 sum C(n+2,k) B_k B_(n-k) = n(n+1) B_n", move |_| {
            exact_range("n", even(), |n| Ok(identities::matiyasevich(n)))
        }),
        exact("exact/matiyasevich-restated", "full-range form in B+", |_| {
            exact_range("n", 1..=40, |n| Ok(identities::matiyasevich_full(n)))
        }),
        exact("exact/miki", "sum β_k β_(n-k) - sum C(n,k) β_k β_(n-k) = 2 H_n β_n", move |_| {
            exact_range("n", even(), |n| Ok(identities::miki(n)))
        }),
        exact("exact/second-kind-restated", "full-range binomial convolution of B+", |_| {
            exact_range("n", 1..=40, |n| Ok(identities::second_kind_full(n)))
        }),
        exact("exact/deconvolution-roundtrip", "series b, a solving the B+ convolution systems", deconvolution),
    ]
}

// ---- Borel sums ----

fn grandi<R: Real>(cfg: &Config) -> Result<Outcome> {
    let v = bsum_id("geometric", &R::from_i64(-1), &qtol::<R>(cfg, 1e-12, 1.0))?;
    Ok(compare(&v, &q(1, 2), 1e-12, false))
}

fn geometric_points<R: Real>(cfg: &Config) -> Result<Outcome> {
    let mut parts = Vec::new();
    for (zn, zd, en, ed) in [(-2, 1, 1, 3), (-1, 2, 2, 3), (1, 2, 2, 1)] {
        let v = bsum_id("geometric", &q::<R>(zn, zd), &qtol::<R>(cfg, 1e-12, 1.0))?;
        parts.push((format!("z={}", format_rational(&ratio(zn, zd))), compare(&v, &q(en, ed), 1e-12, false)));
    }
    Ok(all(parts))
}

fn regularity<R: Real>(cfg: &Config) -> Result<Outcome> {
    let mut parts = Vec::new();
    for (zn, zd) in [(-1, 2), (3, 10), (-9, 10)] {
        let z = q::<R>(zn, zd);
        let v = bsum_id("geometric", &z, &qtol::<R>(cfg, 1e-11, 1.0))?;
        let mut direct = R::zero();
        let mut term = R::one();
        while term.abs() > R::epsilon() * R::from_f64(1e-3) {
            direct = direct + term.clone();
            term = term * z.clone();
        }
        let label = format!("z={}", format_rational(&ratio(zn, zd)));
        parts.push((format!("{label} direct"), compare(&v, &direct, 1e-11, false)));
        let closed = R::one() / (R::one() - z);
        parts.push((format!("{label} closed"), compare(&v, &closed, 1e-11, false)));
    }
    Ok(all(parts))
}

fn bernoulli_zeta2<R: Real>(cfg: &Config) -> Result<Outcome> {
    let v = bsum_id("bernoulli", &R::one(), &qtol::<R>(cfg, 1e-10, 1.0))?;
    let pi = R::pi();
    Ok(compare(&v, &(pi.clone() * pi / R::from_i64(6) - R::one()), 1e-10, false))
}

fn a3<R: Real>(cfg: &Config) -> Result<Outcome> {
    let v = bsum_id("a3", &R::one(), &qtol::<R>(cfg, 1e-9, 1.0))?;
    let expect = R::from_i64(2) * zeta_pos::<R>(3)? - R::from_i64(2);
    Ok(compare(&v, &expect, 1e-9, false))
}

/// `2 sum B_k + ∫ t^2/(e^t - 1) - ∫ t^2 e^t/(e^t - 1)^2`, each piece summed on its own.
fn a4<R: Real>(cfg: &Config) -> Result<Outcome> {
    let tol = qtol::<R>(cfg, 1e-9, 1.0);
    let one = R::one();
    let route = R::from_i64(2) * bsum_id("bernoulli", &one, &tol)? + bsum_id("dn:second:3", &one, &tol)?
        - bsum_id("conv-square-second", &one, &tol)?;
    let direct = bsum_id("a4", &one, &tol)?;
    let via_a3 = bsum_id("a3", &one, &tol)?;
    let expect = R::from_i64(2) * zeta_pos::<R>(3)? - R::from_i64(2);
    Ok(all(vec![
        ("route".into(), compare(&route, &expect, 1e-9, false)),
        ("direct kernel".into(), compare(&direct, &expect, 1e-9, false)),
        ("against a3".into(), compare(&route, &via_a3, 1e-9, false)),
    ]))
}

fn dn_at_one<R: Real>(cfg: &Config, n: u32) -> Result<Outcome> {
    let g = gamma::<R>(n as i64)?;
    let expect = g.clone() * zeta_pos::<R>(n)? - g;
    let tol = qtol::<R>(cfg, 1e-9, expect.abs().to_f64());
    let v = borel_sum_dn_with(n, &R::one(), &tol, Kind::First)?;
    Ok(compare(&v, &expect, 1e-9, true))
}

fn dn_at_minus_one<R: Real>(cfg: &Config, n: u32) -> Result<Outcome> {
    let expect = gamma::<R>(n as i64)? * zeta_pos::<R>(n)?;
    let tol = qtol::<R>(cfg, 1e-9, expect.abs().to_f64());
    let at_minus = borel_sum_dn_with(n, &R::from_i64(-1), &tol, Kind::First)?;
    let signed = if n.is_multiple_of(2) { at_minus } else { -at_minus };
    let second = borel_sum_dn_with(n, &R::one(), &tol, Kind::Second)?;
    Ok(all(vec![
        ("(-1)^n D_n(-1)".into(), compare(&signed, &expect, 1e-9, true)),
        ("second kind at 1".into(), compare(&second, &expect, 1e-9, true)),
    ]))
}

fn shift_rules<R: Real>(cfg: &Config) -> Result<Outcome> {
    let one = R::one();
    let tol = qtol::<R>(cfg, 1e-10, 1.0);
    let b = registry_series("bernoulli")?;
    let zeta2 = zeta_pos::<R>(2)?;
    let mut parts = Vec::new();
    for (m, label) in [(0, "2 + B_1 + B_2 + ..."), (1, "B_0 + (B_1 + 1) + ...")] {
        let s = borel_shift(&b, m, &rat(1));
        parts.push((label.to_string(), compare(&bsum(kernel_of(&s)?, &one, &tol)?, &zeta2, 1e-10, false)));
    }
    for n in 2..=6u32 {
        let d = registry_series(&format!("dn:first:{n}"))?;
        let c = BigRational::from_integer(factorial(n as u64 - 1));
        let s = borel_shift(&d, n as usize - 1, &c);
        let expect = gamma::<R>(n as i64)? * zeta_pos::<R>(n)?;
        let tol = qtol::<R>(cfg, 1e-10, expect.to_f64());
        let v = bsum(kernel_of(&s)?, &one, &tol)?;
        parts.push((format!("D_{n} shifted by (n-1)!"), compare(&v, &expect, 1e-10, true)));
    }
    // random (m, c): the sum moves by exactly c
    let base = bsum(kernel_of(&b)?, &one, &tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    let mut worst: Option<Outcome> = None;
    for _ in 0..50 {
        let m = rng.gen_range(0..=10usize);
        let c = ratio(rng.gen_range(-40..=40), rng.gen_range(1..=4));
        let moved = bsum(kernel_of(&borel_shift(&b, m, &c))?, &one, &tol)?;
        let o = compare(&(moved - base.clone()), &R::from_rational(&c), 1e-10, false);
        if worst.as_ref().is_none_or(|w| o.abs_error > w.abs_error) {
            worst = Some(o);
        }
    }
    parts.push(("50 random shifts (worst)".into(), worst.expect("50 trials")));
    Ok(all(parts))
}

fn grandi_square<R: Real>(cfg: &Config) -> Result<Outcome> {
    let g = registry_series("grandi")?;
    let sq = cauchy_product(&g, &g);
    let coeffs = exact_range("n", 0..=20, |n| {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        Ok((sq.coeff(n).unwrap_or_default(), rat(sign * (n as i64 + 1))))
    })?;
    let v = bsum(kernel_of(&sq)?, &R::one(), &qtol::<R>(cfg, 1e-12, 1.0))?;
    Ok(all(vec![
        ("1 - 2 + 3 - 4 + ...".into(), coeffs),
        ("sum".into(), compare(&v, &q(1, 4), 1e-12, false)),
    ]))
}

fn conv_square<R: Real>(cfg: &Config) -> Result<Outcome> {
    let b = registry_series("bernoulli")?;
    // the n = 0 term B_0^2 is not part of the series
    let s = borel_shift(&binomial_product(&b, &b), 0, &rat(-1));
    let v = bsum(kernel_of(&s)?, &R::one(), &qtol::<R>(cfg, 1e-8, 1.0))?;
    let expect = R::from_i64(-4) * zeta_pos::<R>(3)? + R::from_i64(2) * zeta_pos::<R>(2)? + R::one();
    Ok(compare(&v, &expect, 1e-8, false))
}

fn conv_square_second<R: Real>(cfg: &Config) -> Result<Outcome> {
    let b = registry_series("bernoulli-second")?;
    let s = binomial_product(&b, &b);
    let v = bsum(kernel_of(&s)?, &R::one(), &qtol::<R>(cfg, 1e-8, 1.0))?;
    Ok(compare(&v, &(R::from_i64(2) * zeta_pos::<R>(2)?), 1e-8, false))
}

/// The two Cauchy products of `sum B+_k` and `sum (k+1) B+_k`, in both orders.
fn zeta2_zeta3_products() -> Result<(FormalSeries, FormalSeries)> {
    let w = registry_series("bernoulli-second")?;
    let v = registry_series("bplus-linear")?;
    Ok((cauchy_product(&w, &v), cauchy_product(&v, &w)))
}

// Convolution transforms run in hardware floating point at every precision.
fn product_zeta2_zeta3(cfg: &Config) -> Result<Outcome> {
    let (p, r) = zeta2_zeta3_products()?;
    let expect = 2.0 * zeta_pos::<f64>(2)? * zeta_pos::<f64>(3)?;
    let tol = qtol::<f64>(cfg, 1e-8, 1.0);
    Ok(all(vec![
        ("W·V".into(), compare(&bsum(kernel_of(&p)?, &1.0, &tol)?, &expect, 1e-8, false)),
        ("V·W".into(), compare(&bsum(kernel_of(&r)?, &1.0, &tol)?, &expect, 1e-8, false)),
    ]))
}

fn mirrored_products(cfg: &Config) -> Result<Outcome> {
    let (p, r) = zeta2_zeta3_products()?;
    let s = linear_combine_series(&rat(1), &p, &rat(1), &r);
    let coeffs = exact_range("n", 0..=20, |n| {
        let conv = (0..=n).fold(BigRational::zero(), |acc, k| acc + bernoulli_second(k) * bernoulli_second(n - k));
        Ok((s.coeff(n).unwrap_or_default(), rat(n as i64 + 2) * conv))
    })?;
    let expect = 4.0 * zeta_pos::<f64>(2)? * zeta_pos::<f64>(3)?;
    let v = bsum(kernel_of(&s)?, &1.0, &qtol::<f64>(cfg, 1e-8, 1.0))?;
    Ok(all(vec![
        ("(n+2) sum B+_k B+_(n-k)".into(), coeffs),
        ("sum".into(), compare(&v, &expect, 1e-8, false)),
    ]))
}

fn nested_double_integral<R: Real>(cfg: &Config) -> Result<Outcome> {
    let tol = cfg.quad_tol.min(1e-7);
    let k_terms = (4.0 * (1.0 / tol).ln()).ceil() as usize + 10;
    let v = nested_integral_with::<R>(&R::from_f64(tol), k_terms)?;
    let expect = R::from_i64(2) * zeta_pos::<R>(2)? * zeta_pos::<R>(3)? + R::from_i64(2) * zeta_pos::<R>(5)?;
    let mut o = compare(&v, &expect, 1e-6, false);
    o.detail = Some(format!("k_terms={k_terms}"));
    Ok(o)
}

fn euler_gamma<R: Real>(cfg: &Config) -> Result<Outcome> {
    let v = bsum_id("beta-plus", &R::one(), &qtol::<R>(cfg, 1e-8, 1.0))?;
    Ok(compare(&v, &euler_mascheroni_harmonic::<R>(), 1e-8, false))
}

fn weights_table<R: Real>(cfg: &Config) -> Result<Outcome> {
    let mut parts = Vec::new();
    for n in 2..=6i64 {
        let v = bsum_id(&format!("rising:{n}"), &R::from_i64(-1), &qtol::<R>(cfg, 1e-10, 1.0))?;
        let signed = if n % 2 == 0 { v } else { -v };
        let expect = R::from_rational(&(BigRational::from_integer(gamma_int(n - 1)?) / rat(1 << (n - 1))));
        parts.push((format!("n={n}"), compare(&signed, &expect, 1e-10, false)));
    }
    Ok(all(parts))
}

fn bplus_sums<R: Real>(cfg: &Config) -> Result<Outcome> {
    let one = R::one();
    let pi = R::pi();
    let pi2 = pi.clone() * pi;
    let pi4 = pi2.clone() * pi2.clone();
    let z3 = R::from_i64(2) * zeta_pos::<R>(3)?;
    let s1 = R::from_i64(6) * bsum_id("bernoulli-second", &one, &qtol::<R>(cfg, 1e-9, pi2.to_f64() / 6.0))?;
    let s2 = bsum_id("bplus-linear", &one, &qtol::<R>(cfg, 1e-9, z3.to_f64()))?;
    let s3 = R::from_i64(15) * bsum_id("bplus-quadratic", &one, &qtol::<R>(cfg, 1e-9, pi4.to_f64() / 15.0))?;
    Ok(all(vec![
        ("sum 6 B+_k".into(), compare(&s1, &pi2, 1e-9, true)),
        ("sum (k+1) B+_k".into(), compare(&s2, &z3, 1e-9, true)),
        ("sum 15 (k+2)(k+1) B+_k".into(), compare(&s3, &pi4, 1e-9, true)),
    ]))
}

fn not_summable<R: Real>(cfg: &Config) -> Result<Outcome> {
    let tol = qtol::<R>(cfg, 1e-12, 1.0);
    let one = R::one();
    let geo = borel_sum_with(&registry_kernel("geometric")?, &one, &tol)?.status;
    let nz = borel_sum_with(&registry_kernel("n-zn")?, &one, &tol)?.status;
    let alt = bsum_id("n-zn", &R::from_i64(-1), &tol)?;
    let label = |s: &SumStatus<R>| match s {
        SumStatus::Summable { .. } => "summable",
        SumStatus::NotSummable => "not summable",
        SumStatus::Inconclusive => "inconclusive",
    };
    Ok(all(vec![
        ("1 + 1 + 1 + ...".into(), flag(geo == SumStatus::NotSummable, label(&geo), "not summable")),
        ("1 + 2 + 3 + ...".into(), flag(nz == SumStatus::NotSummable, label(&nz), "not summable")),
        ("-1 + 2 - 3 + ...".into(), compare(&alt, &q(-1, 4), 1e-12, false)),
    ]))
}

fn borel_cases() -> Vec<VerificationCase> {
    let mut v = vec![
        quad("borel/grandi", "1 - 1 + 1 - ... = 1/2", 1e-12, |c| at_precision!(c, grandi)),
        quad("borel/geometric-points", "sum z^k = 1/(1-z) at z = -2, -1/2, 1/2", 1e-12, |c| {
            at_precision!(c, geometric_points)
        }),
        quad("borel/regularity", "convergent geometric series keep their sums", 1e-11, |c| {
            at_precision!(c, regularity)
        }),
        quad("borel/bernoulli-zeta2", "sum B_k = ζ(2) - 1", 1e-10, |c| at_precision!(c, bernoulli_zeta2)),
        quad("borel/a3-zeta3", "sum k B_(k-1) = 2ζ(3) - 2", 1e-9, |c| at_precision!(c, a3)),
        quad("borel/a4-zeta3", "sum (k+1) B_k = 2ζ(3) - 2", 1e-9, |c| at_precision!(c, a4)),
    ];
    for n in 2..=12u32 {
        v.push(
            quad(&format!("borel/thm2.1/n={n}"), "sum (n-2+k)_(n-2) B_k = Γ(n)ζ(n) - Γ(n)", 1e-9, move |c| {
                at_precision!(c, dn_at_one, n)
            })
            .with_param("n", n),
        );
    }
    for n in 2..=12u32 {
        v.push(
            quad(&format!("borel/thm3.5/n={n}"), "sum (n-2+k)_(n-2) (-1)^k B_k = Γ(n)ζ(n)", 1e-9, move |c| {
                at_precision!(c, dn_at_minus_one, n)
            })
            .with_param("n", n),
        );
    }
    v.extend([
        quad("borel/shift-rules", "moving c into term m moves the sum by c", 1e-10, |c| {
            at_precision!(c, shift_rules)
        }),
        quad("borel/grandi-square", "(1 - 1 + 1 - ...)^2 = 1/4", 1e-12, |c| at_precision!(c, grandi_square)),
        quad("borel/conv-square", "sum_n sum_k C(n,k) B_k B_(n-k) = -4ζ(3) + 2ζ(2) + 1", 1e-8, |c| {
            at_precision!(c, conv_square)
        }),
        quad("borel/conv-square-second", "sum_n sum_k C(n,k) B+_k B+_(n-k) = 2ζ(2)", 1e-8, |c| {
            at_precision!(c, conv_square_second)
        }),
        quad(
            "borel/product-zeta2zeta3",
            "Cauchy product of sum B+_k and sum (k+1) B+_k = 2ζ(2)ζ(3)",
            1e-8,
            product_zeta2_zeta3,
        ),
        quad("borel/eq3.48", "sum (n+2) sum_k B+_k B+_(n-k) = 4ζ(2)ζ(3)", 1e-8, mirrored_products),
        quad("borel/eq3.49", "sum_n sum_k C(n+2,k) B+_k B+_(n+2-k) = 2ζ(2)ζ(3) + 2ζ(5)", 1e-6, |c| {
            at_precision!(c, nested_double_integral)
        }),
        quad("borel/gamma", "sum β+_k = γ", 1e-8, |c| at_precision!(c, euler_gamma)),
        quad("borel/weights-table", "rising weight rows at z = -1 give Γ(n-1)/2^(n-1)", 1e-10, |c| {
            at_precision!(c, weights_table)
        }),
        quad("borel/eq4.2-4.4", "sums of 6B+_k, (k+1)B+_k, 15(k+2)(k+1)B+_k", 1e-9, |c| {
            at_precision!(c, bplus_sums)
        }),
        quad("borel/not-summable", "1 + 1 + ... and 1 + 2 + ... have no Borel sum", 1e-12, |c| {
            at_precision!(c, not_summable)
        }),
    ]);
    v
}

// ---- convergent series ----

fn recursion_residuals<R: Real>(_: &Config) -> Result<Outcome> {
    let mut parts = Vec::new();
    for s in 2..=6u32 {
        let r = check_eq_2_5_with::<R>(s, 60)?;
        let mut o = compare(&r, &R::zero(), 1e-12, false);
        o.lhs = format!("residual {}", r.to_sci());
        o.rhs = "0".into();
        parts.push((format!("s={s}"), o));
    }
    Ok(all(parts))
}

fn component_sums(cfg: &Config) -> Result<Outcome> {
    let mut parts = Vec::new();
    for n in 1..=5u32 {
        let r = crate::laurent::check_eq_2_9(n, cfg.series_terms, zeta_minus_one::<f64>)?;
        let mut o = compare(&r, &0.0, 1e-10, false);
        o.lhs = format!("residual {}", r.to_sci());
        o.rhs = "0".into();
        parts.push((format!("n={n}"), o));
    }
    Ok(all(parts))
}
