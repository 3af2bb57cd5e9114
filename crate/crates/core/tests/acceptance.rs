//! Acceptance run: every criterion at its stated tolerance, one line each.
//! Runs the catalogue at 50 digits; determinism is checked through the
//! binary at its defaults.

use std::process::Command;
use std::time::Instant;

use serde_json::Value;
use zeta_borel::verify::{run_suite, CaseResult, Config, Report, Status};

struct Check {
    pass: bool,
    note: String,
}

fn case<'a>(r: &'a Report, id: &str) -> &'a CaseResult {
    r.case(id).unwrap_or_else(|| panic!("missing case {id}"))
}

/// Case passed and its worst error is within `tol`.
fn within(r: &Report, id: &str, tol: f64) -> Check {
    let c = case(r, id);
    let err = c.abs_error.unwrap_or(f64::INFINITY);
    Check {
        pass: c.status == Status::Pass && err <= tol,
        note: format!("{id}: {} err {err:.2e}", c.status),
    }
}

fn passed(r: &Report, id: &str) -> Check {
    let c = case(r, id);
    Check {
        pass: c.status == Status::Pass,
        note: format!("{id}: {}", c.status),
    }
}

fn both(checks: Vec<Check>) -> Check {
    Check {
        pass: checks.iter().all(|c| c.pass),
        note: checks.iter().map(|c| c.note.as_str()).collect::<Vec<_>>().join("; "),
    }
}

fn family(r: &Report, prefix: &str, ns: std::ops::RangeInclusive<u32>, max_ms: Option<f64>) -> Check {
    let mut worst_ms: f64 = 0.0;
    let mut ok = true;
    let mut bad = Vec::new();
    for n in ns.clone() {
        let c = case(r, &format!("{prefix}/n={n}"));
        worst_ms = worst_ms.max(c.runtime_ms);
        let fast = max_ms.is_none_or(|m| c.runtime_ms < m);
        if c.status != Status::Pass || !fast {
            ok = false;
            bad.push(n);
        }
    }
    Check {
        pass: ok,
        note: format!(
            "{prefix}/n={}..{}: slowest {worst_ms:.0} ms{}",
            ns.start(),
            ns.end(),
            if bad.is_empty() { String::new() } else { format!(", failing n = {bad:?}") }
        ),
    }
}

fn strip_runtime(mut v: Value) -> Value {
    if let Some(cases) = v["cases"].as_array_mut() {
        for c in cases {
            c.as_object_mut().expect("case object").remove("runtime_ms");
        }
    }
    v
}

fn json_run() -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_zeta-borel"))
        .args(["verify", "--format", "json"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn main() {
    let cfg = Config {
        precision_digits: 50,
        ..Config::default()
    };
    let start = Instant::now();
    let r = run_suite("*", &cfg).expect("suite runs");
    let suite_secs = start.elapsed().as_secs_f64();

    let mut results: Vec<(u32, &str, Check)> = vec![
        (1, "Grandi and geometric points", both(vec![within(&r, "borel/grandi", 1e-12), within(&r, "borel/geometric-points", 1e-12)])),
        (2, "sum of B_k is ζ(2) - 1", within(&r, "borel/bernoulli-zeta2", 1e-10)),
        (3, "zero-padding routes agree", both(vec![within(&r, "borel/a3-zeta3", 1e-9), within(&r, "borel/a4-zeta3", 1e-9)])),
        (4, "D_n at z = 1, n = 2..12", family(&r, "borel/thm2.1", 2..=12, Some(1000.0))),
        (5, "D_n at z = -1, n = 2..12", family(&r, "borel/thm3.5", 2..=12, None)),
        (6, "convolution square", within(&r, "borel/conv-square", 1e-8)),
        (7, "second-kind square", within(&r, "borel/conv-square-second", 1e-8)),
        (8, "nested integral", within(&r, "borel/eq3.49", 1e-6)),
        (9, "Euler-Mascheroni constant", within(&r, "borel/gamma", 1e-8)),
        (10, "non-summability", both(vec![within(&r, "borel/not-summable", 1e-12), within(&r, "borel/grandi-square", 1e-12)])),
        (11, "shift rule", within(&r, "borel/shift-rules", 1e-10)),
        (12, "weight table", within(&r, "borel/weights-table", 1e-10)),
        (13, "products of B+ sums", passed(&r, "borel/eq4.2-4.4")),
        (14, "exact identities", {
            let exact: Vec<Check> = r.cases.iter().filter(|c| c.id.starts_with("exact/")).map(|c| passed(&r, &c.id)).collect();
            let n = exact.len();
            let mut c = both(exact);
            c.note = format!("{n} exact cases{}", if c.pass { String::new() } else { format!(": {}", c.note) });
            c
        }),
        (15, "convergent recursions", both(vec![within(&r, "convergent/eq2.5", 1e-12), within(&r, "convergent/eq2.7", 1e-10)])),
        (16, "diagnostic sides", {
            let diags: Vec<&CaseResult> = r.cases.iter().filter(|c| c.id.starts_with("diag/eq2.2/")).collect();
            let all_reported = diags.len() == 11 && diags.iter().all(|c| c.status == Status::Reported && !c.lhs.is_empty());
            let m1 = case(&r, "diag/eq2.2/m=1");
            Check {
                pass: all_reported && m1.lhs == "1/2" && m1.rhs == "5/12",
                note: format!("{} reported; m=1: {} vs {}", diags.len(), m1.lhs, m1.rhs),
            }
        }),
    ];

    let t = Instant::now();
    let first = strip_runtime(json_run());
    let default_secs = t.elapsed().as_secs_f64();
    let second = strip_runtime(json_run());
    results.push((
        17,
        "determinism",
        Check {
            pass: first == second,
            note: format!("two json runs at default precision, {default_secs:.1} s each"),
        },
    ));

    println!("acceptance: catalogue at 50 digits in {suite_secs:.1} s");
    let mut failures = 0;
    for (n, title, c) in &results {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        if !c.pass {
            failures += 1;
        }
        println!("criterion {n:>2} {mark} {title} ({})", c.note);
    }
    let t = &r.totals;
    assert_eq!(t.pass + t.fail + t.reported, t.count);
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
