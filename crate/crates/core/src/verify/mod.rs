//! Executable catalogue of identities, the suite runner and report output.

pub mod catalogue;
pub mod identities;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bernoulli::table;
use crate::error::{Error, Result};

pub use catalogue::catalogue;
pub use report::{emit_report, render, Format};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// 15 or fewer runs in `f64`; more switches to the big-float backend.
    pub precision_digits: usize,
    pub quad_tol: f64,
    pub series_terms: usize,
    pub bernoulli_cache_path: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision_digits: 15,
            quad_tol: 1e-10,
            series_terms: 200,
            bernoulli_cache_path: None,
        }
    }
}

impl Config {
    /// Reads a JSON object; missing keys keep their defaults.
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)?;
        let cfg: Config = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision_digits == 0 {
            return Err(Error::Usage("precision_digits must be positive".into()));
        }
        if !(self.quad_tol > 0.0 && self.quad_tol.is_finite()) {
            return Err(Error::Usage("quad_tol must be a positive number".into()));
        }
        if self.series_terms < 10 {
            return Err(Error::Usage("series_terms must be at least 10".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseKind {
    Exact,
    Quadrature,
    Diagnostic,
}

/// Result of running one case body.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    pub abs_error: Option<f64>,
    pub detail: Option<String>,
}

pub type Runner = Arc<dyn Fn(&Config) -> Result<Outcome> + Send + Sync>;

#[derive(Clone)]
pub struct VerificationCase {
    pub id: String,
    pub kind: CaseKind,
    /// The identity being checked, in words.
    pub anchor: String,
    /// Quadrature cases only.
    pub tolerance: Option<f64>,
    pub parameters: BTreeMap<String, String>,
    run: Runner,
}

impl fmt::Debug for VerificationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VerificationCase")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("tolerance", &self.tolerance)
            .field("parameters", &self.parameters)
            .finish()
    }
}

impl VerificationCase {
    pub fn new(
        id: impl Into<String>,
        kind: CaseKind,
        anchor: impl Into<String>,
        tolerance: Option<f64>,
        run: impl Fn(&Config) -> Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        VerificationCase {
            id: id.into(),
            kind,
            anchor: anchor.into(),
            tolerance,
            parameters: BTreeMap::new(),
            run: Arc::new(run),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn execute(&self, cfg: &Config) -> CaseResult {
        let start = Instant::now();
        let outcome = (self.run)(cfg);
        let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
        let (status, lhs, rhs, abs_error, detail) = match outcome {
            Ok(o) => {
                let status = match (self.kind, o.pass) {
                    (CaseKind::Diagnostic, _) => Status::Reported,
                    (_, true) => Status::Pass,
                    (_, false) => Status::Fail,
                };
                (status, o.lhs, o.rhs, o.abs_error, o.detail)
            }
            Err(e) => {
                let status = if self.kind == CaseKind::Diagnostic {
                    Status::Reported
                } else {
                    Status::Fail
                };
                (status, String::new(), String::new(), None, Some(e.to_string()))
            }
        };
        CaseResult {
            id: self.id.clone(),
            kind: self.kind,
            status,
            lhs,
            rhs,
            abs_error,
            tolerance: self.tolerance,
            runtime_ms,
            detail,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub kind: CaseKind,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(serialize_with = "report::sci_opt")]
    pub abs_error: Option<f64>,
    #[serde(serialize_with = "report::sci_opt")]
    pub tolerance: Option<f64>,
    pub runtime_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub count: usize,
    pub pass: usize,
    pub fail: usize,
    pub reported: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub cases: Vec<CaseResult>,
    pub totals: Totals,
    pub config: Config,
}

impl Report {
    pub fn new(cases: Vec<CaseResult>, config: Config) -> Self {
        let mut totals = Totals {
            count: cases.len(),
            ..Totals::default()
        };
        for c in &cases {
            match c.status {
                Status::Pass => totals.pass += 1,
                Status::Fail => totals.fail += 1,
                Status::Reported => totals.reported += 1,
            }
        }
        Report { cases, totals, config }
    }

    /// Whether any non-diagnostic case failed.
    pub fn failed(&self) -> bool {
        self.totals.fail > 0
    }

    pub fn case(&self, id: &str) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.id == id)
    }
}

/// Runs every catalogue case whose id matches the glob, in parallel, and
/// reports them in catalogue order.
pub fn run_suite(filter: &str, cfg: &Config) -> Result<Report> {
    cfg.validate()?;
    let pattern = glob::Pattern::new(filter).map_err(|e| Error::Usage(format!("bad suite pattern {filter:?}: {e}")))?;
    let cases: Vec<VerificationCase> = catalogue().into_iter().filter(|c| pattern.matches(&c.id)).collect();
    if cases.is_empty() {
        return Err(Error::Usage(format!("suite {filter:?} matches no cases")));
    }
    if let Some(path) = &cfg.bernoulli_cache_path {
        if path.exists() {
            table().load_cache(path)?;
        }
    }
    let results: Vec<CaseResult> = cases.par_iter().map(|c| c.execute(cfg)).collect();
    if let Some(path) = &cfg.bernoulli_cache_path {
        table().save_cache(path)?;
    }
    Ok(Report::new(results, cfg.clone()))
}
