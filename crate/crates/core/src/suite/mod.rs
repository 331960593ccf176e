//! The verification suite: named checks, run in parallel, merged in order
//! into a versioned JSON report.

mod checks;
pub mod sampling;

use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::gauge::{build_b, GaugeBuilder, GaugeData, HermForm};
use crate::glaoid::{ideal_basis_explicit, Ideal};

pub const REPORT_SCHEMA: &str = "glagr-report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid check pattern {0:?}: {1}")]
    Pattern(String, String),
    #[error("no check matches {0:?}")]
    NoMatch(String),
    #[error("samples must be at least 1")]
    Samples,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    /// Instances per sampled identity.
    pub samples: usize,
    /// Glob patterns; a pattern also selects every check under `pattern.`.
    pub only: Vec<String>,
    /// Flip the sign of one coordinate of the degree-2 ideal basis.
    pub tamper_ideal: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, samples: 50, only: Vec::new(), tamper_ideal: false }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub criterion: u8,
    pub description: String,
    pub status: Status,
    pub instances: Option<usize>,
    pub witness: Value,
    /// Set when a failure is expected and documented.
    pub known_deviation: Option<String>,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema: String,
    pub version: u32,
    pub seed: u64,
    pub samples: usize,
    pub tampered_ideal: bool,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with timing fields zeroed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.runtime_ms = 0.0;
        }
        r
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let note = c.known_deviation.as_deref().map(|d| format!("  [known: {d}]")).unwrap_or_default();
            out.push_str(&format!("{status}  [{}] {:<36} {:>9.1} ms  {}{note}\n", c.criterion, c.name, c.runtime_ms, c.description));
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

/// Outcome of one check.
pub struct Outcome {
    pub passed: bool,
    pub instances: Option<usize>,
    pub witness: Value,
}

impl Outcome {
    pub fn new(passed: bool, witness: Value) -> Self {
        Outcome { passed, instances: None, witness }
    }

    pub fn sampled(passed: bool, instances: usize, witness: Value) -> Self {
        Outcome { passed, instances: Some(instances), witness }
    }
}

pub struct CheckDef {
    pub name: &'static str,
    pub criterion: u8,
    pub description: &'static str,
    pub run: fn(&Context) -> Outcome,
}

/// Failures that are expected and recorded in the project notes.
pub const KNOWN_DEVIATIONS: &[(&str, &str)] = &[(
    "mc.gravity_fiber",
    "the constant fiber at x_mink has H² of rank 16, so the unobstructed recursion does not apply",
)];

pub fn known_deviation(name: &str) -> Option<&'static str> {
    KNOWN_DEVIATIONS.iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
}

/// The degree-2 ideal basis with the sign of its first nonzero coordinate flipped.
pub fn tampered_ideal() -> Ideal {
    let mut basis: Vec<Vec<_>> = ideal_basis_explicit().into_iter().map(|x| x.c).collect();
    let i = basis[0].iter().position(|v| !crate::field::Field::is_zero(v)).expect("nonzero basis vector");
    basis[0][i] = -basis[0][i].clone();
    Ideal::saturate(&basis)
}

/// Shared data, built on first use.
pub struct Context {
    pub config: Config,
    ideal: OnceLock<Ideal>,
    gauge: OnceLock<(GaugeBuilder, GaugeData)>,
    random_gauges: OnceLock<Vec<Result<GaugeData, String>>>,
}

impl Context {
    pub fn new(config: Config) -> Self {
        Context { config, ideal: OnceLock::new(), gauge: OnceLock::new(), random_gauges: OnceLock::new() }
    }

    /// The ideal under test (tampered if configured).
    pub fn ideal(&self) -> &Ideal {
        self.ideal.get_or_init(|| if self.config.tamper_ideal { tampered_ideal() } else { Ideal::standard() })
    }

    /// Gauge builder and the gauge from `h = identity`.
    pub fn gauge(&self) -> &(GaugeBuilder, GaugeData) {
        self.gauge.get_or_init(|| {
            let gb = GaugeBuilder::new().expect("gauge builder");
            let g = gb.build_gauge(&build_b(&HermForm::identity()).expect("identity form")).expect("identity gauge");
            (gb, g)
        })
    }

    /// Gauges from `samples` seeded random positive Hermitian forms.
    pub fn random_gauges(&self) -> &[Result<GaugeData, String>] {
        self.random_gauges.get_or_init(|| {
            let gb = &self.gauge().0;
            (0..self.config.samples)
                .into_par_iter()
                .map(|i| {
                    let h = HermForm::random_positive(self.sub_seed(1000 + i as u64));
                    let b = build_b(&h).map_err(|e| e.to_string())?;
                    gb.build_gauge(&b).map_err(|e| e.to_string())
                })
                .collect()
        })
    }

    pub fn sub_seed(&self, k: u64) -> u64 {
        self.config.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k)
    }
}

pub fn registry() -> Vec<CheckDef> {
    checks::all()
}

fn selected(defs: Vec<CheckDef>, only: &[String]) -> Result<Vec<CheckDef>, ConfigError> {
    if only.is_empty() {
        return Ok(defs);
    }
    let mut pats = Vec::new();
    for p in only {
        let pat = glob::Pattern::new(p).map_err(|e| ConfigError::Pattern(p.clone(), e.to_string()))?;
        pats.push((p.clone(), pat));
    }
    let matches = |name: &str, (raw, pat): &(String, glob::Pattern)| pat.matches(name) || name.starts_with(&format!("{raw}."));
    for p in &pats {
        if !defs.iter().any(|d| matches(d.name, p)) {
            return Err(ConfigError::NoMatch(p.0.clone()));
        }
    }
    Ok(defs.into_iter().filter(|d| pats.iter().any(|p| matches(d.name, p))).collect())
}

pub fn run_suite(config: Config) -> Result<Report, ConfigError> {
    if config.samples == 0 {
        return Err(ConfigError::Samples);
    }
    let defs = selected(registry(), &config.only)?;
    let ctx = Context::new(config);
    let checks: Vec<CheckResult> = defs
        .par_iter()
        .map(|d| {
            let start = Instant::now();
            let out = (d.run)(&ctx);
            CheckResult {
                name: d.name.to_string(),
                criterion: d.criterion,
                description: d.description.to_string(),
                status: if out.passed { Status::Pass } else { Status::Fail },
                instances: out.instances,
                witness: out.witness,
                known_deviation: known_deviation(d.name).map(str::to_string),
                runtime_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect();
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    let failed = checks.len() - passed;
    Ok(Report {
        schema: REPORT_SCHEMA.to_string(),
        version: REPORT_VERSION,
        seed: ctx.config.seed,
        samples: ctx.config.samples,
        tampered_ideal: ctx.config.tamper_ideal,
        checks,
        passed,
        failed,
    })
}

#[cfg(test)]
mod tests;
