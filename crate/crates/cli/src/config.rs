//! Declarative scenario files.
//!
//! ```toml
//! [run]
//! name = "normal-three"
//! loss = "squared"
//! n_grid = [100, 200]
//! reps = 2000
//! seed = 42
//!
//! [sources]
//! F1 = { dist = "normal", mean = 0.0, variance = 9.0, p = 0.2 }
//! F2 = { dist = "uniform", low = 0.5, high = 1.5, p = 0.3 }
//! F3 = { dist = "gamma", shape = 10.0, rate = 2.0, p = 0.5 }
//! ```

use std::collections::BTreeMap;
use std::ops::Range;

use oos_core::simulation::{Allocation, DistributionSpec, SourceSpec};
use oos_core::{LossKind, RuleKind, Scenario};
use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    run: RunSection,
    sources: Spanned<BTreeMap<String, Spanned<SourceEntry>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    #[serde(default = "default_name")]
    name: String,
    loss: LossKind,
    #[serde(default)]
    rule: RuleKind,
    n_grid: Vec<usize>,
    reps: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    allocation: Allocation,
}

fn default_name() -> String {
    "scenario".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceEntry {
    dist: String,
    p: f64,
    mean: Option<f64>,
    variance: Option<f64>,
    low: Option<f64>,
    high: Option<f64>,
    dof: Option<f64>,
    shift: Option<f64>,
    shape: Option<f64>,
    rate: Option<f64>,
}

fn line_of(src: &str, span: Range<usize>) -> usize {
    src[..span.start.min(src.len())].matches('\n').count() + 1
}

impl SourceEntry {
    fn distribution(&self) -> Result<DistributionSpec<f64>, String> {
        let given = [
            ("mean", self.mean),
            ("variance", self.variance),
            ("low", self.low),
            ("high", self.high),
            ("dof", self.dof),
            ("shift", self.shift),
            ("shape", self.shape),
            ("rate", self.rate),
        ];
        let wanted: &[&str] = match self.dist.as_str() {
            "normal" => &["mean", "variance"],
            "uniform" => &["low", "high"],
            "shifted_student_t" => &["dof", "shift"],
            "gamma" => &["shape", "rate"],
            "exponential" => &["rate"],
            other => {
                return Err(format!(
                    "unknown dist `{other}` (expected normal, uniform, shifted_student_t, gamma or exponential)"
                ))
            }
        };
        for (key, v) in given {
            match (wanted.contains(&key), v) {
                (true, None) => return Err(format!("{} needs `{key}`", self.dist)),
                (false, Some(_)) => return Err(format!("`{key}` does not apply to {}", self.dist)),
                _ => {}
            }
        }
        let g = |v: Option<f64>| v.expect("checked above");
        Ok(match self.dist.as_str() {
            "normal" => DistributionSpec::Normal { mean: g(self.mean), variance: g(self.variance) },
            "uniform" => DistributionSpec::Uniform { low: g(self.low), high: g(self.high) },
            "shifted_student_t" => DistributionSpec::ShiftedStudentT { dof: g(self.dof), shift: g(self.shift) },
            "gamma" => DistributionSpec::Gamma { shape: g(self.shape), rate: g(self.rate) },
            _ => DistributionSpec::Exponential { rate: g(self.rate) },
        })
    }
}

/// Parses a scenario file. Syntax errors and unknown keys are usage
/// errors; the returned scenario still needs `validate`.
pub fn parse(src: &str, origin: &str) -> Result<(Scenario, Vec<String>), CliError> {
    let file: ConfigFile = toml::from_str(src).map_err(|e| CliError::Usage(format!("{origin}: {e}")))?;
    let mut sources = Vec::new();
    let mut warnings = Vec::new();
    for (label, entry) in file.sources.get_ref() {
        let line = line_of(src, entry.span());
        let dist = entry
            .get_ref()
            .distribution()
            .map_err(|m| CliError::Usage(format!("{origin}: line {line}: source {label}: {m}")))?;
        for w in dist.warnings() {
            warnings.push(format!("line {line}: source {label}: {w}"));
        }
        sources.push(SourceSpec::new(label.as_str(), dist, entry.get_ref().p));
    }
    if sources.len() < 2 {
        let line = line_of(src, file.sources.span());
        return Err(CliError::Domain(format!(
            "{origin}: line {line}: at least two sources required, found {}",
            sources.len()
        )));
    }
    let run = file.run;
    let mut scenario = Scenario::new(run.name, sources, run.loss, run.n_grid, run.reps, run.seed);
    scenario.rule = run.rule;
    scenario.allocation = run.allocation;
    Ok((scenario, warnings))
}
