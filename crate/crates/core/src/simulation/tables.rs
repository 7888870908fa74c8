//! Presets for the three-source simulation study and a driver that runs
//! both losses over the standard size grid.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::LossKind;
use crate::scalar::Scalar;

use super::distribution::{DistributionSpec, Variate};
use super::engine::{run_monte_carlo, SimulationReport};
use super::report::{rows_to_csv, rows_to_json};
use super::scenario::{RepsCap, ScenarioConfig, SourceSpec};

/// Total sizes simulated for every table.
pub const STUDY_N_GRID: [usize; 7] = [100, 200, 300, 500, 700, 1_000, 10_000];

/// Source proportions shared by all tables.
pub const STUDY_PROPORTIONS: [f64; 3] = [0.2, 0.3, 0.5];

/// Replicates used at `n = 10^4` unless [`LargeN::Full`] is requested.
pub const LARGE_N_REPS: usize = 1_000;

/// Treatment of the largest sample size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LargeN {
    /// Cap replicates at [`LARGE_N_REPS`] for `n >= 10^4`.
    #[default]
    Capped,
    /// Use the requested replicate count everywhere.
    Full,
}

/// Source distributions of table `id` (1: normal, 2: uniform,
/// 3: shifted Student t, 4: exponential/gamma).
pub fn table_distributions<T: Scalar>(id: u8) -> Result<[DistributionSpec<T>; 3]> {
    let c = T::lit;
    Ok(match id {
        1 => [
            DistributionSpec::Normal { mean: c(0.0), variance: c(9.0) },
            DistributionSpec::Normal { mean: c(2.0), variance: c(1.0) },
            DistributionSpec::Normal { mean: c(5.0), variance: c(5.0) },
        ],
        2 => [
            DistributionSpec::Uniform { low: c(-1.0), high: c(1.0) },
            DistributionSpec::Uniform { low: c(0.5), high: c(1.5) },
            DistributionSpec::Uniform { low: c(3.0), high: c(7.0) },
        ],
        3 => [
            DistributionSpec::ShiftedStudentT { dof: c(7.0), shift: c(0.0) },
            DistributionSpec::ShiftedStudentT { dof: c(5.0), shift: c(2.0) },
            DistributionSpec::ShiftedStudentT { dof: c(6.0), shift: c(5.0) },
        ],
        4 => [
            DistributionSpec::Exponential { rate: c(1.0) },
            DistributionSpec::Gamma { shape: c(2.0), rate: c(1.0) },
            DistributionSpec::Gamma { shape: c(10.0), rate: c(2.0) },
        ],
        other => return Err(Error::UnknownTable(other)),
    })
}

/// Scenario for table `id` under `loss`, with sources labeled `F1..F3`.
pub fn table_scenario<T: Scalar>(
    id: u8,
    loss: LossKind,
    n_grid: Vec<usize>,
    reps: usize,
    master_seed: u64,
) -> Result<ScenarioConfig<T>> {
    let sources = table_distributions::<T>(id)?
        .into_iter()
        .zip(STUDY_PROPORTIONS)
        .enumerate()
        .map(|(j, (d, p))| SourceSpec::new(format!("F{}", j + 1), d, T::lit(p)))
        .collect();
    Ok(ScenarioConfig::new(id.to_string(), sources, loss, n_grid, reps, master_seed))
}

/// Both losses for one table over [`STUDY_N_GRID`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReproduction<T> {
    pub table: u8,
    pub squared: SimulationReport<T>,
    pub absolute: SimulationReport<T>,
}

/// Runs table `id` for both losses. Both runs share `master_seed`, so they
/// score the same simulated datasets.
pub fn reproduce_table<T: Variate>(id: u8, reps: usize, master_seed: u64, large_n: LargeN) -> Result<TableReproduction<T>> {
    reproduce_table_on(id, STUDY_N_GRID.to_vec(), reps, master_seed, large_n)
}

/// [`reproduce_table`] over a custom size grid.
pub fn reproduce_table_on<T: Variate>(
    id: u8,
    n_grid: Vec<usize>,
    reps: usize,
    master_seed: u64,
    large_n: LargeN,
) -> Result<TableReproduction<T>> {
    let run = |loss| {
        let mut cfg = table_scenario::<T>(id, loss, n_grid.clone(), reps, master_seed)?;
        if large_n == LargeN::Capped {
            cfg.reps_cap = Some(RepsCap { min_n: 10_000, max_reps: LARGE_N_REPS });
        }
        run_monte_carlo(&cfg)
    };
    Ok(TableReproduction { table: id, squared: run(LossKind::Squared)?, absolute: run(LossKind::Absolute)? })
}

impl<T: Scalar> TableReproduction<T> {
    pub fn to_csv(&self) -> Result<String> {
        rows_to_csv(self.squared.rows.iter().chain(&self.absolute.rows))
    }

    pub fn to_json(&self) -> Result<String> {
        rows_to_json(self.squared.rows.iter().chain(&self.absolute.rows))
    }

    /// Fixed-width table: one column per `n`, one block per loss.
    pub fn render(&self, precision: usize) -> String {
        let mut out = String::new();
        let dists = table_distributions::<T>(self.table)
            .map(|d| d.iter().enumerate().map(|(j, d)| format!("F{} ~ {d}", j + 1)).collect::<Vec<_>>().join(", "))
            .unwrap_or_default();
        let _ = writeln!(out, "Table {}: k = 3, p = (0.2, 0.3, 0.5); {dists}", self.table);
        let width = (precision + 8).max(9);
        let ns: Vec<usize> = self.squared.rows.iter().map(|r| r.n).collect();
        let _ = write!(out, "{:<10}{:<8}", "", "n");
        for n in &ns {
            let _ = write!(out, "{n:>width$}");
        }
        out.push('\n');
        for report in [&self.squared, &self.absolute] {
            let mut lines: Vec<(&str, Vec<Option<T>>)> = Vec::new();
            if report.rows.iter().any(|r| r.mu_os.is_some()) {
                lines.push(("mu_os", report.rows.iter().map(|r| r.mu_os).collect()));
            }
            lines.push(("mean", report.rows.iter().map(|r| Some(r.mean)).collect()));
            if report.rows.iter().any(|r| r.bias2.is_some()) {
                lines.push(("bias2", report.rows.iter().map(|r| r.bias2).collect()));
            }
            lines.push(("var", report.rows.iter().map(|r| Some(r.var)).collect()));
            if report.rows.iter().any(|r| r.mse.is_some()) {
                lines.push(("mse", report.rows.iter().map(|r| r.mse).collect()));
            }
            for (i, (name, vals)) in lines.iter().enumerate() {
                let block = if i == 0 { report.loss.as_str() } else { "" };
                let _ = write!(out, "{block:<10}{name:<8}");
                for v in vals {
                    match v {
                        Some(v) if *name == "bias2" && v.abs() < T::lit(1e-3) => {
                            let _ = write!(out, "{:>width$}", format!("{v:.2e}"));
                        }
                        Some(v) => {
                            let _ = write!(out, "{v:>width$.precision$}");
                        }
                        None => {
                            let _ = write!(out, "{:>width$}", "-");
                        }
                    }
                }
                out.push('\n');
            }
        }
        let reps: Vec<String> = self.squared.rows.iter().map(|r| format!("{}: {}", r.n, r.reps)).collect();
        let _ = writeln!(out, "replicates per n: {}", reps.join(", "));
        out
    }
}
