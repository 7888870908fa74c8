//! Seeded Monte Carlo engine, distribution registry and study presets.

mod distribution;
mod engine;
mod report;
mod scenario;
mod seed;
mod tables;

pub use distribution::{DistributionSpec, Sampler, Variate};
pub use engine::{closed_form_mu_os, replicate_estimates, run_monte_carlo, ReportRow, SimulationReport};
pub use report::{rows_to_csv, rows_to_json, CSV_COLUMNS};
pub use scenario::{allocate, sample_dataset, sample_with_sizes, Allocation, RepsCap, ScenarioConfig, SourceSpec};
pub use seed::{replicate_rng, stream_rng};
pub use tables::{
    reproduce_table, reproduce_table_on, table_distributions, table_scenario, LargeN, TableReproduction,
    LARGE_N_REPS, STUDY_N_GRID, STUDY_PROPORTIONS,
};
