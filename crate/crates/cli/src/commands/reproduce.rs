use oos_core::simulation::{reproduce_table_on, LargeN, TableReproduction, STUDY_N_GRID};

use crate::args::{Format, ReproduceArgs};
use crate::error::CliError;
use crate::output::Output;

pub fn run(args: &ReproduceArgs, out: &Output) -> Result<String, CliError> {
    if args.reps < 2 {
        return Err(CliError::Domain(format!("reps must be ≥ 2, got {}", args.reps)));
    }
    let grid = args.n_grid.clone().unwrap_or_else(|| STUDY_N_GRID.to_vec());
    let large_n = if args.full { LargeN::Full } else { LargeN::Capped };
    let t: TableReproduction<f64> = reproduce_table_on(args.table, grid, args.reps, args.seed, large_n)?;
    if let Some(path) = &args.csv {
        std::fs::write(path, t.to_csv()?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(match out.format {
        Format::Text => t.render(out.precision),
        Format::Csv => t.to_csv()?,
        Format::Json => t.to_json()? + "\n",
    })
}
