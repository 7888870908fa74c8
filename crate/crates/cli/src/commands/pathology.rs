use oos_core::variance_tools::{var_s2_normal_control, var_s2_study, S2StudyRow};

use crate::args::{Format, PathologyArgs};
use crate::error::CliError;
use crate::output::{Output, Table};

fn push_rows(table: &mut Table, study: &str, rows: &[S2StudyRow<f64>]) {
    for r in rows {
        table.push(vec![
            study.into(),
            r.n.into(),
            r.reps.into(),
            r.mean_s2.into(),
            r.expected_s2.into(),
            r.var_s2.into(),
            r.exact_var_s2.into(),
        ]);
    }
}

pub fn run(args: &PathologyArgs, out: &Output) -> Result<String, CliError> {
    let rows = var_s2_study(&args.n_grid, args.reps, args.sigma2, args.c, args.mu, args.seed)?;
    let mut table = Table::new(&["study", "n", "reps", "mean_s2", "expected_s2", "var_s2", "exact_var_s2"]);
    push_rows(&mut table, "pathological", &rows);
    if args.control {
        push_rows(&mut table, "normal", &var_s2_normal_control(&args.n_grid, args.reps, args.seed)?);
    }
    let body = table.render(out)?;
    Ok(match out.format {
        Format::Text => format!(
            "X_j = Y_j + ε, sigma2 = {}, C = {}, mu = {}, seed = {}\n{body}",
            args.sigma2, args.c, args.mu, args.seed
        ),
        _ => body,
    })
}
