use oos_core::simulation::run_monte_carlo;

use crate::args::{Format, SimulateArgs};
use crate::config;
use crate::error::CliError;
use crate::output::{Cell, Output, Table};

pub fn run(args: &SimulateArgs, out: &Output) -> Result<String, CliError> {
    let src = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Usage(format!("{}: {e}", args.config.display())))?;
    let (scenario, warnings) = config::parse(&src, &args.config.display().to_string())?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let report = run_monte_carlo(&scenario)?;
    match out.format {
        Format::Csv => Ok(report.to_csv()?),
        Format::Json => Ok(report.to_json()? + "\n"),
        Format::Text => {
            let mut t = Table::new(&["n", "reps", "mean", "var", "se", "mu_os", "bias2", "mse"]);
            for r in &report.rows {
                t.push(vec![
                    r.n.into(),
                    r.reps.into(),
                    r.mean.into(),
                    r.var.into(),
                    r.se.into(),
                    r.mu_os.into(),
                    r.bias2.into(),
                    Cell::from(r.mse),
                ]);
            }
            let labels: Vec<String> = scenario
                .sources
                .iter()
                .map(|s| format!("{} ~ {} (p = {})", s.label, s.distribution, s.proportion))
                .collect();
            Ok(format!(
                "{}: {} loss, seed {}\n{}\n\n{}",
                report.name,
                report.loss,
                scenario.master_seed,
                labels.join("\n"),
                t.to_text(out.precision)
            ))
        }
    }
}
