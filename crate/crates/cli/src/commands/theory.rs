use oos_core::closed_form::{
    normal_components_squared, normal_oos_absolute, normal_oos_squared, theoretical_variance,
};
use oos_core::{LossKind, NormalParams, Weights};
use serde_json::json;

use crate::args::{Format, TheoryArgs};
use crate::error::CliError;
use crate::output::{self, Cell, Output, Table};

pub fn run(args: &TheoryArgs, out: &Output) -> Result<String, CliError> {
    let k = args.means.len();
    if args.vars.len() != k || args.p.len() != k {
        return Err(CliError::Domain(format!(
            "--means, --vars and --p must have equal lengths (got {k}, {}, {})",
            args.vars.len(),
            args.p.len()
        )));
    }
    let props = Weights::from_weights(args.p.clone())?;
    let params = NormalParams::new(args.means.clone(), args.vars.clone(), props.clone(), args.n)?;
    let mu_os = match args.loss {
        LossKind::Squared => normal_oos_squared(&params),
        LossKind::Absolute => normal_oos_absolute(&params),
    };

    let mut table = Table::new(&["quantity", "index", "value"]);
    table.push(vec!["mu_os".into(), Cell::Empty, mu_os.into()]);
    if args.components {
        if args.loss != LossKind::Squared {
            return Err(CliError::Domain("variance components are available for squared loss only".into()));
        }
        let comps = normal_components_squared(&params)?;
        let variance = theoretical_variance(&comps, &props, args.n)?;
        table.push(vec!["variance".into(), Cell::Empty, variance.into()]);
        for (name, idx, v) in comps.entries() {
            let idx: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            table.push(vec![name.into(), idx.join(",").into(), v.into()]);
        }
    }

    let p = out.precision;
    match out.format {
        Format::Csv => table.to_csv(),
        Format::Json => output::json(&json!({ "loss": args.loss.as_str(), "n": args.n, "rows": table.to_json_value() })),
        Format::Text if !args.components => Ok(format!("mu_os ({} loss, n = {}): {mu_os:.p$}\n", args.loss, args.n)),
        Format::Text => Ok(format!(
            "mu_os ({} loss, n = {}): {mu_os:.p$}\nsources are indexed 1..{k}\n\n{}",
            args.loss,
            args.n,
            Table { columns: table.columns.clone(), rows: table.rows[1..].to_vec() }.to_text(p)
        )),
    }
}
