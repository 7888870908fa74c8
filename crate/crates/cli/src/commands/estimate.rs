use std::path::Path;

use oos_core::variance_tools::bootstrap_variance;
use oos_core::{oos_estimate, Dataset, SourceLabel};
use serde::Deserialize;
use serde_json::json;

use crate::args::{EstimateArgs, Format};
use crate::error::CliError;
use crate::output::{self, Cell, Output, Table};

#[derive(Debug, Deserialize)]
struct Record {
    source: String,
    value: f64,
}

pub fn read_dataset(path: &Path) -> Result<Dataset, CliError> {
    let bad = |e: &dyn std::fmt::Display| CliError::Usage(format!("{}: {e}", path.display()));
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(|e| bad(&e))?;
    let headers = reader.headers().map_err(|e| bad(&e))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["source", "value"] {
        return Err(bad(&"header must be `source,value`"));
    }
    let mut records = Vec::new();
    for row in reader.deserialize::<Record>() {
        let r = row.map_err(|e| bad(&e))?;
        records.push((SourceLabel::new(r.source), r.value));
    }
    Ok(Dataset::from_records(records)?)
}

pub fn run(args: &EstimateArgs, out: &Output) -> Result<String, CliError> {
    let ds = read_dataset(&args.data)?;
    let est = oos_estimate(&ds, &args.rule, &args.loss)?;
    let boot = args
        .bootstrap
        .map(|b| bootstrap_variance(&ds, &args.rule, &args.loss, b, args.seed))
        .transpose()?;
    let labels: Vec<&str> = ds.labels().iter().map(SourceLabel::as_str).collect();

    let mut table = Table::new(&["quantity", "source", "train", "value"]);
    table.push(vec!["mu_os_hat".into(), Cell::Empty, Cell::Empty, est.total.into()]);
    for (j, label) in labels.iter().enumerate() {
        table.push(vec!["per_source".into(), (*label).into(), Cell::Empty, est.per_source[j].into()]);
    }
    for (j, target) in labels.iter().enumerate() {
        for (l, train) in labels.iter().enumerate().filter(|&(l, _)| l != j) {
            table.push(vec!["pairwise".into(), (*target).into(), (*train).into(), est.pairwise.get(j, l).into()]);
        }
    }
    if let Some(v) = boot {
        table.push(vec!["bootstrap_var".into(), Cell::Empty, Cell::Empty, v.into()]);
    }

    match out.format {
        Format::Csv => table.to_csv(),
        Format::Json => output::json(&json!({
            "loss": args.loss.as_str(),
            "rule": args.rule.as_str(),
            "sources": labels.iter().zip(ds.sizes()).map(|(l, s)| json!({"source": l, "n": s})).collect::<Vec<_>>(),
            "rows": table.to_json_value(),
        })),
        Format::Text => Ok(text(args, &ds, &labels, &est, boot, out.precision)),
    }
}

fn text(
    args: &EstimateArgs,
    ds: &Dataset,
    labels: &[&str],
    est: &oos_core::Estimate,
    boot: Option<f64>,
    p: usize,
) -> String {
    let mut s = String::new();
    let sizes: Vec<String> = labels.iter().zip(ds.sizes()).map(|(l, n)| format!("{l} ({n})")).collect();
    s += &format!("sources: {}\nloss: {}, rule: {}\n", sizes.join(", "), args.loss, args.rule);
    s += &format!("mu_os_hat: {:.p$}\n", est.total);
    if let (Some(v), Some(b)) = (boot, args.bootstrap) {
        s += &format!("bootstrap variance (B = {b}, seed = {}): {v:.p$}\n", args.seed);
    }
    s += "\nper-source error\n";
    let mut per = Table::new(&["source", "error"]);
    for (j, l) in labels.iter().enumerate() {
        per.push(vec![(*l).into(), est.per_source[j].into()]);
    }
    s += &per.to_text(p);
    s += "\npairwise error (row: target source, column: training source)\n";
    let mut cols = vec![""];
    cols.extend(labels);
    let mut pair = Table::new(&cols);
    for (j, l) in labels.iter().enumerate() {
        let mut row: Vec<Cell> = vec![(*l).into()];
        row.extend((0..labels.len()).map(|c| Cell::from(est.pairwise.get(j, c))));
        pair.push(row);
    }
    s += &pair.to_text(p);
    s
}
