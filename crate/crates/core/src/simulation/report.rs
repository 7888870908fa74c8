use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::engine::{ReportRow, SimulationReport};

/// CSV header shared by every report.
pub const CSV_COLUMNS: [&str; 10] = ["table", "loss", "n", "reps", "mean", "var", "se", "mu_os", "bias2", "mse"];

/// Serializes rows as CSV with [`CSV_COLUMNS`]; missing closed-form values
/// are empty fields.
pub fn rows_to_csv<'a, T: Scalar>(rows: impl IntoIterator<Item = &'a ReportRow<T>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut any = false;
    for row in rows {
        w.serialize(row).map_err(|e| Error::Serialization(e.to_string()))?;
        any = true;
    }
    if !any {
        w.write_record(CSV_COLUMNS).map_err(|e| Error::Serialization(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

/// Same rows as a JSON array.
pub fn rows_to_json<'a, T: Scalar>(rows: impl IntoIterator<Item = &'a ReportRow<T>>) -> Result<String> {
    let rows: Vec<&ReportRow<T>> = rows.into_iter().collect();
    to_json(&rows)
}

pub(crate) fn to_json<S: Serialize + ?Sized>(value: &S) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Serialization(e.to_string()))
}

impl<T: Scalar> SimulationReport<T> {
    pub fn to_csv(&self) -> Result<String> {
        rows_to_csv(&self.rows)
    }

    pub fn to_json(&self) -> Result<String> {
        rows_to_json(&self.rows)
    }
}
