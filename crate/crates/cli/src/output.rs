//! CSV writers; column layouts are listed in `docs/formats.md`.

use hyperkernel::json::format_f64;
use hyperkernel::verify::VerifyReport;
use hyperkernel::CoefTable;
use serde::Serialize;

use crate::CliError;

#[derive(Serialize)]
struct ReportRow<'a> {
    check_id: &'a str,
    n: usize,
    alpha: String,
    beta: String,
    p: String,
    passed: bool,
    series: &'a str,
    abscissa: String,
    ordinate: String,
}

#[derive(Serialize)]
struct CoefRow {
    m: usize,
    c_exact: String,
    c_asymptotic: String,
}

fn optional(value: Option<f64>) -> String {
    value.map(format_f64).unwrap_or_default()
}

fn finish(writer: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = writer.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Runtime(format!("csv: {e}"))
}

/// One row per grid point of every report.
pub fn reports_csv(reports: &[VerifyReport]) -> Result<String, CliError> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    let mut wrote = false;
    for report in reports {
        for row in &report.rows {
            writer
                .serialize(ReportRow {
                    check_id: &report.check_id,
                    n: report.params.n,
                    alpha: format_f64(report.params.alpha),
                    beta: optional(report.params.beta),
                    p: optional(report.params.p),
                    passed: report.passed,
                    series: &row.series,
                    abscissa: format_f64(row.abscissa),
                    ordinate: format_f64(row.ordinate),
                })
                .map_err(csv_error)?;
            wrote = true;
        }
    }
    if !wrote {
        writer
            .write_record(["check_id", "n", "alpha", "beta", "p", "passed", "series", "abscissa", "ordinate"])
            .map_err(csv_error)?;
    }
    finish(writer)
}

/// `m, c_exact, c_asymptotic` with the asymptotic value at full order (empty at `m = 0`).
pub fn coef_csv(table: &CoefTable) -> Result<String, CliError> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    for (m, &c) in table.c_exact.iter().enumerate() {
        let asym = if m == 0 { String::new() } else { format_f64(table.asymptotic(m, table.order)?) };
        writer.serialize(CoefRow { m, c_exact: format_f64(c), c_asymptotic: asym }).map_err(csv_error)?;
    }
    finish(writer)
}
