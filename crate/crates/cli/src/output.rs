//! What a command run produces: a JSON body or a CSV table, plus the
//! aggregate pass flag that drives the exit code.

use sqfn_core::report::CsvTable;

pub enum Output {
    Json(serde_json::Value),
    Csv(CsvTable),
}

pub struct RunResult {
    pub output: Output,
    pub pass: bool,
}

impl RunResult {
    pub fn json<T: serde::Serialize>(body: &T, pass: bool) -> Self {
        RunResult {
            output: Output::Json(serde_json::to_value(body).expect("serializable report")),
            pass,
        }
    }

    pub fn csv(table: CsvTable, pass: bool) -> Self {
        RunResult {
            output: Output::Csv(table),
            pass,
        }
    }
}

/// Render an f64 for CSV cells.
pub fn cell_f64(x: f64) -> String {
    sqfn_core::report::fmt_f64(x)
}
