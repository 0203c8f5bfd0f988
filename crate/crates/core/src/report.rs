//! Report plumbing: serialization helpers, the common report header, and
//! the CSV dialect used by sweeps (comma-separated, `.` decimal point, no
//! quoting; all fields are numeric or bare identifiers).

use crate::dyadic::Rat;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// Serialize an exact rational as a `p/q` string.
pub fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// Serialize an exact 128-bit count as a decimal string (JSON numbers cap
/// at 64 bits in some consumers).
pub fn ser_u128<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// FNV-1a over the canonical `key=value` lines of a resolved config.
pub fn config_hash(config: &BTreeMap<String, String>) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for (k, v) in config {
        for b in k.bytes().chain(*b"=").chain(v.bytes()).chain(*b"\n") {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    format!("{h:016x}")
}

/// Header embedded in every report: artifact version, hash of the resolved
/// config, the seed, and the resolved config itself. Wall-clock runtime is
/// deliberately excluded so that identical runs emit identical bytes; the
/// CLI logs runtime to stderr instead.
#[derive(Clone, Debug, Serialize)]
pub struct ReportHeader {
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
}

impl ReportHeader {
    pub fn new(seed: u64, config: BTreeMap<String, String>) -> Self {
        ReportHeader {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash: config_hash(&config),
            seed,
            config,
        }
    }
}

/// Minimal CSV table: fixed column set, rows appended in order.
#[derive(Clone, Debug)]
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(columns: &[&str]) -> Self {
        CsvTable {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Render with `# key=value` header comment lines for the config.
    pub fn render(&self, header: &ReportHeader) -> String {
        let mut out = String::new();
        out.push_str(&format!("# version={}\n", header.version));
        out.push_str(&format!("# config_hash={}\n", header.config_hash));
        out.push_str(&format!("# seed={}\n", header.seed));
        for (k, v) in &header.config {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// A JSON report body wrapped with the common header.
pub fn render_json<T: Serialize>(header: &ReportHeader, body: &T) -> String {
    #[derive(Serialize)]
    struct Wrapper<'a, T> {
        header: &'a ReportHeader,
        report: &'a T,
    }
    let mut s = serde_json::to_string_pretty(&Wrapper { header, report: body })
        .expect("report serialization cannot fail");
    s.push('\n');
    s
}

/// Format an f64 for reports: shortest round-trip representation, which is
/// deterministic for identical inputs.
pub fn fmt_f64(x: f64) -> String {
    let mut buf = ryu_format(x);
    if !buf.contains('.') && !buf.contains('e') && !buf.contains("inf") && !buf.contains("nan") {
        buf.push_str(".0");
    }
    buf
}

fn ryu_format(x: f64) -> String {
    // std's Display for f64 is already shortest-round-trip since Rust 1.0
    // used Grisu; format! is deterministic for a given bit pattern.
    format!("{x}")
}
