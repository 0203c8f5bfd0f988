//! Argument and config-file handling.
//!
//! Invocation shape: `sqfn <module> <op> [--key value]...`. A `--config
//! FILE` of `key = value` lines (with `#` comments) supplies defaults that
//! flags override. Every run resolves to a flat key-value map; getters
//! record the value actually used (given or default) so the report header
//! embeds the full resolved config, and any key left unconsumed is an
//! error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    UnknownKey(String),
    BadValue(String),
    Precondition(String),
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage: {s}"),
            CliError::UnknownKey(s) => write!(f, "unknown key: {s}"),
            CliError::BadValue(s) => write!(f, "bad value: {s}"),
            CliError::Precondition(s) => write!(f, "precondition: {s}"),
            CliError::Internal(s) => write!(f, "internal: {s}"),
        }
    }
}

impl CliError {
    /// 2 for configuration/precondition rejections, 1 for internal errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            _ => 2,
        }
    }
}

pub struct RawArgs {
    pub module: String,
    pub op: String,
    pub kv: BTreeMap<String, String>,
}

pub fn parse_args(args: &[String]) -> Result<RawArgs, CliError> {
    if args.len() < 2 {
        return Err(CliError::Usage(
            "sqfn <module> <op> [--key value]...".into(),
        ));
    }
    let module = args[0].clone();
    let op = args[1].clone();
    let mut kv = BTreeMap::new();
    let mut i = 2;
    while i < args.len() {
        let tok = &args[i];
        let Some(stripped) = tok.strip_prefix("--") else {
            return Err(CliError::Usage(format!("expected --key, got {tok:?}")));
        };
        let (key, val) = if let Some((k, v)) = stripped.split_once('=') {
            (k.to_string(), v.to_string())
        } else {
            i += 1;
            let Some(v) = args.get(i) else {
                return Err(CliError::Usage(format!("missing value for --{stripped}")));
            };
            (stripped.to_string(), v.clone())
        };
        // Keys are case-insensitive (--H and --h name the same parameter).
        kv.insert(key.to_ascii_lowercase(), val);
        i += 1;
    }
    // Config file supplies defaults; flags win.
    if let Some(path) = kv.remove("config") {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::BadValue(format!("config {path}: {e}")))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::BadValue(format!(
                    "config {path}:{}: expected key = value",
                    lineno + 1
                )));
            };
            kv.entry(k.trim().to_ascii_lowercase())
                .or_insert_with(|| v.trim().to_string());
        }
    }
    Ok(RawArgs { module, op, kv })
}

/// Key-value parameter map with consumption tracking and typed getters.
pub struct Params {
    map: BTreeMap<String, String>,
    used: BTreeSet<String>,
    resolved: BTreeMap<String, String>,
}

impl Params {
    pub fn new(raw: &RawArgs) -> Self {
        let mut resolved = BTreeMap::new();
        resolved.insert("module".into(), raw.module.clone());
        resolved.insert("op".into(), raw.op.clone());
        Params {
            map: raw.kv.clone(),
            used: BTreeSet::new(),
            resolved,
        }
    }

    fn raw(&mut self, key: &str) -> Option<String> {
        let v = self.map.get(key).cloned();
        if v.is_some() {
            self.used.insert(key.to_string());
        }
        v
    }

    pub fn str_or(&mut self, key: &str, default: &str) -> String {
        let v = self.raw(key).unwrap_or_else(|| default.to_string());
        self.resolved.insert(key.to_string(), v.clone());
        v
    }

    /// Like [`Self::str_or`] but excluded from the resolved config: used
    /// for `--out`, which names the report's destination rather than the
    /// experiment, so identical runs stay byte-identical across paths.
    pub fn str_or_unrecorded(&mut self, key: &str, default: &str) -> String {
        self.raw(key).unwrap_or_else(|| default.to_string())
    }

    pub fn str_req(&mut self, key: &str) -> Result<String, CliError> {
        let v = self
            .raw(key)
            .ok_or_else(|| CliError::Usage(format!("missing required --{key}")))?;
        self.resolved.insert(key.to_string(), v.clone());
        Ok(v)
    }

    pub fn u64_or(&mut self, key: &str, default: u64) -> Result<u64, CliError> {
        self.str_or(key, &default.to_string())
            .parse()
            .map_err(|_| CliError::BadValue(format!("--{key} expects an integer")))
    }

    pub fn u64_req(&mut self, key: &str) -> Result<u64, CliError> {
        self.str_req(key)?
            .parse()
            .map_err(|_| CliError::BadValue(format!("--{key} expects an integer")))
    }

    pub fn f64_or(&mut self, key: &str, default: f64) -> Result<f64, CliError> {
        parse_f64(&self.str_or(key, &format!("{default}")))
            .ok_or_else(|| CliError::BadValue(format!("--{key} expects a number")))
    }

    /// Comma-separated integer list; an empty string is an empty grid.
    pub fn u64_list(&mut self, key: &str, default: &str) -> Result<Vec<u64>, CliError> {
        let s = self.str_or(key, default);
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| CliError::BadValue(format!("--{key}: bad integer {t:?}")))
            })
            .collect()
    }

    /// Reject any key that no getter consumed.
    pub fn finish(&self) -> Result<(), CliError> {
        for k in self.map.keys() {
            if !self.used.contains(k) {
                return Err(CliError::UnknownKey(k.clone()));
            }
        }
        Ok(())
    }

    /// The fully resolved config (defaults included) for the report header.
    pub fn resolved(&self) -> BTreeMap<String, String> {
        self.resolved.clone()
    }
}

/// Accept plain floats and `p/q` rationals.
pub fn parse_f64(s: &str) -> Option<f64> {
    if let Some((n, d)) = s.split_once('/') {
        let n: f64 = n.trim().parse().ok()?;
        let d: f64 = d.trim().parse().ok()?;
        if d == 0.0 {
            return None;
        }
        return Some(n / d);
    }
    s.trim().parse().ok()
}

/// Split contiguous index chunks for `--jobs`: map each chunk on its own
/// thread and concatenate in order, so parallelism never reorders output.
pub fn parallel_map<T, R, F>(jobs: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    let jobs = jobs.max(1);
    if jobs == 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let mut chunks: Vec<Vec<T>> = Vec::new();
    let mut it = items.into_iter();
    loop {
        let c: Vec<T> = it.by_ref().take(chunk).collect();
        if c.is_empty() {
            break;
        }
        chunks.push(c);
    }
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|c| scope.spawn(move || c.into_iter().map(f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
