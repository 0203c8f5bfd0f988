//! `sqfn` — command-line front end for the square-function verification
//! toolkit.
//!
//! Invocation: `sqfn <module> <op> [--key value]...` with modules
//! superorth, norms, zmodn, iw, burgess, vino. Global flags: `--seed`
//! (default 0), `--out PATH`, `--format json|csv`, `--jobs N`,
//! `--config FILE`.
//!
//! Exit codes: 0 when every asserted property passed, 2 on precondition
//! or configuration rejection, 1 on assertion failure or internal error.
//! Reports embed the artifact version, config hash, and resolved config;
//! identical config and seed produce byte-identical report files (wall
//! clock goes to stderr only).

mod cmds;
mod config;
mod output;

use config::{CliError, Params};
use output::{Output, RunResult};
use sqfn_core::report::{render_json, ReportHeader};
use std::time::Instant;

fn main() {
    let start = Instant::now();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = match run(&args) {
        Ok((result, header, out, tag)) => {
            let rendered = match &result.output {
                Output::Json(v) => render_json(&header, v),
                Output::Csv(t) => t.render(&header),
            };
            let io_ok = match &out {
                Some(path) => std::fs::write(path, &rendered).map_err(|e| {
                    eprintln!("sqfn: cannot write {path}: {e}");
                }),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            };
            eprintln!(
                "# sqfn {tag}: pass={} runtime_ms={}",
                result.pass,
                start.elapsed().as_millis()
            );
            match (io_ok, result.pass) {
                (Err(()), _) => 1,
                (Ok(()), true) => 0,
                (Ok(()), false) => 1,
            }
        }
        Err(e) => {
            eprintln!("sqfn: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

type RunOutput = (RunResult, ReportHeader, Option<String>, String);

fn run(args: &[String]) -> Result<RunOutput, CliError> {
    let raw = config::parse_args(args)?;
    let mut params = Params::new(&raw);
    let seed = params.u64_or("seed", 0)?;
    let jobs = params.u64_or("jobs", 1)? as usize;
    let out = match params.str_or_unrecorded("out", "-").as_str() {
        "-" => None,
        path => Some(path.to_string()),
    };
    let format = params.str_or("format", "auto");
    let result = match raw.module.as_str() {
        "superorth" => cmds::superorth::run(&raw.op, &mut params, seed, jobs),
        "norms" => cmds::norms::run(&raw.op, &mut params, seed, jobs),
        "zmodn" => cmds::zmodn::run(&raw.op, &mut params, seed, jobs),
        "iw" => cmds::iw::run(&raw.op, &mut params, seed, jobs),
        "burgess" => cmds::burgess::run(&raw.op, &mut params, seed, jobs),
        "vino" => cmds::vino::run(&raw.op, &mut params, seed, jobs),
        other => Err(CliError::Usage(format!(
            "modules: superorth, norms, zmodn, iw, burgess, vino (got {other:?})"
        ))),
    }?;
    params.finish()?;
    let result = convert_format(result, &format)?;
    let header = ReportHeader::new(seed, params.resolved());
    let tag = format!("{} {}", raw.module, raw.op);
    Ok((result, header, out, tag))
}

/// `--format` can force json for a CSV-producing op (rows become arrays);
/// csv output of a structured report is not supported.
fn convert_format(result: RunResult, format: &str) -> Result<RunResult, CliError> {
    let pass = result.pass;
    match (format, result.output) {
        ("auto", out) | ("json", out @ Output::Json(_)) | ("csv", out @ Output::Csv(_)) => {
            Ok(RunResult { output: out, pass })
        }
        ("json", Output::Csv(t)) => Ok(RunResult {
            output: Output::Json(serde_json::json!({
                "columns": t.columns,
                "rows": t.rows,
            })),
            pass,
        }),
        ("csv", Output::Json(_)) => Err(CliError::Precondition(
            "this op emits a structured report; csv is not available".into(),
        )),
        (other, _) => Err(CliError::BadValue(format!(
            "--format: {other:?} (expected auto, json, or csv)"
        ))),
    }
}
