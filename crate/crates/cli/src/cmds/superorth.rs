//! `sqfn superorth` — superorthogonality verification over step-function
//! families, the predicate implication chain, and the marriage sorting map.

use super::{parse_family, require_even_r};
use crate::config::{CliError, Params};
use crate::output::RunResult;
use serde_json::json;
use sqfn_core::tuplecheck::{
    hall_sort, hall_sort_valid, predicate_implications, verify_family_labeled, OrthoClass,
};

pub fn run(op: &str, p: &mut Params, _seed: u64, _jobs: usize) -> Result<RunResult, CliError> {
    match op {
        "verify" => verify(p),
        "implications" => implications(p),
        "hall" => hall(p),
        _ => Err(CliError::Usage(format!(
            "superorth ops: verify, implications, hall (got {op:?})"
        ))),
    }
}

fn verify(p: &mut Params) -> Result<RunResult, CliError> {
    let family_spec = p.str_req("family")?;
    let r = require_even_r(p)? as usize;
    let class = OrthoClass::parse(&p.str_or("class", "type1"))
        .map_err(|e| CliError::BadValue(e.to_string()))?;
    let (family, labels) = parse_family(&family_spec)?;
    let report = verify_family_labeled(&family, &labels, r, &class);
    let pass = report.passed();
    Ok(RunResult::json(&report, pass))
}

fn implications(p: &mut Params) -> Result<RunResult, CliError> {
    let r = require_even_r(p)? as usize;
    let bound = p.u64_or("bound", 4)?;
    if bound.pow(2 * r as u32) > 100_000_000 {
        return Err(CliError::Precondition(
            "bound^(2r) exceeds the enumeration budget".into(),
        ));
    }
    let pass = predicate_implications(r, bound);
    Ok(RunResult::json(
        &json!({ "r": r, "bound": bound, "pass": pass }),
        pass,
    ))
}

fn hall(p: &mut Params) -> Result<RunResult, CliError> {
    let spec = p.str_req("pairs")?;
    let mut pairs = Vec::new();
    for tok in spec.split(',') {
        let (a, b) = tok
            .split_once(':')
            .ok_or_else(|| CliError::BadValue("pairs: a:b,c:d,...".into()))?;
        let a: u64 = a.trim().parse().map_err(|_| CliError::BadValue("bad pair".into()))?;
        let b: u64 = b.trim().parse().map_err(|_| CliError::BadValue("bad pair".into()))?;
        pairs.push((a, b));
    }
    let kappa = hall_sort(&pairs).map_err(|e| CliError::Precondition(e.to_string()))?;
    let valid = hall_sort_valid(&pairs, &kappa);
    Ok(RunResult::json(
        &json!({ "pairs": pairs, "kappa": kappa, "valid": valid }),
        valid,
    ))
}
