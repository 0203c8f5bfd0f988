//! `sqfn norms` — the exact inequality suite and its seeded sweeps.
//! Sweep CSVs carry (input_id, p, lhs_pow, rhs_pow, constant, pass).

use super::{parse_family, parse_rationals, require_even_r};
use crate::config::{CliError, Params};
use crate::output::RunResult;
use serde_json::json;
use sqfn_core::corpus;
use sqfn_core::dyadic::fmt_rat;
use sqfn_core::norms::{
    direct_check, khintchine_check, menchov_rademacher_check, nonconcentration_check,
    paley_ratio, type1star_sandwich, NormReport,
};
use sqfn_core::report::CsvTable;
use sqfn_core::rng::SplitMix64;

pub fn run(op: &str, p: &mut Params, seed: u64, _jobs: usize) -> Result<RunResult, CliError> {
    match op {
        "direct" => direct(p),
        "khintchine" => khintchine(p),
        "khintchine-sweep" => khintchine_sweep(p, seed),
        "noncon-sweep" => noncon_sweep(p, seed),
        "mr-sweep" => mr_sweep(p, seed),
        "sandwich-sweep" => sandwich_sweep(p, seed),
        "paley-sweep" => paley_sweep(p, seed),
        _ => Err(CliError::Usage(format!(
            "norms ops: direct, khintchine, khintchine-sweep, noncon-sweep, mr-sweep, sandwich-sweep, paley-sweep (got {op:?})"
        ))),
    }
}

const SWEEP_COLUMNS: [&str; 6] = ["input_id", "p", "lhs_pow", "rhs_pow", "constant", "pass"];

fn push_norm_row(table: &mut CsvTable, id: usize, rep: &NormReport) {
    table.push(vec![
        id.to_string(),
        rep.p.to_string(),
        fmt_rat(&rep.lhs_pow),
        fmt_rat(&rep.rhs_pow),
        fmt_rat(&rep.ratio_bound),
        rep.pass.to_string(),
    ]);
}

fn direct(p: &mut Params) -> Result<RunResult, CliError> {
    let family_spec = p.str_req("family")?;
    let r = require_even_r(p)?;
    let (family, _) = parse_family(&family_spec)?;
    let rep = direct_check(&family, r);
    let pass = rep.pass;
    Ok(RunResult::json(&rep, pass))
}

fn khintchine(p: &mut Params) -> Result<RunResult, CliError> {
    let coeffs = parse_rationals(&p.str_req("coeffs")?)?;
    let r = require_even_r(p)?;
    if coeffs.len() > 16 {
        return Err(CliError::Precondition("at most 16 coefficients".into()));
    }
    let rep = khintchine_check(&coeffs, r);
    let pass = rep.passed();
    Ok(RunResult::json(&rep, pass))
}

fn khintchine_sweep(p: &mut Params, seed: u64) -> Result<RunResult, CliError> {
    let count = p.u64_or("count", 200)? as usize;
    let len = p.u64_or("len", 6)? as usize;
    let r = require_even_r(p)?;
    if len > 12 {
        return Err(CliError::Precondition("len capped at 12".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut table = CsvTable::new(&SWEEP_COLUMNS);
    let mut all = true;
    for id in 0..count {
        let coeffs = corpus::random_coeffs(1 + rng.below(len as u64) as usize, 12, 8, &mut rng);
        let rep = khintchine_check(&coeffs, r);
        all &= rep.passed();
        push_norm_row(&mut table, id, &rep.norm);
    }
    Ok(RunResult::csv(table, all))
}

fn noncon_sweep(p: &mut Params, seed: u64) -> Result<RunResult, CliError> {
    let count = p.u64_or("count", 1000)? as usize;
    let len = p.u64_or("len", 10)? as usize;
    let r = require_even_r(p)?;
    let mut rng = SplitMix64::new(seed);
    let mut table = CsvTable::new(&["input_id", "r", "len", "pass"]);
    let mut all = true;
    for id in 0..count {
        let a: Vec<_> = (0..1 + rng.below(len as u64))
            .map(|_| rng.rational_nonneg(16, 16))
            .collect();
        let pass = nonconcentration_check(&a, r)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        all &= pass;
        table.push(vec![
            id.to_string(),
            r.to_string(),
            a.len().to_string(),
            pass.to_string(),
        ]);
    }
    Ok(RunResult::csv(table, all))
}

fn mr_sweep(p: &mut Params, seed: u64) -> Result<RunResult, CliError> {
    let count = p.u64_or("count", 1000)? as usize;
    let t = p.u64_or("t", 3)? as u32;
    let pp = p.u64_or("p", 4)? as u32;
    if t > 8 {
        return Err(CliError::Precondition("t capped at 8".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut table = CsvTable::new(&["input_id", "t", "p", "pass"]);
    let mut all = true;
    for id in 0..count {
        let b: Vec<_> = (0..(1usize << t) + 1).map(|_| rng.rational(20, 4)).collect();
        let pass = menchov_rademacher_check(&b, t, pp)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        all &= pass;
        table.push(vec![
            id.to_string(),
            t.to_string(),
            pp.to_string(),
            pass.to_string(),
        ]);
    }
    Ok(RunResult::csv(table, all))
}

fn sandwich_sweep(p: &mut Params, seed: u64) -> Result<RunResult, CliError> {
    let count = p.u64_or("count", 1000)? as usize;
    let r = require_even_r(p)?;
    let level = p.u64_or("level", 4)? as u32;
    let parts = p.u64_or("parts", 4)? as usize;
    if level > 8 || parts > 1 << level {
        return Err(CliError::Precondition("level <= 8 and parts <= 2^level".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut table = CsvTable::new(&SWEEP_COLUMNS);
    let mut all = true;
    for id in 0..count {
        let fam = corpus::disjoint_family(level, parts, 8, 4, &mut rng);
        let rep =
            type1star_sandwich(&fam, r).map_err(|e| CliError::Precondition(e.to_string()))?;
        all &= rep.pass;
        table.push(vec![
            id.to_string(),
            rep.p.to_string(),
            fmt_rat(&rep.middle_pow),
            fmt_rat(&rep.upper_pow),
            fmt_rat(&rep.factor),
            rep.pass.to_string(),
        ]);
    }
    Ok(RunResult::csv(table, all))
}

fn paley_sweep(p: &mut Params, seed: u64) -> Result<RunResult, CliError> {
    let count = p.u64_or("count", 50)? as usize;
    let level = p.u64_or("level", 8)? as u32;
    let pp = p.u64_or("p", 4)? as u32;
    if level > 8 {
        return Err(CliError::Precondition("level capped at 8".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut table = CsvTable::new(&[
        "input_id",
        "p",
        "sq_pow",
        "f_pow",
        "ratio_direct_pow",
        "ratio_converse_pow",
    ]);
    let mut max_direct = 0.0f64;
    let mut max_converse = 0.0f64;
    for id in 0..count {
        let f = corpus::random_step(level, 16, 8, &mut rng);
        let rep = paley_ratio(&f, pp).map_err(|e| CliError::Precondition(e.to_string()))?;
        let rd = rep.ratio_direct_pow.unwrap_or(0.0);
        let rc = rep.ratio_converse_pow.unwrap_or(0.0);
        max_direct = max_direct.max(rd);
        max_converse = max_converse.max(rc);
        table.push(vec![
            id.to_string(),
            pp.to_string(),
            fmt_rat(&rep.sq_pow),
            fmt_rat(&rep.f_pow),
            crate::output::cell_f64(rd),
            crate::output::cell_f64(rc),
        ]);
    }
    // Only finiteness is asserted; the empirical constants are the data.
    let pass = max_direct.is_finite() && max_converse.is_finite();
    let _ = json!({});
    Ok(RunResult::csv(table, pass))
}
