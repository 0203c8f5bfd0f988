pub mod burgess;
pub mod iw;
pub mod norms;
pub mod superorth;
pub mod vino;
pub mod zmodn;

use crate::config::{CliError, Params};
use sqfn_core::dyadic::DyadicStep;

/// Parse a family spec: `rademacher:A..B`, `walsh:n1,n2,...`,
/// `diffs:LEVEL,SEED` (dyadic differences of a seeded random function), or
/// `file:PATH` with one step record per line. Returns functions and their
/// index labels.
pub fn parse_family(spec: &str) -> Result<(Vec<DyadicStep>, Vec<u64>), CliError> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::BadValue(format!("family {spec:?} needs kind:args")))?;
    match kind {
        "rademacher" => {
            let (a, b) = rest
                .split_once("..")
                .ok_or_else(|| CliError::BadValue("rademacher:A..B".into()))?;
            let a: u32 = a.parse().map_err(|_| CliError::BadValue("bad range".into()))?;
            let b: u32 = b.parse().map_err(|_| CliError::BadValue("bad range".into()))?;
            if b < a || b > 16 {
                return Err(CliError::BadValue("rademacher range empty or too wide".into()));
            }
            let fam: Vec<DyadicStep> = (a..=b).map(DyadicStep::rademacher).collect();
            let labels: Vec<u64> = (a..=b).map(u64::from).collect();
            Ok((fam, labels))
        }
        "walsh" => {
            let mut fam = Vec::new();
            let mut labels = Vec::new();
            for tok in rest.split(',') {
                let n: u64 = tok
                    .trim()
                    .parse()
                    .map_err(|_| CliError::BadValue(format!("bad walsh index {tok:?}")))?;
                if n >= 1 << 20 {
                    return Err(CliError::Precondition(format!(
                        "walsh index {n} needs a grid beyond desk scale"
                    )));
                }
                fam.push(
                    DyadicStep::walsh(n)
                        .map_err(|e| CliError::Precondition(e.to_string()))?,
                );
                labels.push(n);
            }
            Ok((fam, labels))
        }
        "diffs" => {
            let (level, seed) = rest
                .split_once(',')
                .ok_or_else(|| CliError::BadValue("diffs:LEVEL,SEED".into()))?;
            let level: u32 = level
                .parse()
                .map_err(|_| CliError::BadValue("bad level".into()))?;
            if level > 10 {
                return Err(CliError::BadValue("diffs level capped at 10".into()));
            }
            let seed: u64 = seed.parse().map_err(|_| CliError::BadValue("bad seed".into()))?;
            let mut rng = sqfn_core::rng::SplitMix64::new(seed);
            let f = sqfn_core::corpus::random_step(level, 1 << level.min(8), 1 << level.min(8), &mut rng);
            let fam: Vec<DyadicStep> = (0..=level)
                .map(|n| f.dyadic_diff(n).expect("level within width"))
                .collect();
            let labels: Vec<u64> = (0..=u64::from(level)).collect();
            Ok((fam, labels))
        }
        "file" => {
            let text = std::fs::read_to_string(rest)
                .map_err(|e| CliError::BadValue(format!("family file {rest}: {e}")))?;
            let mut fam = Vec::new();
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                fam.push(
                    DyadicStep::from_record(line)
                        .map_err(|e| CliError::BadValue(e.to_string()))?,
                );
            }
            let labels: Vec<u64> = (0..fam.len() as u64).collect();
            Ok((fam, labels))
        }
        _ => Err(CliError::BadValue(format!("unknown family kind {kind:?}"))),
    }
}

/// Parse a comma-separated rational list like `1,2/3,-4/5`.
pub fn parse_rationals(s: &str) -> Result<Vec<sqfn_core::Rat>, CliError> {
    s.split(',')
        .map(|tok| {
            sqfn_core::dyadic::parse_rational(tok.trim())
                .map_err(|e| CliError::BadValue(e.to_string()))
        })
        .collect()
}

pub fn require_even_r(p: &mut Params) -> Result<u32, CliError> {
    let r = p.u64_or("r", 2)? as u32;
    if r == 0 {
        return Err(CliError::Precondition("r must be >= 1".into()));
    }
    Ok(r)
}
