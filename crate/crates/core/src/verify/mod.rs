//! Check suites and report assembly.

mod cache;
mod config;
mod suites;

pub use cache::Cache;
pub use config::Config;

use crate::error::{Error, Result};
use crate::report::{CheckRecord, CheckResult, VerificationReport};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Codes,
    Lattice,
    Fusion,
    Orthogonal,
    Extension,
    Characters,
    Groups,
    Twistcoef,
}

impl Suite {
    /// Execution order for `all`.
    pub const ORDERED: [Suite; 8] = [
        Suite::Codes,
        Suite::Lattice,
        Suite::Fusion,
        Suite::Extension,
        Suite::Orthogonal,
        Suite::Characters,
        Suite::Groups,
        Suite::Twistcoef,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Codes => "codes",
            Suite::Lattice => "lattice",
            Suite::Fusion => "fusion",
            Suite::Orthogonal => "orthogonal",
            Suite::Extension => "extension",
            Suite::Characters => "characters",
            Suite::Groups => "groups",
            Suite::Twistcoef => "twistcoef",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::ORDERED)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Collects check results, timing each batch of checks that share one computation.
pub(crate) struct Recorder {
    records: Vec<CheckRecord>,
}

impl Recorder {
    pub(crate) fn batch(&mut self, f: impl FnOnce() -> Vec<CheckResult>) {
        let t = Instant::now();
        let results = f();
        let ms = t.elapsed().as_millis() as u64;
        self.records.extend(results.into_iter().map(|r| CheckRecord::new(r, ms)));
    }
}

/// Runs `suite` (every suite, in dependency order, for `all`).
pub fn run(suite: Suite, config: &Config) -> Result<VerificationReport> {
    config.validate()?;
    let mut ctx = suites::Context::new(config);
    let mut rec = Recorder { records: Vec::new() };
    let selected: Vec<Suite> = if suite == Suite::All { Suite::ORDERED.to_vec() } else { vec![suite] };
    for s in selected {
        suites::run_suite(s, &mut ctx, &mut rec);
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = rec.records.iter().find(|r| !seen.insert(r.id.clone())) {
        return Err(Error::Parse(format!("duplicate check id {}", dup.id)));
    }
    Ok(VerificationReport { tool_version: env!("CARGO_PKG_VERSION").into(), config_echo: config.echo(), checks: rec.records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn suite_names_round_trip() {
        for s in std::iter::once(Suite::All).chain(Suite::ORDERED) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("perk12".parse::<Suite>().is_err());
    }

    #[test]
    fn groups_and_twist_suites() {
        let r = run(Suite::Groups, &Config::default()).unwrap();
        assert!(r.checks.len() >= 8);
        assert!(r.all_pass());
        let t = run(Suite::Twistcoef, &Config { twist_order: 4, ..Default::default() }).unwrap();
        assert_eq!(t.checks.len(), 4);
        assert!(t.checks.iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn low_order_skips_missing_coefficients() {
        let r = run(Suite::Characters, &Config { order: 1, ..Default::default() }).unwrap();
        let q2 = r.checks.iter().find(|c| c.id == "ch-Vsharp-q2").unwrap();
        assert_eq!(q2.status, Status::Skipped);
        assert!(r.all_pass());
    }

    #[test]
    fn invalid_config_is_rejected() {
        assert!(run(Suite::Groups, &Config { enum_norm_bound: 5, ..Default::default() }).is_err());
    }
}
