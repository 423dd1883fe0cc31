//! Cost levels and cap overrides.
//!
//! `CODESCOPE_CAP` holds comma-separated `key=value` pairs with keys
//! `enumeration`, `syndrome`, `primal`, `dual_character`, `table_cells`. A
//! bare integer sets the primal cap. Values accept `2^k` as well as decimals.

use clap::ValueEnum;
use codescope_core::Caps;

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "CODESCOPE_CAP";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum CostLevel {
    Low,
    #[default]
    Default,
    High,
}

impl CostLevel {
    pub fn caps(self) -> Caps {
        match self {
            CostLevel::Low => {
                Caps { primal: 1 << 24, dual_character: 1 << 20, table_cells: 1 << 24, ..Caps::default() }
            }
            CostLevel::Default => Caps { primal: 1 << 28, ..Caps::default() },
            CostLevel::High => Caps { primal: 1 << 31, ..Caps::default() },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CostLevel::Low => "low",
            CostLevel::Default => "default",
            CostLevel::High => "high",
        }
    }
}

fn parse_value(s: &str) -> Result<u64> {
    let s = s.trim().replace('_', "");
    let bad = || Error::Usage(format!("invalid cap value `{s}`"));
    if let Some(exp) = s.strip_prefix("2^") {
        let e: u32 = exp.parse().map_err(|_| bad())?;
        return 1u64.checked_shl(e).filter(|_| e < 64).ok_or_else(bad);
    }
    s.parse().map_err(|_| bad())
}

/// Applies an override string to `base`.
pub fn apply_override(base: Caps, spec: &str) -> Result<Caps> {
    let mut caps = base;
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((key, value)) = part.split_once('=') else {
            caps.primal = parse_value(part)?;
            continue;
        };
        let v = parse_value(value)?;
        match key.trim() {
            "enumeration" => caps.enumeration = v,
            "syndrome" => caps.syndrome = v,
            "primal" => caps.primal = v,
            "dual_character" => caps.dual_character = v,
            "table_cells" => caps.table_cells = v,
            other => return Err(Error::Usage(format!("unknown cap `{other}`"))),
        }
    }
    Ok(caps)
}

/// `base` with the environment override applied, if set.
pub fn from_env(base: Caps) -> Result<Caps> {
    match std::env::var(ENV_VAR) {
        Ok(spec) => apply_override(base, &spec),
        Err(_) => Ok(base),
    }
}
