//! File formats, reports and verification suites on top of `rexcalc-core`.
//! The `rexcalc` binary is a thin command-line layer over this crate.

pub mod parse;
pub mod report;
pub mod suites;

/// Environment variable that replaces the default search budget.
pub const BUDGET_ENV: &str = "REXCALC_BUDGET";

/// Budget from the command line, else from [`BUDGET_ENV`], else the default.
pub fn resolve_budget(flag: Option<usize>) -> Result<usize, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| format!("{BUDGET_ENV} must be a positive integer, got `{s}`")),
        Err(_) => Ok(rexcalc_core::fpc::DEFAULT_BUDGET),
    }
}
