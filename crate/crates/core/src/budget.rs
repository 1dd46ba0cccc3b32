//! Enumeration budgets.

use crate::error::{Error, Result};

/// Upper bound on the number of objects an enumeration may produce.
pub type Budget = u128;

pub const BUDGET_ENV: &str = "AFFINE_CELLS_BUDGET";
pub const DEFAULT_BUDGET: Budget = 5_000_000;

/// The budget from `AFFINE_CELLS_BUDGET`, or the default when unset or
/// unparsable.
pub fn default_budget() -> Budget {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

pub(crate) fn check_budget(what: &'static str, needed: u128, budget: Budget) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded { what, needed, budget });
    }
    Ok(())
}
