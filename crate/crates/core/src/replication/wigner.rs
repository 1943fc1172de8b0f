use serde::Serialize;

use crate::{Error, Result};

/// Real equations versus real unknowns in Wigner's replication condition
/// for an organism of dimension `n` and a rejected part of dimension `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WignerCount {
    pub n: u64,
    pub r: u64,
    /// `2·n²·r`
    pub equations: u64,
    /// `2·(n + r + n·r)`
    pub unknowns: u64,
    /// `equations − unknowns`; positive means over-determined.
    pub deficit: i64,
}

pub fn wigner_count(n: u64, r: u64) -> Result<WignerCount> {
    if n == 0 || r == 0 {
        return Err(Error::Argument(format!(
            "organism and rejected dimensions must be positive, got N={n}, R={r}"
        )));
    }
    let overflow = || Error::Argument(format!("equation count overflows for N={n}, R={r}"));
    let equations = n
        .checked_mul(n)
        .and_then(|x| x.checked_mul(r))
        .and_then(|x| x.checked_mul(2))
        .ok_or_else(overflow)?;
    let unknowns = n
        .checked_mul(r)
        .and_then(|nr| nr.checked_add(n))
        .and_then(|x| x.checked_add(r))
        .and_then(|x| x.checked_mul(2))
        .ok_or_else(overflow)?;
    let deficit = i64::try_from(equations as i128 - unknowns as i128).map_err(|_| overflow())?;
    Ok(WignerCount {
        n,
        r,
        equations,
        unknowns,
        deficit,
    })
}
