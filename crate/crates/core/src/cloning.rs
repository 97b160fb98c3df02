//! Reduction factors of optimal universal 1→M cloners and the smallest M
//! at which cloning disentangles every two-qubit state.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CloningMode {
    /// A 1→M cloner on each qubit; T shrinks by η².
    LocalSymmetric,
    /// A 1→M cloner on one qubit only; T shrinks by η.
    LocalSingle,
    /// The pair cloned as a whole; T shrinks by η′.
    Nonlocal,
}

impl CloningMode {
    pub const ALL: [CloningMode; 3] = [CloningMode::LocalSymmetric, CloningMode::LocalSingle, CloningMode::Nonlocal];

    pub fn as_str(self) -> &'static str {
        match self {
            CloningMode::LocalSymmetric => "local_symmetric",
            CloningMode::LocalSingle => "local_single",
            CloningMode::Nonlocal => "nonlocal",
        }
    }

    /// Limit of the net shrink as M → ∞.
    fn asymptotic_shrink(self) -> Rational {
        match self {
            CloningMode::LocalSymmetric => Rational::new(1, 9),
            CloningMode::LocalSingle => Rational::new(1, 3),
            CloningMode::Nonlocal => Rational::new(1, 5),
        }
    }
}

impl fmt::Display for CloningMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The largest T shrink that disentangles every state.
pub fn threshold() -> Rational {
    Rational::new(1, 3)
}

/// (M+2)/(3M) for single-qubit cloners, (M+4)/(5M) for the two-qubit one.
pub fn clone_eta(mode: CloningMode, m: i64) -> Result<Rational> {
    if m < 1 {
        return Err(Error::InvalidM(m));
    }
    Ok(match mode {
        CloningMode::LocalSymmetric | CloningMode::LocalSingle => Rational::new(m + 2, 3 * m),
        CloningMode::Nonlocal => Rational::new(m + 4, 5 * m),
    })
}

/// Factor by which the correlation matrix T shrinks.
pub fn net_shrink(mode: CloningMode, m: i64) -> Result<Rational> {
    let eta = clone_eta(mode, m)?;
    Ok(match mode {
        CloningMode::LocalSymmetric => eta * eta,
        CloningMode::LocalSingle | CloningMode::Nonlocal => eta,
    })
}

pub fn meets_threshold(mode: CloningMode, m: i64) -> Result<bool> {
    Ok(net_shrink(mode, m)? <= threshold())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinCopies {
    Copies(i64),
    /// The net shrink decreases towards `infimum` but never reaches the threshold.
    Unattainable { infimum: Rational },
}

impl fmt::Display for MinCopies {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinCopies::Copies(m) => write!(f, "{m}"),
            MinCopies::Unattainable { infimum } => write!(f, "unattainable (infimum {infimum})"),
        }
    }
}

/// Smallest M whose net shrink meets the threshold. The net shrink is
/// strictly decreasing in M, so when its limit is not below the threshold
/// no finite M works.
pub fn min_copies(mode: CloningMode) -> MinCopies {
    let limit = mode.asymptotic_shrink();
    if limit >= threshold() {
        return MinCopies::Unattainable { infimum: limit };
    }
    let mut m = 1;
    while !meets_threshold(mode, m).expect("m >= 1") {
        m += 1;
    }
    MinCopies::Copies(m)
}
