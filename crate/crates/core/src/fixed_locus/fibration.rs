//! Euler-number bookkeeping for elliptic fibrations and double or triple covers of curves.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Topological Euler number of `χ(X)` for a K3 surface.
pub const K3_EULER: u64 = 24;

/// Kodaira types of singular fibers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IIStar,
    IIIStar,
    IVStar,
}

impl KodairaType {
    pub fn euler(self) -> u64 {
        match self {
            Self::I(n) => u64::from(n),
            Self::II => 2,
            Self::III => 3,
            Self::IV => 4,
            Self::IStar(n) => u64::from(n) + 6,
            Self::IIStar => 10,
            Self::IIIStar => 9,
            Self::IVStar => 8,
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::I(n) => write!(f, "I_{n}"),
            Self::II => write!(f, "II"),
            Self::III => write!(f, "III"),
            Self::IV => write!(f, "IV"),
            Self::IStar(n) => write!(f, "I_{n}*"),
            Self::IIStar => write!(f, "II*"),
            Self::IIIStar => write!(f, "III*"),
            Self::IVStar => write!(f, "IV*"),
        }
    }
}

/// Singular fibers with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FiberConfig(pub Vec<(KodairaType, u64)>);

impl FiberConfig {
    pub fn new(fibers: Vec<(KodairaType, u64)>) -> Self {
        Self(fibers)
    }

    pub fn euler_sum(&self) -> u64 {
        self.0.iter().map(|(t, k)| t.euler() * k).sum()
    }

    /// Whether the fibers account for the whole Euler number of a K3 surface.
    pub fn is_complete(&self) -> bool {
        self.euler_sum() == K3_EULER
    }
}

/// `Σ multiplicity · e(type)` and whether it equals 24.
pub fn euler_fiber_sum(config: &FiberConfig) -> (u64, bool) {
    (config.euler_sum(), config.is_complete())
}

fn check_small_rho(rho: usize) -> Result<()> {
    if rho % 2 == 1 || !(2..8).contains(&rho) {
        return Err(Error::InvalidRho(rho));
    }
    Ok(())
}

/// Counts `(k_II, k_IV)` of type II and type IV fibers for `2 ≤ ρ < 8`:
/// `k_IV = (ρ − 2)/2` and `k_II = 14 − ρ`. They do not depend on the section.
pub fn fiber_counts(rho: usize, _has_section: bool) -> Result<(u64, u64)> {
    check_small_rho(rho)?;
    let k_iv = (rho as u64 - 2) / 2;
    let k_ii = 14 - rho as u64;
    debug_assert_eq!(4 * k_iv + 2 * k_ii, K3_EULER);
    Ok((k_ii, k_iv))
}

/// The invariant `s` forced by the fibration: `(ρ − 2)/2`, plus 2 without a section.
pub fn implied_s(rho: usize, has_section: bool) -> Result<usize> {
    check_small_rho(rho)?;
    Ok((rho - 2) / 2 + if has_section { 0 } else { 2 })
}

/// Genus from `2g − 2 = d(2g′ − 2) + r`, with `r` simple branch points.
pub fn hurwitz_genus(degree: u64, base_genus: u64, branch_points: u64) -> Result<u64> {
    let chi = degree as i64 * (2 * base_genus as i64 - 2) + branch_points as i64;
    if chi % 2 != 0 {
        return Err(Error::NonIntegralGenus(chi));
    }
    let g = chi / 2 + 1;
    if g < 0 {
        return Err(Error::NegativeGenus(g));
    }
    Ok(g as u64)
}
