//! Fixed loci of order-3 non-symplectic automorphisms, read off from the
//! Néron–Severi invariants `(ρ, s)`, and the Lefschetz and Euler identities
//! they satisfy.

mod eisenstein;
mod fibration;

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::classification::{canonical_names, classify, complement_exists, table1_keys, K3_RANK};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

pub use eisenstein::Eisenstein;
pub use fibration::{
    euler_fiber_sum, fiber_counts, hurwitz_genus, implied_s, FiberConfig, KodairaType, K3_EULER,
};

use eisenstein::third;

/// The unique key whose fixed locus is three isolated points.
pub const SPECIAL_KEY: (usize, usize) = (8, 7);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Nonexistent,
    SpecialThreePoints,
    Generic,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Nonexistent => "nonexistent",
            Self::SpecialThreePoints => "special_three_points",
            Self::Generic => "generic",
        })
    }
}

/// `M` isolated points, a curve of genus `g`, and `N` curves in total
/// (the genus-`g` curve plus `N − 1` rational curves).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FixedLocus {
    pub status: Status,
    pub points: Option<u64>,
    pub genus: Option<u64>,
    pub curves: Option<u64>,
}

impl FixedLocus {
    pub fn nonexistent() -> Self {
        Self { status: Status::Nonexistent, points: None, genus: None, curves: None }
    }

    pub fn special() -> Self {
        Self { status: Status::SpecialThreePoints, points: Some(3), genus: None, curves: Some(0) }
    }

    pub fn generic(points: u64, genus: u64, curves: u64) -> Self {
        Self { status: Status::Generic, points: Some(points), genus: Some(genus), curves: Some(curves) }
    }

    /// Genera of the fixed curves: `[g, 0, …, 0]` with `N` entries.
    pub fn curve_genera(&self) -> Vec<u64> {
        match (self.genus, self.curves) {
            (Some(g), Some(n)) if n > 0 => {
                let mut v = vec![g];
                v.resize(n as usize, 0);
                v
            }
            _ => Vec::new(),
        }
    }

    /// Both forms of the holomorphic Lefschetz identity hold.
    pub fn lefschetz_holds(&self) -> bool {
        let Some(m) = self.points else { return false };
        let genera = self.curve_genera();
        let holds = holomorphic_lefschetz(m, &genera) == -Eisenstein::zeta();
        debug_assert_eq!(holds, lefschetz_count(m, &genera) == 3);
        holds
    }

    /// Layout of the locus, e.g. `C^{(1)} ⊔ P^1×4 ⊔ {pt}×7`.
    pub fn label(&self) -> String {
        if self.status == Status::Nonexistent {
            return "none".to_string();
        }
        let mut parts = Vec::new();
        if let Some(g) = self.genus {
            parts.push(format!("C^{{({g})}}"));
        }
        let rational = self.curves.unwrap_or(0).saturating_sub(u64::from(self.genus.is_some()));
        match rational {
            0 => {}
            1 => parts.push("P^1".to_string()),
            k => parts.push(format!("P^1×{k}")),
        }
        match self.points.unwrap_or(0) {
            0 => {}
            1 => parts.push("{pt}".to_string()),
            m => parts.push(format!("{{pt}}×{m}")),
        }
        parts.join(" ⊔ ")
    }
}

/// `M·(−ζ/3) + Σₖ ζ(1 − gₖ)/3`.
pub fn holomorphic_lefschetz(points: u64, genera: &[u64]) -> Eisenstein {
    let zeta = Eisenstein::zeta();
    let mut total = zeta.scale(&third(-(points as i64)));
    for &g in genera {
        total = &total + &zeta.scale(&third(1 - g as i64));
    }
    total
}

/// `M − Σ(1 − gₖ)`; the Lefschetz identity says this is 3.
pub fn lefschetz_count(points: u64, genera: &[u64]) -> i64 {
    points as i64 - genera.iter().map(|&g| 1 - g as i64).sum::<i64>()
}

/// Whether the holomorphic Lefschetz number is `1 + ζ² = −ζ`.
pub fn lefschetz_consistent(points: u64, genera: &[u64]) -> bool {
    holomorphic_lefschetz(points, genera) == -Eisenstein::zeta()
}

/// `M = ρ/2 − 1`.
pub fn point_count(rho: usize) -> Result<u64> {
    if rho % 2 == 1 || !(2..=20).contains(&rho) {
        return Err(Error::InvalidRho(rho));
    }
    Ok((rho / 2 - 1) as u64)
}

/// Euler characteristic of the fixed locus against `(3ρ − 18)/2`; for loci with
/// curves, also `(2 − 2g) + 2(N − 1) = ρ − 8`.
pub fn topological_check(rho: usize, _s: usize, fl: &FixedLocus) -> bool {
    let target = 3 * rho as i64 - 18;
    match fl.status {
        Status::Nonexistent => false,
        Status::SpecialThreePoints => {
            fl.curves == Some(0) && fl.points.is_some_and(|m| 2 * m as i64 == target)
        }
        Status::Generic => {
            let (Some(m), Some(g), Some(n)) = (fl.points, fl.genus, fl.curves) else { return false };
            let curves = (2 - 2 * g as i64) + 2 * (n as i64 - 1);
            2 * (m as i64 + curves) == target && curves == rho as i64 - 8
        }
    }
}

fn quarter(numerator: i64, rho: usize, s: usize) -> Result<u64> {
    if numerator < 0 || numerator % 4 != 0 {
        return Err(Error::NotClassified(format!("({rho}, {s}): {numerator}/4 is not a count")));
    }
    Ok((numerator / 4) as u64)
}

/// Fixed locus for a classification key with an existing complement.
pub fn fixed_locus_for_key(rho: usize, s: usize) -> Result<FixedLocus> {
    if !table1_keys().contains(&(rho, s)) || !complement_exists(rho, s) {
        return Err(Error::NotClassified(format!("({rho}, {s})")));
    }
    let (r, k) = (rho as i64, s as i64);
    if K3_RANK as i64 - r - 2 * k < 0 {
        return Ok(FixedLocus::nonexistent());
    }
    if (rho, s) == SPECIAL_KEY {
        return Ok(FixedLocus::special());
    }
    let m = point_count(rho)?;
    let g = quarter(22 - r - 2 * k, rho, s)?;
    let n = quarter(6 + r - 2 * k, rho, s)?;
    Ok(FixedLocus::generic(m, g, n))
}

/// Fixed locus for a Néron–Severi lattice, located in the classification by its invariants.
pub fn fixed_locus_of(lattice: &Lattice) -> Result<FixedLocus> {
    let (rho, s) = classify(lattice)?;
    fixed_locus_for_key(rho, s)
}

/// A row of the fixed-locus table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table2Entry {
    pub rho: usize,
    pub s: usize,
    pub s_name: &'static str,
    pub locus: FixedLocus,
}

/// Fixed loci for every classified lattice with an existing complement, ordered by `(ρ, s)`.
pub fn enumerate_table2() -> Result<Vec<Table2Entry>> {
    let mut out = Vec::new();
    for (rho, s) in table1_keys() {
        if !complement_exists(rho, s) {
            continue;
        }
        let (s_name, _) = canonical_names(rho, s)
            .ok_or_else(|| Error::NotClassified(format!("({rho}, {s})")))?;
        out.push(Table2Entry { rho, s, s_name, locus: fixed_locus_for_key(rho, s)? });
    }
    Ok(out)
}

/// JSON row of `table2.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Row {
    #[serde(rename = "S")]
    pub s_name: String,
    pub status: Status,
    #[serde(rename = "M")]
    pub points: Option<u64>,
    pub g: Option<u64>,
    #[serde(rename = "N")]
    pub curves: Option<u64>,
}

impl From<&Table2Entry> for Table2Row {
    fn from(e: &Table2Entry) -> Self {
        Self {
            s_name: e.s_name.to_string(),
            status: e.locus.status,
            points: e.locus.points,
            g: e.locus.genus,
            curves: e.locus.curves,
        }
    }
}

/// Rational part of `x·x̄`, exposed for checks that the norm lies in `ℚ`.
pub fn eisenstein_norm(x: &Eisenstein) -> BigRational {
    let n = x * &x.conj();
    debug_assert!(n.is_rational());
    n.a
}
