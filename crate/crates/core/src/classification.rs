//! Even hyperbolic 3-elementary lattices `S` that embed primitively in the K3
//! lattice, paired with their orthogonal complements `T`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::Signature;
use crate::named::parse_expr;

/// Rank of the K3 lattice `U^3 ⊕ E8^2`.
pub const K3_RANK: usize = 22;

/// The only prime handled by the classification tables.
pub const PRIME: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassificationKey {
    pub n: usize,
    pub s: usize,
    pub p: u64,
    /// `(plus, minus)` of the hyperbolic lattice: always `(1, n − 1)`.
    pub sig: (usize, usize),
}

impl ClassificationKey {
    pub fn hyperbolic(n: usize, s: usize) -> Self {
        Self { n, s, p: PRIME, sig: (1, n.saturating_sub(1)) }
    }
}

/// Existence of an even hyperbolic `p`-elementary lattice of rank `n` with
/// `A ≅ (ℤ/p)^s`, for odd `p`.
pub fn rs_exists_for_prime(n: usize, s: usize, p: u64) -> Result<bool> {
    if n < 2 || s > n || p.is_multiple_of(2) {
        return Err(Error::InvalidKey { n, s });
    }
    if !n.is_multiple_of(2) {
        return Ok(false);
    }
    let parity_ok = if s.is_multiple_of(2) {
        n % 4 == 2
    } else {
        // p ≡ (−1)^{n/2 − 1} (mod 4)
        let target = if (n / 2 - 1).is_multiple_of(2) { 1 } else { 3 };
        p % 4 == target
    };
    let bounds_ok = n % 8 == 2 || (s > 0 && s < n);
    Ok(parity_ok && bounds_ok)
}

/// [`rs_exists_for_prime`] at `p = 3`.
pub fn rs_exists(n: usize, s: usize) -> Result<bool> {
    rs_exists_for_prime(n, s, PRIME)
}

/// Whether the orthogonal complement `T` (rank `22 − ρ`, signature `(2, 20 − ρ)`)
/// exists. The only obstruction is `s = rank T`: then `T` is `3`-scaled
/// unimodular, which needs signature `2 − (20 − ρ) ≡ 0 (mod 8)`.
pub fn complement_exists(rho: usize, s: usize) -> bool {
    if rho >= K3_RANK || s > K3_RANK - rho {
        return false;
    }
    let t_index = 2 - (20 - rho as i64);
    !(s == K3_RANK - rho && t_index.rem_euclid(8) != 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`verify_pair`]: one entry per named condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub checks: Vec<Check>,
}

impl PairReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { name, passed, detail });
    }
}

fn join(factors: &[BigInt]) -> String {
    factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn sig_str(s: Signature) -> String {
    format!("({},{})", s.plus, s.minus + s.zero)
}

/// Checks that `T` can be the orthogonal complement of `S` inside the K3 lattice.
/// Mathematical mismatches are reported as failed checks; only inputs outside
/// the precondition (degenerate or odd lattices) produce an error.
pub fn verify_pair(s: &Lattice, t: &Lattice) -> Result<PairReport> {
    let qs = s.discriminant_form()?;
    let qt = t.discriminant_form()?;
    let (gs, gt) = (qs.group(), qt.group());
    let rho = s.rank();
    let mut report = PairReport { checks: Vec::new() };

    report.push(
        "rank_sum",
        rho + t.rank() == K3_RANK,
        format!("{} + {} = {}", rho, t.rank(), rho + t.rank()),
    );

    let sig_s = s.signature();
    report.push(
        "signature_s",
        rho >= 1 && sig_s == Signature::new(1, 0, rho - 1),
        format!("{} (expected hyperbolic)", sig_str(sig_s)),
    );

    let sig_t = t.signature();
    let expected_t = (rho <= 20).then(|| Signature::new(2, 0, 20 - rho));
    report.push(
        "signature_t",
        Some(sig_t) == expected_t,
        match expected_t {
            Some(e) => format!("{} (expected {})", sig_str(sig_t), sig_str(e)),
            None => format!("{} (rank of S exceeds 20)", sig_str(sig_t)),
        },
    );

    let (det_s, det_t) = (s.det().abs(), t.det().abs());
    report.push("det_match", det_s == det_t, format!("|det S| = {det_s}, |det T| = {det_t}"));

    let power = BigInt::from(PRIME).pow(gs.min_generators() as u32);
    report.push(
        "det_is_3_to_s",
        det_s == power && det_t == power,
        format!("3^{} = {power}", gs.min_generators()),
    );

    let elementary = gs.is_elementary(PRIME) && gt.is_elementary(PRIME);
    report.push(
        "three_elementary",
        elementary,
        format!(
            "factors S = [{}], T = [{}]",
            join(gs.invariant_factors()),
            join(gt.invariant_factors())
        ),
    );

    report.push(
        "invariant_factors_equal",
        gs.invariant_factors() == gt.invariant_factors(),
        format!("s(S) = {}, s(T) = {}", gs.min_generators(), gt.min_generators()),
    );

    let opposite = if elementary {
        qs.value_multiset()? == qt.negated_value_multiset()?
    } else {
        false
    };
    report.push("forms_opposite", opposite, "q_S vs −q_T value multisets".into());

    for (name, q) in [("milgram_s", &qs), ("milgram_t", &qt)] {
        let (passed, detail) = match q.milgram_holds() {
            Ok(ok) => (ok, format!("Gauss sum = {}", q.gauss_sum()?)),
            Err(e) => (false, e.to_string()),
        };
        report.push(name, passed, detail);
    }

    Ok(report)
}

/// `d(N) = [N′ : N]² · d(N′)` for a finite-index sublattice `N ⊂ N′`.
pub fn index_determinant_identity(sub: &Lattice, sup: &Lattice, index: &BigInt) -> Result<bool> {
    if sub.rank() != sup.rank() {
        return Err(Error::RankMismatch(sub.rank(), sup.rank()));
    }
    if !index.is_positive() {
        return Ok(false);
    }
    Ok(sub.det().abs() == index * index * sup.det().abs())
}

/// Canonical names for every key `(ρ, s)` of the table: `S`, and `T` when it exists.
const TABLE1: &[(usize, usize, &str, Option<&str>)] = &[
    (2, 0, "U", Some("U^2+E8^2")),
    (2, 2, "U(3)", Some("U+U(3)+E8^2")),
    (4, 1, "U+A2", Some("U^2+E6+E8")),
    (4, 3, "U(3)+A2", Some("U+U(3)+E6+E8")),
    (6, 2, "U+A2^2", Some("U^2+E6^2")),
    (6, 4, "U(3)+A2^2", Some("U+U(3)+E6^2")),
    (8, 1, "U+E6", Some("U^2+E8+A2")),
    (8, 3, "U+A2^3", Some("U+U(3)+E8+A2")),
    (8, 5, "U(3)+A2^3", Some("A2(-1)+E6+A2^3")),
    (8, 7, "U(3)+E6*(3)", Some("A2(-1)+A2^6")),
    (10, 0, "U+E8", Some("U^2+E8")),
    (10, 2, "U+E6+A2", Some("U+U(3)+E8")),
    (10, 4, "U+A2^4", Some("U+U(3)+E6+A2")),
    (10, 6, "U(3)+A2^4", Some("A2(-1)+A2^5")),
    (10, 8, "U+E8(3)", Some("U(3)^2+A2^4")),
    (10, 10, "U(3)+E8(3)", Some("A2(-1)+A2+E8(3)")),
    (12, 1, "U+E8+A2", Some("A2(-1)+E8")),
    (12, 3, "U+E6+A2^2", Some("A2(-1)+E6+A2")),
    (12, 5, "U+A2^5", Some("A2(-1)+A2^4")),
    (12, 7, "U(3)+A2^5", Some("U(3)^2+A2^3")),
    (12, 9, "U+E8(3)+A2", Some("A2(-1)+E8(3)")),
    (14, 2, "U+E8+A2^2", Some("A2(-1)+E6")),
    (14, 4, "U+E6+A2^3", Some("A2(-1)+A2^3")),
    (14, 6, "U+A2^6", Some("U(3)^2+A2^2")),
    (14, 8, "U(3)+A2^6", None),
    (16, 1, "U+E8+E6", Some("U^2+A2")),
    (16, 3, "U+E8+A2^3", Some("A2(-1)+A2^2")),
    (16, 5, "U+E6+A2^4", Some("U(3)^2+A2")),
    (18, 0, "U+E8^2", Some("U^2")),
    (18, 2, "U+E8+E6+A2", Some("U+U(3)")),
    (18, 4, "U+E8+A2^4", Some("U(3)^2")),
    (20, 1, "U+E8^2+A2", Some("A2(-1)")),
];

/// Canonical `(S, T)` expression strings for a key, if the key is in the table.
pub fn canonical_names(rho: usize, s: usize) -> Option<(&'static str, Option<&'static str>)> {
    TABLE1.iter().find(|(r, k, _, _)| *r == rho && *k == s).map(|&(_, _, a, b)| (a, b))
}

/// Every key `(ρ, s)` admitted by [`rs_exists`] with `s ≤ 22 − ρ`, in ascending order.
pub fn table1_keys() -> Vec<(usize, usize)> {
    let mut keys = Vec::new();
    for rho in (2..=20).step_by(2) {
        for s in 0..=rho.min(K3_RANK - rho) {
            if rs_exists(rho, s).expect("valid key") {
                keys.push((rho, s));
            }
        }
    }
    keys
}

/// A row of the classification: `S`, its complement `T` when it exists.
#[derive(Debug, Clone)]
pub struct EmbeddingPair {
    pub rho: usize,
    pub s: usize,
    pub s_lattice: Lattice,
    pub t_lattice: Option<Lattice>,
    pub exists: bool,
}

impl EmbeddingPair {
    pub fn key(&self) -> ClassificationKey {
        ClassificationKey::hyperbolic(self.rho, self.s)
    }

    pub fn s_name(&self) -> &str {
        self.s_lattice.name().unwrap_or("?")
    }

    pub fn t_name(&self) -> Option<&str> {
        self.t_lattice.as_ref().map(|t| t.name().unwrap_or("?"))
    }
}

/// Regenerates the classification table, ordered by `(ρ, s)`.
pub fn enumerate_table1() -> Result<Vec<EmbeddingPair>> {
    table1_keys()
        .into_iter()
        .map(|(rho, s)| {
            let (s_name, t_name) = canonical_names(rho, s)
                .ok_or_else(|| Error::NotClassified(format!("no canonical lattice for ({rho}, {s})")))?;
            let exists = complement_exists(rho, s);
            if exists != t_name.is_some() {
                return Err(Error::NotClassified(format!(
                    "complement rule and table disagree at ({rho}, {s})"
                )));
            }
            Ok(EmbeddingPair {
                rho,
                s,
                s_lattice: parse_expr(s_name)?,
                t_lattice: t_name.map(parse_expr).transpose()?,
                exists,
            })
        })
        .collect()
}

/// JSON row of `table1.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub rho: usize,
    pub s: usize,
    #[serde(rename = "S")]
    pub s_name: String,
    #[serde(rename = "T")]
    pub t_name: Option<String>,
    pub exists: bool,
}

impl From<&EmbeddingPair> for Table1Row {
    fn from(p: &EmbeddingPair) -> Self {
        Self {
            rho: p.rho,
            s: p.s,
            s_name: p.s_name().to_string(),
            t_name: p.t_name().map(str::to_string),
            exists: p.exists,
        }
    }
}

/// Looks up a lattice in the classification by its invariants: it must be even,
/// hyperbolic, 3-elementary, and its `(ρ, s)` must have an existing complement.
pub fn classify(s: &Lattice) -> Result<(usize, usize)> {
    if !s.is_even() {
        return Err(Error::NotEven);
    }
    let group = s.discriminant_group()?;
    if let Some(d) = group.invariant_factors().iter().find(|d| **d != BigInt::from(PRIME)) {
        return Err(Error::NotElementary { p: PRIME, factor: d.to_string() });
    }
    let rho = s.rank();
    let sk = group.min_generators();
    let hyperbolic = rho >= 1 && s.signature() == Signature::new(1, 0, rho - 1);
    let listed = hyperbolic
        && rho.is_multiple_of(2)
        && (2..=20).contains(&rho)
        && table1_keys().contains(&(rho, sk))
        && complement_exists(rho, sk);
    if !listed {
        return Err(Error::NotClassified(format!("{s} (rank {rho}, s = {sk})")));
    }
    debug_assert!(!s.det().is_zero());
    Ok((rho, sk))
}
