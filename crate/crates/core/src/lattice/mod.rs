//! Integral lattices given by a symmetric Gram matrix, with their
//! discriminant groups and discriminant quadratic forms.

mod discriminant;
mod gauss;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, Signature};

pub use discriminant::{forms_match_opposite, DiscriminantGroup, FiniteQuadraticForm};
pub use gauss::Cyclotomic;

/// A lattice `ℤⁿ` with the bilinear form given by a symmetric integer Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
    name: Option<String>,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        gram.require_square()?;
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { gram, name: None })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// The rank-0 lattice, neutral for [`Lattice::direct_sum`].
    pub fn empty() -> Self {
        Self { gram: IntMatrix::zeros(0, 0), name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        linalg::determinant(&self.gram).expect("Gram matrix is square")
    }

    pub fn signature(&self) -> Signature {
        linalg::signature(&self.gram).expect("Gram matrix is symmetric")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    /// `⟨x,x⟩ ∈ 2ℤ` for all `x`, which for an integral form is the same as an even diagonal.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn is_definite(&self) -> bool {
        self.signature().is_definite()
    }

    /// `L(m)`: the same module with the form multiplied by `m`.
    pub fn rescale(&self, m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroScale);
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let name = self.name.as_ref().map(|n| {
            if n.contains(['+', '^', '⊕']) {
                format!("({n})({m})")
            } else {
                format!("{n}({m})")
            }
        });
        Ok(Self { gram: self.gram.scaled(&BigInt::from(m)), name })
    }

    /// Orthogonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let name = match (&self.name, &other.name) {
            _ if other.rank() == 0 => self.name.clone(),
            _ if self.rank() == 0 => other.name.clone(),
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Self { gram: self.gram.block_diag(&other.gram), name }
    }

    /// `L^{⊕k}`; `k = 0` gives the empty lattice.
    pub fn power(&self, k: usize) -> Self {
        let mut out = Self::empty();
        for _ in 0..k {
            out = out.direct_sum(self);
        }
        if k > 1 {
            out.name = self.name.as_ref().map(|n| format!("{n}^{k}"));
        }
        out
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        DiscriminantGroup::of(self)
    }

    /// Every invariant factor of `L*/L` equals `p` (vacuously true for unimodular `L`).
    pub fn is_p_elementary(&self, p: u64) -> Result<bool> {
        Ok(self.discriminant_group()?.is_elementary(p))
    }

    pub fn discriminant_form(&self) -> Result<FiniteQuadraticForm> {
        FiniteQuadraticForm::of(self)
    }

    /// Parses the JSON literal `{"name": "optional", "gram": [[int, ...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Literal {
            name: Option<String>,
            gram: Vec<Vec<i64>>,
        }
        let lit: Literal =
            serde_json::from_str(text).map_err(|e| Error::InvalidLiteral(e.to_string()))?;
        let lattice = Self::from_rows(&lit.gram)?;
        Ok(match lit.name {
            Some(n) => lattice.with_name(n),
            None => lattice,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let gram: Vec<Vec<serde_json::Value>> = self
            .gram
            .to_rows()
            .iter()
            .map(|r| r.iter().map(big_to_json).collect())
            .collect();
        serde_json::json!({ "name": self.name, "gram": gram })
    }
}

pub(crate) fn big_to_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice").field("name", &self.name).field("gram", &self.gram).finish()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}", self.gram),
        }
    }
}
