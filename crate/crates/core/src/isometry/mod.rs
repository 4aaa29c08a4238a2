//! Lattice isometries, their action on the discriminant group, and exhaustive
//! automorphism search for small definite lattices.
//!
//! Matrices act on column coordinate vectors: column `j` is the image of the
//! `j`-th basis vector. The action on `L*` uses the same matrix extended
//! ℚ-linearly, which is well defined because isometries preserve `L*`.

mod enumerate;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lattice::{DiscriminantGroup, Lattice};
use crate::linalg::IntMatrix;
use crate::named::hyperbolic_plane;

pub use enumerate::{
    count_order3, enumerate_isometries, for_each_isometry, has_order3_trivial_on_a, short_vectors,
    MAX_ENUMERATION_RANK,
};

/// Default search bound for [`order_of`]: no finite-order automorphism of a K3
/// lattice that matters here has order above 66.
pub const DEFAULT_ORDER_BOUND: u32 = 66;

/// `MᵀGM = G`.
pub fn is_isometry(lattice: &Lattice, m: &IntMatrix) -> Result<bool> {
    let n = lattice.rank();
    if m.rows() != n || m.cols() != n {
        return Err(Error::SizeMismatch { expected: n, found: m.rows().max(m.cols()) });
    }
    Ok(&(&m.transpose() * lattice.gram()) * m == *lattice.gram())
}

/// Least `k ≤ bound` with `Mᵏ = I`.
pub fn order_of(m: &IntMatrix, bound: u32) -> Option<u32> {
    if !m.is_square() {
        return None;
    }
    let mut power = m.clone();
    for k in 1..=bound {
        if power.is_identity() {
            return Some(k);
        }
        power = &power * m;
    }
    None
}

/// An integer matrix verified to preserve a lattice's form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    lattice: Lattice,
    matrix: IntMatrix,
}

impl Isometry {
    pub fn new(lattice: Lattice, matrix: IntMatrix) -> Result<Self> {
        if !is_isometry(&lattice, &matrix)? {
            return Err(Error::NotIsometry);
        }
        Ok(Self { lattice, matrix })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn order(&self) -> Option<u32> {
        order_of(&self.matrix, DEFAULT_ORDER_BOUND)
    }

    pub fn discriminant_action(&self) -> Result<DiscriminantAction> {
        discriminant_action(&self.lattice, &self.matrix)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.lattice.gram() != other.lattice.gram() {
            return Err(Error::NotIsometry);
        }
        Ok(Self { lattice: self.lattice.clone(), matrix: &self.matrix * &other.matrix })
    }
}

/// Induced automorphism of `A_L` in generator coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantAction {
    /// Column `j` holds the coordinates of the image of generator `j`, entry `i` reduced mod `dᵢ`.
    pub matrix: Vec<Vec<BigInt>>,
    pub moduli: Vec<BigInt>,
    pub trivial: bool,
}

impl DiscriminantAction {
    /// Composition `self ∘ other` of actions on the same group.
    pub fn compose(&self, other: &Self) -> Self {
        let s = self.moduli.len();
        let mut out = vec![vec![BigInt::zero(); s]; s];
        for i in 0..s {
            for j in 0..s {
                let v: BigInt = (0..s).map(|k| &self.matrix[i][k] * &other.matrix[k][j]).sum();
                out[i][j] = num_integer::Integer::mod_floor(&v, &self.moduli[i]);
            }
        }
        let trivial = is_identity_mod(&out, &self.moduli);
        Self { matrix: out, moduli: self.moduli.clone(), trivial }
    }
}

fn is_identity_mod(m: &[Vec<BigInt>], moduli: &[BigInt]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, e)| {
            let want = if i == j { BigInt::from(1) } else { BigInt::zero() };
            num_integer::Integer::mod_floor(&(e - want), &moduli[i]).is_zero()
        })
    })
}

fn image_of(m: &IntMatrix, x: &[BigRational]) -> Vec<BigRational> {
    m.mul_rat_vec(x)
}

pub(crate) fn action_in_group(group: &DiscriminantGroup, m: &IntMatrix) -> DiscriminantAction {
    let s = group.min_generators();
    let mut matrix = vec![vec![BigInt::zero(); s]; s];
    for (j, g) in group.generators().iter().enumerate() {
        let coords = group
            .coordinates(&image_of(m, g))
            .expect("isometries preserve the dual lattice");
        for (i, c) in coords.into_iter().enumerate() {
            matrix[i][j] = c;
        }
    }
    let moduli = group.invariant_factors().to_vec();
    let trivial = is_identity_mod(&matrix, &moduli);
    DiscriminantAction { matrix, moduli, trivial }
}

/// Action of an isometry on `A_L`; trivial iff `M·gᵢ − gᵢ ∈ L` for every generator.
pub fn discriminant_action(lattice: &Lattice, m: &IntMatrix) -> Result<DiscriminantAction> {
    if !is_isometry(lattice, m)? {
        return Err(Error::NotIsometry);
    }
    let group = lattice.discriminant_group()?;
    let action = action_in_group(&group, m);
    debug_assert_eq!(
        action.trivial,
        group.generators().iter().all(|g| {
            image_of(m, g).iter().zip(g).all(|(a, b)| (a - b).is_integer())
        })
    );
    Ok(action)
}

/// Quantities in the relation `f(x) = x + l` for `x ∈ L*`, `l ∈ L`, which an
/// order-3 isometry acting trivially on `A_L` would force. For such `f` one has
/// `3⟨x,x⟩ = −2⟨l,x⟩` and `−2⟨x,l⟩ = ⟨l,l⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationPairings {
    pub translation: Vec<BigRational>,
    pub x_x: BigRational,
    pub l_x: BigRational,
    pub l_l: BigRational,
}

impl TranslationPairings {
    pub fn order_three_identity(&self) -> bool {
        BigRational::from_integer(3.into()) * &self.x_x
            == BigRational::from_integer((-2).into()) * &self.l_x
    }

    pub fn isometry_identity(&self) -> bool {
        BigRational::from_integer((-2).into()) * &self.l_x == self.l_l
    }
}

/// Computes `l = f(x) − x` and its pairings; `None` if `l ∉ L`.
pub fn translation_pairings(
    lattice: &Lattice,
    m: &IntMatrix,
    x: &[BigRational],
) -> Option<TranslationPairings> {
    let fx = image_of(m, x);
    let l: Vec<BigRational> = fx.iter().zip(x).map(|(a, b)| a - b).collect();
    if !l.iter().all(|c| c.is_integer()) {
        return None;
    }
    let g = lattice.gram();
    Some(TranslationPairings {
        x_x: g.bilinear_rat(x, x),
        l_x: g.bilinear_rat(&l, x),
        l_l: g.bilinear_rat(&l, &l),
        translation: l,
    })
}

/// `M² + M + I = 0`, i.e. `M` has order 3 and no nonzero fixed vectors.
pub fn satisfies_third_cyclotomic(m: &IntMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let mut s = &(m * m) + m;
    for i in 0..m.rows() {
        s[(i, i)] += 1;
    }
    let zero = s.entries().all(Zero::is_zero);
    zero
}

fn columns(cols: &[[i64; 4]; 4]) -> IntMatrix {
    IntMatrix::from_rows(cols).expect("4x4").transpose()
}

/// `ρ₁` on `U(3) ⊕ U` with basis `e₁, e₂, e′₁, e′₂`:
/// `e₁ ↦ −2e₁ + 3e′₁`, `e₂ ↦ e₂ + 3e′₂`, `e′₁ ↦ −e₁ + e′₁`, `e′₂ ↦ −e₂ − 2e′₂`.
pub fn rho1() -> Isometry {
    let lattice = hyperbolic_plane().rescale(3).expect("nonzero").direct_sum(&hyperbolic_plane());
    let m = columns(&[[-2, 0, 3, 0], [0, 1, 0, 3], [-1, 0, 1, 0], [0, -1, 0, -2]]);
    Isometry::new(lattice, m).expect("rho1 is an isometry")
}

/// `ρ₂` on `U ⊕ U` with basis `e₁, e₂, e′₁, e′₂`:
/// `e₁ ↦ e₁ + e′₁`, `e₂ ↦ −2e₂ + 3e′₂`, `e′₁ ↦ −3e₁ − 2e′₁`, `e′₂ ↦ −e₂ + e′₂`.
pub fn rho2() -> Isometry {
    let lattice = hyperbolic_plane().power(2);
    let m = columns(&[[1, 0, 1, 0], [0, -2, 0, 3], [-3, 0, -2, 0], [0, -1, 0, 1]]);
    Isometry::new(lattice, m).expect("rho2 is an isometry")
}

/// Parses the matrix file format `{"matrix": [[int, ...], ...]}`.
pub fn matrix_from_json(text: &str) -> Result<IntMatrix> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Literal {
        matrix: Vec<Vec<i64>>,
    }
    let lit: Literal =
        serde_json::from_str(text).map_err(|e| Error::InvalidLiteral(e.to_string()))?;
    let m = IntMatrix::from_rows(&lit.matrix)?;
    m.require_square()?;
    Ok(m)
}
