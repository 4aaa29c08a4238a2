use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::gauss::{self, Cyclotomic};
use super::Lattice;
use crate::error::{Error, Result};
use crate::linalg::{self, rat_mod, IntMatrix};

/// Upper bound on `|A_L|` for operations that walk every group element.
pub const MAX_ENUMERATED_ORDER: u64 = 1 << 24;

/// The discriminant group `A_L = L*/L` of a nondegenerate lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    invariant_factors: Vec<BigInt>,
    generators: Vec<Vec<BigRational>>,
    // Row i maps x ∈ L* to an integer whose class mod dᵢ is the i-th coordinate.
    coordinate_map: IntMatrix,
}

impl DiscriminantGroup {
    pub(super) fn of(lattice: &Lattice) -> Result<Self> {
        let gram = lattice.gram();
        if lattice.det().is_zero() {
            return Err(Error::Degenerate);
        }
        // U·G·V = D, so G⁻¹ℤⁿ / ℤⁿ ≅ ℤⁿ / Dℤⁿ with gᵢ = V·eᵢ / dᵢ and coordinates U·G·x.
        let snf = linalg::smith_normal_form(gram);
        let ug = &snf.u * gram;
        let one = BigRational::one();
        let mut invariant_factors = Vec::new();
        let mut generators = Vec::new();
        let mut rows = Vec::new();
        for (i, d) in snf.diagonal().into_iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let g = snf
                .v
                .col(i)
                .into_iter()
                .map(|x| rat_mod(&BigRational::new(x, d.clone()), &one))
                .collect();
            generators.push(g);
            rows.push(ug.row(i).to_vec());
            invariant_factors.push(d);
        }
        let coordinate_map = if rows.is_empty() {
            IntMatrix::zeros(0, lattice.rank())
        } else {
            IntMatrix::from_big_rows(rows)?
        };
        Ok(Self { invariant_factors, generators, coordinate_map })
    }

    /// `d₁ | d₂ | …`, each greater than 1.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Generators as rational coordinate vectors in the lattice basis, each in `[0,1)ⁿ`.
    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    /// Minimal number of generators `s`.
    pub fn min_generators(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_elementary(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.invariant_factors.iter().all(|d| *d == p)
    }

    /// Coordinates of `x ∈ L*` with respect to the generators, reduced mod `dᵢ`.
    /// Returns `None` when `x` is not in the dual lattice.
    pub fn coordinates(&self, x: &[BigRational]) -> Option<Vec<BigInt>> {
        self.coordinate_map
            .mul_rat_vec(x)
            .iter()
            .zip(&self.invariant_factors)
            .map(|(c, d)| c.is_integer().then(|| c.to_integer().mod_floor(d)))
            .collect()
    }

    /// The element `Σ cᵢ gᵢ` as a rational vector (not reduced mod `L`).
    pub fn element(&self, coeffs: &[BigInt]) -> Vec<BigRational> {
        assert_eq!(coeffs.len(), self.generators.len());
        let n = self.coordinate_map.cols();
        let mut out = vec![BigRational::zero(); n];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            let c = BigRational::from_integer(c.clone());
            for (o, gi) in out.iter_mut().zip(g) {
                *o += &c * gi;
            }
        }
        out
    }

    pub(crate) fn enumeration_radices(&self) -> Result<Vec<u64>> {
        let order = self.order();
        if order > BigInt::from(MAX_ENUMERATED_ORDER) {
            return Err(Error::UnsupportedGaussSum(format!(
                "group of order {order} is too large to enumerate"
            )));
        }
        Ok(self.invariant_factors.iter().map(|d| d.to_u64().expect("bounded by order")).collect())
    }
}

/// Discriminant quadratic form `q_L: A_L → ℚ/2ℤ` of an even lattice together
/// with the bilinear form `b_L: A_L × A_L → ℚ/ℤ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    group: DiscriminantGroup,
    q_generators: Vec<BigRational>,
    bilinear: Vec<Vec<BigRational>>,
    signature_index: i64,
    // Common denominator of all q(gᵢ) and b(gᵢ, gⱼ); values are stored as numerators.
    level: u64,
    q_num: Vec<u64>,
    b_num: Vec<Vec<u64>>,
}

impl FiniteQuadraticForm {
    pub(super) fn of(lattice: &Lattice) -> Result<Self> {
        let group = lattice.discriminant_group()?;
        if !lattice.is_even() {
            return Err(Error::NotEven);
        }
        let gram = lattice.gram();
        let two = BigRational::from_integer(BigInt::from(2));
        let one = BigRational::one();
        let gens = group.generators();
        let q_generators: Vec<BigRational> =
            gens.iter().map(|g| rat_mod(&gram.bilinear_rat(g, g), &two)).collect();
        let bilinear: Vec<Vec<BigRational>> = gens
            .iter()
            .map(|x| gens.iter().map(|y| rat_mod(&gram.bilinear_rat(x, y), &one)).collect())
            .collect();

        let level = q_generators
            .iter()
            .chain(bilinear.iter().flatten())
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let level = level
            .to_u64()
            .filter(|&l| l < (1 << 31))
            .ok_or_else(|| Error::UnsupportedGaussSum(format!("level {level} too large")))?;
        let lv = BigRational::from_integer(BigInt::from(level));
        let num = |v: &BigRational| (v * &lv).to_integer().to_u64().expect("reduced value");
        let q_num = q_generators.iter().map(num).collect();
        let b_num = bilinear.iter().map(|r| r.iter().map(num).collect()).collect();

        Ok(Self {
            group,
            q_generators,
            bilinear,
            signature_index: lattice.signature().index(),
            level,
            q_num,
            b_num,
        })
    }

    pub fn group(&self) -> &DiscriminantGroup {
        &self.group
    }

    /// `q(gᵢ)` in `[0, 2)`.
    pub fn generator_values(&self) -> &[BigRational] {
        &self.q_generators
    }

    /// `b(gᵢ, gⱼ)` in `[0, 1)`.
    pub fn bilinear_values(&self) -> &[Vec<BigRational>] {
        &self.bilinear
    }

    /// Signature index `n₊ − n₋` of the lattice this form came from.
    pub fn signature_index(&self) -> i64 {
        self.signature_index
    }

    /// Denominator `N` such that every value of `q` lies in `(1/N)ℤ / 2ℤ`.
    pub fn level(&self) -> u64 {
        self.level
    }

    fn value_numerator(&self, coeffs: &[u64]) -> u64 {
        let modulus = 2 * self.level as u128;
        let mut acc: u128 = 0;
        for (i, &ci) in coeffs.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let ci = ci as u128 % modulus;
            acc += ci * ci % modulus * self.q_num[i] as u128;
            for (j, &cj) in coeffs.iter().enumerate().skip(i + 1) {
                acc += 2 * (ci * (cj as u128 % modulus) % modulus) * self.b_num[i][j] as u128;
            }
            acc %= modulus;
        }
        acc as u64
    }

    /// `q(Σ cᵢ gᵢ)` as a rational in `[0, 2)`.
    pub fn value(&self, coeffs: &[BigInt]) -> BigRational {
        assert_eq!(coeffs.len(), self.q_num.len());
        let reduced: Vec<u64> = coeffs
            .iter()
            .zip(self.group.invariant_factors())
            .map(|(c, d)| c.mod_floor(d).to_u64().expect("reduced coefficient"))
            .collect();
        BigRational::new(self.value_numerator(&reduced).into(), self.level.into())
    }

    /// Histogram of `N·q(x) mod 2N` over all `x ∈ A_L`.
    fn numerator_histogram(&self) -> Result<BTreeMap<u64, u64>> {
        let radices = self.group.enumeration_radices()?;
        let mut hist = BTreeMap::new();
        let mut coeffs = vec![0u64; radices.len()];
        loop {
            *hist.entry(self.value_numerator(&coeffs)).or_insert(0) += 1;
            // odometer, last coordinate fastest
            let mut k = coeffs.len();
            loop {
                if k == 0 {
                    return Ok(hist);
                }
                k -= 1;
                coeffs[k] += 1;
                if coeffs[k] < radices[k] {
                    break;
                }
                coeffs[k] = 0;
            }
        }
    }

    /// Multiset `{q(x) : x ∈ A_L}` as value → multiplicity.
    pub fn value_multiset(&self) -> Result<BTreeMap<BigRational, u64>> {
        Ok(self
            .numerator_histogram()?
            .into_iter()
            .map(|(k, c)| (BigRational::new(k.into(), self.level.into()), c))
            .collect())
    }

    /// The multiset of `−q` values, reduced into `[0, 2)`.
    pub fn negated_value_multiset(&self) -> Result<BTreeMap<BigRational, u64>> {
        let two = BigRational::from_integer(BigInt::from(2));
        Ok(self
            .value_multiset()?
            .into_iter()
            .map(|(v, c)| (rat_mod(&-v, &two), c))
            .collect())
    }

    /// `Σ_{x ∈ A_L} exp(πi·q(x))` in a cyclotomic ring.
    pub fn gauss_sum(&self) -> Result<Cyclotomic> {
        let hist = self.numerator_histogram()?;
        let order = self.group.order().to_u64().expect("bounded by enumeration");
        let conductor = gauss::milgram_conductor(2 * self.level, order);
        let step = conductor / (2 * self.level);
        let mut sum = Cyclotomic::zero(conductor);
        for (k, count) in hist {
            sum.add_root_power(k * step, &BigInt::from(count));
        }
        Ok(sum)
    }

    /// `√|A_L| · exp(2πi·σ/8)` in the same ring as [`Self::gauss_sum`].
    pub fn milgram_value(&self) -> Result<Cyclotomic> {
        let order = self.group.order().to_u64().ok_or_else(|| {
            Error::UnsupportedGaussSum("group order does not fit in 64 bits".into())
        })?;
        let conductor = gauss::milgram_conductor(2 * self.level, order);
        let root = gauss::sqrt_of_integer(order, conductor)?;
        let eighth = (self.signature_index.rem_euclid(8) as u64) * (conductor / 8);
        Ok(root.mul_root_power(eighth))
    }

    /// Milgram's formula: the Gauss sum of `q_L` equals `√|A_L|·e^{2πiσ/8}`.
    pub fn milgram_holds(&self) -> Result<bool> {
        Ok(self.gauss_sum()? == self.milgram_value()?)
    }
}

/// Whether `q_S ≅ −q_T` for 3-elementary discriminant forms, decided by the
/// invariant factors and the value multisets, plus Milgram's formula on both sides.
pub fn forms_match_opposite(qs: &FiniteQuadraticForm, qt: &FiniteQuadraticForm) -> Result<bool> {
    for q in [qs, qt] {
        if let Some(d) = q.group().invariant_factors().iter().find(|d| **d != BigInt::from(3)) {
            return Err(Error::NotElementary { p: 3, factor: d.to_string() });
        }
    }
    if qs.group().invariant_factors() != qt.group().invariant_factors() {
        return Ok(false);
    }
    if qs.value_multiset()? != qt.negated_value_multiset()? {
        return Ok(false);
    }
    Ok(qs.milgram_holds()? && qt.milgram_holds()?)
}
