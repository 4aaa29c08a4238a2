//! Exact arithmetic in cyclotomic rings `ℤ[ζ_m]`, enough to evaluate Gauss
//! sums of finite quadratic forms and the right-hand side of Milgram's formula.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An element `Σ cₖ ζ_m^k` of `ℤ[ζ_m]`, stored unreduced with `m` coefficients.
/// Equality reduces both sides modulo the `m`-th cyclotomic polynomial.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    pub fn zero(conductor: u64) -> Self {
        assert!(conductor > 0);
        Self { conductor, coeffs: vec![BigInt::zero(); conductor as usize] }
    }

    pub fn root_power(conductor: u64, k: u64) -> Self {
        let mut z = Self::zero(conductor);
        z.add_root_power(k, &BigInt::one());
        z
    }

    pub fn from_integer(conductor: u64, n: BigInt) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = n;
        z
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `self += coeff · ζ^k`
    pub fn add_root_power(&mut self, k: u64, coeff: &BigInt) {
        self.coeffs[(k % self.conductor) as usize] += coeff;
    }

    /// `self · ζ^k`
    pub fn mul_root_power(&self, k: u64) -> Self {
        let m = self.conductor as usize;
        let mut out = Self::zero(self.conductor);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(i + k as usize) % m] = c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        let m = self.conductor as usize;
        let mut out = Self::zero(self.conductor);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out.coeffs[(i + j) % m] += a * b;
            }
        }
        out
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        Self { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * n).collect() }
    }

    /// Coefficients of the canonical representative of degree `< φ(m)`.
    pub fn reduced(&self) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(self.conductor);
        let deg = phi.len() - 1;
        let mut r = self.coeffs.clone();
        // Φ_m is monic, so long division stays integral.
        for top in (deg..r.len()).rev() {
            let lead = std::mem::take(&mut r[top]);
            if lead.is_zero() {
                continue;
            }
            for (k, p) in phi.iter().enumerate().take(deg) {
                r[top - deg + k] -= &lead * p;
            }
        }
        r.truncate(deg);
        r
    }

    fn lifted(&self, conductor: u64) -> Self {
        debug_assert_eq!(conductor % self.conductor, 0);
        let step = conductor / self.conductor;
        let mut out = Self::zero(conductor);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i * step as usize] = c.clone();
        }
        out
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.reduced() == other.reduced();
        }
        let m = self.conductor.lcm(&other.conductor);
        self.lifted(m).reduced() == other.lifted(m).reduced()
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .reduced()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                _ => format!("{c}*z{}^{k}", self.conductor),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (k, d) in den.iter().enumerate() {
            rem[i + k] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// `Φ_m` in ascending coefficients, from `xᵐ − 1 = Π_{d|m} Φ_d`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = poly_div_exact(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Conductor that holds `exp(πi·k/level)`, the eighth roots of unity, and `√order`.
pub(crate) fn milgram_conductor(two_level: u64, order: u64) -> u64 {
    let mut m = two_level.lcm(&8);
    for (p, e) in factorize(order) {
        if e % 2 == 1 && p != 2 {
            m = m.lcm(&(4 * p));
        }
    }
    m
}

/// `√n` as an element of `ℤ[ζ_m]`, built from quadratic Gauss sums.
pub(crate) fn sqrt_of_integer(n: u64, conductor: u64) -> Result<Cyclotomic> {
    let m = conductor;
    let mut square_part = BigInt::one();
    let mut root = Cyclotomic::from_integer(m, BigInt::one());
    for (p, e) in factorize(n) {
        square_part *= BigInt::from(p).pow(e / 2);
        if e % 2 == 0 {
            continue;
        }
        let sqrt_p = if p == 2 {
            if !m.is_multiple_of(8) {
                return Err(Error::UnsupportedGaussSum(format!("√2 needs 8 | {m}")));
            }
            let mut s = Cyclotomic::root_power(m, m / 8);
            s.add_root_power(7 * m / 8, &BigInt::one());
            s
        } else {
            if !m.is_multiple_of(4 * p) {
                return Err(Error::UnsupportedGaussSum(format!("√{p} needs {} | {m}", 4 * p)));
            }
            let mut g = Cyclotomic::zero(m);
            for x in 0..p {
                g.add_root_power((m / p) * (x * x % p), &BigInt::one());
            }
            // g² = (−1)^((p−1)/2)·p, so g = i√p when p ≡ 3 mod 4
            if p % 4 == 1 { g } else { g.mul_root_power(3 * m / 4) }
        };
        root = root.mul(&sqrt_p);
    }
    Ok(root.scale(&square_part))
}
