//! Exact integer and rational matrix kernels.

mod matrix;
mod smith;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use matrix::{IntMatrix, RatMatrix};
pub use smith::{smith_normal_form, SmithForm};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                // exact by Sylvester's identity
                m[(i, j)] = v / &prev;
            }
        }
        prev = m[(k, k)].clone();
    }
    Ok(sign * &m[(n - 1, n - 1)])
}

/// Exact inverse over the rationals by Gauss-Jordan elimination.
pub fn rational_inverse(a: &IntMatrix) -> Result<RatMatrix> {
    let n = a.require_square()?;
    let mut m = RatMatrix::from(a);
    let mut inv = RatMatrix::identity(n);
    for k in 0..n {
        let p = (k..n).find(|&i| !m[(i, k)].is_zero()).ok_or(Error::SingularMatrix)?;
        if p != k {
            for j in 0..n {
                let t = m[(k, j)].clone();
                m[(k, j)] = m[(p, j)].clone();
                m[(p, j)] = t;
                let t = inv[(k, j)].clone();
                inv[(k, j)] = inv[(p, j)].clone();
                inv[(p, j)] = t;
            }
        }
        let pivot = m[(k, k)].clone();
        for j in 0..n {
            m[(k, j)] = &m[(k, j)] / &pivot;
            inv[(k, j)] = &inv[(k, j)] / &pivot;
        }
        for i in 0..n {
            if i == k || m[(i, k)].is_zero() {
                continue;
            }
            let f = m[(i, k)].clone();
            for j in 0..n {
                let d = &f * &m[(k, j)];
                m[(i, j)] -= d;
                let d = &f * &inv[(k, j)];
                inv[(i, j)] -= d;
            }
        }
    }
    Ok(inv)
}

/// Characteristic polynomial `det(x·I − A)` by Faddeev-LeVerrier, coefficients
/// in ascending degree. Every division in the recurrence is exact over ℤ.
pub fn characteristic_polynomial(a: &IntMatrix) -> Result<Vec<BigInt>> {
    let n = a.require_square()?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        m = next;
        let t = (a * &m).trace();
        let (q, r) = t.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
    }
    Ok(coeffs)
}

/// Inertia of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub plus: usize,
    pub zero: usize,
    pub minus: usize,
}

impl Signature {
    pub fn new(plus: usize, zero: usize, minus: usize) -> Self {
        Self { plus, zero, minus }
    }

    pub fn rank(&self) -> usize {
        self.plus + self.zero + self.minus
    }

    /// `plus − minus`, the index that enters the Milgram formula.
    pub fn index(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }

    pub fn is_definite(&self) -> bool {
        self.zero == 0 && (self.plus == 0 || self.minus == 0)
    }
}

fn sign_variations<'a>(coeffs: impl Iterator<Item = &'a BigInt>, alternate: bool) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for (i, c) in coeffs.enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut positive = c.is_positive();
        if alternate && i % 2 == 1 {
            positive = !positive;
        }
        if last.is_some_and(|l| l != positive) {
            count += 1;
        }
        last = Some(positive);
    }
    count
}

/// Signature of a symmetric integer matrix. Counts come from Descartes' rule
/// applied to the characteristic polynomial, which is exact because every
/// root of a real symmetric matrix's characteristic polynomial is real.
pub fn signature(g: &IntMatrix) -> Result<Signature> {
    g.require_square()?;
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let p = characteristic_polynomial(g)?;
    let zero = p.iter().take_while(|c| c.is_zero()).count();
    let reduced = &p[zero..];
    // The parity of the shift does not matter for p(−x): only relative signs count.
    let plus = sign_variations(reduced.iter(), false);
    let minus = sign_variations(reduced.iter(), true);
    Ok(Signature { plus, zero, minus })
}

/// `⌊√n⌋` for `n ≥ 0`.
pub(crate) fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    n.sqrt()
}

/// Floor of a rational.
pub(crate) fn floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Representative of `x mod m` in `[0, m)` for positive rational `m`.
pub(crate) fn rat_mod(x: &BigRational, m: &BigRational) -> BigRational {
    let q = floor(&(x / m));
    x - m * BigRational::from_integer(q)
}
