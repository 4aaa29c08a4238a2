//! Exact arithmetic in `ℚ(ζ)`, `ζ` a primitive cube root of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `a + bζ` with `ζ² = −1 − ζ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub a: BigRational,
    pub b: BigRational,
}

impl Eisenstein {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn zeta() -> Self {
        Self::from_ints(0, 1)
    }

    /// Complex conjugate: `ζ ↦ ζ² = −1 − ζ`.
    pub fn conj(&self) -> Self {
        Self::new(&self.a - &self.b, -&self.b)
    }

    /// `x·x̄ = a² − ab + b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.a * c, &self.b * c)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl Add for &Eisenstein {
    type Output = Eisenstein;

    fn add(self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Eisenstein {
    type Output = Eisenstein;

    fn sub(self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &Eisenstein {
    type Output = Eisenstein;

    // (a + bζ)(c + dζ) = ac + (ad + bc)ζ + bd(−1 − ζ)
    fn mul(self, rhs: &Eisenstein) -> Eisenstein {
        let bd = &self.b * &rhs.b;
        Eisenstein::new(&self.a * &rhs.a - &bd, &self.a * &rhs.b + &self.b * &rhs.a - bd)
    }
}

impl Neg for &Eisenstein {
    type Output = Eisenstein;

    fn neg(self) -> Eisenstein {
        Eisenstein::new(-&self.a, -&self.b)
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;

    fn add(self, rhs: Eisenstein) -> Eisenstein {
        &self + &rhs
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;

    fn mul(self, rhs: Eisenstein) -> Eisenstein {
        &self * &rhs
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;

    fn neg(self) -> Eisenstein {
        -&self
    }
}

impl fmt::Debug for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "ζ"),
            (true, false) if self.b == -BigRational::one() => write!(f, "-ζ"),
            (true, false) => write!(f, "({})ζ", self.b),
            (false, false) => write!(f, "{} + ({})ζ", self.a, self.b),
        }
    }
}

pub(crate) fn third(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(3))
}
