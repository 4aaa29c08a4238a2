//! Catalog of named lattices and a parser for direct-sum expressions such as
//! `U(3)+A2^4` or `U ⊕ E8^2 ⊕ A2`.
//!
//! Root lattices use the negative of the Cartan matrix, so `A_n`, `D_n`, `E_n`
//! are even and negative definite.
//!
//! Grammar (whitespace ignored, `⊕` is an alias for `+`):
//!
//! ```text
//! expr   := atom ('+' atom)*
//! atom   := base suffix*
//! suffix := '(' int ')' | '^' posint
//! base   := 'U' | 'A'n | 'D'n | 'E6' | 'E7' | 'E8' | 'E6*' | 'K3'
//! ```
//!
//! Suffixes apply left to right. `E6*` denotes the dual of `E6` and must be
//! followed immediately by a scale divisible by 3 so that the result is integral.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{rational_inverse, IntMatrix};

fn dynkin(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = BigInt::from(-2);
    }
    for &(a, b) in edges {
        g[(a, b)] = BigInt::from(1);
        g[(b, a)] = BigInt::from(1);
    }
    g
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

pub fn hyperbolic_plane() -> Lattice {
    Lattice::from_rows(&[[0, 1], [1, 0]]).expect("symmetric").with_name("U")
}

pub fn root_a(n: usize) -> Lattice {
    assert!(n >= 1);
    Lattice::new(dynkin(n, &chain(n))).expect("symmetric").with_name(format!("A{n}"))
}

pub fn root_d(n: usize) -> Lattice {
    assert!(n >= 4);
    let mut edges = chain(n - 1);
    edges.push((n - 3, n - 1));
    Lattice::new(dynkin(n, &edges)).expect("symmetric").with_name(format!("D{n}"))
}

pub fn root_e(n: usize) -> Lattice {
    assert!((6..=8).contains(&n));
    let mut edges = chain(n - 1);
    edges.push((2, n - 1));
    Lattice::new(dynkin(n, &edges)).expect("symmetric").with_name(format!("E{n}"))
}

/// `E6*(m)`: the dual of `E6` with its form scaled by `m`. Integral iff `3 | m`.
pub fn dual_e6(m: i64) -> Result<Lattice> {
    let inv = rational_inverse(root_e(6).gram())?;
    let scaled = inv.scaled(&BigRational::from_integer(BigInt::from(m)));
    let gram = scaled.to_integer().ok_or_else(|| Error::Parse {
        offset: 0,
        message: format!("E6*({m}) is not integral; the scale must be a multiple of 3"),
    })?;
    Ok(Lattice::new(gram)?.with_name(format!("E6*({m})")))
}

/// The K3 lattice `U^3 ⊕ E8^2`.
pub fn k3() -> Lattice {
    hyperbolic_plane().power(3).direct_sum(&root_e(8).power(2)).with_name("K3")
}

fn base(name: &str) -> Option<Lattice> {
    let index = |prefix: &str| -> Option<usize> {
        let rest = name.strip_prefix(prefix)?;
        if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        rest.parse().ok()
    };
    match name {
        "U" => Some(hyperbolic_plane()),
        "K3" => Some(k3()),
        "E6" | "E7" | "E8" => Some(root_e(index("E")?)),
        _ if name.starts_with('A') => index("A").filter(|&n| n >= 1).map(root_a),
        _ if name.starts_with('D') => index("D").filter(|&n| n >= 4).map(root_d),
        _ => None,
    }
}

/// Looks up a single catalog identifier: `U`, `A<n>`, `D<n>`, `E6`, `E7`, `E8`, `E6*(3)`, `K3`.
pub fn build(name: &str) -> Result<Lattice> {
    if name == "E6*(3)" {
        return dual_e6(3);
    }
    base(name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self, allow_sign: bool) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if allow_sign && matches!(self.peek(), Some('-' | '+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.error(self.pos, "expected an integer");
        }
        match self.text[start..self.pos].parse() {
            Ok(v) => Ok(v),
            Err(_) => self.error(start, "integer out of range"),
        }
    }

    fn atom(&mut self) -> Result<Lattice> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        let ident = &self.text[start..self.pos];
        if ident.is_empty() {
            return match self.peek() {
                Some(c) => self.error(start, format!("unexpected `{c}`, expected a lattice name")),
                None => self.error(start, "unexpected end of input, expected a lattice name"),
            };
        }

        let mut lattice = if self.peek() == Some('*') {
            self.pos += 1;
            if ident != "E6" {
                return self.error(start, format!("`*` is only allowed in `E6*`, not `{ident}*`"));
            }
            let at = self.pos;
            if !self.eat('(') {
                return self.error(at, "`E6*` must be followed by a scale such as `(3)`");
            }
            let m = self.integer(true)?;
            if !self.eat(')') {
                return self.error(self.pos, "expected `)`");
            }
            if m % 3 != 0 {
                return self.error(at, format!("E6*({m}) is not integral"));
            }
            dual_e6(m)?
        } else {
            base(ident).ok_or_else(|| Error::UnknownName(ident.to_string()))?
        };

        loop {
            if self.eat('(') {
                let at = self.pos;
                let m = self.integer(true)?;
                if m == 0 {
                    return self.error(at, "scale must be nonzero");
                }
                if !self.eat(')') {
                    return self.error(self.pos, "expected `)`");
                }
                lattice = lattice.rescale(m)?;
            } else if self.eat('^') {
                let at = self.pos;
                let k = self.integer(false)?;
                if k < 1 {
                    return self.error(at, "exponent must be at least 1");
                }
                lattice = lattice.power(k as usize);
            } else {
                return Ok(lattice);
            }
        }
    }

    fn expr(&mut self) -> Result<Lattice> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.eat('+') || self.eat('⊕') {
                acc = acc.direct_sum(&self.atom()?);
            } else if self.pos == self.text.len() {
                return Ok(acc);
            } else {
                let c = self.peek().unwrap_or(' ');
                return self.error(self.pos, format!("unexpected `{c}`"));
            }
        }
    }
}

/// Parses a lattice expression and builds the corresponding lattice.
pub fn parse_expr(text: &str) -> Result<Lattice> {
    Parser { text, pos: 0 }.expr()
}
