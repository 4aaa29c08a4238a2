//! Exhaustive search in definite lattices: vectors of a given norm and the
//! full automorphism group.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{action_in_group, order_of};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{floor, isqrt, IntMatrix, RatMatrix};

/// Largest rank accepted by [`enumerate_isometries`].
pub const MAX_ENUMERATION_RANK: usize = 8;

/// Positive definite Gram matrix of `L` or `L(−1)`, and whether it was negated.
fn positive_gram(lattice: &Lattice) -> Result<(IntMatrix, bool)> {
    let sig = lattice.signature();
    if !sig.is_definite() {
        return Err(Error::NotDefinite);
    }
    if sig.minus > 0 {
        Ok((-lattice.gram(), true))
    } else {
        Ok((lattice.gram().clone(), false))
    }
}

/// Exact decomposition `vᵀGv = Σᵢ qᵢᵢ (vᵢ + Σ_{j>i} qᵢⱼ vⱼ)²` for positive definite `G`.
fn completed_squares(g: &IntMatrix) -> RatMatrix {
    let n = g.rows();
    let mut q = RatMatrix::from(g);
    for i in 0..n {
        for j in i + 1..n {
            q[(j, i)] = q[(i, j)].clone();
            q[(i, j)] = &q[(i, j)] / &q[(i, i)];
        }
        for k in i + 1..n {
            for l in k..n {
                let d = &q[(k, i)] * &q[(i, l)];
                q[(k, l)] -= d;
            }
        }
    }
    q
}

struct Search<'a> {
    q: &'a RatMatrix,
    x: Vec<BigInt>,
    out: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    /// Fills coordinates `level-1, …, 0` with budget `rest`; keeps vectors that use it exactly.
    fn descend(&mut self, level: usize, rest: BigRational) {
        if level == 0 {
            if rest.is_zero() {
                self.out.push(self.x.clone());
            }
            return;
        }
        let i = level - 1;
        let n = self.x.len();
        let center: BigRational = (i + 1..n)
            .map(|j| &self.q[(i, j)] * BigRational::from_integer(self.x[j].clone()))
            .sum();
        let qii = self.q[(i, i)].clone();
        let radius: BigInt = isqrt(&floor(&(&rest / &qii))) + 1;
        let mid: BigInt = floor(&-&center);
        let mut xi: BigInt = &mid - &radius;
        let hi: BigInt = &mid + &radius + 1;
        while xi <= hi {
            let y = BigRational::from_integer(xi.clone()) + &center;
            let used = &qii * &y * &y;
            if used <= rest {
                self.x[i] = xi.clone();
                self.descend(i, &rest - used);
            }
            xi += 1;
        }
        self.x[i] = BigInt::zero();
    }
}

/// Every `v` with `vᵀGv = target`, sorted lexicographically.
pub fn short_vectors(lattice: &Lattice, target: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let (g, negated) = positive_gram(lattice)?;
    let target = if negated { -target } else { target.clone() };
    let n = g.rows();
    if target.is_negative() {
        return Ok(Vec::new());
    }
    let q = completed_squares(&g);
    let mut search = Search { q: &q, x: vec![BigInt::zero(); n], out: Vec::new() };
    search.descend(n, BigRational::from_integer(target));
    let mut out = search.out;
    debug_assert!(out.iter().all(|v| lattice.gram().bilinear(v, v).abs() == g.bilinear(v, v)));
    out.sort();
    Ok(out)
}

/// Calls `visit` on every automorphism of a definite lattice until it breaks.
///
/// Images of the basis vectors are chosen one at a time among vectors of the
/// right norm, keeping only those with the right products against earlier choices.
pub fn for_each_isometry<F>(lattice: &Lattice, mut visit: F) -> Result<()>
where
    F: FnMut(&IntMatrix) -> ControlFlow<()>,
{
    let n = lattice.rank();
    if n > MAX_ENUMERATION_RANK {
        return Err(Error::RankTooLarge { rank: n, limit: MAX_ENUMERATION_RANK });
    }
    let (g, _) = positive_gram(lattice)?;
    let mut candidates = Vec::with_capacity(n);
    for i in 0..n {
        let vs = short_vectors(&Lattice::new(g.clone())?, &g[(i, i)])?;
        let gvs: Vec<Vec<BigInt>> = vs.iter().map(|v| g.mul_vec(v)).collect();
        candidates.push((vs, gvs));
    }
    let mut chosen = Vec::with_capacity(n);
    let _ = extend(&g, &candidates, &mut chosen, &mut visit);
    Ok(())
}

type Candidates = (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>);

fn extend<F>(g: &IntMatrix, cands: &[Candidates], chosen: &mut Vec<usize>, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&IntMatrix) -> ControlFlow<()>,
{
    let i = chosen.len();
    if i == cands.len() {
        let n = cands.len();
        let mut m = IntMatrix::zeros(n, n);
        for (j, &c) in chosen.iter().enumerate() {
            for (r, e) in cands[j].0[c].iter().enumerate() {
                m[(r, j)] = e.clone();
            }
        }
        return visit(&m);
    }
    'next: for (c, v) in cands[i].0.iter().enumerate() {
        for (j, &cj) in chosen.iter().enumerate() {
            let gv = &cands[j].1[cj];
            let p: BigInt = v.iter().zip(gv).map(|(a, b)| a * b).sum();
            if p != g[(i, j)] {
                continue 'next;
            }
        }
        chosen.push(c);
        let flow = extend(g, cands, chosen, visit);
        chosen.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// The full automorphism group of a definite lattice of rank at most 8.
pub fn enumerate_isometries(lattice: &Lattice) -> Result<Vec<super::Isometry>> {
    let mut out = Vec::new();
    for_each_isometry(lattice, |m| {
        out.push(super::Isometry { lattice: lattice.clone(), matrix: m.clone() });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Whether some automorphism of order 3 acts trivially on `A_L`.
pub fn has_order3_trivial_on_a(lattice: &Lattice) -> Result<bool> {
    let group = lattice.discriminant_group()?;
    let mut found = false;
    for_each_isometry(lattice, |m| {
        if order_of(m, 3) == Some(3) && action_in_group(&group, m).trivial {
            found = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    Ok(found)
}

/// Number of automorphisms of order exactly 3, with how many act trivially on `A_L`.
pub fn count_order3(lattice: &Lattice) -> Result<(usize, usize)> {
    let group = lattice.discriminant_group()?;
    let (mut total, mut trivial) = (0, 0);
    for_each_isometry(lattice, |m| {
        if order_of(m, 3) == Some(3) {
            total += 1;
            if action_in_group(&group, m).trivial {
                trivial += 1;
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok((total, trivial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;
    use crate::named::{hyperbolic_plane, root_a, root_d, root_e};

    fn vecs(v: &[[i64; 2]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn a2_roots() {
        let a2 = root_a(2);
        let roots = short_vectors(&a2, &BigInt::from(-2)).unwrap();
        assert_eq!(roots, vecs(&[[-1, -1], [-1, 0], [0, -1], [0, 1], [1, 0], [1, 1]]));
        assert!(short_vectors(&a2, &BigInt::from(-1)).unwrap().is_empty());
        assert!(short_vectors(&a2, &BigInt::from(2)).unwrap().is_empty());
        assert_eq!(short_vectors(&a2, &BigInt::zero()).unwrap(), vecs(&[[0, 0]]));
        let a23 = a2.rescale(3).unwrap();
        assert_eq!(short_vectors(&a23, &BigInt::from(-6)).unwrap(), roots);
    }

    #[test]
    fn brute_force_agrees_on_small_norms() {
        // a² − ab + b² = k, searched in a box
        let a2 = root_a(2);
        for k in 0..8i64 {
            let mut want = Vec::new();
            for a in -6i64..=6 {
                for b in -6i64..=6 {
                    if a * a - a * b + b * b == k {
                        want.push(vec![BigInt::from(a), BigInt::from(b)]);
                    }
                }
            }
            assert_eq!(short_vectors(&a2, &BigInt::from(-2 * k)).unwrap(), want, "k = {k}");
        }
    }

    #[test]
    fn root_counts() {
        for (l, roots) in [(root_a(3), 12), (root_d(4), 24), (root_e(6), 72), (root_e(8), 240)] {
            assert_eq!(short_vectors(&l, &BigInt::from(-2)).unwrap().len(), roots);
        }
    }

    #[test]
    fn indefinite_is_rejected() {
        let u = hyperbolic_plane();
        assert_eq!(short_vectors(&u, &BigInt::zero()), Err(Error::NotDefinite));
        assert!(matches!(enumerate_isometries(&u), Err(Error::NotDefinite)));
        assert!(matches!(
            enumerate_isometries(&root_a(9)),
            Err(Error::RankTooLarge { rank: 9, limit: 8 })
        ));
    }

    #[test]
    fn group_orders() {
        let a2 = root_a(2);
        assert_eq!(enumerate_isometries(&a2).unwrap().len(), 12);
        assert_eq!(enumerate_isometries(&a2.rescale(3).unwrap()).unwrap().len(), 12);
        let rank1 = Lattice::from_rows(&[[-2]]).unwrap();
        let mats: Vec<_> = enumerate_isometries(&rank1).unwrap().into_iter().map(|i| i.matrix).collect();
        assert_eq!(mats, vec![IntMatrix::from_rows(&[[-1]]).unwrap(), IntMatrix::identity(1)]);
        // W(A₃) × {±1}
        assert_eq!(enumerate_isometries(&root_a(3)).unwrap().len(), 48);
        assert_eq!(enumerate_isometries(&root_d(4)).unwrap().len(), 1152);
    }

    #[test]
    fn enumerated_matrices_are_unimodular_isometries() {
        let a2 = root_a(2).direct_sum(&Lattice::from_rows(&[[-6]]).unwrap());
        for iso in enumerate_isometries(&a2).unwrap() {
            assert!(super::super::is_isometry(&a2, &iso.matrix).unwrap());
            assert_eq!(determinant(&iso.matrix).unwrap().abs(), BigInt::from(1));
        }
    }

    #[test]
    fn group_is_closed() {
        let a2 = root_a(2);
        let group: Vec<IntMatrix> = enumerate_isometries(&a2).unwrap().into_iter().map(|i| i.matrix).collect();
        for a in &group {
            for b in &group {
                assert!(group.contains(&(a * b)));
            }
        }
    }

    #[test]
    fn order_three_elements() {
        let a2 = root_a(2);
        assert!(has_order3_trivial_on_a(&a2).unwrap());
        assert_eq!(count_order3(&a2).unwrap(), (2, 2));
        let a23 = a2.rescale(3).unwrap();
        assert!(!has_order3_trivial_on_a(&a23).unwrap());
        assert_eq!(count_order3(&a23).unwrap(), (2, 0));
    }

    #[test]
    fn isqrt_bound_is_not_off_by_one() {
        let l = Lattice::from_rows(&[[-4]]).unwrap();
        assert_eq!(short_vectors(&l, &BigInt::from(-36)).unwrap(), vec![vec![BigInt::from(-3)], vec![BigInt::from(3)]]);
        assert_eq!(isqrt(&BigInt::from(35)), BigInt::from(5));
    }
}
