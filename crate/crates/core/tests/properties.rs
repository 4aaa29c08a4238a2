use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use k3lat::fixed_locus::{eisenstein_norm, Eisenstein};
use k3lat::isometry::{discriminant_action, enumerate_isometries, short_vectors};
use k3lat::linalg::{determinant, rational_inverse, signature, smith_normal_form};
use k3lat::named::{hyperbolic_plane, parse_expr, root_a};
use k3lat::{IntMatrix, Lattice, RatMatrix};

fn symmetric(max_n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |upper| {
            let mut rows = vec![vec![0i64; n]; n];
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    rows[i][j] = upper[k];
                    rows[j][i] = upper[k];
                    k += 1;
                }
            }
            IntMatrix::from_rows(&rows).unwrap()
        })
    })
}

fn rectangular() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-12i64..=12, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(&rows).unwrap()
        })
    })
}

/// Summands whose discriminant groups are 3-elementary.
const PIECES: [&str; 7] = ["U", "U(3)", "A2", "A2(-1)", "E6", "E8", "E6*(3)"];

fn three_elementary_sum() -> impl Strategy<Value = (Lattice, Lattice)> {
    (prop::sample::select(&PIECES[..]), prop::sample::select(&PIECES[..]))
        .prop_map(|(a, b)| (parse_expr(a).unwrap(), parse_expr(b).unwrap()))
}

fn is_unimodular(m: &IntMatrix) -> bool {
    determinant(m).unwrap().abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_reconstructs(a in prop_oneof![symmetric(5, 20), rectangular()]) {
        let snf = smith_normal_form(&a);
        prop_assert_eq!(&(&snf.u * &a) * &snf.v, snf.d.clone());
        prop_assert!(is_unimodular(&snf.u) && is_unimodular(&snf.v));
        let d = snf.diagonal();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        prop_assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn determinant_is_product_of_invariant_factors(a in symmetric(5, 20)) {
        let det = determinant(&a).unwrap();
        let product: BigInt = smith_normal_form(&a).diagonal().iter().product();
        prop_assert_eq!(det.abs(), product);
    }

    #[test]
    fn inverse_is_exact(a in symmetric(4, 9)) {
        prop_assume!(!determinant(&a).unwrap().is_zero());
        let inv = rational_inverse(&a).unwrap();
        prop_assert!((&inv * &a).is_identity());
        prop_assert!((&a * &inv).is_identity());
    }

    #[test]
    fn signature_counts_and_negation(a in symmetric(6, 20)) {
        let sig = signature(&a).unwrap();
        prop_assert_eq!(sig.rank(), a.rows());
        let neg = signature(&-&a).unwrap();
        prop_assert_eq!((neg.plus, neg.zero, neg.minus), (sig.minus, sig.zero, sig.plus));
    }

    #[test]
    fn rescaling(a in symmetric(4, 9), m in prop_oneof![-6i64..=-1, 1i64..=6]) {
        let l = Lattice::new(a).unwrap();
        let r = l.rescale(m).unwrap();
        prop_assert_eq!(r.det(), l.det() * BigInt::from(m).pow(l.rank() as u32));
        if m % 2 == 0 || l.is_even() {
            prop_assert!(r.is_even());
        }
    }

    #[test]
    fn minimal_generators_add_over_three_elementary_sums((a, b) in three_elementary_sum()) {
        let s = |l: &Lattice| l.discriminant_group().unwrap().min_generators();
        let sum = a.direct_sum(&b);
        prop_assert_eq!(s(&sum), s(&a) + s(&b));
        prop_assert!(sum.is_p_elementary(3).unwrap());
    }

    #[test]
    fn milgram_on_sums((a, b) in three_elementary_sum(), flip in any::<bool>()) {
        let b = if flip { b.rescale(-1).unwrap() } else { b };
        prop_assert!(a.direct_sum(&b).discriminant_form().unwrap().milgram_holds().unwrap());
    }

    #[test]
    fn q_value_is_independent_of_representative(
        expr in prop::sample::select(&["A2", "U(3)+A2", "E6", "A2(3)+E6*(3)", "D4", "A4", "E7"][..]),
        seed in prop::collection::vec(-9i64..=9, 16),
    ) {
        let l = parse_expr(expr).unwrap();
        let q = l.discriminant_form().unwrap();
        let group = q.group();
        let k = group.min_generators();
        let coeffs: Vec<BigInt> = seed[..k].iter().map(|&c| BigInt::from(c)).collect();
        let shift: Vec<BigRational> = seed[k..].iter().cycle().take(l.rank())
            .map(|&c| BigRational::from_integer(c.into())).collect();
        let x: Vec<BigRational> = group.element(&coeffs).iter().zip(&shift).map(|(a, b)| a + b).collect();
        let norm = l.gram().bilinear_rat(&x, &x);
        let two = BigRational::from_integer(2.into());
        let diff = (norm - q.value(&coeffs)) / two;
        prop_assert!(diff.is_integer(), "{} at {:?}", expr, coeffs);
        prop_assert_eq!(group.coordinates(&x).unwrap(), coeffs.iter().zip(group.invariant_factors())
            .map(|(c, d)| num_integer::Integer::mod_floor(c, d)).collect::<Vec<_>>());
    }

    #[test]
    fn eisenstein_norm_is_rational(a in -50i64..=50, b in -50i64..=50, c in 1i64..=9, d in 1i64..=9) {
        let x = Eisenstein::new(BigRational::new(a.into(), c.into()), BigRational::new(b.into(), d.into()));
        let n = &x * &x.conj();
        prop_assert!(n.is_rational());
        prop_assert_eq!(eisenstein_norm(&x), x.norm());
        prop_assert!(!x.norm().is_negative());
    }

    #[test]
    fn short_vectors_match_box_search(rows in prop::collection::vec(-3i64..=3, 9), t in 0i64..=12) {
        // G = BᵀB is positive semidefinite; keep the definite ones
        let b = IntMatrix::from_rows(&rows.chunks(3).collect::<Vec<_>>()).unwrap();
        let g = &b.transpose() * &b;
        prop_assume!(!determinant(&g).unwrap().is_zero());
        let l = Lattice::new(g.clone()).unwrap();
        let target = BigInt::from(t);
        // |xᵢ|² ≤ t·(G⁻¹)ᵢᵢ for any x with xᵀGx ≤ t
        let inv: RatMatrix = rational_inverse(&g).unwrap();
        let bounds: Vec<i64> = (0..3).map(|i| {
            let r = &inv[(i, i)] * BigRational::from_integer(target.clone());
            let mut k = 0i64;
            while BigRational::from_integer(((k + 1) * (k + 1)).into()) <= r { k += 1; }
            k
        }).collect();
        let mut want = Vec::new();
        for x in -bounds[0]..=bounds[0] {
            for y in -bounds[1]..=bounds[1] {
                for z in -bounds[2]..=bounds[2] {
                    let v = vec![BigInt::from(x), BigInt::from(y), BigInt::from(z)];
                    if g.bilinear(&v, &v) == target {
                        want.push(v);
                    }
                }
            }
        }
        want.sort();
        prop_assert_eq!(short_vectors(&l, &target).unwrap(), want.clone());
        let neg = l.rescale(-1).unwrap();
        prop_assert_eq!(short_vectors(&neg, &-target).unwrap(), want);
    }
}

#[test]
fn discriminant_action_is_a_homomorphism() {
    for l in [root_a(2), root_a(2).rescale(3).unwrap(), parse_expr("A2(3)+A2").unwrap()] {
        let group: Vec<IntMatrix> = enumerate_isometries(&l).unwrap().into_iter().map(|i| i.matrix().clone()).collect();
        for a in group.iter().step_by(3) {
            for b in &group {
                let ab = discriminant_action(&l, &(a * b)).unwrap();
                let composed = discriminant_action(&l, a).unwrap().compose(&discriminant_action(&l, b).unwrap());
                assert_eq!(ab, composed);
            }
        }
    }
}

#[test]
fn enumerated_groups_are_closed_and_unimodular() {
    for l in [root_a(2).rescale(3).unwrap(), parse_expr("A1+A2").unwrap()] {
        let group: Vec<IntMatrix> = enumerate_isometries(&l).unwrap().into_iter().map(|i| i.matrix().clone()).collect();
        for a in &group {
            assert!(is_unimodular(a));
            assert_eq!(&(&a.transpose() * l.gram()) * a, *l.gram());
            for b in group.iter().take(4) {
                assert!(group.contains(&(a * b)));
            }
        }
    }
    assert_eq!(enumerate_isometries(&parse_expr("A1+A2").unwrap()).unwrap().len(), 24);
}

#[test]
fn hyperbolic_plane_is_self_dual() {
    let u = hyperbolic_plane();
    assert!(u.discriminant_group().unwrap().is_trivial());
    assert_eq!(u.rescale(3).unwrap().discriminant_group().unwrap().invariant_factors(), [BigInt::from(3), BigInt::from(3)]);
}
