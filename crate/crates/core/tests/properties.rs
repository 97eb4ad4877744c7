use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use octomagic::hurwitz::{make_algebra, AlgebraName};
use octomagic::liealg::{derivations_of, so3, LieAlgebra};
use octomagic::ratlin::{rank, symmetric_signature, Rat, RatMatrix, SparseVec};

fn big(r: &Rat) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

fn rat() -> impl Strategy<Value = Rat> {
    // spans both the i64 fast path and the promoted representation
    prop_oneof![
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rat::new(n, d)),
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rat::new(n, d)),
    ]
}

/// Column operations as (target, source, multiplier); each step is unimodular.
fn transvections(n: usize) -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0..n, 0..n, -3i64..=3), 0..3 * n)
}

fn apply(n: usize, ops: &[(usize, usize, i64)], swap_sign: bool) -> RatMatrix {
    let mut cols: Vec<SparseVec> = (0..n).map(SparseVec::unit).collect();
    for &(t, s, c) in ops {
        if t != s && c != 0 {
            cols[t] = cols[t].axpy(&Rat::int(c), &cols[s]);
        }
    }
    if swap_sign && n > 1 {
        cols.swap(0, n - 1);
        cols[0] = cols[0].neg();
    }
    RatMatrix::from_sparse_rows(n, cols).transpose()
}

fn symmetric(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |v| {
        let mut rows = vec![vec![0i64; n]; n];
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = it.next().unwrap();
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        RatMatrix::from_i64(&rows)
    })
}

proptest! {
    #[test]
    fn rat_matches_big_rational(a in rat(), b in rat()) {
        prop_assert_eq!(big(&(a.clone() + b.clone())), big(&a) + big(&b));
        prop_assert_eq!(big(&(a.clone() - b.clone())), big(&a) - big(&b));
        prop_assert_eq!(big(&(a.clone() * b.clone())), big(&a) * big(&b));
        if !b.is_zero() {
            prop_assert_eq!(big(&(a.clone() / b.clone())), big(&a) / big(&b));
        }
        prop_assert_eq!(a.cmp(&b), big(&a).cmp(&big(&b)));
    }

    #[test]
    fn rat_text_and_json_round_trip(a in rat()) {
        prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rat>(&json).unwrap(), a);
    }

    #[test]
    fn signature_is_a_congruence_invariant(b in symmetric(6), ops in transvections(6), flip in any::<bool>()) {
        let s = apply(6, &ops, flip);
        let moved = s.transpose().mul(&b).mul(&s);
        let before = symmetric_signature(&b).unwrap();
        let after = symmetric_signature(&moved).unwrap();
        prop_assert_eq!(before, after);
        prop_assert_eq!(before.plus + before.minus, rank(&b));
    }

    #[test]
    fn killing_character_survives_basis_change(ops in transvections(3), flip in any::<bool>()) {
        let l = so3();
        let moved = l.change_basis(&apply(3, &ops, flip)).unwrap();
        prop_assert!(moved.jacobi_check());
        prop_assert_eq!(moved.character().unwrap(), -3);
    }
}

fn der_hs() -> LieAlgebra {
    derivations_of(&make_algebra(&AlgebraName::Hs).unwrap(), "d").unwrap().algebra
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn split_quaternion_derivations_stay_sl2(ops in transvections(3)) {
        let l = der_hs();
        let s = apply(3, &ops, true);
        let moved = l.change_basis(&s).unwrap();
        let k = moved.killing_form();
        let sig = symmetric_signature(&k).unwrap();
        prop_assert_eq!((sig.plus, sig.minus), (2, 1));
        // Killing forms transform by congruence with S
        prop_assert_eq!(k, s.transpose().mul(&l.killing_form()).mul(&s));
    }
}

#[test]
fn big_values_demote() {
    let huge = Rat::from(BigRational::new(BigInt::from(i64::MAX) * 4, BigInt::from(4)));
    assert_eq!(huge.as_small(), Some((i64::MAX, 1)));
}
