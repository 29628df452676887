//! Property tests for the algebraic invariants of words, matrices and
//! combinatorial helpers.

use num_bigint::BigInt;
use pgraded::*;
use proptest::prelude::*;

fn arb_sigma() -> impl Strategy<Value = Sigma> {
    (0u8..4).prop_map(|i| Sigma::from_index(i).unwrap())
}

fn arb_word(q: usize) -> impl Strategy<Value = PauliWord> {
    (any::<bool>(), proptest::collection::vec(arb_sigma(), q)).prop_map(|(neg, symbols)| {
        PauliWord::new(if neg { Sign::Minus } else { Sign::Plus }, symbols)
    })
}

fn arb_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-6i64..=6, n * n)
        .prop_map(move |entries| IntMatrix::from_fn(n, n, |i, j| BigInt::from(entries[i * n + j])))
}

proptest! {
    #[test]
    fn word_products_are_multiplicative_on_matrices(
        q in 1usize..=3,
        seed_u in proptest::collection::vec((any::<bool>(), proptest::collection::vec(0u8..4, 3)), 2),
    ) {
        // Build two words of the same length from the seed material.
        let mk = |(neg, syms): &(bool, Vec<u8>)| {
            let symbols = syms.iter().take(q).map(|&i| Sigma::from_index(i).unwrap()).collect();
            PauliWord::new(if *neg { Sign::Minus } else { Sign::Plus }, symbols)
        };
        let u = mk(&seed_u[0]);
        let v = mk(&seed_u[1]);
        let prod = u.mul(&v).unwrap();
        prop_assert_eq!(prod.to_matrix(), u.to_matrix().mul(&v.to_matrix()).unwrap());
        prop_assert_eq!(prod.degree(), u.degree().mul(&v.degree()).unwrap());
    }

    #[test]
    fn word_multiplication_is_associative(
        (u, v, w) in (1usize..=3).prop_flat_map(|q| (arb_word(q), arb_word(q), arb_word(q)))
    ) {
        let left = u.mul(&v).unwrap().mul(&w).unwrap();
        let right = u.mul(&v.mul(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn transpose_commutes_with_the_matrix_realization(
        w in (1usize..=3).prop_flat_map(arb_word)
    ) {
        prop_assert_eq!(w.transpose().to_matrix(), w.to_matrix().transpose());
    }

    #[test]
    fn determinants_are_multiplicative(x in arb_matrix(4), y in arb_matrix(4)) {
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(xy.det().unwrap(), x.det().unwrap() * y.det().unwrap());
    }

    #[test]
    fn matrix_multiplication_is_associative(
        x in arb_matrix(3), y in arb_matrix(3), z in arb_matrix(3)
    ) {
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn kronecker_mixed_product(
        x in arb_matrix(2), y in arb_matrix(2), u in arb_matrix(2), v in arb_matrix(2)
    ) {
        let left = x.kron(&y).mul(&u.kron(&v)).unwrap();
        let right = x.mul(&u).unwrap().kron(&y.mul(&v).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multinomial_is_symmetric_under_letter_permutations(
        mut counts in proptest::collection::vec(0u8..6, 2..7)
    ) {
        let before = multinomial(&MultiDegree::new(counts.clone()));
        counts.reverse();
        prop_assert_eq!(before, multinomial(&MultiDegree::new(counts)));
    }

    #[test]
    fn stirling_sandwich_holds_on_random_positive_multidegrees(
        counts in proptest::collection::vec(1u8..8, 1..=7)
    ) {
        prop_assume!(counts.iter().map(|&c| c as u32).sum::<u32>() <= 30);
        prop_assert!(stirling_sandwich_check(&MultiDegree::new(counts)));
    }
}
