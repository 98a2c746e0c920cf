use proptest::prelude::*;
use qzeta_core::arith::{int, rat, Rational};
use qzeta_core::characters::{CharacterTable, FixedT, NormalizationMode, Signature, SymbolicT};
use qzeta_core::quasi_shuffle::{antipode, quasi_shuffle, weight, Word, WordSum};
use qzeta_core::renorm::{eval_renorm, renormalised_value_in};

fn word(max_len: usize, range: std::ops::Range<i32>) -> impl Strategy<Value = Word> {
    prop::collection::vec(range.prop_filter("nonzero", |&i| i != 0), 1..=max_len)
        .prop_map(|v| Word::from_indices(&v).unwrap())
}

fn negative_word(max_len: usize, max_k: i32) -> impl Strategy<Value = Word> {
    word(max_len, -max_k..0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quasi_shuffle_is_commutative(u in negative_word(3, 4), v in negative_word(3, 4)) {
        prop_assert_eq!(quasi_shuffle(&u, &v).unwrap(), quasi_shuffle(&v, &u).unwrap());
    }

    #[test]
    fn quasi_shuffle_is_associative(u in negative_word(2, 3), v in negative_word(2, 3), w in negative_word(2, 3)) {
        let left = quasi_shuffle(&u, &v).unwrap().quasi_shuffle(&WordSum::word(w.clone())).unwrap();
        let right = WordSum::word(u.clone()).quasi_shuffle(&quasi_shuffle(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn quasi_shuffle_preserves_weight(u in negative_word(3, 5), v in negative_word(3, 5)) {
        for (w, _) in quasi_shuffle(&u, &v).unwrap().iter() {
            prop_assert_eq!(weight(w), weight(&u) + weight(&v));
        }
    }

    #[test]
    fn antipode_is_an_involution(u in negative_word(4, 3)) {
        let mut twice = WordSum::zero();
        for (w, c) in antipode(&u).unwrap().iter() {
            twice.add_scaled(&antipode(w).unwrap(), c);
        }
        prop_assert_eq!(twice, WordSum::word(u));
    }

    #[test]
    fn fixed_t_matches_symbolic_evaluation(ks in prop::collection::vec(1u32..4, 1..3), num in 1i64..7, den in 1i64..5) {
        let sig = Signature::new(ks).unwrap();
        let t0 = rat(num, den);
        let order = sig.required_order(2);
        let mut sym = CharacterTable::new(SymbolicT, NormalizationMode::LogQ, order);
        let mut fixed = CharacterTable::new(FixedT(t0.clone()), NormalizationMode::LogQ, order);
        let symbolic = renormalised_value_in(&mut sym, &sig).unwrap().eval(&t0).unwrap();
        prop_assert_eq!(renormalised_value_in(&mut fixed, &sig).unwrap(), symbolic);
    }

    #[test]
    fn renormalised_values_multiply_at_random_t(a in 1u32..5, b in 1u32..5, c in 1u32..4, num in 1i64..9) {
        // ζ₊(-a) ζ₊(-b,-c) against the quasi-shuffle expansion, at a fixed t
        let t0 = rat(num, 3);
        let u = Word::from_indices(&[-(a as i32)]).unwrap();
        let v = Word::from_indices(&[-(b as i32), -(c as i32)]).unwrap();
        let value = |w: &Word| eval_renorm(&Signature::from_word(w).unwrap(), &t0).unwrap();
        let mut rhs = Rational::from_integer(0.into());
        for (w, coeff) in quasi_shuffle(&u, &v).unwrap().iter() {
            rhs += coeff * value(w);
        }
        prop_assert_eq!(value(&u) * value(&v), rhs);
    }
}

#[test]
fn diagonal_values_are_t_independent() {
    // ζ₊(-k)² = 2ζ₊(-k,-k) + ζ₊(-2k)
    for k in 1..=4u32 {
        let at = |t0: &Rational| eval_renorm(&Signature::new(vec![k, k]).unwrap(), t0).unwrap();
        assert_eq!(at(&int(1)), at(&rat(7, 3)));
        let single = eval_renorm(&Signature::new(vec![k]).unwrap(), &int(1)).unwrap();
        let double = eval_renorm(&Signature::new(vec![2 * k]).unwrap(), &int(1)).unwrap();
        assert_eq!(&single * &single, int(2) * at(&int(1)) + double);
    }
}

#[test]
fn letters_merge_to_zero_are_rejected() {
    let u = Word::from_indices(&[1]).unwrap();
    let v = Word::from_indices(&[-1]).unwrap();
    assert!(quasi_shuffle(&u, &v).is_err());
}
