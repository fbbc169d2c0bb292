//! Independent check of Bott-Samelson normal forms by localization.
//!
//! `p_0 ⊗ p_1 ⊗ … ⊗ p_k` in `B_{a_1} … B_{a_k}` goes to the vector indexed
//! by `ε ∈ {0,1}^k` with entries `p_0 · Π_j w_{ε,j}(p_j)`, where
//! `w_{ε,j} = s_{a_1}^{ε_1} ⋯ s_{a_j}^{ε_j}`. The map is well defined on the
//! tensor product and injective, so two elements are equal exactly when their
//! localizations agree. None of the normalization code is used here.

use proptest::prelude::*;
use rexcalc_core::bsbimod::{BsElement, Mask};
use rexcalc_core::fpc::{check_family, reproduce_counterexample, PathMorphisms};
use rexcalc_core::poly::{Monomial, Polynomial};
use rexcalc_core::symgroup::Word;
use rexcalc_core::Rational;

fn swap(p: &Polynomial, i: u8) -> Polynomial {
    let terms = p.terms().iter().map(|(m, c)| {
        let mut e = m.exponents().to_vec();
        e.swap(usize::from(i) - 1, usize::from(i));
        (Monomial::from_exponents(&e), c.clone())
    });
    Polynomial::from_terms(p.rank(), terms)
}

fn localize_tensor(word: &Word, slots: &[Polynomial]) -> Vec<Polynomial> {
    let k = word.len();
    assert_eq!(slots.len(), k + 1);
    let letters = word.letters();
    (0..1u32 << k)
        .map(|eps| {
            let mut acc = slots[0].clone();
            for (j, slot) in slots.iter().enumerate().skip(1) {
                let mut q = slot.clone();
                for i in (0..j).rev() {
                    if eps >> i & 1 == 1 {
                        q = swap(&q, letters[i]);
                    }
                }
                acc = &acc * &q;
            }
            acc
        })
        .collect()
}

/// Localization of an element from its coefficients on the dotted basis.
fn localize(e: &BsElement) -> Vec<Polynomial> {
    let word = e.word();
    let rank = e.rank();
    let mut out = vec![Polynomial::zero(rank); 1 << word.len()];
    for (mask, c) in e.coeffs() {
        let mut slots = vec![c.clone()];
        for (j, &l) in word.letters().iter().enumerate() {
            slots.push(if mask.0 >> j & 1 == 1 { Polynomial::var(rank, l) } else { Polynomial::one(rank) });
        }
        for (acc, v) in out.iter_mut().zip(localize_tensor(word, &slots)) {
            *acc = &*acc + &v;
        }
    }
    out
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn arb_poly(rank: u8) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u8..3, usize::from(rank)), -3i64..4), 0..4).prop_map(move |terms| {
        Polynomial::from_terms(rank, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), Rational::from(c))))
    })
}

fn arb_tensor() -> impl Strategy<Value = (Word, Vec<Polynomial>)> {
    prop::collection::vec(1u8..4, 1..5).prop_flat_map(|letters| {
        let k = letters.len();
        (Just(Word::from(letters)), prop::collection::vec(arb_poly(4), k + 1))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_form_preserves_localization((word, slots) in arb_tensor()) {
        let e = BsElement::from_tensor(word.clone(), 4, &slots).unwrap();
        prop_assert_eq!(localize(&e), localize_tensor(&word, &slots));
    }
}

#[test]
fn localization_detects_the_dot_relation() {
    // x_1 slides across B_1 only as x_1 + x_2 - x_2
    let one = Polynomial::one(3);
    let x1 = Polynomial::var(3, 1);
    let x2 = Polynomial::var(3, 2);
    let a = localize_tensor(&w("1"), &[x1.clone(), one.clone()]);
    let b = localize_tensor(&w("1"), &[one.clone(), x1.clone()]);
    assert_ne!(a, b);
    let sym = &x1 + &x2;
    assert_eq!(localize_tensor(&w("1"), &[sym.clone(), one.clone()]), localize_tensor(&w("1"), &[one, sym]));
}

#[test]
fn printed_images_differ() {
    let r = reproduce_counterexample().unwrap();
    assert_ne!(localize(&r.image_v1), localize(&r.image_v2));
    let one = Polynomial::one(4);
    let x2 = Polynomial::var(4, 2);
    let x3 = Polynomial::var(4, 3);
    let word = w("13231");
    let printed_x = localize_tensor(&word, &[one.clone(), one.clone(), one.clone(), x3, one.clone(), one.clone()]);
    let printed_y = localize_tensor(&word, &[one.clone(), x2, one.clone(), one.clone(), one.clone(), one]);
    assert_eq!(localize(&r.input), printed_x);
    let mut images = [localize(&r.image_v1), localize(&r.image_v2)];
    images.sort();
    let mut printed = [printed_x, printed_y];
    printed.sort();
    assert_eq!(images, printed);
}

#[test]
fn family_golden_values() {
    for (rank, col, first) in
        [(4u8, "10000", &["10000", "01000", "00100"][..]), (5, "0100000", &["0100000", "0010000", "0001000"][..])]
    {
        let r = check_family(rank).unwrap();
        let wit = r.witness.as_ref().expect("paths differ");
        assert_eq!(wit.col, Mask::from_bits(col).unwrap());
        let signs = [1i64, -1, 1];
        let expected = BsElement::from_coeffs(
            wit.first_image.word().clone(),
            rank,
            first
                .iter()
                .zip(signs)
                .map(|(b, s)| (Mask::from_bits(b).unwrap(), Polynomial::constant(rank, Rational::from(s)))),
        )
        .unwrap();
        assert_eq!(wit.first_image, expected);
        assert_eq!(wit.second_image, wit.input);
        assert_ne!(localize(&wit.first_image), localize(&wit.second_image));

        // the full matrices agree with the element-wise evaluation
        let pm = PathMorphisms::of_word(&r.element, rank).unwrap();
        let idx = |p: &[Word]| -> Vec<usize> { p.iter().map(|v| pm.graph().cloud_of_word(v).unwrap()).collect() };
        let fp = pm.path_matrix(&idx(&r.p)).unwrap();
        let fq = pm.path_matrix(&idx(&r.q)).unwrap();
        assert_ne!(fp, fq);
        assert_eq!(fp.apply(&wit.input).unwrap(), wit.first_image);
        assert_eq!(fq.apply(&wit.input).unwrap(), wit.second_image);
    }
}
