//! Property tests for the algebra layer: canonical forms, signs, gradings,
//! and the homomorphism laws that everything downstream leans on.

use proptest::prelude::*;

use defw::basis::enumerate_basis;
use defw::context::AlgebraContext;
use defw::derivation::{d, delta, k_total};
use defw::element::{rat, Element};
use defw::monomial::Monomial;
use defw::text::parse_element;

fn arb_generator_word(q: u32, len: usize) -> impl Strategy<Value = Vec<(bool, u32, u32)>> {
    prop::collection::vec((any::<bool>(), 1..=q, 0u32..=4), 0..=len)
}

fn word_to_element(ctx: AlgebraContext, word: &[(bool, u32, u32)]) -> Element {
    let hs: Vec<(u32, u32)> = word
        .iter()
        .filter(|(is_h, _, _)| *is_h)
        .map(|&(_, i, a)| (i, a))
        .collect();
    let cs: Vec<(u32, u32)> = word
        .iter()
        .filter(|(is_h, _, _)| !*is_h)
        .map(|&(_, i, a)| (i, a))
        .collect();
    Element::from_generators(ctx, &hs, &cs).unwrap()
}

fn arb_element(q: u32) -> impl Strategy<Value = Element> {
    let ctx = AlgebraContext::free(q);
    prop::collection::vec((arb_generator_word(q, 4), -9i64..=9, 1i64..=9), 1..=4).prop_map(
        move |terms| {
            let mut acc = Element::zero(ctx);
            for (word, num, den) in terms {
                let m = word_to_element(ctx, &word);
                acc = &acc + &m.scale(&rat(num, den));
            }
            acc
        },
    )
}

proptest! {
    #[test]
    fn multiplication_is_associative(
        a in arb_element(2), b in arb_element(2), c in arb_element(2)
    ) {
        let left = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn graded_commutativity(
        wa in arb_generator_word(2, 4), wb in arb_generator_word(2, 4)
    ) {
        let ctx = AlgebraContext::free(2);
        let a = word_to_element(ctx, &wa);
        let b = word_to_element(ctx, &wb);
        let ab = a.try_mul(&b).unwrap();
        let mut ba = b.try_mul(&a).unwrap();
        let da = wa.iter().map(|(h, _, _)| if *h { 1u32 } else { 2 }).sum::<u32>();
        let db = wb.iter().map(|(h, _, _)| if *h { 1u32 } else { 2 }).sum::<u32>();
        if da * db % 2 == 1 {
            ba = -&ba;
        }
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn gradings_add_on_products(
        wa in arb_generator_word(2, 4), wb in arb_generator_word(2, 4)
    ) {
        let ctx = AlgebraContext::free(2);
        let a = word_to_element(ctx, &wa);
        let b = word_to_element(ctx, &wb);
        let ab = a.try_mul(&b).unwrap();
        if ab.is_zero() || a.is_zero() || b.is_zero() {
            return Ok(());
        }
        let (ma, _) = a.terms().next().unwrap();
        let (mb, _) = b.terms().next().unwrap();
        let (mab, _) = ab.terms().next().unwrap();
        prop_assert_eq!(mab.degree(), ma.degree() + mb.degree());
        prop_assert_eq!(mab.order(), ma.order() + mb.order());
        prop_assert_eq!(mab.length(), ma.length() + mb.length());
        prop_assert_eq!(mab.norm(), ma.norm() + mb.norm());
    }

    #[test]
    fn text_round_trip(e in arb_element(2)) {
        let printed = e.to_string();
        let parsed = parse_element(&printed, e.ctx()).unwrap();
        prop_assert_eq!(parsed, e);
    }

    #[test]
    fn restriction_is_an_algebra_homomorphism(a in arb_element(2), b in arb_element(2)) {
        let lhs = a.try_mul(&b).unwrap().restrict_codim().unwrap();
        let rhs = a
            .restrict_codim()
            .unwrap()
            .try_mul(&b.restrict_codim().unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_squares_to_zero(e in arb_element(2)) {
        prop_assert!(d(&d(&e).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn homotopy_recovers_the_order_shift(e in arb_element(2)) {
        let lhs = delta(&e).unwrap();
        let rhs = &k_total(&d(&e).unwrap()).unwrap() + &d(&k_total(&e).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn enumeration_contains_every_constructed_monomial(
        w in arb_generator_word(2, 5)
    ) {
        let ctx = AlgebraContext::free(2);
        let e = word_to_element(ctx, &w);
        if e.is_zero() {
            return Ok(());
        }
        let m: &Monomial = e.terms().next().unwrap().0;
        let basis = enumerate_basis(ctx, m.degree(), m.order());
        prop_assert!(basis.contains(m));
    }
}
