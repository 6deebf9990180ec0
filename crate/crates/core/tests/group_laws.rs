mod common;

use aristotle_core::group::{
    adjoint_of_group, compose, compose_first_extension, compose_printed, from_single_exponential,
    inverse, to_single_exponential,
};
use aristotle_core::lie::{ad, bch, AdjointMatrix, StructureTensor};
use aristotle_core::{AlgebraElement, GroupElement};
use common::*;
use proptest::prelude::*;

fn algebra_element() -> impl Strategy<Value = AlgebraElement<Q>> {
    proptest::array::uniform5(rational()).prop_map(AlgebraElement::new)
}

#[test]
fn tensor_oracle_confirms_compose_examples() {
    let p = GroupElement::from_array([q(1), q(0), q(0), q(0), q(0)]);
    let e = GroupElement::from_array([q(0), q(1), q(0), q(0), q(0)]);
    let pe = GroupElement::from_array([q(1), q(1), q(1), qr(1, 2), q(0)]);
    let ep = GroupElement::from_array([q(1), q(1), q(0), q(0), q(0)]);
    assert_eq!(group_tensor(&p).mul(&group_tensor(&e)), group_tensor(&pe));
    assert_eq!(group_tensor(&e).mul(&group_tensor(&p)), group_tensor(&ep));
    assert_eq!(compose(&p, &e), pe);
    assert_eq!(compose(&e, &p), ep);
    // the printed law's answer is not the product
    let printed = compose_printed(&p, &e);
    assert_ne!(group_tensor(&p).mul(&group_tensor(&e)), group_tensor(&printed));
}

#[test]
fn tensor_oracle_confirms_inverse_example() {
    let g = GroupElement::from_array([q(1), q(0), q(1), q(0), q(0)]);
    let h = GroupElement::from_array([q(-1), q(0), q(-1), q(1), q(0)]);
    assert_eq!(group_tensor(&g).mul(&group_tensor(&h)), Tensor::scalar(q(1)));
    assert_eq!(inverse(&g), h);
}

#[test]
fn tensor_brackets_match_table() {
    let t = StructureTensor::<Q>::aristotle();
    let basis = basis_tensors();
    for i in 0..5 {
        for j in 0..5 {
            let via_tensor = basis[i].commutator(&basis[j]);
            let via_table = lie_tensor(&t.c[i][j]);
            assert_eq!(via_tensor, via_table, "[{i},{j}]");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn compose_is_the_product_in_the_tensor_oracle(g in group_element(), h in group_element()) {
        prop_assert_eq!(
            group_tensor(&g).mul(&group_tensor(&h)),
            group_tensor(&compose(&g, &h))
        );
    }

    #[test]
    fn compose_is_associative(g in group_element(), h in group_element(), k in group_element()) {
        prop_assert_eq!(compose(&compose(&g, &h), &k), compose(&g, &compose(&h, &k)));
    }

    #[test]
    fn inverse_and_identity(g in group_element()) {
        let id = GroupElement::identity();
        let gi = inverse(&g);
        prop_assert_eq!(compose(&g, &gi), id.clone());
        prop_assert_eq!(compose(&gi, &g), id.clone());
        prop_assert_eq!(compose(&g, &id), g.clone());
        prop_assert_eq!(compose(&id, &g), g);
    }

    #[test]
    fn single_exponential_round_trip(g in group_element()) {
        let a = to_single_exponential(&g);
        prop_assert_eq!(from_single_exponential(&a), g.clone());
        prop_assert_eq!(lie_tensor(&a.coeffs).exp(), group_tensor(&g));
    }

    #[test]
    fn adjoint_is_a_unipotent_homomorphism(g in group_element(), h in group_element()) {
        let mg = adjoint_of_group(&g);
        let mh = adjoint_of_group(&h);
        prop_assert_eq!(adjoint_of_group(&compose(&g, &h)), mg.mul(&mh));
        let n = mg.sub(&AdjointMatrix::identity());
        prop_assert!(n.pow(3).is_zero());
        prop_assert_eq!(mg.determinant(), q(1));
    }

    #[test]
    fn quotient_reproduces_first_extension_law(g in group_element(), h in group_element()) {
        let prod = compose(&g, &h);
        let expected = compose_first_extension(
            &[g.x.clone(), g.t.clone(), g.zeta.clone()],
            &[h.x.clone(), h.t.clone(), h.zeta.clone()],
        );
        prop_assert_eq!([prod.x, prod.t, prod.zeta], expected);
    }

    #[test]
    fn bch_inversion_identity(a in algebra_element(), b in algebra_element()) {
        prop_assert_eq!(bch(&a, &b), -bch(&-b.clone(), &-a.clone()));
    }

    #[test]
    fn bch_matches_tensor_product(a in algebra_element(), b in algebra_element()) {
        let lhs = lie_tensor(&a.coeffs).exp().mul(&lie_tensor(&b.coeffs).exp());
        prop_assert_eq!(lhs, lie_tensor(&bch(&a, &b).coeffs).exp());
    }

    #[test]
    fn bracket_is_bilinear_antisymmetric(a in algebra_element(), b in algebra_element(), c in algebra_element(), s in rational()) {
        let t = StructureTensor::<Q>::aristotle();
        prop_assert_eq!(t.bracket(&a, &b), a.bracket(&b));
        prop_assert_eq!(a.bracket(&b), -b.bracket(&a));
        prop_assert_eq!((&a + &b).bracket(&c), &a.bracket(&c) + &b.bracket(&c));
        prop_assert_eq!(a.scale(&s).bracket(&b), a.bracket(&b).scale(&s));
        prop_assert!(ad(&a).pow(3).is_zero());
        prop_assert_eq!(ad(&a).apply(&b), a.bracket(&b));
    }
}

#[test]
fn printed_law_fails_associativity_on_concrete_triple() {
    let g1 = GroupElement::from_array([q(1), q(0), q(0), q(0), q(0)]);
    let g2 = GroupElement::from_array([q(0), q(0), q(1), q(0), q(0)]);
    let g3 = GroupElement::from_array([q(0), q(1), q(0), q(0), q(0)]);
    let left = compose_printed(&compose_printed(&g1, &g2), &g3);
    let right = compose_printed(&g1, &compose_printed(&g2, &g3));
    assert_eq!(left.b.clone() - right.b.clone(), q(-1));
    assert_eq!([left.x, left.t, left.zeta, left.a], [right.x, right.t, right.zeta, right.a]);
}
