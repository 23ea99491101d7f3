use super::*;
use crate::linalg::KernelRing;
use crate::rings::{PolyGF2, F2};

fn m(s: &str) -> Matching {
    Matching::parse(s).unwrap()
}

fn gen(s: &str, reduced: bool) -> Generator {
    Generator::parse(s, reduced).unwrap()
}

fn el<R: Coefficient>(terms: &[(&str, i64)], n: usize, reduced: bool) -> AlgebraElement<R> {
    let mut e = AlgebraElement::zero(n, reduced);
    for &(g, c) in terms {
        e.add_term(gen(g, reduced), R::from_int(c));
    }
    e
}

/// Independent count: Σ_{a,b} 2^{#circles(a!b)}.
fn rank_oracle(n: usize) -> usize {
    let ms = enumerate_matchings_for_test(n);
    ms.iter()
        .flat_map(|a| ms.iter().map(move |b| glue(a, b).unwrap().num_circles()))
        .map(|c| 1usize << c)
        .sum()
}

fn enumerate_matchings_for_test(n: usize) -> Vec<Matching> {
    crate::diagrams::enumerate_matchings(n)
}

#[test]
fn basis_sizes() {
    assert_eq!(ArcAlgebra::<i64>::khovanov(1, false).basis().len(), 2);
    assert_eq!(ArcAlgebra::<i64>::khovanov(1, true).basis().len(), 1);
    let h2 = ArcAlgebra::<i64>::khovanov(2, false).basis();
    assert_eq!(h2.len(), 12);
    assert_eq!(ArcAlgebra::<i64>::khovanov(2, true).basis().len(), 6);
    // Frozen from the enumeration oracle.
    assert_eq!(rank_oracle(3), 104);
    assert_eq!(ArcAlgebra::<i64>::khovanov(3, false).basis().len(), 104);
    assert_eq!(ArcAlgebra::<i64>::khovanov(3, true).basis().len(), 52);
    for n in 1..=4 {
        let full = ArcAlgebra::<i64>::khovanov(n, false);
        let red = ArcAlgebra::<i64>::khovanov(n, true);
        assert_eq!(full.rank(), rank_oracle(n));
        assert_eq!(full.basis().len(), full.rank());
        assert_eq!(full.rank(), 2 * red.rank());
    }
}

#[test]
fn basis_lists_marked_one_first() {
    let basis = ArcAlgebra::<i64>::khovanov(3, false).basis();
    let first_x = basis.iter().position(|g| g.marked_label() == Label::X).unwrap();
    assert_eq!(first_x, basis.len() / 2);
    assert!(basis[first_x..].iter().all(|g| g.marked_label() == Label::X));
    let mut sorted = basis.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), basis.len());
}

#[test]
fn h0_is_the_ground_ring() {
    let h0 = ArcAlgebra::<i64>::khovanov(0, false);
    let basis = h0.basis();
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0].q_degree(), 0);
    let one = h0.unit();
    assert_eq!(h0.multiply(&one, &one).unwrap(), one);
}

#[test]
fn quantum_degrees() {
    assert_eq!(gen("1-2,3-4|1-2,3-4|11", false).q_degree(), 0);
    assert_eq!(gen("1-2,3-4|1-2,3-4|xx", false).q_degree(), -4);
    assert_eq!(gen("1-2,3-4|1-2,3-4|1x", true).q_degree(), -3);
}

#[test]
fn product_example_over_z() {
    let h2 = ArcAlgebra::<i64>::khovanov(2, false);
    let g = gen("1-2,3-4|1-2,3-4|1x", false);
    let h = gen("1-2,3-4|1-4,2-3|1", false);
    let p = h2.multiply_generators(&g, &h).unwrap();
    assert_eq!(p, el(&[("1-2,3-4|1-4,2-3|x", 1)], 2, false));
    let g2 = gen("1-2,3-4|1-2,3-4|x1", false);
    assert_eq!(h2.multiply_generators(&g2, &h).unwrap(), p);
}

#[test]
fn mismatched_inner_matchings_vanish() {
    let h2 = ArcAlgebra::<i64>::khovanov(2, false);
    let g = gen("1-2,3-4|1-4,2-3|1", false);
    let h = gen("1-2,3-4|1-2,3-4|11", false);
    assert!(h2.multiply_generators(&g, &h).unwrap().is_zero());
}

#[test]
fn incompatible_operands_are_rejected() {
    let h2 = ArcAlgebra::<i64>::khovanov(2, false);
    let small = gen("1-2|1-2|1", false);
    let g = gen("1-2,3-4|1-2,3-4|11", false);
    assert!(matches!(
        h2.multiply_generators(&small, &g),
        Err(Error::IncompatibleOperands(_))
    ));
    let red = gen("1-2,3-4|1-2,3-4|11", true);
    assert!(h2.multiply_generators(&red, &g).is_err());
    assert!(h2.multiply_generators_in_order(&g, &g, Some(&[0, 0])).is_err());
}

fn check_unit<R: Coefficient>(n: usize, reduced: bool) {
    let alg = ArcAlgebra::<R>::khovanov(n, reduced);
    let one = alg.unit();
    assert_eq!(one.len(), alg.matchings().len());
    assert_eq!(alg.multiply(&one, &one).unwrap(), one);
    for g in alg.basis() {
        let e = AlgebraElement::from_generator(g);
        assert_eq!(alg.multiply(&one, &e).unwrap(), e);
        assert_eq!(alg.multiply(&e, &one).unwrap(), e);
    }
}

#[test]
fn unit_laws() {
    for n in 1..=3 {
        check_unit::<i64>(n, false);
        check_unit::<i64>(n, true);
        check_unit::<F2>(n, false);
    }
}

fn compatible_pairs(alg: &ArcAlgebra<impl Coefficient>) -> Vec<(Generator, Generator)> {
    let basis = alg.basis();
    let mut out = Vec::new();
    for g in &basis {
        for h in &basis {
            if g.right() == h.left() {
                out.push((g.clone(), h.clone()));
            }
        }
    }
    out
}

fn check_oracle<R: Coefficient>(n: usize, reduced: bool) {
    let alg = ArcAlgebra::<R>::khovanov(n, reduced);
    let basis = alg.basis();
    for g in &basis {
        for h in &basis {
            assert_eq!(
                alg.multiply_generators(g, h).unwrap(),
                alg.multiply_oracle(g, h).unwrap(),
                "{g} · {h}"
            );
        }
    }
}

#[test]
fn replay_matches_genus_criterion() {
    for n in 1..=3 {
        check_oracle::<i64>(n, false);
        check_oracle::<i64>(n, true);
        check_oracle::<F2>(n, false);
        check_oracle::<F2>(n, true);
    }
}

#[test]
fn oracle_subcase_examples() {
    let h3 = ArcAlgebra::<i64>::khovanov(3, false);
    // a!b and b!a with one circle each; the product a!a has three circles
    // lying on one genus-0 component.
    let a = m("1-2,3-4,5-6");
    let b = m("1-6,2-3,4-5");
    let g = Generator::new(a.clone(), b.clone(), &[Label::One], false).unwrap();
    let h = Generator::new(b.clone(), a.clone(), &[Label::One], false).unwrap();
    let cob = cobordism_components_for_test(&a, &b, &a);
    assert_eq!(cob.len(), 1);
    assert_eq!(cob[0].circles_out, 3);
    let p = h3.multiply_oracle(&g, &h).unwrap();
    assert_eq!(p.len(), 3);
    for (t, c) in p.terms() {
        assert_eq!(*c, 1);
        assert_eq!(t.labeling().count(Label::One), 1);
    }
    let gx = Generator::new(a.clone(), b.clone(), &[Label::X], false).unwrap();
    let hx = Generator::new(b, a, &[Label::X], false).unwrap();
    assert!(h3.multiply_oracle(&gx, &hx).unwrap().is_zero());
}

fn cobordism_components_for_test(a: &Matching, b: &Matching, c: &Matching) -> Vec<crate::diagrams::CobordismComponentStats> {
    crate::diagrams::cobordism_components(a, b, c).unwrap().components
}

#[test]
fn oracle_rejects_deformation() {
    let alg = ArcAlgebra::<PolyGF2>::new(2, false, Frobenius::<PolyGF2>::generic());
    let g = gen("1-2,3-4|1-2,3-4|11", false);
    assert_eq!(alg.multiply_oracle(&g, &g), Err(Error::OracleUndefined));
}

fn check_associativity<R: Coefficient>(n: usize, reduced: bool) {
    let alg = ArcAlgebra::<R>::khovanov(n, reduced);
    let basis = alg.basis();
    for x in &basis {
        for y in basis.iter().filter(|y| y.left() == x.right()) {
            let xy = alg.multiply_generators(x, y).unwrap();
            for z in basis.iter().filter(|z| z.left() == y.right()) {
                let lhs = alg.multiply(&xy, &AlgebraElement::from_generator(z.clone())).unwrap();
                let yz = alg.multiply_generators(y, z).unwrap();
                let rhs = alg.multiply(&AlgebraElement::from_generator(x.clone()), &yz).unwrap();
                assert_eq!(lhs, rhs, "({x} {y}) {z}");
            }
        }
    }
}

#[test]
fn associativity_small() {
    for n in 1..=2 {
        check_associativity::<i64>(n, false);
        check_associativity::<i64>(n, true);
    }
}

#[test]
fn deformed_associativity_small() {
    for n in 1..=2 {
        let alg = ArcAlgebra::<PolyGF2>::new(n, false, Frobenius::<PolyGF2>::generic());
        let basis = alg.basis();
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    let ex = AlgebraElement::from_generator(x.clone());
                    let ey = AlgebraElement::from_generator(y.clone());
                    let ez = AlgebraElement::from_generator(z.clone());
                    let lhs = alg.multiply(&alg.multiply(&ex, &ey).unwrap(), &ez).unwrap();
                    let rhs = alg.multiply(&ex, &alg.multiply(&ey, &ez).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn products_respect_grading() {
    for n in 1..=3 {
        for reduced in [false, true] {
            let alg = ArcAlgebra::<i64>::khovanov(n, reduced);
            let shift = i64::from(reduced);
            for (g, h) in compatible_pairs(&alg) {
                let p = alg.multiply_generators(&g, &h).unwrap();
                for (t, _) in p.terms() {
                    // The reduced shift is applied once per factor but once in the product.
                    assert_eq!(t.q_degree(), g.q_degree() + h.q_degree() + shift, "{g} · {h}");
                }
            }
        }
    }
}

#[test]
fn saddle_order_does_not_matter() {
    for n in 1..=3 {
        let perms = permutations(n);
        assert!(n < 3 || perms.len() >= 5);
        for frob_deformed in [false, true] {
            let alg = if frob_deformed {
                ArcAlgebra::<PolyGF2>::new(n, false, Frobenius::<PolyGF2>::generic())
            } else {
                ArcAlgebra::<PolyGF2>::khovanov(n, false)
            };
            for (g, h) in compatible_pairs(&alg) {
                let canonical = alg.multiply_generators(&g, &h).unwrap();
                for p in &perms {
                    assert_eq!(alg.multiply_generators_in_order(&g, &h, Some(p)).unwrap(), canonical);
                }
            }
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[test]
fn integer_structure_constants_are_nonnegative() {
    for n in 1..=3 {
        let alg = ArcAlgebra::<i64>::khovanov(n, false);
        for (g, h) in compatible_pairs(&alg) {
            for (_, c) in alg.multiply_generators(&g, &h).unwrap().terms() {
                assert!(*c > 0);
            }
        }
    }
}

#[test]
fn marked_x_terms_form_an_ideal() {
    for n in 1..=3 {
        let alg = ArcAlgebra::<i64>::khovanov(n, false);
        let basis = alg.basis();
        let ideal: Vec<&Generator> = basis.iter().filter(|g| g.marked_label() == Label::X).collect();
        for g in &basis {
            for i in &ideal {
                for p in [
                    alg.multiply_generators(g, i).unwrap(),
                    alg.multiply_generators(i, g).unwrap(),
                ] {
                    assert!(p.terms().all(|(t, _)| t.marked_label() == Label::X));
                }
            }
        }
    }
}

#[test]
fn reduction_is_multiplicative() {
    for n in 1..=3 {
        let full = ArcAlgebra::<i64>::khovanov(n, false);
        let red = full.with_reduced(true);
        for (g, h) in compatible_pairs(&full) {
            let eg = AlgebraElement::from_generator(g.clone());
            let eh = AlgebraElement::from_generator(h.clone());
            let lhs = full.multiply(&eg, &eh).unwrap().reduce().unwrap();
            let rhs = red.multiply(&eg.reduce().unwrap(), &eh.reduce().unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{g} · {h}");
        }
    }
}

#[test]
fn reduce_examples() {
    let xx: AlgebraElement<i64> = el(&[("1-2,3-4|1-2,3-4|xx", 1)], 2, false);
    assert!(xx.reduce().unwrap().is_zero());
    let full = ArcAlgebra::<i64>::khovanov(2, false);
    let red = ArcAlgebra::<i64>::khovanov(2, true);
    assert_eq!(full.unit().reduce().unwrap(), red.unit());
    assert!(red.unit().reduce().is_err());
    assert_eq!(red.unit().lift(), full.unit());
}

#[test]
fn anti_automorphism_reverses_products() {
    for n in 1..=3 {
        let alg = ArcAlgebra::<i64>::khovanov(n, false);
        for (g, h) in compatible_pairs(&alg) {
            let p = alg.multiply_generators(&g, &h).unwrap();
            let q = alg.multiply_generators(&h.reversed(), &g.reversed()).unwrap();
            assert_eq!(p.reversed(), q);
        }
    }
}

#[test]
fn reduced_h2_center() {
    let red = ArcAlgebra::<i64>::khovanov(2, true);
    // Idempotents of the reduced algebra sit in degree -1, the (1x)-type elements in -3.
    let deg_idem = red.center_in_degree(-1).unwrap();
    assert_eq!(deg_idem.len(), 1);
    let expected_idem: AlgebraElement<i64> =
        el(&[("1-2,3-4|1-2,3-4|11", 1), ("1-4,2-3|1-4,2-3|11", 1)], 2, true);
    assert_eq!(red.canonical_span(&deg_idem), red.canonical_span(std::slice::from_ref(&expected_idem)));

    let deg_low = red.center_in_degree(-3).unwrap();
    assert_eq!(deg_low.len(), 2);
    let aa: AlgebraElement<i64> = el(&[("1-2,3-4|1-2,3-4|1x", 1)], 2, true);
    let bb: AlgebraElement<i64> = el(&[("1-4,2-3|1-4,2-3|1x", 1)], 2, true);
    assert_eq!(red.canonical_span(&deg_low), red.canonical_span(&[aa.clone(), bb.clone()]));

    let all = red.center().unwrap();
    assert_eq!(all.len(), 3);
    assert_eq!(red.canonical_span(&all), red.canonical_span(&[expected_idem, aa, bb]));
    for z in &all {
        assert!(red.commutator(z, &red.unit()).unwrap().is_zero());
    }
}

#[test]
fn reduced_h2_center_mod_two() {
    let red = ArcAlgebra::<F2>::khovanov(2, true);
    let all = red.center().unwrap();
    assert_eq!(all.len(), 3);
    let _ = F2::canonical_basis(&[], 0);
}

#[test]
fn stacking_embeds_h2_into_h3() {
    let h2 = ArcAlgebra::<i64>::khovanov(2, false);
    let h3 = ArcAlgebra::<i64>::khovanov(3, false);
    let e = stack_embed(&h2.unit(), 3).unwrap();
    assert_eq!(h3.multiply(&e, &e).unwrap(), e);
    for g in h2.basis() {
        let sg = stack_embed(&AlgebraElement::<i64>::from_generator(g.clone()), 3).unwrap();
        let (t, _) = sg.terms().next().unwrap();
        assert_eq!(t.q_degree(), g.q_degree());
        assert_eq!(t.diagram().num_circles(), g.diagram().num_circles() + 1);
    }
    for (g, h) in compatible_pairs(&h2) {
        let eg = AlgebraElement::from_generator(g.clone());
        let eh = AlgebraElement::from_generator(h.clone());
        let lhs = stack_embed(&h2.multiply(&eg, &eh).unwrap(), 3).unwrap();
        let rhs = h3
            .multiply(&stack_embed(&eg, 3).unwrap(), &stack_embed(&eh, 3).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
    assert!(stack_embed(&h2.unit(), 2).is_err());
}

#[test]
fn element_json_round_trip() {
    let e: AlgebraElement<i64> = el(&[("1-2,3-4|1-2,3-4|1x", 1), ("1-2,3-4|1-2,3-4|x1", -1)], 2, false);
    let json = serde_json::to_string(&e).unwrap();
    assert_eq!(
        json,
        r#"{"n":2,"ring":"Z","reduced":false,"terms":[{"left":{"n":2,"arcs":[[1,2],[3,4]]},"right":{"n":2,"arcs":[[1,2],[3,4]]},"labels":["x","1"],"coeff":-1},{"left":{"n":2,"arcs":[[1,2],[3,4]]},"right":{"n":2,"arcs":[[1,2],[3,4]]},"labels":["1","x"],"coeff":1}]}"#
    );
    let back: AlgebraElement<i64> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, e);
    assert!(serde_json::from_str::<AlgebraElement<F2>>(&json).is_err());
}

fn int_element(n: usize, reduced: bool) -> impl proptest::strategy::Strategy<Value = AlgebraElement<i64>> {
    use proptest::prelude::*;
    let basis = ArcAlgebra::<i64>::khovanov(n, reduced).basis();
    prop::collection::vec(-3i64..=3, basis.len()).prop_map(move |coeffs| {
        let mut e = AlgebraElement::zero(n, reduced);
        for (g, c) in basis.iter().zip(coeffs) {
            e.add_term(g.clone(), c);
        }
        e
    })
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn products_are_associative(x in int_element(2, false), y in int_element(2, false), z in int_element(2, false)) {
            let h = ArcAlgebra::<i64>::khovanov(2, false);
            let lhs = h.multiply(&h.multiply(&x, &y).unwrap(), &z).unwrap();
            let rhs = h.multiply(&x, &h.multiply(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduced_products_are_associative(x in int_element(2, true), y in int_element(2, true), z in int_element(2, true)) {
            let h = ArcAlgebra::<i64>::khovanov(2, true);
            let lhs = h.multiply(&h.multiply(&x, &y).unwrap(), &z).unwrap();
            let rhs = h.multiply(&x, &h.multiply(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn unit_is_two_sided(x in int_element(3, false)) {
            let h = ArcAlgebra::<i64>::khovanov(3, false);
            prop_assert_eq!(h.multiply(&h.unit(), &x).unwrap(), x.clone());
            prop_assert_eq!(h.multiply(&x, &h.unit()).unwrap(), x);
        }

        #[test]
        fn products_are_graded(i in 0usize..1000, j in 0usize..1000, reduced in any::<bool>()) {
            let h = ArcAlgebra::<i64>::khovanov(3, reduced);
            let basis = h.basis();
            let g = &basis[i % basis.len()];
            let k = &basis[j % basis.len()];
            let shift = i64::from(reduced);
            for (t, _) in h.multiply_generators(g, k).unwrap().terms() {
                prop_assert_eq!(t.q_degree(), g.q_degree() + k.q_degree() + shift);
            }
        }
    }
}
