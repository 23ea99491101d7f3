use serde::Serialize;

use super::{lambda, lambda_element, tensor_generator, TensorAlgebra, TensorElement};
use crate::algebra::{AlgebraElement, ArcAlgebra, Generator};
use crate::diagrams::Matching;
use crate::rings::{Frobenius, Label, PolyGF2, F2};

const ONE: Label = Label::One;
const X: Label = Label::X;

fn nested() -> Matching {
    Matching::parse("1-4,2-3").expect("valid matching")
}

fn side_by_side() -> Matching {
    Matching::parse("1-2,3-4").expect("valid matching")
}

fn term(a: &Matching, b: &Matching, labels: &[Label], reduced: bool) -> Generator {
    Generator::new(a.clone(), b.clone(), labels, reduced).expect("valid generator")
}

fn combination(terms: &[(i64, Generator)], n: usize, reduced: bool) -> AlgebraElement<i64> {
    let mut e = AlgebraElement::zero(n, reduced);
    for (c, g) in terms {
        e.add_term(g.clone(), *c);
    }
    e
}

/// `s·(a!a, 1x) + t·(a!a, x1)` in `H_2` over `Z`, for `a` the nested matching.
fn signed_gamma(s: i64, t: i64) -> AlgebraElement<i64> {
    let a = nested();
    combination(&[(s, term(&a, &a, &[ONE, X], false)), (t, term(&a, &a, &[X, ONE], false))], 2, false)
}

/// `Γ = (a!a, 1x) − (a!a, x1)`.
pub fn gamma() -> AlgebraElement<i64> {
    signed_gamma(1, -1)
}

pub fn gamma_square() -> AlgebraElement<i64> {
    let h2 = ArcAlgebra::<i64>::khovanov(2, false);
    let g = gamma();
    h2.multiply(&g, &g).expect("same algebra")
}

#[derive(Clone, Debug, Serialize)]
pub struct ZObstructionReport {
    /// Computed basis of the center of the reduced `H_2` over `Z`.
    pub center: Vec<AlgebraElement<i64>>,
    pub expected_center: Vec<AlgebraElement<i64>>,
    pub center_matches: bool,
    /// Signs `(s, t)` for which `s(1x) + t(x1)` is central and lifts `λ` mod 2.
    pub central_candidates: Vec<(i64, i64)>,
    pub squares: Vec<AlgebraElement<i64>>,
    pub squares_nonzero: bool,
    pub pass: bool,
    pub note: &'static str,
}

/// Over `Z` no graded isomorphism `H̃_2 ⊗ A → H_2` reducing to `λ` mod 2 exists:
/// the image of the central square-zero element would have to be `±Γ`, whose
/// square is `−2(a!a, xx)`.
pub fn z_obstruction() -> ZObstructionReport {
    let red = ArcAlgebra::<i64>::khovanov(2, true);
    let full = ArcAlgebra::<i64>::khovanov(2, false);
    let (a, b) = (nested(), side_by_side());

    let center = red.center().expect("same algebra");
    let expected_center = vec![
        combination(&[(1, term(&a, &a, &[ONE, ONE], true)), (1, term(&b, &b, &[ONE, ONE], true))], 2, true),
        combination(&[(1, term(&a, &a, &[ONE, X], true))], 2, true),
        combination(&[(1, term(&b, &b, &[ONE, X], true))], 2, true),
    ];
    let center_matches = red.canonical_span(&center) == red.canonical_span(&expected_center);

    let target = lambda::<i64>(&tensor_generator(&a, &a, &[ONE, X], ONE)).mod_two();
    let basis = full.basis();
    let mut central_candidates = Vec::new();
    let mut squares = Vec::new();
    for s in [1, -1] {
        for t in [1, -1] {
            let candidate = signed_gamma(s, t);
            if candidate.mod_two() != target {
                continue;
            }
            let central = basis.iter().all(|g| {
                full.commutator(&candidate, &AlgebraElement::from_generator(g.clone()))
                    .expect("same algebra")
                    .is_zero()
            });
            if central {
                central_candidates.push((s, t));
                squares.push(full.multiply(&candidate, &candidate).expect("same algebra"));
            }
        }
    }
    let squares_nonzero = !squares.is_empty() && squares.iter().all(|sq| !sq.is_zero());
    let forced_signs = central_candidates.iter().all(|&(s, t)| t == -s) && central_candidates.len() == 2;
    ZObstructionReport {
        pass: center_matches && forced_signs && squares_nonzero,
        center,
        expected_center,
        center_matches,
        central_candidates,
        squares,
        squares_nonzero,
        note: "relies on the rigidity of degree-0 automorphisms to restrict candidates to sign choices",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformedReport {
    /// `λ((a!b,1)⊗1 · (b!a,1)⊗1)`.
    pub tensor_side: AlgebraElement<PolyGF2>,
    /// `λ((a!b,1)⊗1) · λ((b!a,1)⊗1)` in the deformed `H_3`.
    pub algebra_side: AlgebraElement<PolyGF2>,
    /// Coefficients of the all-1 generator on each side.
    pub tensor_coefficient: PolyGF2,
    pub algebra_coefficient: PolyGF2,
    pub difference: AlgebraElement<PolyGF2>,
    pub expected_difference: AlgebraElement<PolyGF2>,
    /// Both sides agree at `α_0 = α_1 = 0` with the undeformed product.
    pub origin_agrees: bool,
    pub pass: bool,
}

/// The product of the two one-circle generators between `{(1,2),(3,4),(5,6)}`
/// and `{(1,6),(2,3),(4,5)}` shows that the linear extension of `λ` is not
/// multiplicative for the deformed algebras, even in characteristic 2.
pub fn deformed_check() -> DeformedReport {
    let frob = Frobenius::<PolyGF2>::generic();
    let (h, t) = (frob.h().clone(), frob.t().clone());
    let tensor = TensorAlgebra::new(3, frob);
    let full = tensor.target_algebra();
    let a = Matching::parse("1-2,3-4,5-6").expect("valid matching");
    let b = Matching::parse("1-6,2-3,4-5").expect("valid matching");
    let left = tensor_generator(&a, &b, &[ONE], ONE);
    let right = tensor_generator(&b, &a, &[ONE], ONE);

    let product: TensorElement<PolyGF2> = tensor.multiply_generators(&left, &right).expect("same algebra");
    let tensor_side = lambda_element(&product);
    let algebra_side = full
        .multiply(&lambda(&left), &lambda(&right))
        .expect("same algebra");

    let top = term(&a, &a, &[ONE, ONE, ONE], false);
    let tensor_coefficient = tensor_side.coefficient(&top);
    let algebra_coefficient = algebra_side.coefficient(&top);
    let difference = algebra_side.clone() - tensor_side.clone();
    let mut expected_difference = AlgebraElement::zero(3, false);
    expected_difference.add_term(top, t.clone());
    expected_difference.add_term(term(&a, &a, &[X, ONE, ONE], false), h.clone());

    let undeformed = ArcAlgebra::<F2>::khovanov(3, false);
    let plain = undeformed
        .multiply(&lambda(&left), &lambda(&right))
        .expect("same algebra");
    let at_origin = |e: &AlgebraElement<PolyGF2>| e.map_coefficients(|c| c.at_origin());
    let origin_agrees = at_origin(&tensor_side) == plain && at_origin(&algebra_side) == plain;

    DeformedReport {
        pass: tensor_coefficient == h.clone() * h.clone()
            && algebra_coefficient == h.clone() * h + t
            && difference == expected_difference
            && origin_agrees,
        tensor_side,
        algebra_side,
        tensor_coefficient,
        algebra_coefficient,
        difference,
        expected_difference,
        origin_agrees,
    }
}
