//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use arcalg::algebra::Sampling;
use arcalg::bimodules::{find_witness, verify_bimodule, FlatTangle};
use arcalg::splitting::{
    deformed_check, lambda, verify_multiplicative, z_obstruction, ChangeOfBasis, TensorAlgebra, TensorGenerator,
};
use arcalg::{AlgebraElement, ArcAlgebra, Coefficient, Execution, Frobenius, Generator, Label, Matching, PolyGF2, PolyZ, F2};

const ONE: Label = Label::One;
const X: Label = Label::X;

fn m(s: &str) -> Matching {
    Matching::parse(s).unwrap()
}

fn gen(a: &str, b: &str, labels: &[Label], reduced: bool) -> Generator {
    Generator::new(m(a), m(b), labels, reduced).unwrap()
}

type Check = (bool, String);
type Criterion = (&'static str, fn() -> Check);

fn main_theorem() -> Check {
    let r2 = verify_multiplicative::<F2>(2, Execution::Parallel);
    let r3 = verify_multiplicative::<F2>(3, Execution::Parallel);
    (
        r2.pass() && r3.pass(),
        format!(
            "GF2: n=2 {} pairs, {} violations; n=3 {} pairs, {} violations",
            r2.total,
            r2.violations.len(),
            r3.total,
            r3.violations.len()
        ),
    )
}

fn characteristic_two_needed() -> Check {
    let report = verify_multiplicative::<i64>(2, Execution::Parallel);
    let (a, b) = ("1-2,3-4", "1-4,2-3");
    let left = TensorGenerator::new(gen(a, a, &[ONE, X], true), ONE).unwrap();
    let right = TensorGenerator::new(gen(a, b, &[ONE], true), ONE).unwrap();
    let expected = AlgebraElement::from_term(gen(a, b, &[X], false), 2);
    let example = report
        .violations
        .iter()
        .any(|v| v.left == left && v.right == right && v.difference() == expected);
    let even = report
        .violations
        .iter()
        .all(|v| v.difference().terms().all(|(_, c)| c % 2 == 0));
    (
        example && even && !report.pass(),
        format!(
            "Z, n=2: {} violations, example pair difference 2(a!b,x): {example}, all even: {even}",
            report.violations.len()
        ),
    )
}

fn linear_isomorphism() -> Check {
    let mut ok = true;
    for n in 1..=4 {
        let cob = ChangeOfBasis::new(n);
        ok &= cob.is_block_unitriangular();
        ok &= cob.block_b().iter().flatten().all(|&v| v == 0 || v == 1);
        let full = ArcAlgebra::<i64>::khovanov(n, false);
        let tensor = TensorAlgebra::<i64>::khovanov(n);
        ok &= full.rank() == tensor.basis().len();
        ok &= tensor
            .basis()
            .iter()
            .all(|t| lambda::<i64>(t).homogeneous_degree() == Some(t.q_degree()));
    }
    (ok, "n<=4: block unitriangular, B in {0,1}, ranks agree, degrees preserved".into())
}

fn oracle_pairs<R: Coefficient>(n: usize, reduced: bool) -> (usize, usize) {
    let alg = ArcAlgebra::<R>::khovanov(n, reduced);
    let basis = alg.basis();
    let mut agree = 0;
    for g in &basis {
        for h in &basis {
            if alg.multiply_generators(g, h).unwrap() == alg.multiply_oracle(g, h).unwrap() {
                agree += 1;
            }
        }
    }
    (agree, basis.len() * basis.len())
}

fn oracle_equivalence() -> Check {
    let (mut agree, mut total) = (0, 0);
    for n in 1..=3 {
        for reduced in [false, true] {
            for (a, t) in [oracle_pairs::<i64>(n, reduced), oracle_pairs::<F2>(n, reduced)] {
                agree += a;
                total += t;
            }
        }
    }
    (agree == total, format!("n<=3, Z and GF2: {agree}/{total} generator pairs agree"))
}

fn algebra_axioms() -> Check {
    let exec = Execution::Parallel;
    let mut reports = Vec::new();
    for n in 1..=2 {
        for reduced in [false, true] {
            reports.push(ArcAlgebra::<i64>::khovanov(n, reduced).check_axioms(Sampling::Exhaustive, exec));
        }
    }
    for reduced in [false, true] {
        reports.push(ArcAlgebra::<F2>::khovanov(3, reduced).check_axioms(Sampling::Exhaustive, exec));
        let sampled = Sampling::Sampled {
            samples: 10_000,
            seed: 2024,
        };
        reports.push(ArcAlgebra::<i64>::khovanov(3, reduced).check_axioms(sampled, exec));
    }
    let triples: usize = reports.iter().map(|r| r.triples).sum();
    let failing = reports.iter().filter(|r| !r.pass).count();
    (
        failing == 0,
        format!("{} runs, {triples} triples, {failing} failing (exhaustive n<=2 over Z, n=3 over GF2, sampled n=3 over Z)", reports.len()),
    )
}

fn center() -> Check {
    let red = ArcAlgebra::<i64>::khovanov(2, true);
    let (a, b) = ("1-4,2-3", "1-2,3-4");
    let mut idem = AlgebraElement::zero(2, true);
    idem.add_term(gen(a, a, &[ONE, ONE], true), 1);
    idem.add_term(gen(b, b, &[ONE, ONE], true), 1);
    let expected = vec![
        idem,
        AlgebraElement::from_generator(gen(a, a, &[ONE, X], true)),
        AlgebraElement::from_generator(gen(b, b, &[ONE, X], true)),
    ];
    let computed = red.center().unwrap();
    let equal = red.canonical_span(&computed) == red.canonical_span(&expected);
    (computed.len() == 3 && equal, format!("Z(reduced H_2) has rank {}, lattice equal: {equal}", computed.len()))
}

fn z_obstruction_check() -> Check {
    let report = z_obstruction();
    let a = "1-4,2-3";
    let minus_two_xx = AlgebraElement::from_term(gen(a, a, &[X, X], false), -2);
    let squares = !report.squares.is_empty() && report.squares.iter().all(|s| *s == minus_two_xx);
    let signs = report.central_candidates == vec![(1, -1), (-1, 1)];
    (
        report.pass && squares && signs,
        format!("Gamma^2 = -2(a!a,xx): {squares}, centrality forces t=-s: {signs}"),
    )
}

fn bimodules() -> Check {
    let frob = Frobenius::<F2>::khovanov();
    let mut tangles = 0;
    let mut failing = Vec::new();
    for total in 1..=4 {
        for left in 0..=total {
            for t in FlatTangle::enumerate(left, total - left) {
                tangles += 1;
                let report = verify_bimodule(&t, frob.clone(), Execution::Parallel).unwrap();
                if !report.pass {
                    failing.push(t.to_string());
                }
            }
        }
    }
    let witness = find_witness(2, 2, frob, Execution::Parallel).unwrap();
    let found = witness.as_ref().map(|(t, _)| t.to_string()).unwrap_or_else(|| "none".into());
    (
        failing.is_empty() && witness.is_some(),
        format!("{tangles} tangles with m+n<=4, {} failing; right-action witness for the left map: {found}", failing.len()),
    )
}

fn deformed() -> Check {
    let report = deformed_check();
    let frob = Frobenius::<PolyGF2>::generic();
    let h2 = frob.h().clone() * frob.h().clone();
    let ok = report.tensor_coefficient == h2
        && report.algebra_coefficient == h2 + frob.t().clone()
        && report.origin_agrees
        && report.pass;
    (
        ok,
        format!(
            "all-1 coefficient: {} vs {}; agree at the origin: {}",
            report.tensor_coefficient, report.algebra_coefficient, report.origin_agrees
        ),
    )
}

fn frobenius_axioms() -> Check {
    let failures = [
        Frobenius::<i64>::khovanov().axiom_failures(),
        Frobenius::<F2>::khovanov().axiom_failures(),
        Frobenius::<PolyZ>::generic().axiom_failures(),
        Frobenius::<PolyGF2>::generic().axiom_failures(),
    ];
    let count: usize = failures.iter().map(Vec::len).sum();
    (count == 0, format!("undeformed and deformed, Z and characteristic 2: {count} failures"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("main theorem over GF2", main_theorem),
        ("characteristic 2 is necessary", characteristic_two_needed),
        ("linear isomorphism", linear_isomorphism),
        ("oracle equivalence", oracle_equivalence),
        ("algebra axioms", algebra_axioms),
        ("center of the reduced H_2", center),
        ("integral obstruction", z_obstruction_check),
        ("bimodules", bimodules),
        ("deformed failure", deformed),
        ("Frobenius axioms", frobenius_axioms),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = check();
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {name}: {detail} ({:.1?})", k + 1, start.elapsed());
        failed += usize::from(!pass);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
