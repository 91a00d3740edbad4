//! Checks against values computed independently of the library code paths:
//! numeric sampling, hand expansions and direct transcriptions.

mod common;

use common::*;
use darboux::darboux::{compose_transformations, type1_transform, verify, Morphism};
use darboux::error::Error;
use darboux::fixtures::{golden_graphs, l0, sample_operators, L0_INVARIANTS};
use darboux::invariants::{
    chain_term, compute_invariants, compute_invariants_paper, lemma1, lemma3_invariants, lift, tuple, InvariantTuple,
    SignConvention,
};
use darboux::lpdo::{op, peel_factorization, right_divide, type1_decompose, Direction, LinearOperator};
use darboux::symfield::{fe, log_derivative_table, FieldElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `Σ a_ij ∂x^i ∂y^j u`, term by term.
fn apply_by_hand(l: &LinearOperator, u: &FieldElement) -> FieldElement {
    l.terms().fold(FieldElement::zero(), |acc, (&(i, j), a)| {
        let mut d = u.clone();
        for _ in 0..i {
            d = d.derive_x();
        }
        for _ in 0..j {
            d = d.derive_y();
        }
        acc.add(&a.mul(&d))
    })
}

fn same_action(a: &LinearOperator, b: &LinearOperator) -> bool {
    test_functions().iter().all(|u| apply_by_hand(a, u).eq_checked(&apply_by_hand(b, u)))
}

#[test]
fn quotient_rule_matches_difference_quotients() {
    let f = fe("1/(2*x - y)");
    let df = f.derive_x();
    assert!(df.eq_checked(&fe("-2/(2*x - y)^2")));
    let h = q(1, 1_000_000);
    for (x, y) in [(q(1, 1), q(0, 1)), (q(3, 2), q(-1, 3)), (q(-2, 1), q(5, 7))] {
        let exact = df.eval(&[x.clone(), y.clone()]).unwrap().to_f64().unwrap();
        let ahead = f.eval(&[&x + &h, y.clone()]).unwrap();
        let behind = f.eval(&[&x - &h, y.clone()]).unwrap();
        let central = ((ahead - behind) / (&h * BigInt::from(2))).to_f64().unwrap();
        assert!((exact - central).abs() < 1e-6 * (1.0 + exact.abs()), "{exact} vs {central}");
    }
}

#[test]
fn random_quotients_match_difference_quotients() {
    let h = q(1, 10_000_000);
    let at = [q(7, 5), q(-3, 11)];
    for seed in 0..40 {
        let mut r = rng(300 + seed);
        let a = rand_poly(&mut r, 2, 3).div(&rand_nonzero_poly(&mut r, 2, 3)).unwrap();
        let Ok(exact) = a.derive_y().eval(&at) else { continue };
        let (Ok(up), Ok(down)) = (
            a.eval(&[at[0].clone(), &at[1] + &h]),
            a.eval(&[at[0].clone(), &at[1] - &h]),
        ) else {
            continue;
        };
        let exact = exact.to_f64().unwrap();
        let central = ((up - down) / (&h * BigInt::from(2))).to_f64().unwrap();
        assert!((exact - central).abs() < 1e-5 * (1.0 + exact.abs()), "seed {seed}: {exact} vs {central}");
    }
}

#[test]
fn kernel_examples() {
    assert!(fe("(x+y) - (x+y)").is_zero());
    assert_eq!(fe("(x^2 - y^2)/(x - y)"), fe("x + y"));
    assert_eq!(fe("exp(x+y)*exp(x+y)/exp(x+y)"), fe("exp(x+y)"));
    assert_eq!(fe("x*y^2").derive_x(), fe("y^2"));
    assert_eq!(fe("exp(x+y)").derive_x(), fe("exp(x+y)"));
    assert!(fe("(x+y)^2 - x^2 - 2*x*y - y^2").is_zero());
    assert!(!fe("exp(x+y)").eq_checked(&fe("exp(x)*exp(y)")));
}

#[test]
fn log_derivative_examples() {
    let t = log_derivative_table(&fe("x"), 3).unwrap();
    assert_eq!(t.word("x"), &fe("1/x"));
    assert_eq!(t.word("xx"), &fe("-1/x^2"));
    assert!(t.word("xy").is_zero());
    let t = log_derivative_table(&fe("y - 2*x"), 3).unwrap();
    assert_eq!(t.word("xy"), &fe("2/(2*x - y)^2"));
    let t = log_derivative_table(&fe("exp(g(x))"), 3).unwrap();
    assert_eq!(t.word("x"), &fe("g_x(x)"));
    assert!(t.word("xxy").is_zero());
}

#[test]
fn composition_matches_hand_expansion() {
    let lhs = op("Dx*Dy + Dy^2").compose(&op("Dx + y"));
    let hand = op("Dx^2*Dy + Dx*Dy^2 + y*Dx*Dy + y*Dy^2 + Dx + 2*Dy");
    assert_eq!(lhs, hand);
    assert_eq!(op("Dx").compose(&op("x")), op("x*Dx + 1"));
    let m = fe("exp(x*y) + y^3");
    let sq = op("Dy^2").compose(&LinearOperator::scalar(m.clone()));
    let expect = LinearOperator::from_terms([
        ((0, 2), m.clone()),
        ((0, 1), m.derive_y().scale_int(2)),
        ((0, 0), m.derive_y().derive_y()),
    ]);
    assert_eq!(sq, expect);
}

#[test]
fn compose_agrees_with_nested_application() {
    for seed in 0..30 {
        let mut r = rng(400 + seed);
        let (p, s) = (rand_operator(&mut r, 2), rand_operator(&mut r, 2));
        let pq = p.compose(&s);
        for u in test_functions() {
            let nested = apply_by_hand(&p, &apply_by_hand(&s, &u));
            assert!(apply_by_hand(&pq, &u).eq_checked(&nested), "seed {seed}");
            assert!(pq.apply(&u).eq_checked(&nested), "seed {seed}");
        }
    }
}

#[test]
fn gauge_examples() {
    let (gx, gy) = (fe("g_x(x)"), FieldElement::zero());
    assert_eq!(op("Dx").gauge_conjugate(&gx, &gy).unwrap(), op("Dx + g_x(x)"));
    // x∘Dx∘(1/x)
    let conj = op("Dx").gauge_conjugate(&fe("-1/x"), &FieldElement::zero()).unwrap();
    assert_eq!(conj, op("x").compose(&op("Dx")).compose(&op("1/x")));
    assert_eq!(conj, op("Dx - 1/x"));
    let l = l0();
    assert_eq!(l.gauge_conjugate(&FieldElement::zero(), &FieldElement::zero()).unwrap(), l);
}

/// e^{-g} L e^{g} acting on u is e^{-g} L(e^{g} u).
#[test]
fn gauge_conjugation_matches_its_action() {
    for seed in 0..15 {
        let mut r = rng(500 + seed);
        let l = rand_operator(&mut r, 2);
        let g = rand_poly(&mut r, 2, 3);
        let e = darboux::symfield::GeneratorRegistry::exponential(&g);
        let conj = l.gauge_conjugate(&g.derive_x(), &g.derive_y()).unwrap();
        for u in test_functions() {
            let direct = apply_by_hand(&l, &e.mul(&u)).div(&e).unwrap();
            assert!(apply_by_hand(&conj, &u).eq_checked(&direct), "seed {seed}");
        }
    }
}

#[test]
fn division_examples() {
    let (c, r) = right_divide(&op("Dx^2"), Direction::Px, &FieldElement::zero());
    assert_eq!((c, r), (op("Dx"), LinearOperator::zero()));
    let m = fe("x*y^2 + 1/y");
    let (c, r) = right_divide(&op("Dx^2"), Direction::Px, &m);
    assert_eq!(c, op("Dx").sub(&LinearOperator::scalar(m.clone())));
    assert_eq!(r, LinearOperator::scalar(m.mul(&m).sub(&m.derive_x())));
    let l = op("Dx*Dy + Dy^2").compose(&op("Dx + y")).add(&op("x"));
    let (c, r) = right_divide(&l, Direction::Px, &fe("y"));
    assert_eq!((c, r), (op("Dx*Dy + Dy^2"), op("x")));
}

#[test]
fn decomposition_examples() {
    let d = type1_decompose(&op("Dx^2*Dy + Dx*Dy^2 + 1"), Direction::Px).unwrap();
    assert!(d.m.is_zero() && d.f.is_one());
    assert_eq!(d.c, op("Dx*Dy + Dy^2"));
    let l = op("Dx*Dy + Dy^2").compose(&op("Dx + y")).add(&op("x"));
    let d = type1_decompose(&l, Direction::Px).unwrap();
    assert_eq!((d.m, d.c, d.f), (fe("y"), op("Dx*Dy + Dy^2"), fe("x")));
    match type1_decompose(&op("Dx^2*Dy + Dx*Dy^2 + x*Dy"), Direction::Px) {
        Err(Error::NoType1 { residuals, .. }) => assert_eq!(residuals, op("x*Dy")),
        other => panic!("expected NoType1, got {other:?}"),
    }
}

#[test]
fn peel_examples() {
    let l = op("Dx").compose(&op("Dy")).compose(&op("Dx + Dy"));
    let fs = peel_factorization(&l, &[Direction::Px, Direction::Py, Direction::Pxy]).unwrap();
    assert_eq!(fs, vec![op("Dx"), op("Dy"), op("Dx + Dy")]);
    assert!(peel_factorization(&l0(), &[Direction::Py, Direction::Pxy, Direction::Px]).is_err());
}

/// The five invariant formulas written out again from the coefficients.
fn invariants_by_hand(l: &LinearOperator) -> [FieldElement; 5] {
    let a = |i, j| l.coeff(i, j);
    let (a20, a11, a02, a10, a01, a00) = (a(2, 0), a(1, 1), a(0, 2), a(1, 0), a(0, 1), a(0, 0));
    let two = FieldElement::from_int(2);
    let i1 = a11.sub(&two.mul(&a20)).sub(&two.mul(&a02));
    let i2 = a20.derive_x().sub(&a02.derive_y());
    let i3 = a10.add(&a20.mul(&a20)).sub(&a20.mul(&a11)).add(&a20.derive_y()).sub(&a11.derive_y());
    let i4 = a01.add(&a02.mul(&a02)).sub(&a02.mul(&a11)).add(&a02.derive_x()).sub(&a11.derive_x());
    let i5 = a00.sub(&a01.mul(&a20)).sub(&a10.mul(&a02)).add(&a02.mul(&a20).mul(&a11))
        .add(&two.mul(&a02).mul(&a20.derive_x()))
        .sub(&a11.mul(&a20.derive_x()))
        .add(&two.mul(&a20).mul(&a20.derive_x()))
        .add(&a20.derive_n(1, 1))
        .sub(&a11.derive_n(1, 1))
        .add(&a02.derive_n(1, 1));
    [i1, i2, i3, i4, i5]
}

#[test]
fn invariants_match_a_second_transcription() {
    for seed in 0..40 {
        let l = rand_normalized(&mut rng(600 + seed));
        let t = compute_invariants(&l).unwrap();
        for (k, v) in invariants_by_hand(&l).iter().enumerate() {
            assert!(t.i(k + 1).eq_checked(v), "seed {seed}, I{}", k + 1);
        }
    }
}

#[test]
fn invariant_examples() {
    assert!(compute_invariants(&op("Dx^2*Dy + Dx*Dy^2")).unwrap().eq_checked(&InvariantTuple::zero()));
    // The a20 = y example: I2 = d_x(a20) - d_y(a02) vanishes.
    let t = compute_invariants(&op("Dx^2*Dy + Dx*Dy^2 + y*Dx^2")).unwrap();
    assert!(t.eq_checked(&tuple("-2*y, 0, y^2 + 1, 0, 0")));
    assert!(compute_invariants_paper(&l0()).unwrap().eq_checked(&tuple(L0_INVARIANTS)));
    assert!(compute_invariants(&l0()).unwrap().eq_checked(&tuple("y - 2*x, 1, 1, 0, 0")));
}

#[test]
fn existence_conditions_example() {
    let rep = lemma1(&tuple("0, 0, x, 0, 1"), SignConvention::Paper);
    assert!(rep.holds(Direction::Px));
    assert!(!rep.holds(Direction::Py));
    assert!(!rep.holds(Direction::Pxy));
}

#[test]
fn lift_examples() {
    let l = lift(&tuple("2*x - y, 1, 1, 0, 0"), Direction::Px).unwrap();
    let s = "(2*x - y)";
    let want = tuple(&format!("{s} - 2/{s}, 1 + 2/{s}^2, 2 + 2/{s}^2, 0, y - 2*x - 4/{s}^3"));
    assert!(l.tuple.eq_checked(&want));
    assert!(l.pivot.eq_checked(&fe("y - 2*x")));
    assert!(lift(&tuple("0,0,0,0,x"), Direction::Px).unwrap().tuple.eq_checked(&tuple("-1/x, 0, 0, 0, x")));
    assert!(lift(&tuple("0,0,x,0,1"), Direction::Px).unwrap().tuple.eq_checked(&tuple("0, 0, x, 0, 2")));
    for d in [Direction::Px, Direction::Py, Direction::Pxy] {
        assert!(matches!(lift(&InvariantTuple::zero(), d), Err(Error::ZeroPivot)));
    }
    assert!(chain_term(0).eq_checked(&tuple("2*x - y, 1, 1, 0, 0")));
}

/// N(L(u)) = L1(M(u)) on sample functions, with every identity of the record.
#[test]
fn transformations_intertwine_on_functions() {
    for (l, d) in sample_operators() {
        let r = type1_transform(&l, d).unwrap();
        assert!(verify(&r).all_pass());
        for u in test_functions() {
            let lhs = apply_by_hand(&r.n, &apply_by_hand(&l, &u));
            let rhs = apply_by_hand(&r.target, &apply_by_hand(&r.big_m, &u));
            assert!(lhs.eq_checked(&rhs), "{l} along {}", d.label());
        }
        // The operator-level target invariants agree with the lift.
        let src = compute_invariants_paper(&l).unwrap();
        let lifted = lift(&src, d).unwrap().tuple;
        assert!(lifted.eq_checked(&compute_invariants_paper(&r.target).unwrap()));
    }
}

#[test]
fn f_equals_x_record() {
    let l = op("Dx*Dy + Dy^2").compose(&op("Dx + y")).add(&op("x"));
    let r = type1_transform(&l, Direction::Px).unwrap();
    assert_eq!(r.f, fe("x"));
    assert_eq!(r.n, op("Dx + y - 1/x"));
    assert!(verify(&r).get("G N = M A").unwrap().pass);
    // M'M = 1 + A L with A = -1/x.
    let mm = r.m_prime.compose(&r.big_m);
    assert_eq!(mm, LinearOperator::one().add(&op("-1/x").compose(&l)));
    let mut tampered = r.clone();
    tampered.a = fe("-1/(x + 1)");
    assert!(!verify(&tampered).get("M' M = 1 + A L").unwrap().pass);
}

#[test]
fn morphisms_compose() {
    let (l, d) = sample_operators().remove(1);
    let r = type1_transform(&l, d).unwrap();
    let id = Morphism::identity(&r.target);
    assert_eq!(r.morphism().then(&id).unwrap(), r.morphism());
    // Two consecutive p_x steps along the chain through L0.
    let s1 = type1_transform(&l0(), Direction::Px).unwrap();
    let s2 = type1_transform(&s1.target, Direction::Px).unwrap();
    let c = compose_transformations(&s1, &s2).unwrap();
    assert!(same_action(&c.n.compose(&c.source), &c.target.compose(&c.m)));
    // Going there and back is the identity up to (M + A L, N + L A).
    let back = r.morphism().then(&r.inverse()).unwrap();
    let a = LinearOperator::scalar(r.a.clone());
    assert!(back.equivalent_via(&Morphism::identity(&l), &a));
    assert!(matches!(s2.morphism().then(&r.morphism()), Err(Error::SourceTargetMismatch)));
}

#[test]
fn golden_orbits_are_sound() {
    for g in golden_graphs() {
        let graph = g.explore().unwrap();
        for (i, a) in graph.nodes.iter().enumerate() {
            for b in &graph.nodes[i + 1..] {
                assert!(!a.tuple.eq_checked(&b.tuple), "{}: duplicate node", g.name);
            }
        }
        for e in &graph.edges {
            let (from, to) = (&graph.node(e.from).tuple, &graph.node(e.to).tuple);
            let l = lift(from, e.direction).unwrap();
            assert!(l.tuple.eq_checked(to), "{}: edge {:?}", g.name, e);
            let (a, b) = (lemma3_invariants(from), lemma3_invariants(to));
            assert!(a.conserved(e.direction).eq_checked(b.conserved(e.direction)), "{}: {:?}", g.name, e);
        }
    }
}
