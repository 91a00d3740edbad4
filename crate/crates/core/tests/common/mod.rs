//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use darboux::invariants::InvariantTuple;
use darboux::lpdo::LinearOperator;
use darboux::symfield::{FieldElement, GeneratorRegistry};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn monomial(c: i64, i: u32, j: u32) -> FieldElement {
    let x = FieldElement::x().pow(i as i64).unwrap();
    let y = FieldElement::y().pow(j as i64).unwrap();
    x.mul(&y).scale_int(c)
}

pub fn poly_from_terms(terms: &[(i64, u32, u32)]) -> FieldElement {
    terms.iter().fold(FieldElement::zero(), |acc, &(c, i, j)| acc.add(&monomial(c, i, j)))
}

/// Polynomial in x, y with at most `terms` terms of partial degree ≤ `deg`.
pub fn rand_poly(rng: &mut StdRng, deg: u32, terms: usize) -> FieldElement {
    let n = rng.gen_range(1..=terms);
    let t: Vec<(i64, u32, u32)> = (0..n)
        .map(|_| (rng.gen_range(-4..=4), rng.gen_range(0..=deg), rng.gen_range(0..=deg)))
        .collect();
    poly_from_terms(&t)
}

pub fn rand_nonzero_poly(rng: &mut StdRng, deg: u32, terms: usize) -> FieldElement {
    loop {
        let p = rand_poly(rng, deg, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Small rational function, occasionally carrying `exp(x+y)`.
pub fn rand_element(rng: &mut StdRng) -> FieldElement {
    let num = rand_poly(rng, 2, 3);
    let den = if rng.gen_bool(0.5) { FieldElement::one() } else { rand_nonzero_poly(rng, 1, 2) };
    let mut a = num.div(&den).unwrap();
    if rng.gen_ratio(1, 5) {
        let e = GeneratorRegistry::exponential(&FieldElement::x().add(&FieldElement::y()));
        a = a.mul(&e);
    }
    a
}

pub fn rand_nonzero_element(rng: &mut StdRng) -> FieldElement {
    loop {
        let a = rand_element(rng);
        if !a.is_zero() {
            return a;
        }
    }
}

/// `Dx²Dy + DxDy² + Σ a_ij Dx^i Dy^j` over `i + j ≤ 2`.
pub fn rand_normalized(rng: &mut StdRng) -> LinearOperator {
    let mut terms = vec![((2, 1), FieldElement::one()), ((1, 2), FieldElement::one())];
    for i in 0..=2u32 {
        for j in 0..=(2 - i) {
            if rng.gen_bool(0.6) {
                terms.push(((i, j), rand_poly(rng, 1, 2)));
            }
        }
    }
    LinearOperator::from_terms(terms)
}

/// Operator of order ≤ `order` with small rational coefficients.
pub fn rand_operator(rng: &mut StdRng, order: u32) -> LinearOperator {
    let mut terms = Vec::new();
    for i in 0..=order {
        for j in 0..=(order - i) {
            if rng.gen_bool(0.5) {
                terms.push(((i, j), rand_element(rng)));
            }
        }
    }
    LinearOperator::from_terms(terms)
}

/// Integrable pair: gradient of a polynomial of degree ≤ 3 plus, sometimes,
/// the log-derivative pair of a polynomial unit.
pub fn rand_gauge_pair(rng: &mut StdRng) -> (FieldElement, FieldElement) {
    let g = rand_poly(rng, 2, 3);
    let (mut lx, mut ly) = (g.derive_x(), g.derive_y());
    if rng.gen_bool(0.5) {
        let h = rand_nonzero_poly(rng, 1, 2);
        lx = lx.add(&h.derive_x().div(&h).unwrap());
        ly = ly.add(&h.derive_y().div(&h).unwrap());
    }
    (lx, ly)
}

pub fn rand_tuple(rng: &mut StdRng) -> InvariantTuple {
    InvariantTuple::new(
        rand_element(rng),
        rand_element(rng),
        rand_element(rng),
        rand_element(rng),
        rand_nonzero_element(rng),
    )
}

/// Deterministic sample functions for apply-based oracles.
pub fn test_functions() -> Vec<FieldElement> {
    ["x^3*y^2 - 2*x*y + 5", "1/(x + 2*y + 3)", "exp(x*y)", "exp(x^2 - y)/(1 + x)", "x*y^4"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

pub fn element_strategy() -> impl Strategy<Value = FieldElement> {
    any::<u64>().prop_map(|s| rand_element(&mut rng(s)))
}

pub fn nonzero_element_strategy() -> impl Strategy<Value = FieldElement> {
    any::<u64>().prop_map(|s| rand_nonzero_element(&mut rng(s)))
}

pub fn operator_strategy(order: u32) -> impl Strategy<Value = LinearOperator> {
    any::<u64>().prop_map(move |s| rand_operator(&mut rng(s), order))
}

pub fn normalized_strategy() -> impl Strategy<Value = LinearOperator> {
    any::<u64>().prop_map(|s| rand_normalized(&mut rng(s)))
}

pub fn gauge_pair_strategy() -> impl Strategy<Value = (FieldElement, FieldElement)> {
    any::<u64>().prop_map(|s| rand_gauge_pair(&mut rng(s)))
}
