//! Right division by first-order operators `D_dir + m`.
//!
//! Each direction is handled in a frame of commuting derivations `(D1, D2)`
//! with `D1 = D_dir`: `(Dx, Dy)` for p_x, `(Dy, Dx)` for p_y and
//! `(S, Dy)` with `S = Dx + Dy` for p_x+p_y. Frame coordinates are exact
//! triangular rewrites of the standard ones.

use std::collections::BTreeMap;

use num_integer::binomial;

use super::{Direction, LinearOperator};
use crate::error::Error;
use crate::symfield::FieldElement;

type Frame = BTreeMap<(u32, u32), FieldElement>;

fn add_to(frame: &mut Frame, key: (u32, u32), c: FieldElement) {
    if c.is_zero() {
        return;
    }
    let slot = frame.entry(key).or_default();
    *slot = slot.add(&c);
    if slot.is_zero() {
        frame.remove(&key);
    }
}

pub(crate) fn to_frame(l: &LinearOperator, dir: Direction) -> Frame {
    let mut out = Frame::new();
    for (&(i, j), c) in l.terms() {
        match dir {
            Direction::Px => add_to(&mut out, (i, j), c.clone()),
            Direction::Py => add_to(&mut out, (j, i), c.clone()),
            // Dx^i Dy^j = (S − Dy)^i Dy^j
            Direction::Pxy => {
                for k in 0..=i {
                    let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
                    let w = binomial(i, k) as i64 * sign;
                    add_to(&mut out, (k, i - k + j), c.scale_int(w));
                }
            }
        }
    }
    out
}

pub(crate) fn from_frame(frame: &Frame, dir: Direction) -> LinearOperator {
    let mut out = LinearOperator::zero();
    for (&(a, b), c) in frame {
        match dir {
            Direction::Px => out.add_term(a, b, c.clone()),
            Direction::Py => out.add_term(b, a, c.clone()),
            // S^a Dy^b = Σ C(a,p) Dx^p Dy^(a−p+b)
            Direction::Pxy => {
                for p in 0..=a {
                    out.add_term(p, a - p + b, c.scale_int(binomial(a, p) as i64));
                }
            }
        }
    }
    out
}

fn frame_get(frame: &Frame, a: u32, b: u32) -> FieldElement {
    frame.get(&(a, b)).cloned().unwrap_or_default()
}

/// `L = C ∘ (D_dir + m) + R` with `R` free of `D_dir` (in the direction's frame).
pub fn right_divide(l: &LinearOperator, dir: Direction, m: &FieldElement) -> (LinearOperator, LinearOperator) {
    let big_m = dir.operator(m);
    let mut rem = l.clone();
    let mut quot = LinearOperator::zero();
    loop {
        let frame = to_frame(&rem, dir);
        let lead = frame
            .iter()
            .filter(|((a, _), _)| *a >= 1)
            .max_by_key(|((a, b), _)| (a + b, *a));
        let Some((&(a, b), c)) = lead else { break };
        let mut t = Frame::new();
        t.insert((a - 1, b), c.clone());
        let t = from_frame(&t, dir);
        rem = rem.sub(&t.compose(&big_m));
        quot = quot.add(&t);
    }
    assert!(
        l.sub(&quot.compose(&big_m)).sub(&rem).is_zero(),
        "right division failed to reassemble"
    );
    (quot, rem)
}

/// Data of `L = C ∘ M + f`, `M = D_dir + m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub direction: Direction,
    pub m: FieldElement,
    pub c: LinearOperator,
    pub f: FieldElement,
}

impl Decomposition {
    pub fn m_operator(&self) -> LinearOperator {
        self.direction.operator(&self.m)
    }
}

/// `Dx²Dy + DxDy² + (terms of order ≤ 2)`.
pub fn is_normalized(l: &LinearOperator) -> bool {
    l.coeff(2, 1).is_one()
        && l.coeff(1, 2).is_one()
        && l
            .terms()
            .all(|(&(i, j), _)| i + j <= 2 || (i, j) == (2, 1) || (i, j) == (1, 2))
}

/// `m` forced by the top spurious slot: for an order-k operator in frame
/// coordinates, `m = p_{0,k−1} / p_{1,k−1}`; needs `p_{0,k} = 0`.
fn structural_m(frame: &Frame, k: u32) -> Option<FieldElement> {
    if k == 0 || !frame_get(frame, 0, k).is_zero() {
        return None;
    }
    let p1 = frame_get(frame, 1, k - 1);
    if p1.is_zero() {
        return None;
    }
    Some(frame_get(frame, 0, k - 1).div(&p1).unwrap())
}

pub fn type1_decompose(l: &LinearOperator, dir: Direction) -> Result<Decomposition, Error> {
    if !is_normalized(l) {
        return Err(Error::NotNormalized);
    }
    let frame = to_frame(l, dir);
    let m = structural_m(&frame, 3).expect("normalized operators have a nonzero p_{1,2} slot");
    let (c, r) = right_divide(l, dir, &m);
    let rf = to_frame(&r, dir);
    if rf.keys().any(|&(_, b)| b > 0) {
        return Err(Error::NoType1 { direction: dir, residuals: r });
    }
    let f = frame_get(&rf, 0, 0);
    Ok(Decomposition { direction: dir, m, c, f })
}

/// Split `L = F1 ∘ F2 ∘ … ∘ Fk` with `σ(Fi)` given by `seq`, peeling the
/// rightmost factor first. `stage` in the error is the index in `seq` of the
/// factor that could not be split off.
pub fn peel_factorization(l: &LinearOperator, seq: &[Direction]) -> Result<Vec<LinearOperator>, Error> {
    if seq.len() as u32 != l.order() || seq.is_empty() {
        return Err(Error::Unsupported(format!(
            "symbol sequence of length {} for an operator of order {}",
            seq.len(),
            l.order()
        )));
    }
    let mut rest = l.clone();
    let mut factors = Vec::with_capacity(seq.len());
    for (stage, &dir) in seq.iter().enumerate().rev() {
        let k = rest.order();
        let frame = to_frame(&rest, dir);
        let Some(m) = structural_m(&frame, k) else {
            return Err(Error::NoFactorization { stage, residuals: rest });
        };
        let (q, r) = right_divide(&rest, dir, &m);
        if !r.is_zero() {
            return Err(Error::NoFactorization { stage, residuals: r });
        }
        factors.push(dir.operator(&m));
        rest = q;
    }
    factors.reverse();
    let q = rest.as_scalar().expect("quotient of full order is a scalar");
    factors[0] = factors[0].left_mul(&q);
    Ok(factors)
}
