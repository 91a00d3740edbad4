//! Sparse multivariate polynomials over Q.
//!
//! Variable 0 is `x`, variable 1 is `y`, variables 2.. are registered
//! generators. Monomials are exponent vectors with trailing zeros trimmed, so
//! the derived lexicographic order on `Vec<u32>` is the lex order on padded
//! vectors (x > y > generators).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: usize, e: u32) -> Self {
        let mut exps = vec![0; v + 1];
        exps[v] = e;
        Monomial(exps).trimmed()
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let exps = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial(exps)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = (0..other.0.len()).map(|i| other.exp(i) - self.exp(i)).collect();
        Monomial(exps).trimmed()
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        Monomial((0..n).map(|i| self.exp(i).min(other.exp(i))).collect()).trimmed()
    }

    fn with_exp(&self, v: usize, e: u32) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() <= v {
            exps.resize(v + 1, 0);
        }
        exps[v] = e;
        Monomial(exps).trimmed()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (m, c.to_string())))
            .finish()
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: usize) -> Self {
        Poly::term(BigRational::one(), Monomial::var(v, 1))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Leading term in lex order.
    pub fn lead(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn lead_coeff(&self) -> BigRational {
        self.lead().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, s: &BigRational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Number of variable slots in use (max variable index + 1).
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(m.with_exp(v, e - 1), c * BigRational::from_integer(e.into()));
            }
        }
        out
    }

    /// Coefficient of `v^d` as a polynomial in the remaining variables.
    pub fn coeff_in(&self, v: usize, d: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == d {
                out.add_term(m.with_exp(v, 0), c.clone());
            }
        }
        out
    }

    /// All coefficients with respect to `v`, indexed by degree.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let d = m.exp(v) as usize;
            out[d].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Substitute exact values for every variable.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[v].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Rational content: positive rational c with self / c having coprime
    /// integer coefficients.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// Integer-primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lead_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead_coeff().recip())
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.lead().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.lead().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = dm.quotient_of(&rm);
            let qc = rc / &dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    fn monomial_gcd_with(&self, m: &Monomial) -> Monomial {
        self.terms.keys().fold(m.clone(), |acc, k| acc.gcd(k))
    }
}

/// Greatest common divisor, normalized to be integer-primitive with positive
/// leading coefficient (so `gcd(a, 0)` is the primitive part of `a`).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.num_terms() == 1 {
        let m = b.monomial_gcd_with(a.lead().unwrap().0);
        return Poly::term(BigRational::one(), m);
    }
    if b.num_terms() == 1 {
        let m = a.monomial_gcd_with(b.lead().unwrap().0);
        return Poly::term(BigRational::one(), m);
    }
    if a == b {
        return a.primitive();
    }
    let n = a.nvars().max(b.nvars());
    // The gcd only involves variables both sides use.
    if let Some(w) = (0..n).find(|&w| a.uses_var(w) != b.uses_var(w)) {
        return if a.uses_var(w) { gcd(&content_in(a, w), b) } else { gcd(a, &content_in(b, w)) };
    }
    let common: Vec<usize> = (0..n).filter(|&v| a.uses_var(v)).collect();
    if common.iter().all(|&w| modular::free_of(a, b, w)) {
        return Poly::one();
    }
    let (small, large) = if a.num_terms() <= b.num_terms() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.primitive();
    }
    if let Some(g) = heuristic::gcd(&a.primitive(), &b.primitive()) {
        return g.primitive();
    }
    gcd_prs(a, b, &common)
}

/// Primitive PRS in the highest common variable, after splitting off
/// variables the gcd is certified not to involve.
fn gcd_prs(a: &Poly, b: &Poly, common: &[usize]) -> Poly {
    let Some(&v) = common.last() else {
        return Poly::one();
    };
    if let Some(&w) = common.iter().rev().find(|&&w| modular::free_of(a, b, w)) {
        return gcd(&content_in(a, w), &content_in(b, w));
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.degree_in(v) == 0 {
            break Poly::one();
        }
        let r = prem(&p, &q, v);
        if r.is_zero() {
            break q.primitive();
        }
        p = q;
        q = primitive_in(&r, v);
    };
    c.mul(&g).primitive()
}

/// Heuristic gcd over Z: evaluate one variable at a large integer, recurse,
/// rebuild the candidate from its balanced ξ-adic digits and keep it only if
/// it divides both inputs (which then makes it the gcd).
mod heuristic {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    use super::{BigRational, Poly};

    const MAX_BITS: u64 = 6000;
    const MAX_BITS_LAST: u64 = 1 << 20;

    fn int(c: &BigRational) -> &BigInt {
        debug_assert!(c.is_integer());
        c.numer()
    }

    fn int_content(p: &Poly) -> BigInt {
        p.terms.values().fold(BigInt::zero(), |g, c| g.gcd(int(c)))
    }

    fn norm(p: &Poly) -> BigInt {
        p.terms.values().map(|c| int(c).abs()).max().unwrap_or_default()
    }

    fn scale_down(p: &Poly, k: &BigInt) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &p.terms {
            out.terms.insert(m.clone(), BigRational::from_integer(int(c) / k));
        }
        out
    }

    fn eval_at(p: &Poly, v: usize, xi: &BigInt) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &p.terms {
            let k = xi.pow(m.exp(v));
            out.add_term(m.with_exp(v, 0), BigRational::from_integer(int(c) * k));
        }
        out
    }

    fn symmetric_mod(c: &BigInt, xi: &BigInt) -> BigInt {
        let r = c.mod_floor(xi);
        if &r * 2 > *xi {
            r - xi
        } else {
            r
        }
    }

    /// `Σ e_i v^i` with `γ = Σ e_i ξ^i` and balanced digits.
    fn rebuild(gamma: &Poly, xi: &BigInt, v: usize, max_deg: u32) -> Option<Poly> {
        let mut g = gamma.clone();
        let mut out = Poly::zero();
        let mut i = 0u32;
        while !g.is_zero() {
            if i > max_deg {
                return None;
            }
            let mut next = Poly::zero();
            for (m, c) in &g.terms {
                let e = symmetric_mod(int(c), xi);
                if !e.is_zero() {
                    out.add_term(m.with_exp(v, i), BigRational::from_integer(e.clone()));
                }
                let q = (int(c) - e) / xi;
                if !q.is_zero() {
                    next.terms.insert(m.clone(), BigRational::from_integer(q));
                }
            }
            g = next;
            i += 1;
        }
        Some(out)
    }

    fn constant(n: BigInt) -> Poly {
        Poly::constant(BigRational::from_integer(n))
    }

    fn divides(d: &Poly, p: &Poly) -> bool {
        p.div_exact(d).is_some()
    }

    /// gcd in Z[vars] with positive leading coefficient, or `None` if the
    /// heuristic gives up.
    pub(super) fn gcd(a: &Poly, b: &Poly) -> Option<Poly> {
        let (ca, cb) = (int_content(a), int_content(b));
        let c = ca.gcd(&cb);
        if a.is_constant() || b.is_constant() {
            return Some(constant(c));
        }
        let (a, b) = (scale_down(a, &ca), scale_down(b, &cb));
        let n = a.nvars().max(b.nvars());
        let Some(v) = (0..n).rev().find(|&v| a.uses_var(v) && b.uses_var(v)) else {
            // Primitive and sharing no variable: only units in common.
            return Some(constant(c));
        };
        let max_deg = a.degree_in(v).min(b.degree_in(v));
        let mut xi: BigInt = norm(&a).min(norm(&b)) * 2 + 29;
        for _ in 0..6 {
            // The last variable only costs one big-integer gcd, so it gets a
            // much larger budget.
            let budget = if (0..v).any(|w| a.uses_var(w) || b.uses_var(w)) { MAX_BITS } else { MAX_BITS_LAST };
            if xi.bits() * u64::from(a.degree_in(v).max(b.degree_in(v))) > budget {
                return None;
            }
            let (ea, eb) = (eval_at(&a, v, &xi), eval_at(&b, v, &xi));
            if !ea.is_zero() && !eb.is_zero() {
                let gamma = gcd(&ea, &eb)?;
                if let Some(g) = rebuild(&gamma, &xi, v, max_deg) {
                    if !g.is_zero() {
                        let k = int_content(&g);
                        let mut g = scale_down(&g, &k);
                        if g.lead_coeff().is_negative() {
                            g = g.neg();
                        }
                        if divides(&g, &a) && divides(&g, &b) {
                            return Some(g.scale(&BigRational::from_integer(c)));
                        }
                    }
                }
            }
            xi = xi * 73794 / 27011;
        }
        None
    }
}

/// Univariate images modulo a prime: a cheap certificate that a gcd does
/// not involve a variable.
mod modular {
    use num_bigint::BigInt;
    use num_traits::{ToPrimitive, Zero};

    use super::{BigRational, Poly};

    const P: u64 = (1 << 61) - 1;

    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    fn int_mod(n: &BigInt) -> u64 {
        let r = n % BigInt::from(P);
        let r = if r < BigInt::zero() { r + BigInt::from(P) } else { r };
        r.to_u64().unwrap()
    }

    fn rat_mod(c: &BigRational) -> Option<u64> {
        let d = int_mod(c.denom());
        (d != 0).then(|| mul(int_mod(c.numer()), inv(d)))
    }

    /// Coefficients (by degree in `v`) of `p` with every other variable
    /// replaced by `point`.
    fn image(p: &Poly, v: usize, point: &[u64]) -> Option<Vec<u64>> {
        let mut out = vec![0u64; p.degree_in(v) as usize + 1];
        for (m, c) in p.terms() {
            let mut t = rat_mod(c)?;
            for (w, &e) in m.exponents().iter().enumerate() {
                if w != v && e > 0 {
                    t = mul(t, pow(point[w], e as u64));
                }
            }
            let slot = &mut out[m.exp(v) as usize];
            *slot = (*slot + t) % P;
        }
        Some(out)
    }

    fn trim(p: &mut Vec<u64>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    fn rem(a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        let lb = inv(*b.last().unwrap());
        while r.len() >= b.len() {
            let k = mul(*r.last().unwrap(), lb);
            let shift = r.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + P - mul(k, bc)) % P;
            }
            trim(&mut r);
        }
        r
    }

    fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
        while !b.is_empty() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        a.len().saturating_sub(1)
    }

    /// True only if the gcd of `a` and `b` certainly does not involve `v`.
    pub(super) fn free_of(a: &Poly, b: &Poly, v: usize) -> bool {
        let n = a.nvars().max(b.nvars());
        let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ v as u64;
        for _ in 0..3 {
            let point: Vec<u64> = (0..n)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (state >> 3) % P
                })
                .collect();
            let (Some(mut ia), Some(mut ib)) = (image(a, v, &point), image(b, v, &point)) else {
                return false;
            };
            // Leading coefficients must survive, or the image degree says nothing.
            if ia.last() == Some(&0) || ib.last() == Some(&0) {
                continue;
            }
            trim(&mut ia);
            trim(&mut ib);
            return gcd_degree(ia, ib) == 0;
        }
        false
    }
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero();
    for c in p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn primitive_in(p: &Poly, v: usize) -> Poly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive()
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = b.coeff_in(v, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coeff_in(v, dr);
        let shift = Monomial::var(v, dr - db);
        r = lb.mul(&r).sub(&lr.mul(b).mul_term(&shift, &BigRational::one()));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn k(n: i64) -> Poly {
        Poly::from_int(n)
    }

    #[test]
    fn lex_order_leads_with_x() {
        let p = x().add(&y().pow(5));
        assert_eq!(p.lead().unwrap().0, &Monomial::var(0, 1));
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let a = x().pow(2).sub(&y().pow(2));
        let b = x().sub(&y()).scale(&BigRational::from_integer(3.into()));
        assert_eq!(gcd(&a, &b), x().sub(&y()));
    }

    #[test]
    fn heuristic_agrees_with_prs() {
        let e = Poly::var(2);
        let f = x().mul(&y()).add(&e.mul(&k(3))).add(&k(-2));
        let g = x().pow(2).sub(&y().mul(&e)).add(&k(1));
        let h = y().pow(3).add(&x().mul(&e).mul(&k(5)));
        let a = f.pow(2).mul(&g).mul(&k(6));
        let b = f.mul(&h).mul(&g).mul(&k(-4));
        let common = [0, 1, 2];
        let fast = heuristic::gcd(&a.primitive(), &b.primitive()).unwrap().primitive();
        assert_eq!(fast, gcd_prs(&a, &b, &common));
        assert_eq!(fast, f.mul(&g).primitive());
        assert!(!modular::free_of(&a, &b, 2));
        assert!(modular::free_of(&f, &h, 0));
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        let f = x().mul(&y()).add(&k(1));
        let g1 = x().add(&y().pow(2));
        let g2 = x().pow(2).sub(&y()).add(&k(3));
        let a = f.mul(&g1).mul(&f);
        let b = f.mul(&g2);
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn gcd_with_third_variable() {
        let z = Poly::var(2);
        let f = x().add(&z);
        let a = f.mul(&y().add(&k(1)));
        let b = f.mul(&x().sub(&z));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn exact_division() {
        let a = x().pow(3).sub(&y().pow(3));
        let b = x().sub(&y());
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        assert!(a.div_exact(&x().add(&k(1))).is_none());
    }
}
