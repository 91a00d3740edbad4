use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{gcd, Monomial, Poly};
use super::registry::{GeneratorRegistry, FIRST_GENERATOR_VAR};
use crate::error::Error;

/// The two commuting derivations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub(crate) fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
        }
    }
}

/// Element of the differential field: a reduced quotient of polynomials in
/// `x`, `y` and the registered generators.
///
/// The denominator is integer-primitive with a positive leading coefficient,
/// so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: Poly,
    den: Poly,
}

impl Default for FieldElement {
    fn default() -> Self {
        FieldElement::zero()
    }
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        FieldElement { num: Poly::one(), den: Poly::one() }
    }

    pub fn x() -> Self {
        FieldElement::from_poly(Poly::var(0))
    }

    pub fn y() -> Self {
        FieldElement::from_poly(Poly::var(1))
    }

    pub fn var(v: Var) -> Self {
        FieldElement::from_poly(Poly::var(v.index()))
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::from_poly(Poly::from_int(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        FieldElement::from_poly(Poly::constant(r))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(p: Poly) -> Self {
        FieldElement { num: p, den: Poly::one() }
    }

    /// Reduce `num / den` to canonical form.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FieldElement::zero());
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Ok(FieldElement::normalized_sign(num, den))
    }

    fn normalized_sign(num: Poly, den: Poly) -> Self {
        let p = den.primitive();
        let s = p.lead_coeff() / den.lead_coeff();
        if s.is_one() {
            return FieldElement { num, den };
        }
        FieldElement { num: num.scale(&s), den: p }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        let z = self.num.is_zero();
        if super::debug::is_enabled() {
            super::debug::check_zero_verdict(self, z);
        }
        z
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `eq(a, b) ⟺ is_zero(a − b)`.
    pub fn eq_checked(&self, other: &FieldElement) -> bool {
        let same = self == other;
        if super::debug::is_enabled() {
            super::debug::check_eq_verdict(self, other, same);
        }
        same
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            return FieldElement::from_polys(num, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            let num = self.num.mul(&other.den).add(&other.num);
            return FieldElement { num, den: other.den.clone() };
        }
        if other.den.is_one() {
            let num = other.num.mul(&self.den).add(&self.num);
            return FieldElement { num, den: self.den.clone() };
        }
        // Henrici: with g = gcd(b, d), gcd(a d' + c b', b d') = gcd(a d' + c b', g).
        let g = gcd(&self.den, &other.den);
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = other.den.div_exact(&g).unwrap();
        let t = self.num.mul(&d1).add(&other.num.mul(&b1));
        if t.is_zero() {
            return FieldElement::zero();
        }
        let den = self.den.mul(&d1);
        if g.is_one() {
            return FieldElement::normalized_sign(t, den);
        }
        let h = gcd(&t, &g);
        if h.is_one() {
            FieldElement::normalized_sign(t, den)
        } else {
            FieldElement::normalized_sign(t.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        if self.num.is_zero() || other.num.is_zero() {
            return FieldElement::zero();
        }
        if let Some(c) = self.as_rational() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_rational() {
            return self.scale(&c);
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = other.den.div_exact(&g1).unwrap();
        let c = other.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        FieldElement::normalized_sign(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, c: &BigRational) -> FieldElement {
        if c.is_zero() {
            return FieldElement::zero();
        }
        FieldElement { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn scale_int(&self, n: i64) -> FieldElement {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn inv(&self) -> Result<FieldElement, Error> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement::normalized_sign(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, Error> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, Error> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(FieldElement { num: self.num.pow(e), den: self.den.pow(e) }.renormalized())
    }

    fn renormalized(self) -> FieldElement {
        FieldElement::normalized_sign(self.num, self.den)
    }

    /// Derivative along `v`.
    pub fn derive(&self, v: Var) -> FieldElement {
        if self.num.is_zero() {
            return FieldElement::zero();
        }
        let dn = derive_poly(&self.num, v.index());
        if self.den.is_one() {
            return dn;
        }
        let dd = derive_poly(&self.den, v.index());
        // (N' − (N/D)·D') / D
        let den = FieldElement::from_poly(self.den.clone());
        dn.sub(&self.mul(&dd)).div(&den).unwrap()
    }

    pub fn derive_x(&self) -> FieldElement {
        self.derive(Var::X)
    }

    pub fn derive_y(&self) -> FieldElement {
        self.derive(Var::Y)
    }

    /// ∂x^i ∂y^j.
    pub fn derive_n(&self, i: u32, j: u32) -> FieldElement {
        let mut out = self.clone();
        for _ in 0..i {
            out = out.derive_x();
        }
        for _ in 0..j {
            out = out.derive_y();
        }
        out
    }

    /// Exact evaluation with every variable (including generators) replaced by
    /// the given rational values.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, Error> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::EvaluationSingular);
        }
        Ok(self.num.eval(point) / d)
    }

    pub(crate) fn nvars(&self) -> usize {
        self.num.nvars().max(self.den.nvars())
    }
}

/// Derivation of a polynomial along `dir`, with generator images taken from the
/// registry.
fn derive_poly(p: &Poly, dir: usize) -> FieldElement {
    let mut poly_part = p.partial(dir);
    let mut rest = FieldElement::zero();
    for v in FIRST_GENERATOR_VAR..p.nvars() {
        if !p.uses_var(v) {
            continue;
        }
        let img = GeneratorRegistry::image(v, dir);
        if img.is_zero() {
            continue;
        }
        let dp = p.partial(v);
        if img.den.is_one() {
            poly_part = poly_part.add(&dp.mul(&img.num));
        } else {
            rest = rest.add(&FieldElement::from_poly(dp).mul(&img));
        }
    }
    FieldElement::from_poly(poly_part).add(&rest)
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return f.write_str(&format_poly(&self.num));
        }
        // Clear the numerator's rational content into integer form.
        let c = self.num.content();
        let k = BigRational::from_integer(c.denom().clone());
        let n = self.num.scale(&k);
        let d = self.den.scale(&k);
        let ns = format_poly(&n);
        let ns = if n.num_terms() == 1 { ns } else { format!("({ns})") };
        let ds = format_poly(&d);
        let bare = d.num_terms() == 1 && {
            let (m, k) = d.lead().unwrap();
            k.is_one() && m.exponents().iter().filter(|&&e| e > 0).count() == 1
        };
        if bare {
            write!(f, "{ns}/{ds}")
        } else {
            write!(f, "{ns}/({ds})")
        }
    }
}

fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = GeneratorRegistry::var_name(v);
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

fn format_coeff_term(c: &BigRational, m: &Monomial) -> String {
    let a = c.abs();
    if m.is_one() {
        return a.to_string();
    }
    let ms = format_monomial(m);
    if a.is_one() {
        ms
    } else {
        format!("{a}*{ms}")
    }
}

/// Terms in descending lex order, `+`/`-` separated.
pub(crate) fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let t = format_coeff_term(c, m);
        match (i, c.is_negative()) {
            (0, false) => out.push_str(&t),
            (0, true) => {
                out.push('-');
                out.push_str(&t);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&t);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&t);
            }
        }
    }
    out
}

impl std::str::FromStr for FieldElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        super::parse::parse_field(s)
    }
}

macro_rules! impl_ops {
    ($($tr:ident $m:ident $call:ident),*) => {$(
        impl std::ops::$tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                FieldElement::$call(self, rhs)
            }
        }
        impl std::ops::$tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                FieldElement::$call(&self, &rhs)
            }
        }
    )*};
}
impl_ops!(Add add add, Sub sub sub, Mul mul mul);

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}
