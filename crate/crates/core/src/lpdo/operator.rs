use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;
use num_traits::Signed;

use crate::error::Error;
use crate::symfield::parse::{parse_as, Parsable};
use crate::symfield::{FieldElement, Var};

/// Element of K[Dx, Dy]: `Σ a_ij Dx^i Dy^j`, coefficients on the left.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearOperator {
    coeffs: BTreeMap<(u32, u32), FieldElement>,
}

impl LinearOperator {
    pub fn zero() -> Self {
        LinearOperator::default()
    }

    pub fn one() -> Self {
        LinearOperator::scalar(FieldElement::one())
    }

    pub fn scalar(f: FieldElement) -> Self {
        LinearOperator::monomial(f, 0, 0)
    }

    pub fn monomial(f: FieldElement, i: u32, j: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !f.is_zero() {
            coeffs.insert((i, j), f);
        }
        LinearOperator { coeffs }
    }

    pub fn dx() -> Self {
        LinearOperator::monomial(FieldElement::one(), 1, 0)
    }

    pub fn dy() -> Self {
        LinearOperator::monomial(FieldElement::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), FieldElement)>>(terms: I) -> Self {
        let mut out = LinearOperator::zero();
        for ((i, j), c) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElement {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &FieldElement)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `max(i + j)`; 0 for the zero operator.
    pub fn order(&self) -> u32 {
        self.coeffs.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn as_scalar(&self) -> Option<FieldElement> {
        match self.coeffs.len() {
            0 => Some(FieldElement::zero()),
            1 => self.coeffs.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, i: u32, j: u32, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_default();
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &LinearOperator) -> LinearOperator {
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LinearOperator) -> LinearOperator {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinearOperator {
        LinearOperator {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    /// `f ∘ self` (multiplication on the left).
    pub fn left_mul(&self, f: &FieldElement) -> LinearOperator {
        LinearOperator::from_terms(self.coeffs.iter().map(|(k, c)| (*k, f.mul(c))))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        let mut out = LinearOperator::zero();
        let max_i = self.coeffs.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.coeffs.keys().map(|k| k.1).max().unwrap_or(0);
        for (&(k, l), g) in &other.coeffs {
            // ∂x^a ∂y^b g for all a ≤ max_i, b ≤ max_j.
            let mut table = vec![vec![FieldElement::zero(); max_j as usize + 1]; max_i as usize + 1];
            for a in 0..=max_i as usize {
                for b in 0..=max_j as usize {
                    table[a][b] = match (a, b) {
                        (0, 0) => g.clone(),
                        (_, 0) => table[a - 1][0].derive_x(),
                        _ => table[a][b - 1].derive_y(),
                    };
                }
            }
            for (&(i, j), f) in &self.coeffs {
                for p in 0..=i {
                    for q in 0..=j {
                        let d = &table[(i - p) as usize][(j - q) as usize];
                        if d.is_zero() {
                            continue;
                        }
                        let c = binomial(i, p) * binomial(j, q);
                        let term = f.mul(d).scale_int(c as i64);
                        out.add_term(p + k, q + l, term);
                    }
                }
            }
        }
        out
    }

    /// Act on a function.
    pub fn apply(&self, u: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .fold(FieldElement::zero(), |acc, (&(i, j), c)| acc.add(&c.mul(&u.derive_n(i, j))))
    }

    /// `self^n` under composition.
    pub fn pow(&self, n: u32) -> LinearOperator {
        (0..n).fold(LinearOperator::one(), |acc, _| acc.compose(self))
    }

    /// Substitute `Dx ↦ Dx + lx`, `Dy ↦ Dy + ly`.
    ///
    /// With `(lx, ly) = (g_x, g_y)` this is `e^{-g} ∘ L ∘ e^{g}`; with
    /// `(−u_x/u, −u_y/u)` it is `u ∘ L ∘ u^{-1}`.
    pub fn gauge_conjugate(&self, lx: &FieldElement, ly: &FieldElement) -> Result<LinearOperator, Error> {
        if !lx.derive_y().sub(&ly.derive_x()).is_zero() {
            return Err(Error::NonIntegrablePair);
        }
        let sx = LinearOperator::dx().add(&LinearOperator::scalar(lx.clone()));
        let sy = LinearOperator::dy().add(&LinearOperator::scalar(ly.clone()));
        let max_i = self.coeffs.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.coeffs.keys().map(|k| k.1).max().unwrap_or(0);
        let mut px = vec![LinearOperator::one()];
        for _ in 0..max_i {
            px.push(px.last().unwrap().compose(&sx));
        }
        let mut py = vec![LinearOperator::one()];
        for _ in 0..max_j {
            py.push(py.last().unwrap().compose(&sy));
        }
        let mut out = LinearOperator::zero();
        for (&(i, j), c) in &self.coeffs {
            let t = px[i as usize].compose(&py[j as usize]).left_mul(c);
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Top-order homogeneous part.
    pub fn principal_symbol(&self) -> super::PrincipalSymbol {
        let n = self.order();
        super::PrincipalSymbol::new(
            self.coeffs
                .iter()
                .filter(|((i, j), _)| i + j == n)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        )
    }
}

impl Parsable for LinearOperator {
    fn derivation(v: Var) -> Option<Self> {
        Some(match v {
            Var::X => LinearOperator::dx(),
            Var::Y => LinearOperator::dy(),
        })
    }
    fn from_field(f: FieldElement) -> Self {
        LinearOperator::scalar(f)
    }
    fn as_field(&self) -> Option<FieldElement> {
        self.as_scalar()
    }
    fn add(&self, other: &Self) -> Self {
        LinearOperator::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LinearOperator::sub(self, other)
    }
    fn neg(&self) -> Self {
        LinearOperator::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self.compose(other)
    }
}

impl std::str::FromStr for LinearOperator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_as(s)
    }
}

/// `(negative, text)` for a coefficient that can be printed without
/// parentheses, or `None` if it needs them.
fn simple_coeff(c: &FieldElement) -> Option<(bool, String)> {
    if c.numer().num_terms() != 1 {
        return None;
    }
    let negative = c.numer().lead_coeff().is_negative();
    let abs = if negative { c.neg() } else { c.clone() };
    Some((negative, abs.to_string()))
}

fn d_monomial(i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("Dx".to_string()),
        _ => parts.push(format!("Dx^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("Dy".to_string()),
        _ => parts.push(format!("Dy^{j}")),
    }
    parts.join("*")
}

impl fmt::Display for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        // Graded-lex: higher total order first, then higher Dx power.
        let mut keys: Vec<_> = self.coeffs.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.coeffs[&(i, j)];
            let d = d_monomial(i, j);
            let (negative, body) = match simple_coeff(c) {
                Some((neg, s)) if d.is_empty() => (neg, s),
                Some((neg, s)) if s == "1" => (neg, d),
                Some((neg, s)) => (neg, format!("{s}*{d}")),
                None if d.is_empty() => (false, format!("({c})")),
                None => (false, format!("({c})*{d}")),
            };
            match (n, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOperator({self})")
    }
}
