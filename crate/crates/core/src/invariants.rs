//! Gauge invariants of the operator class
//! `L = DxDy(Dx + Dy) + a20 Dx² + a11 DxDy + a02 Dy² + a10 Dx + a01 Dy + a00`
//! and the invariant-level type-I transformations.
//!
//! Two orientations of invariant tuples are in use. `derived` tuples are the
//! values of the five coefficient formulas (what [`compute_invariants`]
//! returns). `paper` tuples are the ones the existence conditions, lifts and
//! orbit pictures are written in. They are exchanged by the involution
//! [`InvariantTuple::reoriented`]:
//! `(I1, I2, I3, I4, I5) ↦ (−I1, I2, I3, I4, I5 + ∂x∂y(I1)/2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError};
use crate::lpdo::{is_normalized, Direction, LinearOperator};
use crate::symfield::parse::parse_field_list;
use crate::symfield::{FieldElement, LogDerivativeTable};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InvariantTuple(pub [FieldElement; 5]);

impl InvariantTuple {
    pub fn new(i1: FieldElement, i2: FieldElement, i3: FieldElement, i4: FieldElement, i5: FieldElement) -> Self {
        InvariantTuple([i1, i2, i3, i4, i5])
    }

    pub fn zero() -> Self {
        InvariantTuple(Default::default())
    }

    /// `I_k`, 1-based.
    pub fn i(&self, k: usize) -> &FieldElement {
        &self.0[k - 1]
    }

    pub fn i1(&self) -> &FieldElement {
        &self.0[0]
    }
    pub fn i2(&self) -> &FieldElement {
        &self.0[1]
    }
    pub fn i3(&self) -> &FieldElement {
        &self.0[2]
    }
    pub fn i4(&self) -> &FieldElement {
        &self.0[3]
    }
    pub fn i5(&self) -> &FieldElement {
        &self.0[4]
    }

    /// Componentwise equality via the field zero test.
    pub fn eq_checked(&self, other: &InvariantTuple) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.eq_checked(b))
    }

    /// Componentwise differences.
    pub fn diff(&self, other: &InvariantTuple) -> InvariantTuple {
        InvariantTuple(std::array::from_fn(|k| self.0[k].sub(&other.0[k])))
    }

    /// Exchange the `derived` and `paper` orientations (an involution).
    pub fn reoriented(&self) -> InvariantTuple {
        let [i1, i2, i3, i4, i5] = &self.0;
        let i1xy = i1.derive_x().derive_y();
        InvariantTuple::new(
            i1.neg(),
            i2.clone(),
            i3.clone(),
            i4.clone(),
            i5.add(&i1xy.scale(&half())),
        )
    }
}

fn half() -> num_rational::BigRational {
    num_rational::BigRational::new(1.into(), 2.into())
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

impl fmt::Debug for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for InvariantTuple {
    type Err = Error;

    /// Five comma-separated field expressions, optionally in parentheses.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let inner = match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(r) if crate::symfield::parse::split_top_level(r).len() == 5 => r,
            _ => t,
        };
        let v = parse_field_list(inner, 5)?;
        let arr: [FieldElement; 5] = v.try_into().map_err(|_| {
            Error::Parse(ParseError {
                line: 1,
                column: 1,
                token: s.into(),
                message: "expected five expressions".into(),
            })
        })?;
        Ok(InvariantTuple(arr))
    }
}

impl Serialize for InvariantTuple {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        v.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for InvariantTuple {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            List(Vec<String>),
            Text(String),
        }
        let v = match Repr::deserialize(de)? {
            Repr::List(v) => v,
            Repr::Text(s) => return s.parse().map_err(serde::de::Error::custom),
        };
        if v.len() != 5 {
            return Err(serde::de::Error::custom("expected five invariants"));
        }
        let parsed: Result<Vec<FieldElement>, Error> = v.iter().map(|s| s.parse()).collect();
        let parsed = parsed.map_err(serde::de::Error::custom)?;
        Ok(InvariantTuple(parsed.try_into().unwrap()))
    }
}

/// Orientation of the tuples handed to [`lemma1`] and [`lift_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    Paper,
    Derived,
    /// Tuples given at the invariant level are read as `paper`; reports
    /// carry both orientations where they differ.
    #[default]
    Auto,
}

impl SignConvention {
    /// Orientation used when a single answer is required.
    pub fn resolved(self) -> SignConvention {
        match self {
            SignConvention::Auto => SignConvention::Paper,
            s => s,
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignConvention::Paper => "paper",
            SignConvention::Derived => "derived",
            SignConvention::Auto => "auto",
        })
    }
}

impl FromStr for SignConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "paper" => Ok(SignConvention::Paper),
            "derived" => Ok(SignConvention::Derived),
            "auto" => Ok(SignConvention::Auto),
            _ => Err(Error::Parse(ParseError {
                line: 1,
                column: 1,
                token: s.into(),
                message: "expected paper, derived or auto".into(),
            })),
        }
    }
}

/// Coefficients `(a20, a11, a02, a10, a01, a00)`.
fn class_coefficients(l: &LinearOperator) -> [FieldElement; 6] {
    [l.coeff(2, 0), l.coeff(1, 1), l.coeff(0, 2), l.coeff(1, 0), l.coeff(0, 1), l.coeff(0, 0)]
}

/// The five coefficient formulas, evaluated literally (`derived` orientation).
pub fn compute_invariants(l: &LinearOperator) -> Result<InvariantTuple, Error> {
    if !is_normalized(l) {
        return Err(Error::NotNormalized);
    }
    let [a20, a11, a02, a10, a01, a00] = class_coefficients(l);
    let i1 = a11.sub(&a20.scale_int(2)).sub(&a02.scale_int(2));
    let i2 = a20.derive_x().sub(&a02.derive_y());
    let i3 = a10.add(&a20.mul(&a20.sub(&a11))).add(&a20.sub(&a11).derive_y());
    let i4 = a01.add(&a02.mul(&a02.sub(&a11))).add(&a02.sub(&a11).derive_x());
    let i5 = a00
        .sub(&a01.mul(&a20))
        .sub(&a10.mul(&a02))
        .add(&a02.mul(&a20).mul(&a11))
        .add(&a02.scale_int(2).sub(&a11).add(&a20.scale_int(2)).mul(&a20.derive_x()))
        .add(&a20.sub(&a11).add(&a02).derive_x().derive_y());
    Ok(InvariantTuple::new(i1, i2, i3, i4, i5))
}

/// Invariants in the `paper` orientation.
pub fn compute_invariants_paper(l: &LinearOperator) -> Result<InvariantTuple, Error> {
    Ok(compute_invariants(l)?.reoriented())
}

/// Gauge action `L ↦ e^{−g} L e^{g}` with `(lx, ly) = (g_x, g_y)`, restricted
/// to the normalized class.
pub fn gauge_action_on_coefficients(
    l: &LinearOperator,
    lx: &FieldElement,
    ly: &FieldElement,
) -> Result<LinearOperator, Error> {
    if !is_normalized(l) {
        return Err(Error::NotNormalized);
    }
    let g = l.gauge_conjugate(lx, ly)?;
    debug_assert!(is_normalized(&g));
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma1Entry {
    pub direction: Direction,
    #[serde(serialize_with = "ser_display")]
    pub value: FieldElement,
    pub holds: bool,
}

fn ser_display<S: Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Existence conditions of the three type-I transformations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub convention: SignConvention,
    pub entries: Vec<Lemma1Entry>,
    /// In `auto` mode: the same conditions with the tuple read as `derived`.
    pub alternate: Option<Vec<Lemma1Entry>>,
}

impl Lemma1Report {
    pub fn entry(&self, dir: Direction) -> &Lemma1Entry {
        self.entries.iter().find(|e| e.direction == dir).unwrap()
    }

    pub fn holds(&self, dir: Direction) -> bool {
        self.entry(dir).holds
    }
}

fn paper_conditions(t: &InvariantTuple) -> Vec<Lemma1Entry> {
    let [i1, i2, i3, i4, _] = &t.0;
    let values = [
        (Direction::Px, i4.add(&i2.scale_int(2)).sub(&i1.derive_x())),
        (Direction::Py, i1.derive_y().add(&i2.scale_int(2)).sub(i3)),
        (Direction::Pxy, i3.sub(i4).sub(i2)),
    ];
    values
        .into_iter()
        .map(|(direction, value)| {
            let holds = value.is_zero();
            Lemma1Entry { direction, value, holds }
        })
        .collect()
}

pub fn lemma1(t: &InvariantTuple, sign: SignConvention) -> Lemma1Report {
    match sign {
        SignConvention::Paper => Lemma1Report { convention: sign, entries: paper_conditions(t), alternate: None },
        SignConvention::Derived => Lemma1Report {
            convention: sign,
            entries: paper_conditions(&t.reoriented()),
            alternate: None,
        },
        SignConvention::Auto => Lemma1Report {
            convention: sign,
            entries: paper_conditions(t),
            alternate: Some(paper_conditions(&t.reoriented())),
        },
    }
}

/// Image tuple and pivot of a lifted transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct Lift {
    pub tuple: InvariantTuple,
    pub pivot: FieldElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PyPivot {
    /// `f = I5 − ∂x(I3)/2`, the value that matches operator-level pivots.
    Consistent,
    /// `f = I5 − ∂x(I3)`, kept to document the discrepancy.
    AsPublished,
}

/// Lift in the `paper` orientation.
pub fn lift(t: &InvariantTuple, dir: Direction) -> Result<Lift, Error> {
    lift_paper(t, dir, PyPivot::Consistent)
}

/// Lift with an explicit orientation (`auto` reads the tuple as `paper`).
pub fn lift_with(t: &InvariantTuple, dir: Direction, sign: SignConvention) -> Result<Lift, Error> {
    match sign.resolved() {
        SignConvention::Derived => {
            let r = lift(&t.reoriented(), dir)?;
            Ok(Lift { tuple: r.tuple.reoriented(), pivot: r.pivot })
        }
        _ => lift(t, dir),
    }
}

/// Pivot `f` of the lifted transformation (`paper` orientation).
pub fn pivot(t: &InvariantTuple, dir: Direction) -> FieldElement {
    pivot_with(t, dir, PyPivot::Consistent)
}

fn pivot_with(t: &InvariantTuple, dir: Direction, py: PyPivot) -> FieldElement {
    let [i1, i2, i3, i4, i5] = &t.0;
    let h = half();
    match dir {
        Direction::Px => i5.sub(&i1.mul(i2)).sub(&i4.derive_y().scale(&h)),
        Direction::Py => match py {
            PyPivot::Consistent => i5.sub(&i3.derive_x().scale(&h)),
            PyPivot::AsPublished => i5.sub(&i3.derive_x()),
        },
        Direction::Pxy => i5.add(&i1.mul(i4)).add(&i1.derive_x().derive_y().scale(&h)),
    }
}

pub(crate) fn lift_paper(t: &InvariantTuple, dir: Direction, py: PyPivot) -> Result<Lift, Error> {
    let f = pivot_with(t, dir, py);
    if f.is_zero() {
        return Err(Error::ZeroPivot);
    }
    let tt = LogDerivativeTable::new(&f, 3)?;
    let [i1, i2, i3, i4, _] = &t.0;
    let h = half();
    let (tx, ty) = (tt.word("x"), tt.word("y"));
    let (txx, txy, tyy) = (tt.word("xx"), tt.word("xy"), tt.word("yy"));
    let (txxy, txyy) = (tt.word("xxy"), tt.word("xyy"));
    let j = match dir {
        Direction::Px => [
            i1.sub(tx),
            i2.add(txy),
            i3.add(i2).add(txy),
            FieldElement::zero(),
            f.sub(&i4.derive_y().scale(&h))
                .add(&i3.derive_x())
                .sub(&i2.derive_y())
                .add(&txxy.scale(&h)),
        ],
        Direction::Py => [
            i1.sub(ty),
            i2.sub(txy),
            FieldElement::zero(),
            i4.sub(i2).add(txy),
            i1.mul(i2)
                .sub(&i1.mul(txy))
                .sub(&i2.mul(ty))
                .sub(&i3.derive_x().scale(&h))
                .add(&i2.derive_x())
                .add(&i4.derive_y())
                .add(&txyy.scale(&h))
                .add(&txy.mul(ty))
                .add(&f),
        ],
        Direction::Pxy => [
            i1.add(tx).add(ty),
            i2.clone(),
            i4.neg().add(&i3.scale_int(2)).add(&i1.derive_y()).add(txy).add(tyy),
            i1.derive_x().add(&i4.scale_int(2)).sub(i3).add(txx).add(txy),
            i4.derive_y()
                .add(&i3.derive_x())
                .add(&i1.derive_x().derive_y().scale(&h))
                .sub(&i1.mul(i4))
                .sub(&tx.mul(i4))
                .sub(&ty.mul(i4))
                .add(&txxy.scale(&h))
                .add(&txyy.scale(&h))
                .add(&f),
        ],
    };
    Ok(Lift { tuple: InvariantTuple(j), pivot: f })
}

/// Quantities conserved by invertible transformations: `A_x` along p_x
/// edges, `A_y` along p_y edges and `I2` along p_x+p_y edges (`paper`
/// orientation). `A_y = I2 − ∂x(I1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lemma3 {
    pub a_x: FieldElement,
    pub a_y: FieldElement,
    pub i2: FieldElement,
}

impl Lemma3 {
    /// The quantity conserved along edges of the given direction.
    pub fn conserved(&self, dir: Direction) -> &FieldElement {
        match dir {
            Direction::Px => &self.a_x,
            Direction::Py => &self.a_y,
            Direction::Pxy => &self.i2,
        }
    }
}

pub fn lemma3_invariants(t: &InvariantTuple) -> Lemma3 {
    let (i1, i2) = (t.i1(), t.i2());
    Lemma3 {
        a_x: i2.add(&i1.derive_y()),
        a_y: i2.sub(&i1.derive_x()),
        i2: i2.clone(),
    }
}

/// n-th term of the p_x chain through `(2x − y, 1, 1, 0, 0)`.
pub fn chain_term(n: u32) -> InvariantTuple {
    let n = n as i64;
    let s = FieldElement::from_int(2).mul(&FieldElement::x()).sub(&FieldElement::y());
    let s_inv = s.inv().unwrap();
    let s2 = s_inv.mul(&s_inv);
    let s3 = s2.mul(&s_inv);
    InvariantTuple::new(
        s.sub(&s_inv.scale_int(2 * n)),
        FieldElement::one().add(&s2.scale_int(2 * n)),
        FieldElement::from_int(n + 1).add(&s2.scale_int(n * (n + 1))),
        FieldElement::zero(),
        s.scale_int(-n).sub(&s3.scale_int(4 * n * n)),
    )
}

/// Parse-or-panic helper for tests and fixtures.
pub fn tuple(src: &str) -> InvariantTuple {
    src.parse().unwrap_or_else(|e| panic!("bad tuple {src:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpdo::op;
    use crate::symfield::fe;

    #[test]
    fn invariants_examples() {
        assert_eq!(compute_invariants(&op("Dx^2*Dy + Dx*Dy^2")).unwrap(), InvariantTuple::zero());
        assert_eq!(
            compute_invariants(&op("Dx^2*Dy + Dx*Dy^2 + y*Dx^2")).unwrap(),
            tuple("-2*y, 0, y^2 + 1, 0, 0")
        );
        assert!(matches!(compute_invariants(&op("Dx^3")), Err(Error::NotNormalized)));
    }

    #[test]
    fn reorientation_is_involution() {
        let t = tuple("x^2*y, y, 1/x, x - y, x*y^3");
        assert_eq!(t.reoriented().reoriented(), t);
    }

    #[test]
    fn lemma1_examples() {
        let r = lemma1(&tuple("0,0,x,0,1"), SignConvention::Paper);
        assert!(r.holds(Direction::Px) && !r.holds(Direction::Py) && !r.holds(Direction::Pxy));
        let r = lemma1(&tuple("0,0,0,0,exp(x+y)"), SignConvention::Auto);
        assert!(Direction::ALL.iter().all(|&d| r.holds(d)));
        assert!(r.alternate.is_some());
        for n in 0..4 {
            assert!(lemma1(&chain_term(n), SignConvention::Paper).holds(Direction::Px));
        }
    }

    #[test]
    fn lift_examples() {
        let r = lift(&tuple("2*x - y, 1, 1, 0, 0"), Direction::Px).unwrap();
        assert_eq!(r.pivot, fe("y - 2*x"));
        assert_eq!(
            r.tuple,
            tuple("2*x-y-2/(2*x-y), 1+2/(2*x-y)^2, 2+2/(2*x-y)^2, 0, y-2*x-4/(2*x-y)^3")
        );
        assert_eq!(lift(&tuple("0,0,0,0,x"), Direction::Px).unwrap().tuple, tuple("-1/x,0,0,0,x"));
        assert_eq!(lift(&tuple("0,0,x,0,1"), Direction::Px).unwrap().tuple, tuple("0,0,x,0,2"));
        for d in Direction::ALL {
            assert!(matches!(lift(&InvariantTuple::zero(), d), Err(Error::ZeroPivot)));
        }
    }

    #[test]
    fn chain_induction() {
        assert_eq!(chain_term(0), tuple("2*x-y, 1, 1, 0, 0"));
        for n in 0..4 {
            assert_eq!(lift(&chain_term(n), Direction::Px).unwrap().tuple, chain_term(n + 1));
        }
    }

    #[test]
    fn lemma3_examples() {
        let t = tuple("2*x - y, 1, 1, 0, 0");
        assert!(lemma3_invariants(&t).a_x.is_zero());
        let j = lift(&t, Direction::Px).unwrap().tuple;
        assert!(lemma3_invariants(&j).a_x.is_zero());
        let t = tuple("0,0,0,0,x+y");
        let j = lift(&t, Direction::Pxy).unwrap().tuple;
        assert_eq!(lemma3_invariants(&j).i2, lemma3_invariants(&t).i2);
    }

    #[test]
    fn tuple_parse_forms() {
        assert_eq!(tuple("(0, 0, 0, 0, x)"), tuple("0,0,0,0,x"));
        assert_eq!(tuple("g(x,y), 0, 0, 0, 1").i1(), &fe("g(x,y)"));
        assert!("1,2,3".parse::<InvariantTuple>().is_err());
    }
}
