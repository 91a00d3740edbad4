//! Linear partial differential operators K[Dx, Dy].

mod division;
mod operator;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use division::{is_normalized, peel_factorization, right_divide, type1_decompose, Decomposition};
pub use operator::LinearOperator;

use crate::error::Error;
use crate::symfield::FieldElement;

/// Principal symbol of a first-order factor `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "p_x")]
    Px,
    #[serde(rename = "p_y")]
    Py,
    #[serde(rename = "p_x+p_y")]
    Pxy,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Px, Direction::Py, Direction::Pxy];

    pub fn label(self) -> &'static str {
        match self {
            Direction::Px => "p_x",
            Direction::Py => "p_y",
            Direction::Pxy => "p_x+p_y",
        }
    }

    /// Short CLI spelling.
    pub fn short(self) -> &'static str {
        match self {
            Direction::Px => "px",
            Direction::Py => "py",
            Direction::Pxy => "pxy",
        }
    }

    /// `D_dir`: `Dx`, `Dy` or `Dx + Dy`.
    pub fn derivation(self) -> LinearOperator {
        match self {
            Direction::Px => LinearOperator::dx(),
            Direction::Py => LinearOperator::dy(),
            Direction::Pxy => LinearOperator::dx().add(&LinearOperator::dy()),
        }
    }

    /// `D_dir + m`.
    pub fn operator(self, m: &FieldElement) -> LinearOperator {
        self.derivation().add(&LinearOperator::scalar(m.clone()))
    }

    /// The derivation `D_dir` applied to a function.
    pub fn derive(self, f: &FieldElement) -> FieldElement {
        match self {
            Direction::Px => f.derive_x(),
            Direction::Py => f.derive_y(),
            Direction::Pxy => f.derive_x().add(&f.derive_y()),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().replace(' ', "").as_str() {
            "px" | "p_x" | "x" => Ok(Direction::Px),
            "py" | "p_y" | "y" => Ok(Direction::Py),
            "pxy" | "p_x+p_y" | "px+py" | "xy" => Ok(Direction::Pxy),
            _ => Err(Error::Parse(crate::error::ParseError {
                line: 1,
                column: 1,
                token: s.to_string(),
                message: "expected a direction: px, py or pxy".into(),
            })),
        }
    }
}

/// Parse a comma-separated list of directions, e.g. `py,px,pxy`.
pub fn parse_directions(s: &str) -> Result<Vec<Direction>, Error> {
    s.split(',').map(str::parse).collect()
}

/// Homogeneous polynomial in `p_x`, `p_y` with field coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalSymbol {
    coeffs: BTreeMap<(u32, u32), FieldElement>,
}

impl PrincipalSymbol {
    pub(crate) fn new(coeffs: BTreeMap<(u32, u32), FieldElement>) -> Self {
        PrincipalSymbol { coeffs }
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElement {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    /// Symbol of a product of first-order factors with the given directions.
    pub fn of_directions(dirs: &[Direction]) -> Self {
        let op = dirs
            .iter()
            .fold(LinearOperator::one(), |acc, d| acc.compose(&d.derivation()));
        op.principal_symbol()
    }
}

impl fmt::Display for PrincipalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = LinearOperator::from_terms(self.coeffs.clone());
        let s = op.to_string().replace("Dx", "p_x").replace("Dy", "p_y");
        f.write_str(&s)
    }
}

/// Parse-or-panic helper for tests and fixtures.
pub fn op(src: &str) -> LinearOperator {
    src.parse().unwrap_or_else(|e| panic!("bad operator {src:?}: {e}"))
}
