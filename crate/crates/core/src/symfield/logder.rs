use std::collections::BTreeMap;

use super::element::FieldElement;
use crate::error::Error;

/// Derivatives `T_{x^i y^j}` of `T = ln f` for `1 ≤ i + j ≤ max_order`.
///
/// `T` itself is never formed; the table starts from `f_x / f` and `f_y / f`.
#[derive(Clone, Debug)]
pub struct LogDerivativeTable {
    max_order: u32,
    entries: BTreeMap<(u32, u32), FieldElement>,
}

impl LogDerivativeTable {
    pub fn new(f: &FieldElement, max_order: u32) -> Result<Self, Error> {
        if f.is_zero() {
            return Err(Error::ZeroArgument("log-derivative of 0"));
        }
        let mut entries = BTreeMap::new();
        if max_order >= 1 {
            entries.insert((1, 0), f.derive_x().div(f)?);
            entries.insert((0, 1), f.derive_y().div(f)?);
        }
        for n in 2..=max_order {
            // x-derivatives first; the pure y-power comes from the y-chain.
            for i in 1..=n {
                let prev = entries[&(i - 1, n - i)].clone();
                entries.insert((i, n - i), prev.derive_x());
            }
            let prev = entries[&(0, n - 1)].clone();
            entries.insert((0, n), prev.derive_y());
        }
        Ok(LogDerivativeTable { max_order, entries })
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    /// `T_{x^i y^j}`.
    pub fn get(&self, i: u32, j: u32) -> &FieldElement {
        self.entries
            .get(&(i, j))
            .unwrap_or_else(|| panic!("T_x^{i}y^{j} is outside the table (max order {})", self.max_order))
    }

    /// Entry for a derivative word such as `"xxy"`; letter order is irrelevant.
    pub fn word(&self, w: &str) -> &FieldElement {
        let i = w.chars().filter(|&c| c == 'x').count() as u32;
        self.get(i, w.len() as u32 - i)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &FieldElement)> {
        self.entries.iter()
    }
}
