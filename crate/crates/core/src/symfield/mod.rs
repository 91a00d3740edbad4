//! Exact differential-field kernel.
//!
//! Elements are reduced rational functions over Q in `x`, `y` and declared
//! generators (exponentials `exp(u)` and uninterpreted functions `g(x)`,
//! `g(x,y)` with their formal derivatives). Declared generators are treated as
//! algebraically independent, so `exp(x)*exp(y)` and `exp(x+y)` are distinct.

pub mod debug;
mod element;
mod logder;
pub mod parse;
pub mod poly;
mod registry;

pub use element::{FieldElement, Var};
pub use logder::LogDerivativeTable;
pub use parse::{parse_field, Parsable};
pub use registry::{Dependence, Generator, GeneratorKind, GeneratorRegistry};

use crate::error::Error;

/// `a op b` for `op` one of `+ - * /`.
pub fn arith(a: &FieldElement, b: &FieldElement, op: char) -> Result<FieldElement, Error> {
    match op {
        '+' => Ok(a.add(b)),
        '-' | '−' => Ok(a.sub(b)),
        '*' | '×' => Ok(a.mul(b)),
        '/' | '÷' => a.div(b),
        other => Err(Error::Unsupported(format!("operator `{other}`"))),
    }
}

pub fn derive(a: &FieldElement, v: Var) -> FieldElement {
    a.derive(v)
}

pub fn is_zero(a: &FieldElement) -> bool {
    a.is_zero()
}

pub fn eq(a: &FieldElement, b: &FieldElement) -> bool {
    a.eq_checked(b)
}

pub fn log_derivative_table(f: &FieldElement, max_order: u32) -> Result<LogDerivativeTable, Error> {
    LogDerivativeTable::new(f, max_order)
}

/// Parse-or-panic helper for tests, examples and fixtures.
pub fn fe(src: &str) -> FieldElement {
    parse_field(src).unwrap_or_else(|e| panic!("bad field expression {src:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subtraction_to_zero() {
        assert!(fe("(x+y) - (x+y)").is_zero());
    }

    #[test]
    fn gcd_cancellation() {
        assert_eq!(fe("(x^2 - y^2)/(x - y)"), fe("x + y"));
    }

    #[test]
    fn unit_cancellation() {
        let e = fe("exp(x+y)");
        assert_eq!(e.mul(&e).div(&e).unwrap(), e);
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(fe("x").div(&fe("x - x")), Err(Error::DivisionByZero)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(fe("x*y^2").derive_x(), fe("y^2"));
        let e = fe("exp(x+y)");
        assert_eq!(e.derive_x(), e);
        assert_eq!(fe("1/(2*x - y)").derive_x(), fe("-2/(2*x - y)^2"));
    }

    #[test]
    fn mixed_partials_commute() {
        let a = fe("1/(2*x - y)");
        assert!(a.derive_x().derive_y().sub(&a.derive_y().derive_x()).is_zero());
    }

    #[test]
    fn distinct_generators_are_independent() {
        assert_ne!(fe("exp(x+y)"), fe("exp(x)*exp(y)"));
    }

    #[test]
    fn printing() {
        assert_eq!(fe("-1/x").to_string(), "-1/x");
        assert_eq!(fe("1/(2*x)").to_string(), "1/(2*x)");
        assert_eq!(fe("2*x - y").to_string(), "2*x - y");
        assert_eq!(fe("1/(2*x-y)^2").to_string(), "1/(4*x^2 - 4*x*y + y^2)");
        assert_eq!(fe("x/2 + 1/3").to_string(), "1/2*x + 1/3");
        assert_eq!(fe("exp(x+y)^2*x").to_string(), "x*exp(x + y)^2");
    }

    #[test]
    fn uninterpreted_chain() {
        let g = fe("g(x)");
        assert_eq!(g.derive_x(), fe("g_x(x)"));
        assert_eq!(g.derive_x().derive_x(), fe("g_xx(x)"));
        assert!(g.derive_y().is_zero());
        assert!(fe("c").derive_x().is_zero());
        let h = fe("h(x,y)");
        assert_eq!(h.derive_y().derive_x(), fe("h_xy(x,y)"));
    }

    #[test]
    fn log_derivatives() {
        let t = log_derivative_table(&fe("x"), 3).unwrap();
        assert_eq!(t.word("x"), &fe("1/x"));
        assert_eq!(t.word("xx"), &fe("-1/x^2"));
        assert!(t.word("xy").is_zero());
        let t = log_derivative_table(&fe("y - 2*x"), 2).unwrap();
        assert_eq!(t.word("xy"), &fe("2/(2*x - y)^2"));
        let t = log_derivative_table(&fe("exp(g(x))"), 3).unwrap();
        assert_eq!(t.word("x"), &fe("g_x(x)"));
        assert!(t.word("xxy").is_zero());
        assert!(matches!(log_derivative_table(&FieldElement::zero(), 2), Err(Error::ZeroArgument(_))));
    }

    #[test]
    fn parse_errors_have_positions() {
        let Err(Error::Parse(e)) = parse_field("x + 2 y") else { panic!() };
        assert_eq!((e.line, e.column, e.token.as_str()), (1, 7, "y"));
        assert!(matches!(parse_field("log(x)"), Err(Error::Unsupported(_))));
        assert!(parse_field("Dx").is_err());
    }

    #[test]
    fn debug_sampling_agrees() {
        debug::enable();
        let before = debug::disagreements();
        assert!(fe("(x+y)^2 - x^2 - 2*x*y - y^2").is_zero());
        assert!(!fe("x/(x+y)").eq_checked(&fe("y/(x+y)")));
        assert!(fe("exp(x)*x").eq_checked(&fe("x*exp(x)")));
        assert_eq!(debug::disagreements(), before);
        debug::disable();
    }
}
