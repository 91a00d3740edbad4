//! Recursive-descent parser shared by field expressions, operators and
//! invariant tuples.
//!
//! ```text
//! expr   := ["+"|"-"] term { ("+"|"-") term }
//! term   := factor { ("*"|"/") factor }
//! factor := atom [ "^" ["-"] integer ]
//! atom   := integer | "x" | "y" | "Dx" | "Dy" | "exp" "(" expr ")"
//!         | ident [ "(" var { "," var } ")" ] | "(" expr ")"
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::element::{FieldElement, Var};
use super::registry::{Dependence, GeneratorRegistry};
use crate::error::{Error, ParseError};

/// Values a parsed expression can denote.
pub trait Parsable: Sized + Clone {
    /// What an atom such as `Dx` means, or `None` if such tokens are illegal.
    fn derivation(v: Var) -> Option<Self>;
    fn from_field(f: FieldElement) -> Self;
    fn as_field(&self) -> Option<FieldElement>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Parsable for FieldElement {
    fn derivation(_: Var) -> Option<Self> {
        None
    }
    fn from_field(f: FieldElement) -> Self {
        f
    }
    fn as_field(&self) -> Option<FieldElement> {
        Some(self.clone())
    }
    fn add(&self, other: &Self) -> Self {
        FieldElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FieldElement::sub(self, other)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        FieldElement::mul(self, other)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().unwrap())
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' | '·' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => {
                    return Err(ParseError {
                        line: l0,
                        column: c0,
                        token: c.to_string(),
                        message: "unexpected character".into(),
                    })
                }
            }
        };
        col += i - start;
        out.push(Token { tok, text: chars[start..i].iter().collect(), line: l0, column: c0 });
    }
    out.push(Token { tok: Tok::End, text: "<end of input>".into(), line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let t = &self.toks[pos];
        Error::Parse(ParseError {
            line: t.line,
            column: t.column,
            token: t.text.clone(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), Error> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {what}")))
        }
    }

    fn expr<T: Parsable>(&mut self) -> Result<T, Error> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.next();
                true
            }
            Tok::Plus => {
                self.next();
                false
            }
            _ => false,
        };
        let first = self.term::<T>()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<T: Parsable>(&mut self) -> Result<T, Error> {
        let mut acc = self.factor::<T>()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.next();
                    let at = self.pos;
                    let d: T = self.factor()?;
                    let Some(d) = d.as_field() else {
                        return Err(self.error_at(at, "division by an operator"));
                    };
                    let inv = d.inv().map_err(|_| self.error_at(at, "division by zero"))?;
                    acc = acc.mul(&T::from_field(inv));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor<T: Parsable>(&mut self) -> Result<T, Error> {
        let base = self.atom::<T>()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let negative = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let at = self.pos;
        let Tok::Int(n) = self.next().tok else {
            return Err(self.error_at(at, "expected an integer exponent"));
        };
        let n: u32 = n.try_into().map_err(|_| self.error_at(at, "exponent too large"))?;
        let base = if negative {
            let f = base
                .as_field()
                .ok_or_else(|| self.error_at(at, "negative power of an operator"))?;
            T::from_field(f.inv().map_err(|_| self.error_at(at, "division by zero"))?)
        } else {
            base
        };
        let mut acc = T::from_field(FieldElement::one());
        for _ in 0..n {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom<T: Parsable>(&mut self) -> Result<T, Error> {
        let at = self.pos;
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(T::from_field(FieldElement::from_rational(BigRational::from_integer(n)))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(name, at),
            _ => Err(self.error_at(at, "expected a number, variable or `(`")),
        }
    }

    fn ident<T: Parsable>(&mut self, name: String, at: usize) -> Result<T, Error> {
        match name.as_str() {
            "x" => return Ok(T::from_field(FieldElement::x())),
            "y" => return Ok(T::from_field(FieldElement::y())),
            "Dx" | "Dy" => {
                let v = if name == "Dx" { Var::X } else { Var::Y };
                return T::derivation(v)
                    .ok_or_else(|| self.error_at(at, "derivative operator in a field expression"));
            }
            "exp" => {
                self.expect(Tok::LParen, "`(` after exp")?;
                let arg_at = self.pos;
                let arg: T = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                let arg = arg
                    .as_field()
                    .ok_or_else(|| self.error_at(arg_at, "exp of an operator"))?;
                return Ok(T::from_field(GeneratorRegistry::exponential(&arg)));
            }
            "log" | "ln" | "sin" | "cos" | "sqrt" => {
                return Err(Error::Unsupported(format!(
                    "function `{name}` is outside the field tower"
                )))
            }
            _ => {}
        }
        if *self.peek() != Tok::LParen {
            return Ok(T::from_field(GeneratorRegistry::constant(&name)));
        }
        self.next();
        let mut deps = Dependence { x: false, y: false };
        loop {
            let vat = self.pos;
            match self.next().tok {
                Tok::Ident(v) if v == "x" && !deps.x => deps.x = true,
                Tok::Ident(v) if v == "y" && !deps.y => deps.y = true,
                _ => return Err(self.error_at(vat, "expected `x` or `y` as function argument")),
            }
            match self.peek() {
                Tok::Comma => {
                    self.next();
                }
                Tok::RParen => {
                    self.next();
                    break;
                }
                _ => return Err(self.error_here("expected `,` or `)`")),
            }
        }
        let (base, order) = split_derivative_suffix(&name);
        Ok(T::from_field(GeneratorRegistry::uninterpreted(base, deps, order)))
    }
}

/// `g_xxy` → (`g`, (2, 1)).
fn split_derivative_suffix(name: &str) -> (&str, (u32, u32)) {
    if let Some((base, suffix)) = name.rsplit_once('_') {
        if !base.is_empty() && !suffix.is_empty() && suffix.chars().all(|c| c == 'x' || c == 'y') {
            let i = suffix.chars().filter(|&c| c == 'x').count() as u32;
            let j = suffix.len() as u32 - i;
            return (base, (i, j));
        }
    }
    (name, (0, 0))
}

fn parse_all<T: Parsable>(src: &str) -> Result<T, Error> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here("unexpected token (implicit multiplication is not allowed; write `*`)"));
    }
    Ok(v)
}

pub fn parse_field(src: &str) -> Result<FieldElement, Error> {
    parse_all(src)
}

/// Parse with an arbitrary target algebra (used for operators).
pub fn parse_as<T: Parsable>(src: &str) -> Result<T, Error> {
    parse_all(src)
}

/// Split at top-level commas, keeping track of the column for diagnostics.
pub fn split_top_level(src: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &src[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &src[start..]));
    out
}

/// Parse `n` comma-separated field expressions.
pub fn parse_field_list(src: &str, n: usize) -> Result<Vec<FieldElement>, Error> {
    let parts = split_top_level(src);
    if parts.len() != n {
        return Err(Error::Parse(ParseError {
            line: 1,
            column: 1,
            token: src.to_string(),
            message: format!("expected {n} comma-separated expressions, found {}", parts.len()),
        }));
    }
    parts
        .into_iter()
        .map(|(offset, s)| {
            parse_field(s).map_err(|e| match e {
                Error::Parse(mut pe) => {
                    if pe.line == 1 {
                        pe.column += src[..offset].chars().count();
                    }
                    Error::Parse(pe)
                }
                other => other,
            })
        })
        .collect()
}
