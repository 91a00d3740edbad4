//! Process-wide, append-only table of declared generators.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::element::FieldElement;
use super::poly::Poly;

/// Which of `x`, `y` an uninterpreted function depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dependence {
    pub x: bool,
    pub y: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorKind {
    /// `exp(arg)`.
    Exponential { arg: FieldElement },
    /// A formal derivative `base_{x^i y^j}` of an uninterpreted function.
    /// With no dependence this is a symbolic constant.
    Uninterpreted { base: String, deps: Dependence, order: (u32, u32) },
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    dx_image: Option<FieldElement>,
    dy_image: Option<FieldElement>,
}

impl Generator {
    pub fn is_exponential(&self) -> bool {
        matches!(self.kind, GeneratorKind::Exponential { .. })
    }
}

/// Generator `i` of the registry is polynomial variable `i + 2`.
pub const FIRST_GENERATOR_VAR: usize = 2;

#[derive(Default)]
pub struct GeneratorRegistry {
    gens: Vec<Generator>,
    by_name: HashMap<String, usize>,
}

fn global() -> &'static RwLock<GeneratorRegistry> {
    static REGISTRY: OnceLock<RwLock<GeneratorRegistry>> = OnceLock::new();
    REGISTRY.get_or_init(|| RwLock::new(GeneratorRegistry::default()))
}

impl GeneratorRegistry {
    /// Number of registered generators.
    pub fn len() -> usize {
        global().read().unwrap().gens.len()
    }

    pub fn is_empty() -> bool {
        Self::len() == 0
    }

    /// Snapshot of the generator at polynomial variable `var`.
    pub fn get(var: usize) -> Generator {
        global().read().unwrap().gens[var - FIRST_GENERATOR_VAR].clone()
    }

    pub fn lookup(name: &str) -> Option<usize> {
        global()
            .read()
            .unwrap()
            .by_name
            .get(name)
            .map(|i| i + FIRST_GENERATOR_VAR)
    }

    /// Display name of polynomial variable `var`.
    pub fn var_name(var: usize) -> String {
        match var {
            0 => "x".into(),
            1 => "y".into(),
            v => global().read().unwrap().gens[v - FIRST_GENERATOR_VAR].name.clone(),
        }
    }

    fn insert(name: String, kind: GeneratorKind, dx: Option<FieldElement>, dy: Option<FieldElement>) -> usize {
        let mut reg = global().write().unwrap();
        if let Some(&i) = reg.by_name.get(&name) {
            return i + FIRST_GENERATOR_VAR;
        }
        let i = reg.gens.len();
        reg.gens.push(Generator { name: name.clone(), kind, dx_image: dx, dy_image: dy });
        reg.by_name.insert(name, i);
        i + FIRST_GENERATOR_VAR
    }

    /// `exp(arg)`; `exp(0)` is 1. Idempotent by canonical argument.
    pub fn exponential(arg: &FieldElement) -> FieldElement {
        if arg.is_zero() {
            return FieldElement::one();
        }
        let name = format!("exp({arg})");
        if let Some(v) = Self::lookup(&name) {
            return FieldElement::from_poly(Poly::var(v));
        }
        // Images reference the new variable, so reserve it first.
        let v = Self::insert(
            name,
            GeneratorKind::Exponential { arg: arg.clone() },
            None,
            None,
        );
        let e = FieldElement::from_poly(Poly::var(v));
        let dx = arg.derive_x().mul(&e);
        let dy = arg.derive_y().mul(&e);
        let mut reg = global().write().unwrap();
        let g = &mut reg.gens[v - FIRST_GENERATOR_VAR];
        g.dx_image.get_or_insert(dx);
        g.dy_image.get_or_insert(dy);
        e
    }

    /// Formal derivative `base_{x^i y^j}` of an uninterpreted function with the
    /// given dependence. Derivatives along an absent variable are 0.
    pub fn uninterpreted(base: &str, deps: Dependence, order: (u32, u32)) -> FieldElement {
        if (order.0 > 0 && !deps.x) || (order.1 > 0 && !deps.y) {
            return FieldElement::zero();
        }
        let mut name = base.to_string();
        if order != (0, 0) {
            name.push('_');
            name.extend(std::iter::repeat('x').take(order.0 as usize));
            name.extend(std::iter::repeat('y').take(order.1 as usize));
        }
        match (deps.x, deps.y) {
            (true, true) => name.push_str("(x,y)"),
            (true, false) => name.push_str("(x)"),
            (false, true) => name.push_str("(y)"),
            (false, false) => {}
        }
        let (dx, dy) = match (deps.x, deps.y) {
            (false, false) => (Some(FieldElement::zero()), Some(FieldElement::zero())),
            (true, false) => (None, Some(FieldElement::zero())),
            (false, true) => (Some(FieldElement::zero()), None),
            (true, true) => (None, None),
        };
        let kind = GeneratorKind::Uninterpreted { base: base.to_string(), deps, order };
        let v = Self::insert(name, kind, dx, dy);
        FieldElement::from_poly(Poly::var(v))
    }

    /// Symbolic constant (uninterpreted, no dependence).
    pub fn constant(name: &str) -> FieldElement {
        Self::uninterpreted(name, Dependence { x: false, y: false }, (0, 0))
    }

    /// Image of generator variable `var` under ∂x (`dir = 0`) or ∂y
    /// (`dir = 1`), registering a fresh formal derivative when needed.
    pub fn image(var: usize, dir: usize) -> FieldElement {
        let kind = {
            let reg = global().read().unwrap();
            let g = &reg.gens[var - FIRST_GENERATOR_VAR];
            let cached = if dir == 0 { &g.dx_image } else { &g.dy_image };
            if let Some(img) = cached {
                return img.clone();
            }
            g.kind.clone()
        };
        let GeneratorKind::Uninterpreted { base, deps, order } = &kind else {
            unreachable!("exponential images are set at registration");
        };
        let next = if dir == 0 { (order.0 + 1, order.1) } else { (order.0, order.1 + 1) };
        let img = Self::uninterpreted(base, *deps, next);
        let mut reg = global().write().unwrap();
        let slot = &mut reg.gens[var - FIRST_GENERATOR_VAR];
        let slot = if dir == 0 { &mut slot.dx_image } else { &mut slot.dy_image };
        slot.get_or_insert(img).clone()
    }
}
