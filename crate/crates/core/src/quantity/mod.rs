//! Quantity expressions over a unit registry.
//!
//! Every unit symbol is read as `factor · U(dims)` in the power ring of the
//! registry's base lines, where `U` is the unit section of the coherent
//! units. Arithmetic then happens in the power ring, so adding across
//! exponent vectors fails and everything else is total.

mod expr;
mod registry;

use std::fmt;

use thiserror::Error;

use crate::dim::Dim;
use crate::error::AlgebraError;
use crate::power::PowerElem;
use crate::rational::{to_exact_string, to_significant, Q};

pub use expr::{parse_expr, Expr};
pub use registry::{RegistryFile, UnitEntry, UnitRegistry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantityError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown unit `{symbol}` at byte {pos}")]
    UnknownUnit { symbol: String, pos: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    #[error("cannot express {from} in {to}")]
    Incompatible { from: String, to: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("registry: {0}")]
    Registry(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl QuantityError {
    /// 1 for dimensional failures, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            QuantityError::DimensionMismatch { .. } | QuantityError::Incompatible { .. } => 1,
            _ => 2,
        }
    }
}

/// A product of registry symbols with integer exponents, in order of first
/// appearance.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnitExpr(pub Vec<(String, i64)>);

impl UnitExpr {
    pub fn symbol(s: &str) -> Self {
        UnitExpr(vec![(s.to_string(), 1)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn times(&self, other: &UnitExpr) -> UnitExpr {
        let mut out = self.0.clone();
        for (s, e) in &other.0 {
            match out.iter_mut().find(|(t, _)| t == s) {
                Some(slot) => slot.1 += e,
                None => out.push((s.clone(), *e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        UnitExpr(out)
    }

    pub fn powi(&self, n: i64) -> UnitExpr {
        if n == 0 {
            return UnitExpr::default();
        }
        UnitExpr(self.0.iter().map(|(s, e)| (s.clone(), e * n)).collect())
    }
}

/// `m*kg/s^2`, `L/min`, `s^-1`; parses back to the same unit.
impl fmt::Display for UnitExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |s: &str, e: i64| if e == 1 { s.to_string() } else { format!("{s}^{e}") };
        let num: Vec<String> = self.0.iter().filter(|(_, e)| *e > 0).map(|(s, e)| part(s, *e)).collect();
        let den: Vec<String> = self.0.iter().filter(|(_, e)| *e < 0).map(|(s, e)| part(s, -e)).collect();
        if num.is_empty() {
            let all: Vec<String> = self.0.iter().map(|(s, e)| part(s, *e)).collect();
            return f.write_str(&all.join("*"));
        }
        f.write_str(&num.join("*"))?;
        for d in den {
            write!(f, "/{d}")?;
        }
        Ok(())
    }
}

/// A power-ring element with the unit it is shown in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantity {
    pub value: PowerElem,
    pub unit: UnitExpr,
}

/// `length³·time⁻¹`, or `dimensionless`.
pub fn pretty_dims(d: &Dim, base: &[String]) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let parts: Vec<String> = base
        .iter()
        .zip(&d.0)
        .filter(|(_, n)| **n != 0)
        .map(|(name, &n)| {
            if n == 1 {
                return name.clone();
            }
            let mut s = name.clone();
            if n < 0 {
                s.push('⁻');
            }
            s.extend(n.unsigned_abs().to_string().chars().map(|c| SUP[c.to_digit(10).unwrap() as usize]));
            s
        })
        .collect();
    if parts.is_empty() {
        "dimensionless".into()
    } else {
        parts.join("·")
    }
}

/// How a number is rendered: exact `a/b` or a decimal with the given
/// significant digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Exact,
    Digits(usize),
}

impl Default for Format {
    fn default() -> Self {
        Format::Digits(4)
    }
}

pub fn format_number(q: &Q, format: Format) -> String {
    match format {
        Format::Exact => to_exact_string(q),
        Format::Digits(n) => to_significant(q, n),
    }
}
