//! Dimensioned algebra: slice-wise abelian groups, dimensioned rings and
//! fields, power rings of lines, dimensioned modules and Poisson algebras,
//! and an exact quantity calculator built on top of them.

pub mod dim;
pub mod error;
pub mod files;
pub mod linalg;
pub mod module;
pub mod algebra;
pub mod power;
pub mod quantity;
pub mod rational;
pub mod report;
pub mod ring;

pub use error::{AlgebraError, Result};
