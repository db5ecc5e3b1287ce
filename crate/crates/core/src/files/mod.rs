//! JSON inputs for the command line: finite structure tables and Poisson
//! algebra descriptions. Schemas are documented under `docs/`.

mod poisson;
mod structure;

use thiserror::Error;

pub use poisson::{PoissonFile, PoissonSpec};
pub use structure::{MonoidSpec, SectionChoice, Structure, StructureFile};

/// A malformed input file, as opposed to a law that fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("{0}")]
    Shape(String),
}

impl InputError {
    pub fn json(e: serde_json::Error) -> Self {
        InputError::Json { line: e.line(), column: e.column(), msg: e.to_string() }
    }

    pub fn shape(msg: impl Into<String>) -> Self {
        InputError::Shape(msg.into())
    }
}
