//! Dimension monoids, dimensioned sets and maps, and dimensional abelian
//! groups.

pub mod carrier;
pub mod group;
pub mod map;
pub mod monoid;
pub mod set;

use std::fmt;

pub use carrier::{Carrier, Value};
pub use group::{extend_free, free_abelian, free_generator, kernel, DimAbGroup, Slices, SubSlice, Subgroup};
pub use map::{DimFn, DimMap, Linear, SliceMaps};
pub use monoid::{Dim, DimMonoid};
pub use set::{DimSet, DimensionedSet};

/// A value tagged with its dimension, `a_d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dimensioned<T> {
    pub value: T,
    pub dim: Dim,
}

impl<T> Dimensioned<T> {
    pub fn new(value: T, dim: Dim) -> Self {
        Dimensioned { value, dim }
    }
}

impl<T: fmt::Display> fmt::Display for Dimensioned<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.value, self.dim)
    }
}

/// The element type of a [`DimAbGroup`].
pub type DimElement = Dimensioned<Value>;
