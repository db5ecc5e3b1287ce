//! Dimensioned rings and fields.
//!
//! A dimensioned ring is a dimensional abelian group over a commutative
//! dimension monoid with a total multiplication that maps `R_d × R_e` into
//! `R_{de}` and distributes over addition wherever addition is defined.

pub mod axioms;
pub mod endo;
pub mod product;
pub mod quotient;
pub mod section;
pub mod table;

use std::fmt::Debug;

use rand::RngCore;

use crate::dim::{Dim, DimMonoid};
use crate::error::{AlgebraError, Result};
use crate::rational::Q;

pub use axioms::{morphism_report, ring_axiom_report, Instance, Plan};
pub use endo::{DimEndoMap, EndoRing};
pub use product::{ProductRing, Scalar};
pub use quotient::QuotientRing;
pub use section::{find_unit_section, unit_section_check, SectionFailure, SectionSpec, SliceMul, Trivialization, UnitSection};
pub use table::TableRing;

pub trait DimRing {
    type Elem: Clone + PartialEq + Debug;

    /// The dimension monoid; `dim` is a monoid morphism for `mul`.
    fn monoid(&self) -> &DimMonoid;

    /// The dimension projection δ.
    fn dim(&self, a: &Self::Elem) -> Dim;

    /// Slice-wise addition, failing across slices.
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn zero(&self, d: &Dim) -> Result<Self::Elem>;

    fn one(&self) -> Self::Elem;

    /// Total multiplication.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.zero(&self.dim(a)).map(|z| z == *a).unwrap_or(false)
    }

    fn is_commutative(&self) -> bool;

    /// Deterministic probe elements covering several slices.
    fn probes(&self) -> Vec<Self::Elem>;

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// A random element of the slice over `d`; falls back to zero when
    /// rejection sampling does not hit the slice.
    fn sample_in(&self, d: &Dim, rng: &mut dyn RngCore) -> Result<Self::Elem> {
        for _ in 0..64 {
            let x = self.sample(rng);
            if self.dim(&x) == *d {
                return Ok(x);
            }
        }
        self.zero(d)
    }

    /// Every element, for finite rings.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Human-readable rendering used in report witnesses.
    fn describe(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }

    /// Multiplicative inverse, available in dimensioned fields.
    fn reciprocal(&self, _a: &Self::Elem) -> Result<Self::Elem> {
        Err(AlgebraError::Unsupported("reciprocals need a dimensioned field".into()))
    }

    /// Embedding of the rationals into the dimensionless slice, when the
    /// dimensionless ring contains them.
    fn scalar(&self, _r: &Q) -> Option<Self::Elem> {
        None
    }

    /// Inverse of [`DimRing::scalar`] on the dimensionless slice.
    fn scalar_value(&self, _a: &Self::Elem) -> Option<Q> {
        None
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.add(a, &self.neg(b))
    }
}

/// The dimensionless slice `R_1` seen as an ordinary ring.
pub struct DimensionlessRing<'a, R: DimRing> {
    ring: &'a R,
}

impl<'a, R: DimRing> DimensionlessRing<'a, R> {
    pub fn new(ring: &'a R) -> Self {
        DimensionlessRing { ring }
    }

    pub fn contains(&self, a: &R::Elem) -> bool {
        self.ring.dim(a) == self.ring.monoid().identity()
    }

    fn check(&self, a: &R::Elem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch { left: self.ring.dim(a), right: self.ring.monoid().identity() })
        }
    }

    pub fn zero(&self) -> R::Elem {
        self.ring.zero(&self.ring.monoid().identity()).expect("identity is a dimension")
    }

    pub fn one(&self) -> R::Elem {
        self.ring.one()
    }

    /// Addition on `R_1` is total.
    pub fn add(&self, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
        self.check(a)?;
        self.check(b)?;
        self.ring.add(a, b)
    }

    pub fn mul(&self, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.ring.mul(a, b))
    }

    pub fn neg(&self, a: &R::Elem) -> Result<R::Elem> {
        self.check(a)?;
        Ok(self.ring.neg(a))
    }

    pub fn probes(&self) -> Vec<R::Elem> {
        self.ring.probes().into_iter().filter(|a| self.contains(a)).collect()
    }
}

/// `a · reciprocal(a) = 1` with the inverse dimension.
pub fn reciprocal<R: DimRing>(ring: &R, a: &R::Elem) -> Result<R::Elem> {
    if !ring.monoid().is_group() {
        return Err(AlgebraError::NotAGroup(ring.monoid().to_string()));
    }
    if ring.is_zero(a) {
        return Err(AlgebraError::DivisionByZero);
    }
    ring.reciprocal(a)
}
