use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};

use super::{Dim, DimMonoid};

/// A set of dimensions: the carrier of a monoid, a finite plain set, or a
/// cartesian product of two such sets (pairs encoded by [`Dim::pair`]).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DimSet {
    Monoid(DimMonoid),
    Finite(Vec<Dim>),
    Product(Box<DimSet>, Box<DimSet>),
}

impl DimSet {
    /// A finite plain set; all elements must share one arity.
    pub fn finite(elements: impl IntoIterator<Item = Dim>) -> Result<Self> {
        let mut v: Vec<Dim> = elements.into_iter().collect();
        v.sort();
        v.dedup();
        if let Some(first) = v.first() {
            if v.iter().any(|d| d.arity() != first.arity()) {
                return Err(AlgebraError::Invalid("finite dimension sets need a uniform arity".into()));
            }
        }
        Ok(DimSet::Finite(v))
    }

    /// `{0, .., n-1}` encoded as one-component dimensions.
    pub fn range(n: usize) -> Self {
        DimSet::Finite((0..n as i64).map(Dim::scalar).collect())
    }

    pub fn product(a: DimSet, b: DimSet) -> Self {
        DimSet::Product(Box::new(a), Box::new(b))
    }

    pub fn arity(&self) -> usize {
        match self {
            DimSet::Monoid(m) => m.arity(),
            DimSet::Finite(v) => v.first().map_or(0, Dim::arity),
            DimSet::Product(a, b) => a.arity() + b.arity(),
        }
    }

    pub fn contains(&self, d: &Dim) -> bool {
        match self {
            DimSet::Monoid(m) => m.contains(d),
            DimSet::Finite(v) => v.binary_search(d).is_ok(),
            DimSet::Product(a, b) => {
                if d.arity() != self.arity() {
                    return false;
                }
                let (l, r) = d.split(a.arity());
                a.contains(&l) && b.contains(&r)
            }
        }
    }

    pub fn check(&self, d: &Dim) -> Result<()> {
        if self.contains(d) {
            Ok(())
        } else {
            Err(AlgebraError::UnknownDimension(d.clone()))
        }
    }

    pub fn monoid(&self) -> Option<&DimMonoid> {
        match self {
            DimSet::Monoid(m) => Some(m),
            _ => None,
        }
    }

    pub fn elements(&self) -> Option<Vec<Dim>> {
        match self {
            DimSet::Monoid(m) => m.elements(),
            DimSet::Finite(v) => Some(v.clone()),
            DimSet::Product(a, b) => {
                let (xs, ys) = (a.elements()?, b.elements()?);
                Some(xs.iter().flat_map(|x| ys.iter().map(move |y| x.pair(y))).collect())
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            DimSet::Monoid(m) => m.is_finite(),
            DimSet::Finite(_) => true,
            DimSet::Product(a, b) => a.is_finite() && b.is_finite(),
        }
    }

    /// All elements when finite, otherwise the monoid probe set of radius 2.
    pub fn probe_elements(&self) -> Vec<Dim> {
        match self {
            DimSet::Monoid(m) => m.probe_elements(2),
            DimSet::Finite(v) => v.clone(),
            DimSet::Product(a, b) => {
                let (xs, ys) = (a.probe_elements(), b.probe_elements());
                xs.iter().flat_map(|x| ys.iter().map(move |y| x.pair(y))).collect()
            }
        }
    }

    pub fn left_arity(&self) -> Option<usize> {
        match self {
            DimSet::Product(a, _) => Some(a.arity()),
            _ => None,
        }
    }
}

/// A set together with its dimension projection, stored slice by slice.
/// The projection is a surjection, so every declared dimension has a
/// non-empty slice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimensionedSet {
    dims: DimSet,
    slices: BTreeMap<Dim, Vec<String>>,
}

impl DimensionedSet {
    pub fn new(slices: BTreeMap<Dim, Vec<String>>) -> Result<Self> {
        for (d, elems) in &slices {
            if elems.is_empty() {
                return Err(AlgebraError::Invalid(format!(
                    "slice over {d} is empty; the dimension projection must be surjective"
                )));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in slices.values().flatten() {
            if !seen.insert(e) {
                return Err(AlgebraError::Invalid(format!("element {e} lies in two slices")));
            }
        }
        let dims = DimSet::finite(slices.keys().cloned())?;
        Ok(DimensionedSet { dims, slices })
    }

    pub fn dims(&self) -> &DimSet {
        &self.dims
    }

    pub fn slice(&self, d: &Dim) -> Option<&[String]> {
        self.slices.get(d).map(Vec::as_slice)
    }

    pub fn slices(&self) -> impl Iterator<Item = (&Dim, &[String])> {
        self.slices.iter().map(|(d, v)| (d, v.as_slice()))
    }

    /// The dimension projection δ.
    pub fn dim_of(&self, element: &str) -> Option<&Dim> {
        self.slices.iter().find(|(_, v)| v.iter().any(|e| e == element)).map(|(d, _)| d)
    }

    /// The cartesian product, a dimensioned set over the product of dimension sets.
    pub fn product(&self, other: &DimensionedSet) -> DimensionedSet {
        let mut slices = BTreeMap::new();
        for (d, xs) in &self.slices {
            for (e, ys) in &other.slices {
                let elems = xs.iter().flat_map(|x| ys.iter().map(move |y| format!("({x},{y})"))).collect();
                slices.insert(d.pair(e), elems);
            }
        }
        DimensionedSet { dims: DimSet::product(self.dims.clone(), other.dims.clone()), slices }
    }
}
