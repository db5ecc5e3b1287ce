use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::dim::{Dim, DimMonoid, Dimensioned};
use crate::error::{AlgebraError, Result};
use crate::rational::Q;

use super::{DimRing, Scalar};

/// A candidate unit section `u: D → R`.
#[derive(Clone, Debug, PartialEq)]
pub enum SectionSpec<E> {
    /// Images of the monoid generators, extended multiplicatively. For `Z^k`
    /// negative exponents use reciprocals, so the ring must be a field.
    Generators(Vec<E>),
    /// Explicit values on every element of a finite monoid.
    Table(Vec<(Dim, E)>),
}

/// Why a candidate is not a unit section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionFailure {
    /// `u(d)` is not in the slice over `d`.
    WrongDim { dim: Dim, got: Dim },
    /// `u(d) = 0_d`.
    Zero { dim: Dim },
    /// The slice over `d` has no nonzero element, so no section exists.
    ZeroSlice { dim: Dim },
    /// `u(d∘e) != u(d)·u(e)`.
    NotMultiplicative { left: Dim, right: Dim },
    /// `u` is not defined at `d`.
    Undefined { dim: Dim, reason: String },
}

impl fmt::Display for SectionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionFailure::WrongDim { dim, got } => write!(f, "u{dim} has dimension {got}"),
            SectionFailure::Zero { dim } => write!(f, "u{dim} is zero"),
            SectionFailure::ZeroSlice { dim } => write!(f, "slice {dim} contains only zero; no unit section exists"),
            SectionFailure::NotMultiplicative { left, right } => {
                write!(f, "u({left}*{right}) != u{left} * u{right}")
            }
            SectionFailure::Undefined { dim, reason } => write!(f, "u{dim} undefined: {reason}"),
        }
    }
}

impl std::error::Error for SectionFailure {}

/// A validated unit section.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitSection<E> {
    spec: SectionSpec<E>,
    probed: Vec<Dim>,
}

impl<E: Clone + PartialEq + fmt::Debug> UnitSection<E> {
    pub fn spec(&self) -> &SectionSpec<E> {
        &self.spec
    }

    /// Dimensions on which the section was checked.
    pub fn probed(&self) -> &[Dim] {
        &self.probed
    }

    pub fn at<R: DimRing<Elem = E>>(&self, ring: &R, d: &Dim) -> Result<E> {
        evaluate(ring, &self.spec, d)
    }
}

fn evaluate<R: DimRing>(ring: &R, spec: &SectionSpec<R::Elem>, d: &Dim) -> Result<R::Elem> {
    let m = ring.monoid();
    m.check(d)?;
    match spec {
        SectionSpec::Table(t) => {
            t.iter().find(|(k, _)| k == d).map(|p| p.1.clone()).ok_or_else(|| AlgebraError::UnknownDimension(d.clone()))
        }
        SectionSpec::Generators(g) => match m {
            DimMonoid::FreeAbelian { rank } => {
                if g.len() != *rank {
                    return Err(AlgebraError::Invalid(format!("expected {rank} generator images")));
                }
                let mut acc = ring.one();
                for (img, &n) in g.iter().zip(&d.0) {
                    let base = if n < 0 { ring.reciprocal(img)? } else { img.clone() };
                    for _ in 0..n.unsigned_abs() {
                        acc = ring.mul(&acc, &base);
                    }
                }
                Ok(acc)
            }
            DimMonoid::Cyclic { .. } | DimMonoid::Trivial => {
                let mut acc = ring.one();
                if let Some(img) = g.first() {
                    for _ in 0..d.0.first().copied().unwrap_or(0) {
                        acc = ring.mul(&acc, img);
                    }
                }
                Ok(acc)
            }
            _ => {
                let gens = m.generators();
                gens.iter()
                    .position(|x| x == d)
                    .and_then(|i| g.get(i).cloned())
                    .ok_or_else(|| AlgebraError::UnknownDimension(d.clone()))
            }
        },
    }
}

/// Validates a candidate unit section. Finite monoids are checked on every
/// element and pair; `Z^k` on all words of length at most 3 in the
/// generators and their inverses.
pub fn unit_section_check<R: DimRing>(
    ring: &R,
    spec: SectionSpec<R::Elem>,
) -> std::result::Result<UnitSection<R::Elem>, SectionFailure> {
    let m = ring.monoid();
    let probed = m.probe_elements(3);
    let mut values = BTreeMap::new();
    for d in &probed {
        let u = evaluate(ring, &spec, d)
            .map_err(|e| SectionFailure::Undefined { dim: d.clone(), reason: e.to_string() })?;
        let got = ring.dim(&u);
        if got != *d {
            return Err(SectionFailure::WrongDim { dim: d.clone(), got });
        }
        if ring.is_zero(&u) {
            if slice_is_zero(ring, d) {
                return Err(SectionFailure::ZeroSlice { dim: d.clone() });
            }
            return Err(SectionFailure::Zero { dim: d.clone() });
        }
        values.insert(d.clone(), u);
    }
    for d in &probed {
        for e in &probed {
            let de = m.combine_unchecked(d, e);
            let lhs = match values.get(&de) {
                Some(v) => v.clone(),
                None => evaluate(ring, &spec, &de)
                    .map_err(|err| SectionFailure::Undefined { dim: de.clone(), reason: err.to_string() })?,
            };
            if lhs != ring.mul(&values[d], &values[e]) {
                return Err(SectionFailure::NotMultiplicative { left: d.clone(), right: e.clone() });
            }
        }
    }
    Ok(UnitSection { spec, probed })
}

fn slice_is_zero<R: DimRing>(ring: &R, d: &Dim) -> bool {
    ring.elements().is_some_and(|all| all.iter().filter(|a| ring.dim(a) == *d).all(|a| ring.is_zero(a)))
}

/// Searches a finite ring exhaustively for a unit section.
pub fn find_unit_section<R: DimRing>(ring: &R) -> std::result::Result<UnitSection<R::Elem>, SectionFailure> {
    let m = ring.monoid();
    let (Some(dims), Some(all)) = (m.elements(), ring.elements()) else {
        return Err(SectionFailure::Undefined {
            dim: m.identity(),
            reason: "exhaustive search needs a finite ring".into(),
        });
    };
    let mut choices = Vec::new();
    for d in &dims {
        let nonzero: Vec<R::Elem> = all.iter().filter(|a| ring.dim(a) == *d && !ring.is_zero(a)).cloned().collect();
        if nonzero.is_empty() {
            return Err(SectionFailure::ZeroSlice { dim: d.clone() });
        }
        choices.push(nonzero);
    }
    let mut assigned: Vec<R::Elem> = Vec::new();
    let mut last_failure = None;
    if search(ring, &dims, &choices, &mut assigned, &mut last_failure) {
        let table = dims.into_iter().zip(assigned).collect();
        return unit_section_check(ring, SectionSpec::Table(table));
    }
    Err(last_failure.unwrap_or(SectionFailure::Undefined { dim: m.identity(), reason: "no candidate".into() }))
}

fn search<R: DimRing>(
    ring: &R,
    dims: &[Dim],
    choices: &[Vec<R::Elem>],
    assigned: &mut Vec<R::Elem>,
    failure: &mut Option<SectionFailure>,
) -> bool {
    let m = ring.monoid();
    let k = assigned.len();
    if k == dims.len() {
        return true;
    }
    for c in &choices[k] {
        assigned.push(c.clone());
        let mut ok = true;
        'check: for i in 0..=k {
            for j in 0..=k {
                if i != k && j != k {
                    continue;
                }
                let de = m.combine_unchecked(&dims[i], &dims[j]);
                if let Some(p) = dims[..=k].iter().position(|x| *x == de) {
                    if assigned[p] != ring.mul(&assigned[i], &assigned[j]) {
                        *failure = Some(SectionFailure::NotMultiplicative { left: dims[i].clone(), right: dims[j].clone() });
                        ok = false;
                        break 'check;
                    }
                }
            }
        }
        if ok && search(ring, dims, choices, assigned, failure) {
            return true;
        }
        assigned.pop();
    }
    false
}

/// The isomorphism `Φ_u: Q × D → F`, `(r, d) ↦ u(d)·r`, of a dimensioned
/// field with a unit section, and its inverse `a_d ↦ u(d⁻¹)·a_d`.
pub struct Trivialization<'a, F: DimRing> {
    field: &'a F,
    section: UnitSection<F::Elem>,
}

impl<'a, F: DimRing> Trivialization<'a, F> {
    pub fn new(field: &'a F, section: UnitSection<F::Elem>) -> Result<Self> {
        if !field.monoid().is_group() {
            return Err(AlgebraError::NotAGroup(field.monoid().to_string()));
        }
        if field.scalar(&Q::one()).is_none() {
            return Err(AlgebraError::Unsupported("trivialization needs rational scalars".into()));
        }
        Ok(Trivialization { field, section })
    }

    pub fn section(&self) -> &UnitSection<F::Elem> {
        &self.section
    }

    pub fn forward(&self, x: &Scalar) -> Result<F::Elem> {
        let u = self.section.at(self.field, &x.dim)?;
        let r = self.field.scalar(&x.value).expect("checked at construction");
        Ok(self.field.mul(&u, &r))
    }

    pub fn backward(&self, a: &F::Elem) -> Result<Scalar> {
        let d = self.field.dim(a);
        let inv = self.field.monoid().inverse(&d).expect("dimension group");
        let u = self.section.at(self.field, &inv)?;
        let r = self.field.mul(&u, a);
        let value = self
            .field
            .scalar_value(&r)
            .ok_or_else(|| AlgebraError::Invalid(format!("u({inv})·a is not a dimensionless scalar")))?;
        Ok(Dimensioned::new(value, d))
    }
}

/// Slice-wise multiplication `R_e → R_{de}`, `b ↦ a·b`, by a nonzero `a_d`.
pub struct SliceMul<'a, F: DimRing> {
    field: &'a F,
    factor: F::Elem,
    from: Dim,
    to: Dim,
}

impl<'a, F: DimRing> SliceMul<'a, F> {
    pub fn new(field: &'a F, factor: F::Elem, from: Dim) -> Result<Self> {
        field.monoid().check(&from)?;
        if field.is_zero(&factor) {
            return Err(AlgebraError::DivisionByZero);
        }
        let to = field.monoid().combine_unchecked(&field.dim(&factor), &from);
        Ok(SliceMul { field, factor, from, to })
    }

    pub fn source(&self) -> &Dim {
        &self.from
    }

    pub fn target(&self) -> &Dim {
        &self.to
    }

    pub fn apply(&self, b: &F::Elem) -> Result<F::Elem> {
        let db = self.field.dim(b);
        if db != self.from {
            return Err(AlgebraError::DimensionMismatch { left: db, right: self.from.clone() });
        }
        Ok(self.field.mul(&self.factor, b))
    }

    /// Multiplication by `1/a` from the target slice back to the source.
    pub fn inverse(&self) -> Result<SliceMul<'a, F>> {
        let inv = super::reciprocal(self.field, &self.factor)?;
        Ok(SliceMul { field: self.field, factor: inv, from: self.to.clone(), to: self.from.clone() })
    }

    /// Checks both round trips on probes of the two slices.
    pub fn is_bijective_on(&self, probes: &[F::Elem]) -> Result<bool> {
        let inv = self.inverse()?;
        for b in probes {
            let d = self.field.dim(b);
            if d == self.from && inv.apply(&self.apply(b)?)? != *b {
                return Ok(false);
            }
            if d == self.to && self.apply(&inv.apply(b)?)? != *b {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
