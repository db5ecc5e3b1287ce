//! Dimensioned maps between dimensional abelian groups.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{AlgebraError, Result};
use crate::linalg::mat_vec;
use crate::rational::Q;

use super::carrier::{as_integer, Carrier, Value};
use super::group::{DimAbGroup, SubSlice};
use super::{Dim, DimElement, DimMonoid};

/// A function between dimension sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DimFn {
    Identity,
    Table(BTreeMap<Dim, Dim>),
    /// `d ↦ by ∘ d` in a monoid.
    Translate { monoid: DimMonoid, by: Dim },
    /// `outer ∘ inner`.
    Compose(Box<DimFn>, Box<DimFn>),
}

impl DimFn {
    pub fn table(pairs: impl IntoIterator<Item = (Dim, Dim)>) -> Self {
        DimFn::Table(pairs.into_iter().collect())
    }

    pub fn apply(&self, d: &Dim) -> Result<Dim> {
        match self {
            DimFn::Identity => Ok(d.clone()),
            DimFn::Table(t) => t.get(d).cloned().ok_or_else(|| AlgebraError::UnknownDimension(d.clone())),
            DimFn::Translate { monoid, by } => monoid.combine(by, d),
            DimFn::Compose(outer, inner) => outer.apply(&inner.apply(d)?),
        }
    }
}

pub type OpaqueFn = Arc<dyn Fn(&Value) -> Result<Value> + Send + Sync>;

/// An additive map between two slice carriers.
#[derive(Clone)]
pub enum Linear {
    Zero,
    /// Multiplication by a scalar; integral scalars also act on cyclic and
    /// formal-sum carriers.
    Scale(Q),
    /// A matrix acting on coordinate vectors.
    Matrix(Vec<Vec<Q>>),
    /// The additive extension of images of free generators.
    Generators(BTreeMap<String, Value>),
    /// Projection onto a quotient slice.
    Project(SubSlice),
    Neg(Box<Linear>),
    Sum(Box<Linear>, Box<Linear>),
    /// `outer ∘ inner`, passing through the `mid` carrier.
    Compose { outer: Box<Linear>, inner: Box<Linear>, mid: Carrier },
    Opaque(OpaqueFn),
}

impl fmt::Debug for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Linear::Zero => write!(f, "Zero"),
            Linear::Scale(q) => write!(f, "Scale({q})"),
            Linear::Matrix(m) => write!(f, "Matrix({m:?})"),
            Linear::Generators(g) => write!(f, "Generators({g:?})"),
            Linear::Project(s) => write!(f, "Project({s:?})"),
            Linear::Neg(l) => write!(f, "Neg({l:?})"),
            Linear::Sum(a, b) => write!(f, "Sum({a:?}, {b:?})"),
            Linear::Compose { outer, inner, .. } => write!(f, "Compose({outer:?}, {inner:?})"),
            Linear::Opaque(_) => write!(f, "Opaque"),
        }
    }
}

fn to_carrier(to: &Carrier, coords: Vec<Q>) -> Result<Value> {
    match to {
        Carrier::Rational if coords.len() == 1 => Ok(Value::Rat(coords.into_iter().next().unwrap())),
        Carrier::RationalVec(n) if coords.len() == *n => Ok(Value::Vec(coords)),
        Carrier::Trivial if coords.iter().all(Zero::is_zero) => Ok(Value::Zero),
        _ => Err(AlgebraError::DomainMismatch(format!("cannot land coordinates in {to:?}"))),
    }
}

impl Linear {
    pub fn opaque(f: impl Fn(&Value) -> Result<Value> + Send + Sync + 'static) -> Self {
        Linear::Opaque(Arc::new(f))
    }

    pub fn apply(&self, v: &Value, from: &Carrier, to: &Carrier) -> Result<Value> {
        from.check(v)?;
        let out = match self {
            Linear::Zero => to.zero(),
            Linear::Scale(q) => match (v, to) {
                (_, Carrier::Trivial) if q.is_zero() => Value::Zero,
                (Value::Rat(x), Carrier::Rational) => Value::Rat(x * q),
                (Value::Vec(x), Carrier::RationalVec(_)) => Value::Vec(x.iter().map(|a| a * q).collect()),
                (Value::Mod(x), Carrier::Cyclic(m)) => {
                    let k = as_integer(q).ok_or_else(|| {
                        AlgebraError::DomainMismatch(format!("non-integral scale {q} on a cyclic slice"))
                    })?;
                    Carrier::Cyclic(*m).scale_int(&Value::Mod(x % m), &k)?
                }
                (Value::Formal(_), Carrier::Free(_)) | (Value::Zero, _) | (Value::Pair(..), _) => {
                    let k = as_integer(q).ok_or_else(|| {
                        AlgebraError::DomainMismatch(format!("non-integral scale {q} on {from:?}"))
                    })?;
                    from.scale_int(v, &k)?
                }
                _ => return Err(AlgebraError::DomainMismatch(format!("scale from {from:?} to {to:?}"))),
            },
            Linear::Matrix(m) => {
                let x = from
                    .coords(v)
                    .ok_or_else(|| AlgebraError::DomainMismatch(format!("matrix on {from:?}")))?;
                if m.iter().any(|row| row.len() != x.len()) {
                    return Err(AlgebraError::DomainMismatch("matrix width mismatch".into()));
                }
                to_carrier(to, mat_vec(m, &x))?
            }
            Linear::Generators(images) => {
                let Value::Formal(terms) = v else {
                    return Err(AlgebraError::DomainMismatch("generator map needs a formal sum".into()));
                };
                let mut acc = to.zero();
                for (g, c) in terms {
                    let img = images
                        .get(g)
                        .ok_or_else(|| AlgebraError::DomainMismatch(format!("no image for generator {g}")))?;
                    acc = to.add(&acc, &to.scale_int(img, c)?)?;
                }
                acc
            }
            Linear::Project(sub) => sub.project(from, v)?,
            Linear::Neg(inner) => to.neg(&inner.apply(v, from, to)?)?,
            Linear::Sum(a, b) => to.add(&a.apply(v, from, to)?, &b.apply(v, from, to)?)?,
            Linear::Compose { outer, inner, mid } => outer.apply(&inner.apply(v, from, mid)?, mid, to)?,
            Linear::Opaque(f) => f(v)?,
        };
        to.check(&out)?;
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub enum SliceMaps {
    Uniform(Linear),
    Table(BTreeMap<Dim, Linear>),
}

impl SliceMaps {
    pub fn at(&self, d: &Dim) -> Result<&Linear> {
        match self {
            SliceMaps::Uniform(l) => Ok(l),
            SliceMaps::Table(t) => t.get(d).ok_or_else(|| AlgebraError::UnknownDimension(d.clone())),
        }
    }
}

/// A dimensioned map `Φ_φ`: a dimension map `φ` together with additive
/// slice maps `A_d → B_{φ(d)}`.
#[derive(Clone, Debug)]
pub struct DimMap {
    domain: DimAbGroup,
    codomain: DimAbGroup,
    dim_fn: DimFn,
    slices: SliceMaps,
}

impl DimMap {
    pub fn new(domain: DimAbGroup, codomain: DimAbGroup, dim_fn: DimFn, slices: SliceMaps) -> Self {
        DimMap { domain, codomain, dim_fn, slices }
    }

    pub fn uniform(domain: DimAbGroup, codomain: DimAbGroup, dim_fn: DimFn, map: Linear) -> Self {
        Self::new(domain, codomain, dim_fn, SliceMaps::Uniform(map))
    }

    pub fn identity(group: &DimAbGroup) -> Self {
        Self::uniform(group.clone(), group.clone(), DimFn::Identity, Linear::Scale(Q::from_integer(1.into())))
    }

    pub fn zero(domain: DimAbGroup, codomain: DimAbGroup, dim_fn: DimFn) -> Self {
        Self::uniform(domain, codomain, dim_fn, Linear::Zero)
    }

    pub fn domain(&self) -> &DimAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &DimAbGroup {
        &self.codomain
    }

    pub fn dim_fn(&self) -> &DimFn {
        &self.dim_fn
    }

    pub fn slice_map(&self, d: &Dim) -> Result<&Linear> {
        self.slices.at(d)
    }

    pub fn map_dim(&self, d: &Dim) -> Result<Dim> {
        self.domain.dims().check(d)?;
        let out = self.dim_fn.apply(d)?;
        self.codomain.dims().check(&out)?;
        Ok(out)
    }

    /// `Φ(a_d) = Φ(a)_{φ(d)}`.
    pub fn apply(&self, a: &DimElement) -> Result<DimElement> {
        self.domain.check(a)?;
        let target = self.map_dim(&a.dim)?;
        let from = self.domain.carrier(&a.dim)?;
        let to = self.codomain.carrier(&target)?;
        let value = self.slices.at(&a.dim)?.apply(&a.value, &from, &to)?;
        Ok(DimElement::new(value, target))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &DimMap) -> Result<DimMap> {
        if inner.codomain != self.domain {
            return Err(AlgebraError::DomainMismatch(
                "codomain of the inner map differs from the domain of the outer map".into(),
            ));
        }
        let dim_fn = DimFn::Compose(Box::new(self.dim_fn.clone()), Box::new(inner.dim_fn.clone()));
        let slices = match (inner.domain.dims().elements(), &self.slices, &inner.slices) {
            (Some(ds), _, _) => {
                let mut t = BTreeMap::new();
                for d in ds {
                    let mid_dim = inner.map_dim(&d)?;
                    let mid = inner.codomain.carrier(&mid_dim)?;
                    t.insert(
                        d.clone(),
                        Linear::Compose {
                            outer: Box::new(self.slices.at(&mid_dim)?.clone()),
                            inner: Box::new(inner.slices.at(&d)?.clone()),
                            mid,
                        },
                    );
                }
                SliceMaps::Table(t)
            }
            (None, SliceMaps::Uniform(o), SliceMaps::Uniform(i)) => {
                let mid = inner.codomain.uniform_carrier().ok_or_else(|| {
                    AlgebraError::Unsupported("composition through non-uniform infinite slices".into())
                })?;
                SliceMaps::Uniform(Linear::Compose { outer: Box::new(o.clone()), inner: Box::new(i.clone()), mid })
            }
            _ => return Err(AlgebraError::Unsupported("composition of tabulated maps on an infinite domain".into())),
        };
        Ok(DimMap::new(inner.domain.clone(), self.codomain.clone(), dim_fn, slices))
    }

    /// Whether the two dimension maps agree on the probe dimensions.
    pub fn same_dim_fn(&self, other: &DimMap) -> Result<bool> {
        for d in self.domain.dims().probe_elements() {
            if self.dim_fn.apply(&d)? != other.dim_fn.apply(&d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn lift(&self, other: &DimMap, f: impl Fn(Linear, Linear) -> Linear) -> Result<DimMap> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(AlgebraError::DomainMismatch("pointwise operations need equal hom-sets".into()));
        }
        if !self.same_dim_fn(other)? {
            return Err(AlgebraError::DimensionMapMismatch("the two maps cover different dimension maps".into()));
        }
        let slices = match (&self.slices, &other.slices) {
            (SliceMaps::Uniform(a), SliceMaps::Uniform(b)) => SliceMaps::Uniform(f(a.clone(), b.clone())),
            _ => {
                let ds = self.domain.dims().elements().ok_or_else(|| {
                    AlgebraError::Unsupported("pointwise sum of tabulated maps on an infinite domain".into())
                })?;
                let mut t = BTreeMap::new();
                for d in ds {
                    t.insert(d.clone(), f(self.slices.at(&d)?.clone(), other.slices.at(&d)?.clone()));
                }
                SliceMaps::Table(t)
            }
        };
        Ok(DimMap::new(self.domain.clone(), self.codomain.clone(), self.dim_fn.clone(), slices))
    }

    /// `(Φ + Ψ)(a) = Φ(a) + Ψ(a)`; defined only when `φ = ψ`.
    pub fn pointwise_add(&self, other: &DimMap) -> Result<DimMap> {
        self.lift(other, |a, b| Linear::Sum(Box::new(a), Box::new(b)))
    }

    pub fn neg(&self) -> DimMap {
        let slices = match &self.slices {
            SliceMaps::Uniform(l) => SliceMaps::Uniform(Linear::Neg(Box::new(l.clone()))),
            SliceMaps::Table(t) => {
                SliceMaps::Table(t.iter().map(|(d, l)| (d.clone(), Linear::Neg(Box::new(l.clone())))).collect())
            }
        };
        DimMap::new(self.domain.clone(), self.codomain.clone(), self.dim_fn.clone(), slices)
    }

    /// Probe elements of the domain: every probe dimension with the slice's
    /// carrier probes.
    pub fn domain_probes(&self) -> Result<Vec<DimElement>> {
        self.domain.probes()
    }

    /// Extensional equality on the domain probe set.
    pub fn agrees_with(&self, other: &DimMap) -> Result<bool> {
        for a in self.domain_probes()? {
            if self.apply(&a)? != other.apply(&a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks the commuting square and additivity of every slice map on
    /// probes, returning the first offending pair.
    pub fn check_morphism(&self) -> Result<Option<(DimElement, DimElement)>> {
        let probes = self.domain_probes()?;
        for a in &probes {
            let img = self.apply(a)?;
            if img.dim != self.dim_fn.apply(&a.dim)? {
                return Ok(Some((a.clone(), a.clone())));
            }
            for b in probes.iter().filter(|b| b.dim == a.dim) {
                let lhs = self.apply(&self.domain.add(a, b)?)?;
                let rhs = self.codomain.add(&img, &self.apply(b)?)?;
                if lhs != rhs {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        Ok(None)
    }
}
