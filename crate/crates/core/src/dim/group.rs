//! Dimensional abelian groups: a slice-wise abelian group over a dimension
//! set, with kernels, quotients, sums, free groups and tensor products.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::linalg::{nullspace, EchelonBasis};

use super::carrier::{Carrier, Value};
use super::map::{DimFn, DimMap, Linear, SliceMaps};
use super::set::{DimSet, DimensionedSet};
use super::{Dim, DimElement};

/// Which carrier sits over each dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Slices {
    Uniform(Carrier),
    Table(BTreeMap<Dim, Carrier>),
    /// Slices of a cartesian product: `(d, e) ↦ A_d × B_e`.
    Pair { left_arity: usize, left: Box<Slices>, right: Box<Slices> },
    /// Slices of a tensor product: `(d, e) ↦ A_d ⊗ B_e`.
    Tensor { left_arity: usize, left: Box<Slices>, right: Box<Slices> },
    /// Slices of a direct sum over a shared dimension set.
    Sum(Box<Slices>, Box<Slices>),
    Quotient(Box<Slices>, Box<Subgroup>),
}

impl Slices {
    pub fn at(&self, d: &Dim) -> Result<Carrier> {
        match self {
            Slices::Uniform(c) => Ok(c.clone()),
            Slices::Table(t) => t.get(d).cloned().ok_or_else(|| AlgebraError::UnknownDimension(d.clone())),
            Slices::Pair { left_arity, left, right } => {
                let (l, r) = d.split(*left_arity);
                Ok(Carrier::sum(left.at(&l)?, right.at(&r)?))
            }
            Slices::Tensor { left_arity, left, right } => {
                let (l, r) = d.split(*left_arity);
                left.at(&l)?.tensor(&right.at(&r)?)
            }
            Slices::Sum(a, b) => Ok(Carrier::sum(a.at(d)?, b.at(d)?)),
            Slices::Quotient(base, sub) => sub.at(d).quotient_carrier(&base.at(d)?),
        }
    }
}

/// The intersection `S ∩ A_d` of a dimensional subgroup with one slice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SubSlice {
    Zero,
    Whole,
    /// The cyclic subgroup generated by `k` in `Z/n`.
    Multiples(u64),
    /// A rational subspace of a `Q` or `Q^n` slice.
    Span(EchelonBasis),
    /// An explicit finite subset.
    Elements(Vec<Value>),
}

impl SubSlice {
    pub fn contains(&self, carrier: &Carrier, v: &Value) -> Result<bool> {
        carrier.check(v)?;
        Ok(match self {
            SubSlice::Zero => carrier.is_zero(v),
            SubSlice::Whole => true,
            SubSlice::Multiples(k) => match (carrier, v) {
                (Carrier::Cyclic(n), Value::Mod(x)) => x % k.gcd(n) == 0,
                _ => return Err(AlgebraError::DomainMismatch("cyclic subgroup on a non-cyclic slice".into())),
            },
            SubSlice::Span(b) => {
                let x = carrier
                    .coords(v)
                    .ok_or_else(|| AlgebraError::DomainMismatch("span on a non-rational slice".into()))?;
                b.contains(&x)
            }
            SubSlice::Elements(es) => es.contains(v),
        })
    }

    /// Brings explicit element lists into canonical form, checking closure.
    pub fn normalized(self, carrier: &Carrier) -> Result<SubSlice> {
        let SubSlice::Elements(es) = &self else {
            return Ok(self);
        };
        for e in es {
            carrier.check(e)?;
        }
        if !es.contains(&carrier.zero()) {
            return Err(AlgebraError::NotSubgroup("missing the zero of the slice".into()));
        }
        for a in es {
            if !es.contains(&carrier.neg(a)?) {
                return Err(AlgebraError::NotSubgroup(format!("not closed under negation at {a}")));
            }
            for b in es {
                if !es.contains(&carrier.add(a, b)?) {
                    return Err(AlgebraError::NotSubgroup(format!("not closed under addition at {a} + {b}")));
                }
            }
        }
        Ok(match carrier {
            Carrier::Trivial => SubSlice::Whole,
            Carrier::Cyclic(n) => {
                let g = es
                    .iter()
                    .filter_map(|v| match v {
                        Value::Mod(x) => Some(*x),
                        _ => None,
                    })
                    .fold(*n, |g, x| g.gcd(&x));
                if g == 1 {
                    SubSlice::Whole
                } else if g == *n {
                    SubSlice::Zero
                } else {
                    SubSlice::Multiples(g)
                }
            }
            _ if carrier.elements().is_some_and(|all| all.len() == es.len()) => SubSlice::Whole,
            _ if es.len() == 1 => SubSlice::Zero,
            _ => self,
        })
    }

    pub fn elements(&self, carrier: &Carrier) -> Option<Vec<Value>> {
        let all = carrier.elements()?;
        Some(all.into_iter().filter(|v| self.contains(carrier, v).unwrap_or(false)).collect())
    }

    pub fn quotient_carrier(&self, carrier: &Carrier) -> Result<Carrier> {
        Ok(match (self, carrier) {
            (SubSlice::Zero, c) => c.clone(),
            (SubSlice::Whole, _) => Carrier::Trivial,
            (SubSlice::Multiples(k), Carrier::Cyclic(n)) => match k.gcd(n) {
                1 => Carrier::Trivial,
                g => Carrier::Cyclic(g),
            },
            (SubSlice::Span(b), Carrier::Rational) => {
                if b.rank() == 0 {
                    Carrier::Rational
                } else {
                    Carrier::Trivial
                }
            }
            (SubSlice::Span(b), Carrier::RationalVec(n)) => match n - b.rank() {
                0 => Carrier::Trivial,
                m => Carrier::RationalVec(m),
            },
            _ => {
                return Err(AlgebraError::Unsupported(format!(
                    "quotient of slice {carrier:?} by {self:?}"
                )))
            }
        })
    }

    /// The canonical projection `A_d → A_d / S_d`.
    pub fn project(&self, carrier: &Carrier, v: &Value) -> Result<Value> {
        let target = self.quotient_carrier(carrier)?;
        Ok(match (self, carrier, v) {
            (SubSlice::Zero, _, _) => v.clone(),
            (_, _, _) if target == Carrier::Trivial => Value::Zero,
            (SubSlice::Multiples(_), Carrier::Cyclic(_), Value::Mod(x)) => {
                let Carrier::Cyclic(g) = target else { unreachable!() };
                Value::Mod(x % g)
            }
            (SubSlice::Span(b), _, _) => {
                let x = carrier.coords(v).expect("checked by quotient_carrier");
                let r = b.reduce(&x);
                Value::Vec(b.free_columns().into_iter().map(|c| r[c].clone()).collect())
            }
            _ => return Err(AlgebraError::Unsupported(format!("projection of {carrier:?} by {self:?}"))),
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SubSlices {
    Uniform(SubSlice),
    /// Dimensions without an entry meet the subgroup in zero only.
    Table(BTreeMap<Dim, SubSlice>),
}

/// A dimensional subgroup `S ⊂ A_D`, described slice by slice. Every slice
/// contains at least the zero, so `δ(S)` is the whole dimension set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    slices: SubSlices,
}

impl Subgroup {
    pub fn zero() -> Self {
        Subgroup { slices: SubSlices::Uniform(SubSlice::Zero) }
    }

    pub fn whole() -> Self {
        Subgroup { slices: SubSlices::Uniform(SubSlice::Whole) }
    }

    pub fn uniform(s: SubSlice) -> Self {
        Subgroup { slices: SubSlices::Uniform(s) }
    }

    pub fn table(t: BTreeMap<Dim, SubSlice>) -> Self {
        Subgroup { slices: SubSlices::Table(t) }
    }

    pub fn at(&self, d: &Dim) -> SubSlice {
        match &self.slices {
            SubSlices::Uniform(s) => s.clone(),
            SubSlices::Table(t) => t.get(d).cloned().unwrap_or(SubSlice::Zero),
        }
    }

    pub fn contains(&self, group: &DimAbGroup, a: &DimElement) -> Result<bool> {
        group.check(a)?;
        self.at(&a.dim).contains(&group.carrier(&a.dim)?, &a.value)
    }

    /// Members of a finite slice.
    pub fn elements(&self, group: &DimAbGroup, d: &Dim) -> Result<Option<Vec<Value>>> {
        Ok(self.at(d).elements(&group.carrier(d)?))
    }

    /// Normalizes explicit element lists and checks subgroup closure on
    /// every finite slice.
    pub fn validated(self, group: &DimAbGroup) -> Result<Subgroup> {
        let slices = match self.slices {
            SubSlices::Uniform(s) => match group.uniform_carrier() {
                Some(c) => SubSlices::Uniform(s.normalized(&c)?),
                None => {
                    let ds = group.dims().elements().ok_or_else(|| {
                        AlgebraError::Unsupported("uniform subgroup over non-uniform infinite slices".into())
                    })?;
                    let mut t = BTreeMap::new();
                    for d in ds {
                        t.insert(d.clone(), s.clone().normalized(&group.carrier(&d)?)?);
                    }
                    SubSlices::Table(t)
                }
            },
            SubSlices::Table(t) => {
                let mut out = BTreeMap::new();
                for (d, s) in t {
                    out.insert(d.clone(), s.normalized(&group.carrier(&d)?)?);
                }
                SubSlices::Table(out)
            }
        };
        Ok(Subgroup { slices })
    }
}

/// A dimensional abelian group `(A_D, +_D)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimAbGroup {
    dims: DimSet,
    slices: Slices,
}

impl DimAbGroup {
    pub fn new(dims: DimSet, slices: Slices) -> Self {
        DimAbGroup { dims, slices }
    }

    pub fn uniform(dims: DimSet, carrier: Carrier) -> Self {
        Self::new(dims, Slices::Uniform(carrier))
    }

    pub fn dims(&self) -> &DimSet {
        &self.dims
    }

    pub fn slices(&self) -> &Slices {
        &self.slices
    }

    pub fn carrier(&self, d: &Dim) -> Result<Carrier> {
        self.dims.check(d)?;
        self.slices.at(d)
    }

    pub fn uniform_carrier(&self) -> Option<Carrier> {
        match &self.slices {
            Slices::Uniform(c) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn check(&self, a: &DimElement) -> Result<()> {
        self.carrier(&a.dim)?.check(&a.value)
    }

    /// Slice-wise addition, the only addition there is: defined exactly when
    /// both operands share a dimension.
    pub fn add(&self, a: &DimElement, b: &DimElement) -> Result<DimElement> {
        if a.dim != b.dim {
            return Err(AlgebraError::DimensionMismatch { left: a.dim.clone(), right: b.dim.clone() });
        }
        let c = self.carrier(&a.dim)?;
        Ok(DimElement::new(c.add(&a.value, &b.value)?, a.dim.clone()))
    }

    pub fn neg(&self, a: &DimElement) -> Result<DimElement> {
        let c = self.carrier(&a.dim)?;
        Ok(DimElement::new(c.neg(&a.value)?, a.dim.clone()))
    }

    pub fn zero(&self, d: &Dim) -> Result<DimElement> {
        Ok(DimElement::new(self.carrier(d)?.zero(), d.clone()))
    }

    pub fn is_zero(&self, a: &DimElement) -> bool {
        self.carrier(&a.dim).map(|c| c.is_zero(&a.value)).unwrap_or(false)
    }

    /// Deterministic probes over the probe dimensions.
    pub fn probes(&self) -> Result<Vec<DimElement>> {
        let mut out = Vec::new();
        for d in self.dims.probe_elements() {
            for v in self.carrier(&d)?.probes() {
                out.push(DimElement::new(v, d.clone()));
            }
        }
        Ok(out)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<DimElement> {
        let ds = self.dims.probe_elements();
        let d = ds[rng.gen_range(0..ds.len())].clone();
        Ok(DimElement::new(self.carrier(&d)?.sample(rng), d))
    }

    /// `A_D ⊕_D B_D := (A × B)_D`, pairs over the same dimension set.
    pub fn direct_sum(&self, other: &DimAbGroup) -> Result<DimAbGroup> {
        if self.dims != other.dims {
            return Err(AlgebraError::DomainMismatch("direct sums need identical dimension sets".into()));
        }
        Ok(DimAbGroup::new(self.dims.clone(), Slices::Sum(Box::new(self.slices.clone()), Box::new(other.slices.clone()))))
    }

    pub fn sum_element(&self, a: &DimElement, b: &DimElement) -> Result<DimElement> {
        if a.dim != b.dim {
            return Err(AlgebraError::DimensionMismatch { left: a.dim.clone(), right: b.dim.clone() });
        }
        Ok(DimElement::new(Value::pair(a.value.clone(), b.value.clone()), a.dim.clone()))
    }

    /// The cartesian product over `D × E`.
    pub fn product(&self, other: &DimAbGroup) -> DimAbGroup {
        DimAbGroup::new(
            DimSet::product(self.dims.clone(), other.dims.clone()),
            Slices::Pair {
                left_arity: self.dims.arity(),
                left: Box::new(self.slices.clone()),
                right: Box::new(other.slices.clone()),
            },
        )
    }

    pub fn pair_element(&self, a: &DimElement, b: &DimElement) -> DimElement {
        DimElement::new(Value::pair(a.value.clone(), b.value.clone()), a.dim.pair(&b.dim))
    }

    /// `A_D ⊗ B_E := ⋃ A_d ⊗ B_e` over `D × E`. Finite dimension sets are
    /// checked eagerly for unsupported slice combinations.
    pub fn tensor(&self, other: &DimAbGroup) -> Result<DimAbGroup> {
        let out = DimAbGroup::new(
            DimSet::product(self.dims.clone(), other.dims.clone()),
            Slices::Tensor {
                left_arity: self.dims.arity(),
                left: Box::new(self.slices.clone()),
                right: Box::new(other.slices.clone()),
            },
        );
        for d in out.dims.probe_elements() {
            out.carrier(&d)?;
        }
        Ok(out)
    }

    /// The pure tensor `a ⊗ b` in [`DimAbGroup::tensor`].
    pub fn tensor_element(&self, other: &DimAbGroup, a: &DimElement, b: &DimElement) -> Result<DimElement> {
        let (ca, cb) = (self.carrier(&a.dim)?, other.carrier(&b.dim)?);
        Ok(DimElement::new(ca.tensor_value(&a.value, &cb, &b.value)?, a.dim.pair(&b.dim)))
    }

    /// `A_D / S := ⋃ A_d / (S ∩ A_d)` together with the projection map.
    pub fn quotient(&self, sub: &Subgroup) -> Result<(DimAbGroup, DimMap)> {
        let sub = sub.clone().validated(self)?;
        let q = DimAbGroup::new(self.dims.clone(), Slices::Quotient(Box::new(self.slices.clone()), Box::new(sub.clone())));
        let slices = match (&sub.slices, self.uniform_carrier()) {
            (SubSlices::Uniform(s), Some(_)) => SliceMaps::Uniform(Linear::Project(s.clone())),
            _ => {
                let ds = self.dims.elements().ok_or_else(|| {
                    AlgebraError::Unsupported("quotient of non-uniform infinite groups".into())
                })?;
                SliceMaps::Table(ds.into_iter().map(|d| {
                    let s = sub.at(&d);
                    (d, Linear::Project(s))
                }).collect())
            }
        };
        for d in self.dims.probe_elements() {
            q.carrier(&d)?;
        }
        let projection = DimMap::new(self.clone(), q.clone(), DimFn::Identity, slices);
        Ok((q, projection))
    }
}

/// The kernel of a dimensional group morphism, slice by slice.
pub fn kernel(map: &DimMap) -> Result<Subgroup> {
    let dom = map.domain();
    let slice = |d: &Dim| -> Result<SubSlice> {
        let from = dom.carrier(d)?;
        let to = map.codomain().carrier(&map.map_dim(d)?)?;
        kernel_slice(map.slice_map(d)?, &from, &to)
    };
    let sub = match (dom.dims().elements(), dom.uniform_carrier()) {
        (Some(ds), _) => {
            let mut t = BTreeMap::new();
            for d in ds {
                t.insert(d.clone(), slice(&d)?);
            }
            Subgroup::table(t)
        }
        (None, Some(_)) => {
            let probes = dom.dims().probe_elements();
            let first = slice(&probes[0])?;
            for d in &probes[1..] {
                if slice(d)? != first {
                    return Err(AlgebraError::Unsupported("kernel varies across an infinite dimension set".into()));
                }
            }
            Subgroup::uniform(first)
        }
        _ => return Err(AlgebraError::Unsupported("kernel over non-uniform infinite slices".into())),
    };
    sub.validated(dom)
}

fn kernel_slice(l: &Linear, from: &Carrier, to: &Carrier) -> Result<SubSlice> {
    if let Some(all) = from.elements() {
        let zero = to.zero();
        let mut members = Vec::new();
        for v in all {
            if l.apply(&v, from, to)? == zero {
                members.push(v);
            }
        }
        return SubSlice::Elements(members).normalized(from);
    }
    match l {
        Linear::Zero => Ok(SubSlice::Whole),
        Linear::Scale(q) if q.is_zero() => Ok(SubSlice::Whole),
        Linear::Scale(_) if matches!(from, Carrier::Rational | Carrier::RationalVec(_) | Carrier::Free(_)) => {
            Ok(SubSlice::Zero)
        }
        Linear::Matrix(m) => {
            let width = match from {
                Carrier::Rational => 1,
                Carrier::RationalVec(n) => *n,
                _ => return Err(AlgebraError::DomainMismatch("matrix on a non-rational slice".into())),
            };
            Ok(SubSlice::Span(EchelonBasis::span(width, nullspace(m, width))))
        }
        Linear::Neg(inner) => kernel_slice(inner, from, to),
        _ => Err(AlgebraError::Unsupported(format!("kernel of slice map {l:?} on {from:?}"))),
    }
}

/// `Z[S_D] := ⋃ Z[S_d]`, the free dimensional abelian group on a dimensioned set.
pub fn free_abelian(set: &DimensionedSet) -> DimAbGroup {
    let table = set.slices().map(|(d, names)| (d.clone(), Carrier::Free(names.to_vec()))).collect();
    DimAbGroup::new(set.dims().clone(), Slices::Table(table))
}

/// The generator `s` of `Z[S_D]` with coefficient one.
pub fn free_generator(set: &DimensionedSet, s: &str) -> Result<DimElement> {
    let d = set
        .dim_of(s)
        .ok_or_else(|| AlgebraError::Invalid(format!("{s} is not an element of the dimensioned set")))?;
    let mut m = BTreeMap::new();
    m.insert(s.to_string(), BigInt::one());
    Ok(DimElement::new(Value::Formal(m), d.clone()))
}

/// The unique group morphism `Z[S_D] → A` extending a dimensioned map from
/// the generators. Images of one slice must land in one slice.
pub fn extend_free(
    set: &DimensionedSet,
    target: &DimAbGroup,
    image: impl Fn(&str) -> DimElement,
) -> Result<DimMap> {
    let mut dim_table = BTreeMap::new();
    let mut slice_table = BTreeMap::new();
    for (d, names) in set.slices() {
        let mut images = BTreeMap::new();
        let mut landing: Option<Dim> = None;
        for s in names {
            let img = image(s);
            target.check(&img)?;
            match &landing {
                Some(e) if *e != img.dim => {
                    return Err(AlgebraError::Invalid(format!(
                        "generators of slice {d} map to different slices {e} and {}",
                        img.dim
                    )))
                }
                _ => landing = Some(img.dim.clone()),
            }
            images.insert(s.clone(), img.value);
        }
        dim_table.insert(d.clone(), landing.expect("slices are non-empty"));
        slice_table.insert(d.clone(), Linear::Generators(images));
    }
    Ok(DimMap::new(free_abelian(set), target.clone(), DimFn::Table(dim_table), SliceMaps::Table(slice_table)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim::DimMonoid;
    use crate::rational::int;

    fn z2() -> DimSet {
        DimSet::Monoid(DimMonoid::free(2))
    }

    fn e(v: i64, d: [i64; 2]) -> DimElement {
        DimElement::new(Value::int(v), Dim::from(d))
    }

    #[test]
    fn addition_is_slice_wise() {
        let g = DimAbGroup::uniform(z2(), Carrier::Rational);
        assert_eq!(g.add(&e(3, [1, 0]), &e(5, [1, 0])).unwrap(), e(8, [1, 0]));
        assert!(matches!(
            g.add(&e(3, [1, 0]), &e(5, [0, 1])),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
        let z = g.zero(&Dim::from([1, 0])).unwrap();
        assert_eq!(g.add(&e(4, [1, 0]), &z).unwrap(), e(4, [1, 0]));
        assert_eq!(g.neg(&e(7, [1, 0])).unwrap(), e(-7, [1, 0]));
        assert_eq!(g.neg(&z).unwrap(), z);
        assert_eq!(g.add(&z, &z).unwrap(), z);
        assert!(matches!(g.zero(&Dim::from([1])), Err(AlgebraError::UnknownDimension(_))));
    }

    fn z4_group() -> DimAbGroup {
        DimAbGroup::uniform(DimSet::range(1), Carrier::Cyclic(4))
    }

    #[test]
    fn kernel_examples() {
        let g = DimAbGroup::uniform(DimSet::range(2), Carrier::Rational);
        let zero_map = DimMap::uniform(g.clone(), g.clone(), DimFn::Identity, Linear::Scale(int(0)));
        let k = kernel(&zero_map).unwrap();
        assert!(k.contains(&g, &DimElement::new(Value::int(17), Dim::scalar(1))).unwrap());
        let double = DimMap::uniform(g.clone(), g.clone(), DimFn::Identity, Linear::Scale(int(2)));
        let k = kernel(&double).unwrap();
        assert!(!k.contains(&g, &DimElement::new(Value::int(1), Dim::scalar(0))).unwrap());
        assert!(k.contains(&g, &g.zero(&Dim::scalar(0)).unwrap()).unwrap());

        // Oracle: enumerate x in Z/4 with 2x = 0 -> {0, 2}.
        let oracle: Vec<Value> = (0..4u64).filter(|x| (2 * x) % 4 == 0).map(Value::Mod).collect();
        let z4 = z4_group();
        let m = DimMap::uniform(z4.clone(), z4.clone(), DimFn::Identity, Linear::Scale(int(2)));
        let k = kernel(&m).unwrap();
        assert_eq!(k.elements(&z4, &Dim::scalar(0)).unwrap().unwrap(), oracle);
    }

    #[test]
    fn kernel_of_matrix_and_opaque() {
        let g = DimAbGroup::uniform(DimSet::range(1), Carrier::RationalVec(2));
        let h = DimAbGroup::uniform(DimSet::range(1), Carrier::Rational);
        let m = DimMap::uniform(g.clone(), h.clone(), DimFn::Identity, Linear::Matrix(vec![vec![int(1), int(-1)]]));
        let k = kernel(&m).unwrap();
        let d0 = Dim::scalar(0);
        assert!(k.contains(&g, &DimElement::new(Value::Vec(vec![int(3), int(3)]), d0.clone())).unwrap());
        assert!(!k.contains(&g, &DimElement::new(Value::Vec(vec![int(3), int(2)]), d0)).unwrap());
        let opaque = DimMap::uniform(h.clone(), h, DimFn::Identity, Linear::opaque(|v| Ok(v.clone())));
        assert!(matches!(kernel(&opaque), Err(AlgebraError::Unsupported(_))));
    }

    #[test]
    fn quotient_examples() {
        let z4 = z4_group();
        let d0 = Dim::scalar(0);
        // Coset enumeration oracle: Z/4 / {0,2} has cosets {0,2},{1,3}.
        let sub = Subgroup::uniform(SubSlice::Elements(vec![Value::Mod(0), Value::Mod(2)]));
        let (q, proj) = z4.quotient(&sub).unwrap();
        assert_eq!(q.carrier(&d0).unwrap().order(), Some(2));
        assert!(proj.check_morphism().unwrap().is_none());
        let img = |x| proj.apply(&DimElement::new(Value::Mod(x), d0.clone())).unwrap();
        assert_eq!(img(1), img(3));
        assert_ne!(img(0), img(1));

        let (q0, p0) = z4.quotient(&Subgroup::zero()).unwrap();
        assert_eq!(q0.carrier(&d0).unwrap(), Carrier::Cyclic(4));
        let imgs: std::collections::BTreeSet<_> =
            (0..4).map(|x| p0.apply(&DimElement::new(Value::Mod(x), d0.clone())).unwrap()).collect();
        assert_eq!(imgs.len(), 4);

        let (qa, _) = z4.quotient(&Subgroup::whole()).unwrap();
        assert_eq!(qa.carrier(&d0).unwrap(), Carrier::Trivial);

        let bad = Subgroup::uniform(SubSlice::Elements(vec![Value::Mod(0), Value::Mod(1)]));
        assert!(matches!(z4.quotient(&bad), Err(AlgebraError::NotSubgroup(_))));
    }

    #[test]
    fn quotient_projection_is_additive_on_rational_vectors() {
        let g = DimAbGroup::uniform(DimSet::range(2), Carrier::RationalVec(3));
        let basis = EchelonBasis::span(3, [vec![int(1), int(1), int(0)]]);
        let (q, proj) = g.quotient(&Subgroup::uniform(SubSlice::Span(basis))).unwrap();
        assert_eq!(q.carrier(&Dim::scalar(1)).unwrap(), Carrier::RationalVec(2));
        assert!(proj.check_morphism().unwrap().is_none());
    }

    #[test]
    fn direct_sum_and_product() {
        let a = DimAbGroup::uniform(DimSet::range(2), Carrier::Rational);
        let b = DimAbGroup::uniform(DimSet::range(2), Carrier::Cyclic(3));
        let s = a.direct_sum(&b).unwrap();
        let d = Dim::scalar(1);
        let x = s.sum_element(&DimElement::new(Value::int(2), d.clone()), &DimElement::new(Value::Mod(2), d.clone())).unwrap();
        let y = s.sum_element(&DimElement::new(Value::int(5), d.clone()), &DimElement::new(Value::Mod(2), d.clone())).unwrap();
        assert_eq!(s.add(&x, &y).unwrap().value, Value::pair(Value::int(7), Value::Mod(1)));

        let trivial = DimAbGroup::uniform(DimSet::range(2), Carrier::Trivial);
        let a0 = a.direct_sum(&trivial).unwrap();
        let p = a0.sum_element(&DimElement::new(Value::int(4), d.clone()), &DimElement::new(Value::Zero, d.clone())).unwrap();
        assert_eq!(a0.add(&p, &p).unwrap().value, Value::pair(Value::int(8), Value::Zero));

        let c = DimAbGroup::uniform(DimSet::range(3), Carrier::Rational);
        assert!(a.direct_sum(&c).is_err());
        assert_eq!(a.product(&b).dims().elements().unwrap().len(), 4);
    }

    fn xy_set() -> DimensionedSet {
        let mut m = BTreeMap::new();
        m.insert(Dim::scalar(0), vec!["x".to_string(), "y".to_string()]);
        m.insert(Dim::scalar(1), vec!["z".to_string()]);
        DimensionedSet::new(m).unwrap()
    }

    #[test]
    fn free_group_examples() {
        let s = xy_set();
        let f = free_abelian(&s);
        let x = free_generator(&s, "x").unwrap();
        assert_eq!(f.add(&x, &x).unwrap().value, Value::formal(&[("x", 2)]));
        let three_x = DimElement::new(Value::formal(&[("x", 3)]), Dim::scalar(0));
        assert!(f.is_zero(&f.add(&three_x, &f.neg(&three_x).unwrap()).unwrap()));
        assert_eq!(Carrier::free(Vec::<String>::new()).elements().unwrap().len(), 1);
    }

    #[test]
    fn free_group_universal_property() {
        // Every dimensioned map from generators into Z/2-slices extends uniquely:
        // enumerate all images for x, y, z and check agreement and additivity.
        let s = xy_set();
        let target = DimAbGroup::uniform(DimSet::range(2), Carrier::Cyclic(2));
        let f = free_abelian(&s);
        let probes = f.probes().unwrap();
        for ix in 0..2u64 {
            for iy in 0..2u64 {
                for iz in 0..2u64 {
                    let image = |g: &str| {
                        let (v, d) = match g {
                            "x" => (ix, 1),
                            "y" => (iy, 1),
                            _ => (iz, 0),
                        };
                        DimElement::new(Value::Mod(v), Dim::scalar(d))
                    };
                    let ext = extend_free(&s, &target, image).unwrap();
                    for g in ["x", "y", "z"] {
                        assert_eq!(ext.apply(&free_generator(&s, g).unwrap()).unwrap(), image(g));
                    }
                    assert!(ext.check_morphism().unwrap().is_none());
                    // Uniqueness: the value on n x + m y is forced by additivity.
                    for p in &probes {
                        let Value::Formal(t) = &p.value else { unreachable!() };
                        let mut acc = target.zero(&ext.map_dim(&p.dim).unwrap()).unwrap();
                        for (g, c) in t {
                            let gi = image(g);
                            let scaled = Carrier::Cyclic(2).scale_int(&gi.value, c).unwrap();
                            acc = target.add(&acc, &DimElement::new(scaled, gi.dim)).unwrap();
                        }
                        assert_eq!(ext.apply(p).unwrap(), acc);
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_groups() {
        let a = DimAbGroup::uniform(DimSet::range(2), Carrier::Rational);
        let b = DimAbGroup::uniform(DimSet::range(1), Carrier::Rational);
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.carrier(&Dim::from([1, 0])).unwrap(), Carrier::Rational);
        let x = a.tensor_element(&b, &DimElement::new(Value::int(2), Dim::scalar(1)), &DimElement::new(Value::int(3), Dim::scalar(0))).unwrap();
        let y = a.tensor_element(&b, &DimElement::new(Value::int(6), Dim::scalar(1)), &DimElement::new(Value::int(1), Dim::scalar(0))).unwrap();
        assert_eq!(x, y);
        let c2 = DimAbGroup::uniform(DimSet::range(1), Carrier::Cyclic(2));
        let c3 = DimAbGroup::uniform(DimSet::range(1), Carrier::Cyclic(3));
        assert_eq!(c2.tensor(&c3).unwrap().carrier(&Dim::from([0, 0])).unwrap(), Carrier::Trivial);
        let triv = DimAbGroup::uniform(DimSet::range(1), Carrier::Trivial);
        assert_eq!(a.tensor(&triv).unwrap().carrier(&Dim::from([1, 0])).unwrap(), Carrier::Trivial);
    }
}
