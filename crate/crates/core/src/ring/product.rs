use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use crate::dim::{Carrier, Dim, DimAbGroup, DimElement, DimFn, DimMap, DimMonoid, DimSet, Dimensioned, Linear, Value};
use crate::error::{AlgebraError, Result};
use crate::rational::{ratio, Q};

use super::DimRing;

/// An element `(r, d)` of a product dimensioned ring.
pub type Scalar = Dimensioned<Q>;

/// `Q × D` with `(a,d)+(b,d) = (a+b,d)` and `(a,d)·(b,e) = (ab, de)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRing {
    monoid: DimMonoid,
}

impl ProductRing {
    pub fn new(monoid: DimMonoid) -> Self {
        ProductRing { monoid }
    }

    pub fn elem(&self, r: Q, d: impl Into<Dim>) -> Scalar {
        Dimensioned::new(r, d.into())
    }

    /// The underlying dimensional abelian group.
    pub fn group(&self) -> DimAbGroup {
        DimAbGroup::uniform(DimSet::Monoid(self.monoid.clone()), Carrier::Rational)
    }

    pub fn to_dim_element(a: &Scalar) -> DimElement {
        DimElement::new(Value::Rat(a.value.clone()), a.dim.clone())
    }

    /// Multiplication by `a` as a dimensioned map `R → R` covering
    /// translation by `δ(a)`.
    pub fn multiplication_map(&self, a: &Scalar) -> DimMap {
        let g = self.group();
        DimMap::uniform(
            g.clone(),
            g,
            DimFn::Translate { monoid: self.monoid.clone(), by: a.dim.clone() },
            Linear::Scale(a.value.clone()),
        )
    }
}

impl DimRing for ProductRing {
    type Elem = Scalar;

    fn monoid(&self) -> &DimMonoid {
        &self.monoid
    }

    fn dim(&self, a: &Scalar) -> Dim {
        a.dim.clone()
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        if a.dim != b.dim {
            return Err(AlgebraError::DimensionMismatch { left: a.dim.clone(), right: b.dim.clone() });
        }
        Ok(Dimensioned::new(&a.value + &b.value, a.dim.clone()))
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        Dimensioned::new(-&a.value, a.dim.clone())
    }

    fn zero(&self, d: &Dim) -> Result<Scalar> {
        self.monoid.check(d)?;
        Ok(Dimensioned::new(Q::zero(), d.clone()))
    }

    fn one(&self) -> Scalar {
        Dimensioned::new(Q::one(), self.monoid.identity())
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Dimensioned::new(&a.value * &b.value, self.monoid.combine_unchecked(&a.dim, &b.dim))
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        a.value.is_zero()
    }

    fn is_commutative(&self) -> bool {
        self.monoid.is_commutative()
    }

    fn probes(&self) -> Vec<Scalar> {
        let scalars = [ratio(0, 1), ratio(1, 1), ratio(-1, 1), ratio(2, 1), ratio(-3, 7)];
        self.monoid
            .probe_elements(1)
            .into_iter()
            .flat_map(|d| scalars.iter().map(move |r| Dimensioned::new(r.clone(), d.clone())))
            .collect()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Scalar {
        let ds = self.monoid.probe_elements(3);
        let d = ds[rng.gen_range(0..ds.len())].clone();
        let r = ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9));
        Dimensioned::new(r, d)
    }

    fn sample_in(&self, d: &Dim, rng: &mut dyn RngCore) -> Result<Scalar> {
        self.monoid.check(d)?;
        Ok(Dimensioned::new(ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9)), d.clone()))
    }

    fn reciprocal(&self, a: &Scalar) -> Result<Scalar> {
        if a.value.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let inv = self.monoid.inverse(&a.dim).ok_or_else(|| AlgebraError::NotAGroup(self.monoid.to_string()))?;
        Ok(Dimensioned::new(a.value.recip(), inv))
    }

    fn scalar(&self, r: &Q) -> Option<Scalar> {
        Some(Dimensioned::new(r.clone(), self.monoid.identity()))
    }

    fn scalar_value(&self, a: &Scalar) -> Option<Q> {
        (a.dim == self.monoid.identity()).then(|| a.value.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{reciprocal, DimensionlessRing};
    use crate::rational::int;

    fn qz() -> ProductRing {
        ProductRing::new(DimMonoid::free(1))
    }

    fn e(r: i64, d: i64) -> Scalar {
        Dimensioned::new(int(r), Dim::scalar(d))
    }

    #[test]
    fn multiplication_examples() {
        let r = qz();
        assert_eq!(r.mul(&e(2, 1), &e(3, 2)), e(6, 3));
        assert_eq!(r.mul(&e(0, 4), &e(9, -1)), e(0, 3));
        assert_eq!(r.mul(&r.one(), &e(5, 2)), e(5, 2));
    }

    #[test]
    fn reciprocals() {
        let r = qz();
        assert_eq!(reciprocal(&r, &e(4, 2)).unwrap(), Dimensioned::new(ratio(1, 4), Dim::scalar(-2)));
        assert_eq!(reciprocal(&r, &r.one()).unwrap(), r.one());
        let a = Dimensioned::new(ratio(-5, 3), Dim::scalar(7));
        assert_eq!(reciprocal(&r, &reciprocal(&r, &a).unwrap()).unwrap(), a);
        assert!(matches!(reciprocal(&r, &e(0, 1)), Err(AlgebraError::DivisionByZero)));
        let maps = ProductRing::new(DimMonoid::maps(2));
        assert!(matches!(reciprocal(&maps, &maps.one()), Err(AlgebraError::NotAGroup(_))));
    }

    #[test]
    fn dimensionless_slice_is_the_scalars() {
        let r = qz();
        let r1 = DimensionlessRing::new(&r);
        for a in r1.probes() {
            assert_eq!(a.dim, Dim::scalar(0));
            assert_eq!(r.scalar(&r.scalar_value(&a).unwrap()).unwrap(), a);
        }
        assert_eq!(r1.mul(&e(3, 0), &e(-2, 0)).unwrap(), e(-6, 0));
        assert!(r1.add(&e(3, 0), &e(1, 1)).is_err());
    }

    #[test]
    fn multiplication_map_is_a_dim_map() {
        let r = qz();
        let m = r.multiplication_map(&e(2, 1));
        let out = m.apply(&ProductRing::to_dim_element(&e(5, 3))).unwrap();
        assert_eq!(out, ProductRing::to_dim_element(&e(10, 4)));
        assert!(m.check_morphism().unwrap().is_none());
    }
}
