use rand::{Rng, RngCore};

use crate::dim::{Dim, DimMonoid};
use crate::error::{AlgebraError, Result};
use crate::rational::{ratio, Q};
use crate::ring::{DimEndoMap, DimRing, EndoRing, ProductRing, Scalar};

use super::DimAlgebra;

/// Translations of `Q × Z/n` composed as a bilinear multiplication: an
/// element is `(r, d) ↦ (c·r, d + t)`, the multiplication is composition and
/// `μ` is composition of dimension maps. Scalars from `Q × Z/n` act by
/// post-composing with their own translation.
#[derive(Clone, Debug)]
pub struct LinearEndos {
    endo: EndoRing,
    scalars: ProductRing,
}

impl LinearEndos {
    pub fn new(n: usize) -> Self {
        LinearEndos { endo: EndoRing::new(n), scalars: ProductRing::new(DimMonoid::cyclic(n as u64)) }
    }

    pub fn size(&self) -> usize {
        self.endo.size()
    }

    pub fn translation(&self, t: usize, c: Q) -> Result<DimEndoMap> {
        let n = self.size();
        if t >= n {
            return Err(AlgebraError::Invalid(format!("translation {t} outside Z/{n}")));
        }
        self.endo.map((0..n).map(|d| (d + t) % n).collect(), vec![c; n])
    }

    fn shift(&self, g: &Dim) -> usize {
        g.0[0].rem_euclid(self.size() as i64) as usize
    }
}

impl DimAlgebra for LinearEndos {
    type Scalar = Scalar;
    type Elem = DimEndoMap;

    fn dim(&self, a: &DimEndoMap) -> Dim {
        self.endo.dim(a)
    }

    fn add(&self, a: &DimEndoMap, b: &DimEndoMap) -> Result<DimEndoMap> {
        self.endo.add(a, b)
    }

    fn neg(&self, a: &DimEndoMap) -> DimEndoMap {
        self.endo.neg(a)
    }

    fn is_zero(&self, a: &DimEndoMap) -> bool {
        self.endo.is_zero(a)
    }

    fn mul(&self, a: &DimEndoMap, b: &DimEndoMap) -> Result<DimEndoMap> {
        Ok(self.endo.mul(a, b))
    }

    fn mu(&self, d: &Dim, e: &Dim) -> Dim {
        self.endo.monoid().combine_unchecked(d, e)
    }

    fn scalar_mul(&self, r: &Scalar, s: &Scalar) -> Scalar {
        self.scalars.mul(r, s)
    }

    fn act(&self, r: &Scalar, a: &DimEndoMap) -> DimEndoMap {
        let n = self.size();
        let t = self.shift(&r.dim);
        DimEndoMap { phi: a.phi.iter().map(|&p| (p + t) % n).collect(), coeffs: a.coeffs.iter().map(|c| &r.value * c).collect() }
    }

    fn act_dim(&self, g: &Dim, d: &Dim) -> Dim {
        let n = self.size() as i64;
        let t = self.shift(g) as i64;
        Dim(d.0.iter().map(|&x| (x + t) % n).collect())
    }

    fn scalar_dim(&self, r: &Scalar) -> Dim {
        r.dim.clone()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> DimEndoMap {
        let t = rng.gen_range(0..self.size());
        self.translation(t, ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))).expect("in range")
    }

    fn sample_like(&self, like: &DimEndoMap, rng: &mut dyn RngCore) -> DimEndoMap {
        let t = like.phi[0];
        self.translation(t, ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))).expect("in range")
    }

    fn sample_scalar(&self, rng: &mut dyn RngCore) -> Scalar {
        let g = rng.gen_range(0..self.size() as i64);
        self.scalars.elem(ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)), Dim::scalar(g))
    }

    fn describe(&self, a: &DimEndoMap) -> String {
        a.to_string()
    }
}
