use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use crate::dim::{Carrier, Dim, DimAbGroup, DimFn, DimMap, DimMonoid, DimSet, Linear, SliceMaps};
use crate::error::{AlgebraError, Result};
use crate::rational::{int, ratio, Q};

use super::{DimRing, Instance};

/// A dimensioned endomorphism of `Q × D` for `D = {0, .., n-1}`: the map
/// `(r, d) ↦ (c(d)·r, φ(d))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DimEndoMap {
    pub phi: Vec<usize>,
    pub coeffs: Vec<Q>,
}

impl fmt::Display for DimEndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.phi.iter().zip(&self.coeffs).enumerate().map(|(d, (p, c))| format!("{d}->{c}@{p}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// `Dim⟨Q × D⟩` under pointwise addition (defined when the dimension maps
/// agree) and composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoRing {
    size: usize,
    monoid: DimMonoid,
}

impl EndoRing {
    pub fn new(size: usize) -> Self {
        EndoRing { size, monoid: DimMonoid::maps(size) }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn map(&self, phi: Vec<usize>, coeffs: Vec<Q>) -> Result<DimEndoMap> {
        if phi.len() != self.size || coeffs.len() != self.size || phi.iter().any(|&p| p >= self.size) {
            return Err(AlgebraError::Invalid(format!("endomorphism of a {}-point set expected", self.size)));
        }
        Ok(DimEndoMap { phi, coeffs })
    }

    /// The underlying group `Q × D` the maps act on.
    pub fn group(&self) -> DimAbGroup {
        DimAbGroup::uniform(DimSet::range(self.size), Carrier::Rational)
    }

    /// The endomorphism as a [`DimMap`] on [`EndoRing::group`].
    pub fn as_dim_map(&self, a: &DimEndoMap) -> DimMap {
        let g = self.group();
        let dims = (0..self.size).map(|d| (Dim::scalar(d as i64), Dim::scalar(a.phi[d] as i64)));
        let slices: BTreeMap<Dim, Linear> =
            a.coeffs.iter().enumerate().map(|(d, c)| (Dim::scalar(d as i64), Linear::Scale(c.clone()))).collect();
        DimMap::new(g.clone(), g, DimFn::table(dims), SliceMaps::Table(slices))
    }

    fn phi_of(d: &Dim) -> Vec<usize> {
        d.0.iter().map(|&x| x as usize).collect()
    }

    /// For every triple of dimension maps, one instance whose coefficients
    /// cycle through `coeff_probe^n`. With `n = 3` and four probes this
    /// visits all 27³ map triples and every coefficient vector many times.
    pub fn exhaustive_instances(&self, coeff_probe: &[Q]) -> Vec<Instance<DimEndoMap>> {
        let maps = self.monoid.elements().expect("finite");
        let n = self.size;
        let vectors: Vec<Vec<Q>> = (0..coeff_probe.len().pow(n as u32))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let c = coeff_probe[code % coeff_probe.len()].clone();
                        code /= coeff_probe.len();
                        c
                    })
                    .collect()
            })
            .collect();
        let v = vectors.len();
        let mut out = Vec::with_capacity(maps.len().pow(3));
        let mut k = 0usize;
        for f in &maps {
            for g in &maps {
                for h in &maps {
                    let mk = |phi: &Dim, i: usize| DimEndoMap { phi: Self::phi_of(phi), coeffs: vectors[i % v].clone() };
                    out.push(Instance {
                        a: mk(f, k),
                        a2: mk(f, k * 7 + 3),
                        a3: mk(f, k * 11 + 5),
                        b: mk(g, k * 13 + 1),
                        c: mk(h, k * 17 + 2),
                    });
                    k += 1;
                }
            }
        }
        out
    }
}

impl DimRing for EndoRing {
    type Elem = DimEndoMap;

    fn monoid(&self) -> &DimMonoid {
        &self.monoid
    }

    fn dim(&self, a: &DimEndoMap) -> Dim {
        Dim(a.phi.iter().map(|&p| p as i64).collect())
    }

    fn add(&self, a: &DimEndoMap, b: &DimEndoMap) -> Result<DimEndoMap> {
        if a.phi != b.phi {
            return Err(AlgebraError::DimensionMapMismatch(format!("{:?} vs {:?}", a.phi, b.phi)));
        }
        Ok(DimEndoMap { phi: a.phi.clone(), coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() })
    }

    fn neg(&self, a: &DimEndoMap) -> DimEndoMap {
        DimEndoMap { phi: a.phi.clone(), coeffs: a.coeffs.iter().map(|c| -c).collect() }
    }

    fn zero(&self, d: &Dim) -> Result<DimEndoMap> {
        self.monoid.check(d)?;
        Ok(DimEndoMap { phi: Self::phi_of(d), coeffs: vec![Q::zero(); self.size] })
    }

    fn one(&self) -> DimEndoMap {
        DimEndoMap { phi: (0..self.size).collect(), coeffs: vec![Q::one(); self.size] }
    }

    /// Composition `Φ ∘ Ψ`: apply `Ψ` first, so the dimension map is `φ ∘ ψ`
    /// and the coefficient at `d` is `c_Φ(ψ(d)) · c_Ψ(d)`.
    fn mul(&self, a: &DimEndoMap, b: &DimEndoMap) -> DimEndoMap {
        let phi = b.phi.iter().map(|&d| a.phi[d]).collect();
        let coeffs = (0..self.size).map(|d| &a.coeffs[b.phi[d]] * &b.coeffs[d]).collect();
        DimEndoMap { phi, coeffs }
    }

    fn is_commutative(&self) -> bool {
        self.size <= 1
    }

    fn probes(&self) -> Vec<DimEndoMap> {
        let n = self.size;
        let vectors: Vec<Vec<Q>> = vec![
            vec![Q::zero(); n],
            vec![Q::one(); n],
            (0..n).map(|i| int(i as i64 - 1)).collect(),
            (0..n).map(|i| ratio(2 * i as i64 + 1, 3)).collect(),
        ];
        let maps = self.monoid.elements().unwrap_or_default();
        maps.iter()
            .flat_map(|m| vectors.iter().map(move |v| DimEndoMap { phi: Self::phi_of(m), coeffs: v.clone() }))
            .collect()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> DimEndoMap {
        let n = self.size;
        DimEndoMap {
            phi: (0..n).map(|_| rng.gen_range(0..n)).collect(),
            coeffs: (0..n).map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect(),
        }
    }

    fn describe(&self, a: &DimEndoMap) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim::DimElement;
    use crate::dim::Value;
    use crate::ring::{ring_axiom_report, Plan};

    #[test]
    fn hand_composition() {
        let r = EndoRing::new(2);
        let phi = r.map(vec![0, 1], vec![int(2), int(3)]).unwrap();
        let psi = r.map(vec![1, 0], vec![int(1), int(1)]).unwrap();
        assert_eq!(r.mul(&phi, &psi), r.map(vec![1, 0], vec![int(3), int(2)]).unwrap());
        assert_eq!(r.mul(&phi, &r.one()), phi);
        assert!(matches!(r.add(&phi, &psi), Err(AlgebraError::DimensionMapMismatch(_))));
    }

    #[test]
    fn composition_matches_dim_maps() {
        let r = EndoRing::new(2);
        let phi = r.map(vec![1, 1], vec![int(2), int(-3)]).unwrap();
        let psi = r.map(vec![1, 0], vec![int(5), ratio(1, 2)]).unwrap();
        let composed = r.as_dim_map(&phi).compose(&r.as_dim_map(&psi)).unwrap();
        assert!(composed.agrees_with(&r.as_dim_map(&r.mul(&phi, &psi))).unwrap());
        assert!(r.as_dim_map(&phi).check_morphism().unwrap().is_none());
        let x = DimElement::new(Value::int(4), Dim::scalar(0));
        assert_eq!(r.as_dim_map(&phi).apply(&x).unwrap(), DimElement::new(Value::int(8), Dim::scalar(1)));
    }

    #[test]
    fn axioms_small() {
        let r = EndoRing::new(2);
        let coeffs = [int(-1), int(0), int(1), int(2)];
        let rep = ring_axiom_report(&r, "endo(2)", &r.exhaustive_instances(&coeffs));
        assert!(rep.all_passed(), "{rep}");
        let rep = ring_axiom_report(&r, "endo(2)", &Plan::Random { count: 300, seed: 9 }.instances(&r));
        assert!(rep.all_passed(), "{rep}");
    }
}
