use std::sync::Arc;

use rand::RngCore;

use crate::dim::Dim;
use crate::error::Result;
use crate::report::{LawCheck, Report};
use crate::ring::DimRing;

use super::free::{direct_sum_mod, tensor_mod};
use super::maps::{MapViolation, ModuleMap, RingMorphism};
use super::{DimModule, FreeDimModule, GPoint, ModElem};

/// `φ*A`: the carrier and dimension set of `A`, with `P_H` acting through
/// `φ: P_H → R_G` and `H` acting through the dimension map of `φ`.
pub struct PullbackModule<P: DimRing, R: DimRing> {
    ring: Arc<P>,
    morphism: RingMorphism<P, R>,
    module: FreeDimModule<R>,
}

impl<P: DimRing, R: DimRing> Clone for PullbackModule<P, R> {
    fn clone(&self) -> Self {
        PullbackModule { ring: self.ring.clone(), morphism: self.morphism.clone(), module: self.module.clone() }
    }
}

impl<P: DimRing, R: DimRing> PullbackModule<P, R> {
    pub fn new(ring: Arc<P>, morphism: RingMorphism<P, R>, module: FreeDimModule<R>) -> Self {
        PullbackModule { ring, morphism, module }
    }

    pub fn module(&self) -> &FreeDimModule<R> {
        &self.module
    }

    pub fn morphism(&self) -> &RingMorphism<P, R> {
        &self.morphism
    }

    /// `φ*Ψ` for a ψ-twisted `Ψ` out of the underlying module: the same
    /// function, now twisted by `ψ∘φ`.
    pub fn pull_map<T>(&self, map: &ModuleMap<R, T>) -> PulledMap<P, R, T>
    where
        P: 'static,
        R: 'static,
        T: DimRing + 'static,
    {
        PulledMap { map: map.clone(), twist: map.precompose_morphism(&self.morphism) }
    }
}

impl<P: DimRing, R: DimRing> DimModule for PullbackModule<P, R> {
    type Ring = P;
    type Elem = ModElem<R::Elem>;

    fn ring(&self) -> &P {
        &self.ring
    }

    fn dim(&self, a: &Self::Elem) -> GPoint {
        a.dim.clone()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.module.add(a, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.module.neg(a)
    }

    fn zero(&self, x: &GPoint) -> Result<Self::Elem> {
        self.module.zero(x)
    }

    fn act(&self, p: &P::Elem, a: &Self::Elem) -> Self::Elem {
        self.module.act(&self.morphism.apply(p), a)
    }

    fn act_dim(&self, p: &P::Elem) -> Dim {
        self.morphism.apply_dim(&self.ring.dim(p))
    }

    fn act_point(&self, g: &Dim, x: &GPoint) -> GPoint {
        self.module.act_point(g, x)
    }

    fn probes(&self) -> Vec<Self::Elem> {
        self.module.probes()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        self.module.sample(rng)
    }

    fn sample_like(&self, like: &Self::Elem, rng: &mut dyn RngCore) -> Self::Elem {
        self.module.sample_like(like, rng)
    }

    fn describe(&self, a: &Self::Elem) -> String {
        self.module.describe(a)
    }
}

/// A module map seen from a pulled-back source.
pub struct PulledMap<P: DimRing, R: DimRing, T: DimRing> {
    pub map: ModuleMap<R, T>,
    pub twist: RingMorphism<P, T>,
}

impl<P: DimRing, R: DimRing, T: DimRing> PulledMap<P, R, T> {
    pub fn apply(&self, a: &ModElem<R::Elem>) -> Result<ModElem<T::Elem>> {
        self.map.apply(a)
    }

    /// `Φ(p·a) = (ψ∘φ)(p)·Φ(a)` on random probes.
    pub fn twisted_check(
        &self,
        source: &PullbackModule<P, R>,
        count: usize,
        rng: &mut dyn RngCore,
    ) -> std::result::Result<(), MapViolation> {
        let target = self.map.target();
        for _ in 0..count {
            let a = source.sample(rng);
            let p = source.ring().sample(rng);
            let lhs = self.apply(&source.act(&p, &a)).ok();
            let rhs = self.apply(&a).ok().map(|fa| target.act(&self.twist.apply(&p), &fa));
            if lhs.is_none() || lhs != rhs {
                return Err(MapViolation {
                    law: "twisted linearity".into(),
                    witness: format!("p={}, a={}", source.ring().describe(&p), source.describe(&a)),
                });
            }
        }
        Ok(())
    }
}

/// Functor laws for `φ*` on two composable endomorphisms `Θ`, `Ψ` of `A`:
/// `φ*(Ψ∘Θ) = φ*Ψ ∘ φ*Θ`, `φ*(id) = id`, and twisted linearity of every
/// pulled-back map.
pub fn pullback_functor_report<P, R>(
    pulled: &PullbackModule<P, R>,
    theta: &ModuleMap<R, R>,
    psi: &ModuleMap<R, R>,
    count: usize,
    rng: &mut dyn RngCore,
) -> Report
where
    P: DimRing + 'static,
    R: DimRing + 'static,
{
    let mut composition = LawCheck::new("composition");
    let mut identity = LawCheck::new("identity");
    let mut twisted = LawCheck::new("twisted linearity");
    let ring = pulled.ring();
    let comp = theta.then(psi).map(|c| pulled.pull_map(&c));
    let (pt, pp) = (pulled.pull_map(theta), pulled.pull_map(psi));
    let id_images = (0..pulled.module.rank()).map(|k| pulled.module.basis_elem(k)).collect();
    let id = super::linear_map_check(&pulled.module, &pulled.module, RingMorphism::identity(), id_images, rng)
        .map(|m| pulled.pull_map(&m));
    for _ in 0..count {
        let a = pulled.sample(rng);
        let p = ring.sample(rng);
        let w = || format!("a={}, p={}", pulled.describe(&a), ring.describe(&p));
        let lhs = comp.as_ref().ok().and_then(|c| c.apply(&a).ok());
        let rhs = pt.apply(&a).ok().and_then(|x| pp.apply(&x).ok());
        let expect = psi.morphism().apply(&theta.morphism().apply(&pulled.morphism.apply(&p)));
        let twists = comp.as_ref().is_ok_and(|c| c.twist.apply(&p) == expect);
        composition.record(lhs.is_some() && lhs == rhs && twists, w);
        let ida = id.as_ref().ok().and_then(|m| m.apply(&a).ok());
        identity.record(ida.as_ref() == Some(&a), w);
    }
    for (name, m) in [("Θ", &pt), ("Ψ", &pp)] {
        let r = m.twisted_check(pulled, count.min(64), rng);
        twisted.record(r.is_ok(), || format!("{name}: {}", r.unwrap_err()));
    }
    if let Ok(c) = &comp {
        let r = c.twisted_check(pulled, count.min(64), rng);
        twisted.record(r.is_ok(), || format!("Ψ∘Θ: {}", r.unwrap_err()));
    }
    let mut report = Report::new("pullback functor");
    for law in [composition, identity, twisted] {
        report.push(law.finish());
    }
    report
}

/// `φ*(A ⊕ B) = φ*A ⊕ φ*B` and `φ*(A ⊗ B) = φ*A ⊗ φ*B` as identity maps on
/// carriers, probed for compatibility with the pulled-back action. The
/// tensor relation `(p·a)⊗b = a⊗(p·b)` is what needs `φ` to be onto.
pub fn pullback_preserves_report<P, R>(
    ring: &Arc<P>,
    morphism: &RingMorphism<P, R>,
    a: &FreeDimModule<R>,
    b: &FreeDimModule<R>,
    count: usize,
    rng: &mut dyn RngCore,
) -> Result<Report>
where
    P: DimRing,
    R: DimRing,
{
    let sum = direct_sum_mod(a, b)?;
    let tensor = tensor_mod(a, b)?;
    let pa = PullbackModule::new(ring.clone(), morphism.clone(), a.clone());
    let pb = PullbackModule::new(ring.clone(), morphism.clone(), b.clone());
    let psum = PullbackModule::new(ring.clone(), morphism.clone(), sum.module.clone());
    let pten = PullbackModule::new(ring.clone(), morphism.clone(), tensor.module.clone());
    let mut sums = LawCheck::new("preserves direct sum");
    let mut tensors = LawCheck::new("preserves tensor product");
    for _ in 0..count {
        let x = pa.sample(rng);
        let y = b.random_in_slice(&x.dim, rng);
        let z = pb.sample(rng);
        let p = ring.sample(rng);
        let w = || format!("p={}, a={}", ring.describe(&p), pa.describe(&x));
        let lhs = sum.pair(&x, &y).ok().map(|s| psum.act(&p, &s));
        let rhs = sum.pair(&pa.act(&p, &x), &pb.act(&p, &y)).ok();
        sums.record(lhs.is_some() && lhs == rhs, w);
        let l = tensor.product(&pa.act(&p, &x), &z).ok();
        let m = tensor.product(&x, &pb.act(&p, &z)).ok();
        let r = tensor.product(&x, &z).ok().map(|t| pten.act(&p, &t));
        tensors.record(l.is_some() && l == m && m == r, w);
    }
    let mut report = Report::new("pullback of ⊕ and ⊗");
    report.push(sums.finish());
    report.push(tensors.finish());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim::{DimMonoid, Dimensioned};
    use crate::module::{linear_map_check, module_axiom_report, GSet};
    use crate::rational::int;
    use crate::ring::{ProductRing, Scalar};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qz() -> Arc<ProductRing> {
        Arc::new(ProductRing::new(DimMonoid::free(1)))
    }

    fn module(r: &Arc<ProductRing>) -> FreeDimModule<ProductRing> {
        let gset = GSet::new(DimMonoid::free(1), vec!["a".into(), "b".into()]).unwrap();
        let basis = vec![("e".into(), GPoint::new([0], 0)), ("f".into(), GPoint::new([1], 0)), ("g".into(), GPoint::new([0], 1))];
        FreeDimModule::new(r.clone(), gset, basis).unwrap()
    }

    #[test]
    fn identity_pullback_is_the_module() {
        let r = qz();
        let a = module(&r);
        let pulled = PullbackModule::new(r.clone(), RingMorphism::identity(), a.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let x = a.sample(&mut rng);
            let p = r.sample(&mut rng);
            assert_eq!(pulled.act(&p, &x), a.act(&p, &x));
        }
    }

    #[test]
    fn dimensionless_inclusion() {
        // Q × {1} ↪ Q × Z makes A an ordinary Q-module.
        let r = qz();
        let q = Arc::new(ProductRing::new(DimMonoid::free(0)));
        let incl = RingMorphism::<ProductRing, ProductRing>::new(
            |a: &Scalar| Dimensioned::new(a.value.clone(), Dim::scalar(0)),
            |_| Dim::scalar(0),
        );
        let pulled = PullbackModule::new(q.clone(), incl, module(&r));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rep = module_axiom_report(&pulled, 300, &mut rng, "pullback");
        assert!(rep.all_passed(), "{rep}");
        // Scalars never move dimensions.
        for x in pulled.probes() {
            let three = q.elem(int(3), Dim::unit());
            assert_eq!(pulled.act(&three, &x).dim, x.dim);
        }
    }

    #[test]
    fn functor_laws() {
        let r = qz();
        let a = module(&r);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // Θ swaps e and g (same dimension, different orbits); Ψ scales by 2.
        let theta = linear_map_check(&a, &a, RingMorphism::identity(), vec![a.basis_elem(2), a.act(&r.elem(int(1), [1]), &a.basis_elem(2)), a.basis_elem(0)], &mut rng);
        let theta = theta.unwrap();
        let two = r.elem(int(2), [0]);
        let psi = linear_map_check(&a, &a, RingMorphism::identity(), (0..3).map(|k| a.act(&two, &a.basis_elem(k))).collect(), &mut rng).unwrap();
        // φ: Q×Z → Q×Z, (c, n) ↦ (c, 2n), paired with the doubling dimension map.
        let double = RingMorphism::<ProductRing, ProductRing>::new(
            |s: &Scalar| Dimensioned::new(s.value.clone(), Dim::scalar(2 * s.dim.0[0])),
            |d| Dim::scalar(2 * d.0[0]),
        );
        let pulled = PullbackModule::new(r.clone(), double.clone(), a.clone());
        let rep = pullback_functor_report(&pulled, &theta, &psi, 100, &mut rng);
        assert!(rep.all_passed(), "{rep}");
        assert!(module_axiom_report(&pulled, 200, &mut rng, "doubled").all_passed());
        let rep = pullback_preserves_report(&r, &RingMorphism::identity(), &a, &a, 100, &mut rng).unwrap();
        assert!(rep.all_passed(), "{rep}");
        let rep = pullback_preserves_report(&r, &double, &a, &a, 100, &mut rng).unwrap();
        assert!(rep.all_passed(), "{rep}");
    }
}
